"""Print max over m* of min(rho1, rho2) next to the closed-form leading term.

    python scripts/balance_table.py --n 16 64 256 1024 --r 1 2 3
"""
import argparse

from testcover.analysis import theorem_ratio_expr


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[16, 64, 256, 1024, 4096])
    ap.add_argument("--r", type=int, nargs="+", default=[1, 2, 3])
    args = ap.parse_args()
    print(f"{'n':>6} {'r':>2} {'argmax m*':>9} {'max min(rho1,rho2)':>19} {'leading term':>13} {'gap':>8}")
    for n in args.n:
        for r in args.r:
            te = theorem_ratio_expr(n, r)
            print(f"{n:>6} {r:>2} {te.argmax_m:>9} {te.max_min:>19.6f} {te.leading:>13.6f} {te.max_min - te.leading:>8.4f}")
    print(f"\n({te.note})")


if __name__ == "__main__":
    main()
