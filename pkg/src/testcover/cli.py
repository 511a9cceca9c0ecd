"""Command-line front end: ``python -m testcover <command> ...``.

Exit codes: 0 ok, 1 usage error, 2 infeasible instance, 3 unreadable or
malformed input, 4 oracle budget exhausted (``exact`` only).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from .analysis import full_report, trace_potential
from .core import InfeasibleError, Instance, InstanceFormatError, is_r_test_set, load_instance
from .exact import solve_exact
from .generators import GenSpec, generate
from .sga import run_sga
from .sweep import SweepConfig, parse_int_range, rows_to_csv, run_sweep, summarize, summary_to_csv

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, output: str | None) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(output, "w") as fh:
            fh.write(text)


def _load(args) -> Instance:
    inst = load_instance(args.input)
    if args.r is not None:
        inst = inst.with_r(args.r)
    return inst


def cmd_solve(args) -> int:
    inst = _load(args)
    trace = run_sga(inst, tie_break=args.tie_break, seed=args.seed)
    if not is_r_test_set(trace.final, inst):
        raise AssertionError("SGA output failed re-validation")
    doc = {"picks": trace.final.picks, "size": trace.size, "trace": trace.to_records()}
    _emit(json.dumps(doc) + "\n", args.output)
    return EXIT_OK


def cmd_exact(args) -> int:
    inst = _load(args)
    cert = solve_exact(inst, 0 if args.skip_oracle else args.oracle_budget)
    if cert.certified and not is_r_test_set(cert.witness, inst):
        raise AssertionError("oracle witness failed re-validation")
    _emit(cert.to_json() + "\n", args.output)
    return EXIT_OK if cert.certified else EXIT_BUDGET


def cmd_bounds(args) -> int:
    inst = _load(args)
    budget = 0 if args.skip_oracle else args.oracle_budget
    rep = full_report(inst, budget=budget)
    if args.format == "csv":
        row = {"n": rep.n, "t": rep.t, "r": rep.r, "seed": args.seed, **rep.to_dict()}
        row.update({f"check_{k}": v for k, v in rep.assertions.items()})
        row["status"] = "oracle-skipped" if rep.status == "unknown" else rep.status
        _emit(rows_to_csv([row]), args.output)
    else:
        _emit(rep.to_json() + "\n", args.output)
    return EXIT_OK


def cmd_trace(args) -> int:
    inst = _load(args)
    trace = run_sga(inst, tie_break=args.tie_break, seed=args.seed)
    doc = {"steps": trace.to_records()}
    if not args.skip_oracle:
        cert = solve_exact(inst, args.oracle_budget)
        pt = trace_potential(trace, cert, inst)
        doc["potential"] = asdict(pt)
    _emit(json.dumps(doc) + "\n", args.output)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.input:
        with open(args.input) as fh:
            try:
                spec = GenSpec.from_dict(json.load(fh))
            except (json.JSONDecodeError, TypeError) as exc:
                raise InstanceFormatError(f"bad generator spec: {exc}") from exc
    else:
        spec = GenSpec(n=args.n, t=args.t, p=args.p, r=args.r or 1, seed=args.seed)
    _emit(generate(spec).to_json() + "\n", args.output)
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = SweepConfig(
        ns=parse_int_range(args.n_range),
        rs=parse_int_range(args.r_range),
        seeds=args.seeds,
        t=args.t,
        p=args.p,
        seed=args.seed,
        oracle_budget=args.oracle_budget,
        skip_oracle=args.skip_oracle,
        workers=args.workers,
    )
    rows = run_sweep(cfg)
    _emit(rows_to_csv(rows), args.output)
    summary = summary_to_csv(summarize(rows))
    if args.summary:
        _emit(summary, args.summary)
    else:
        sys.stderr.write(summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="testcover", description="Greedy and exact solvers for test sets with redundancy.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, needs_input=True):
        p.add_argument("--input", required=needs_input, help="instance JSON file")
        p.add_argument("--output", help="output file (default stdout)")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--oracle-budget", type=int, default=None, help="node limit for the exact search")
        p.add_argument("--r", type=int, default=None, help="override the redundancy")
        p.add_argument("--skip-oracle", action="store_true")
        p.add_argument("--tie-break", choices=["index", "random"], default="index")
        return p

    common(sub.add_parser("solve", help="run SGA")).set_defaults(func=cmd_solve)
    common(sub.add_parser("exact", help="certify the optimum")).set_defaults(func=cmd_exact)
    common(sub.add_parser("bounds", help="bounds report for one instance")).set_defaults(func=cmd_bounds)
    common(sub.add_parser("trace", help="SGA trace with potential values")).set_defaults(func=cmd_trace)

    g = common(sub.add_parser("gen", help="generate a random instance"), needs_input=False)
    g.add_argument("--n", type=int, default=6)
    g.add_argument("--t", type=int, default=10)
    g.add_argument("--p", type=float, default=0.5)
    g.set_defaults(func=cmd_gen)

    s = common(sub.add_parser("sweep", help="ratio study over generated instances"), needs_input=False)
    s.add_argument("--n-range", default="4-8", help='e.g. "4-8" or "4,6,8"')
    s.add_argument("--r-range", default="1-3")
    s.add_argument("--seeds", type=int, default=50, help="instances per (n, r) cell")
    s.add_argument("--t", type=int, default=10)
    s.add_argument("--p", type=float, default=0.5)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--summary", help="write the per-cell summary CSV here (default stderr)")
    s.set_defaults(func=cmd_sweep, oracle_budget=200_000)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InstanceFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
