"""Approximation bounds for SGA and their empirical checks against the exact oracle.

Natural logarithms throughout, except the ``log2 n`` factor in
:func:`lemma1_bound`.  Inequalities that are rational in the inputs are
checked with :class:`fractions.Fraction`, the rest in floating point.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .core import Instance, initial_measure, validate_no_complements
from .exact import OptimalCertificate, count_exactly_r, enumerate_optima, solve_exact
from .sga import SgaTrace, run_sga

THEOREM_NOTE = "leading part only; an additive O(ln ln n) term with unspecified constant is excluded"


class DegenerateInstanceError(ValueError):
    """The potential's base 1 - (r+1)/(r m*) is not positive."""


def rho1(hash_0: float, m_star: float) -> float:
    return math.log(hash_0) - math.log(m_star) + 1.0


def lemma1_bound(n: int, m_star: float, r: int) -> float:
    """Cap on the number of pairs an optimum differentiates exactly r times."""
    return 2.0 * n * math.log2(n) * m_star ** (r - 1)


def rho2(hash_0: float, hash_b: float, m_star: float, r: int) -> float:
    """Ratio form of the size bound, i.e. ``lemma2_size_bound = rho2 * m* + 1``."""
    if hash_b <= 0:
        raise ValueError("hash_b must be positive")
    return (
        math.log(hash_0)
        - math.log(hash_0 / hash_b) / (r + 1)
        + r / (r + 1) * math.log(r + 1)
        + 1.0
    )


def lemma2_size_bound(hash_0: float, hash_b: float, m_star: float, r: int) -> float:
    if hash_b <= 0:
        raise ValueError("size bound undefined for hash_b = 0")
    return rho2(hash_0, hash_b, m_star, r) * m_star + 1.0


def k_threshold(hash_0: float, hash_b: float, m_star: float, r: int) -> float:
    if hash_b <= 0:
        raise ValueError("k undefined for hash_b = 0")
    return r / (r + 1) * math.log((r + 1) * hash_0 / hash_b) * m_star


def potential_base(m_star: int, r: int) -> Fraction:
    return 1 - Fraction(r + 1, r * m_star)


def potential(measure: float, hash_b: float, m_star: int, r: int, k: float, steps_taken: int) -> float:
    """Residual measure offset by r/(r+1) #_B, discounted by base**(k - steps)."""
    base = potential_base(m_star, r)
    if base <= 0:
        raise DegenerateInstanceError(f"m*={m_star} <= (r+1)/r for r={r}")
    return (measure - r / (r + 1) * hash_b) * float(base) ** (k - steps_taken)


# ---------------------------------------------------------------------------
# balancing the two ratios


def rho2_worst(n: int, m_star: float, r: int) -> float:
    """rho2 with #_B replaced by its worst case, :func:`lemma1_bound`."""
    return rho2(initial_measure_nr(n, r), lemma1_bound(n, m_star, r), m_star, r)


def initial_measure_nr(n: int, r: int) -> int:
    return r * n * (n - 1) // 2


def min_rho(n: int, m_star: float, r: int) -> float:
    return min(rho1(initial_measure_nr(n, r), m_star), rho2_worst(n, m_star, r))


def balance_search(n: int, r: int) -> tuple[int, float]:
    """Integer m* in [1, r(n-1)] maximizing min(rho1, rho2), found by bisection.

    rho1 falls and rho2 rises in m*, so the maximizer sits at the last m*
    where rho1 >= rho2 or just after it.
    """
    h0 = initial_measure_nr(n, r)
    lo, hi = 1, r * (n - 1)

    def above(m):
        return rho1(h0, m) >= rho2_worst(n, m, r)

    if not above(lo):
        return lo, min_rho(n, lo, r)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if above(mid):
            lo = mid
        else:
            hi = mid - 1
    candidates = [m for m in (lo, lo + 1) if m <= r * (n - 1)]
    best = max(candidates, key=lambda m: (min_rho(n, m, r), -m))
    return best, min_rho(n, best, r)


@dataclass
class TheoremExpr:
    n: int
    r: int
    leading: float
    max_min: float
    argmax_m: int
    note: str = THEOREM_NOTE


def theorem_ratio_expr(n: int, r: int) -> TheoremExpr:
    if n < 3 or r < 1:
        raise ValueError("need n >= 3 and r >= 1")
    leading = (2.0 - 1.0 / (2 * r)) * math.log(n) + 1.5 * math.log(r)
    m, value = balance_search(n, r)
    return TheoremExpr(n, r, leading, value, m)


# ---------------------------------------------------------------------------
# potential trace


@dataclass
class PotentialTrace:
    k: float | None = None
    f_values: list[float | None] = field(default_factory=list)
    split: tuple[int, int, int] | None = None
    checks: dict[str, bool] = field(default_factory=dict)
    skipped: str | None = None

    @property
    def ok(self) -> bool:
        return self.skipped is None and all(self.checks.values())


def trace_potential(trace: SgaTrace, certificate: OptimalCertificate, instance: Instance,
                    hash_b: int | None = None) -> PotentialTrace:
    """Evaluate the discounted potential along an SGA run and check its inequalities.

    Checks (all must hold for a certified optimum with positive base):
      monotone   f never increases while part of the optimum is still unpicked
      f_prefix   f at the end of the prefix phase is at most f(empty)
      f_start    f(empty) < #_B / (r+1)
      prefix_k   the prefix phase has fewer than k picks
      size       the run's size is within lemma2_size_bound

    The monotone and f_prefix checks use exact rational arithmetic in the
    equivalent form (#' - c) <= base**s (# - c), c = r #_B/(r+1), which
    is also meaningful at base 0 (r = 1, m* = 2).
    """
    if not certificate.certified:
        return PotentialTrace(skipped="oracle did not certify an optimum")
    r, m = instance.r, certificate.m_star
    hb = certificate.hash_b if hash_b is None else hash_b
    base = potential_base(m, r)
    if base < 0:
        return PotentialTrace(skipped=f"degenerate m*={m} for r={r}")
    h0 = initial_measure(instance)
    k = k_threshold(h0, hb, m, r)
    c = Fraction(r * hb, r + 1)
    measures = trace.measures()
    steps = len(trace.steps)

    if base > 0:
        f_values = [potential(x, hb, m, r, k, t) for t, x in enumerate(measures)]
    else:
        f_values = [0.0 if k - t > 0 else None for t in range(len(measures))]

    opt = set(certificate.witness.picks)
    picked: set[int] = set()
    monotone = True
    for t, step in enumerate(trace.steps):
        if opt - picked:
            if measures[t + 1] - c > base * (measures[t] - c):
                monotone = False
        picked.add(step.test)

    t1 = max(t for t, x in enumerate(measures) if x >= hb)
    split = (t1, 1, steps - t1 - 1)
    f_prefix = measures[t1] - c <= base ** t1 * (h0 - c)
    if base > 0:
        log_f0 = math.log(h0 - float(c)) + k * math.log(float(base))
        f_start = log_f0 < math.log(hb / (r + 1))
    else:
        f_start = True  # f(empty) = 0 since k > 0
    checks = {
        "monotone": monotone,
        "f_prefix": bool(f_prefix),
        "f_start": f_start,
        "prefix_k": t1 < k,
        "size": steps <= lemma2_size_bound(h0, hb, m, r),
    }
    return PotentialTrace(k=k, f_values=f_values, split=split, checks=checks)


# ---------------------------------------------------------------------------
# reports


ASSERTIONS = ("sga_ge_opt", "rho1", "lemma2", "lemma2_min", "lemma1", "lemma1_all", "size_facts", "potential")


@dataclass
class BoundsReport:
    n: int
    t: int
    r: int
    hash_0: int
    sga_size: int
    status: str = "optimal"
    m_star: int | None = None
    hash_b: int | None = None
    min_hash_b: int | None = None
    max_hash_b: int | None = None
    num_optima: int | None = None
    rho1: float | None = None
    rho2: float | None = None
    lemma1_bound: float | None = None
    lemma2_size_bound: float | None = None
    theorem_expr: float | None = None
    ratio: float | None = None
    footnote_ok: bool = True
    assertions: dict[str, str] = field(default_factory=dict)
    potential_split: tuple[int, int, int] | None = None
    k: float | None = None

    @property
    def assertions_passed(self) -> str:
        vals = [v for v in self.assertions.values() if v != "skip"]
        if "fail" in vals:
            return "fail"
        return "pass" if vals else "skip"

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.assertions.items() if v == "fail"]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["assertions_passed"] = self.assertions_passed
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _flag(ok: bool) -> str:
    return "pass" if ok else "fail"


def full_report(
    instance: Instance,
    *,
    budget: int | None = None,
    trace: SgaTrace | None = None,
    certificate: OptimalCertificate | None = None,
    enumerate_limit: int | None = 200_000,
    strict_footnote: bool = False,
) -> BoundsReport:
    """Run SGA and the oracle, fill every bound and check each inequality.

    ``enumerate_limit`` bounds the node budget spent listing all optima (for
    min/max #_B); ``None`` removes the cap, 0 disables enumeration.  With
    ``strict_footnote`` the inequalities are not asserted on instances
    containing a pair of complementary tests.
    """
    trace = trace if trace is not None else run_sga(instance)
    n, r = instance.n, instance.r
    h0 = initial_measure(instance)
    report = BoundsReport(n=n, t=instance.t, r=r, hash_0=h0, sga_size=trace.size)
    report.footnote_ok = not validate_no_complements(instance)
    if n >= 3:
        report.theorem_expr = theorem_ratio_expr(n, r).leading
    cert = certificate if certificate is not None else solve_exact(instance, budget)
    report.status = cert.status
    if not cert.certified or (strict_footnote and not report.footnote_ok):
        report.assertions = {name: "skip" for name in ASSERTIONS}
        return report

    m, hb = cert.m_star, cert.hash_b
    report.m_star, report.hash_b = m, hb
    report.ratio = trace.size / m
    report.rho1 = rho1(h0, m)
    report.rho2 = rho2(h0, hb, m, r)
    report.lemma1_bound = lemma1_bound(n, m, r)
    report.lemma2_size_bound = lemma2_size_bound(h0, hb, m, r)

    a = report.assertions
    a["sga_ge_opt"] = _flag(trace.size >= m)
    a["rho1"] = _flag(trace.size <= report.rho1 * m)
    a["lemma2"] = _flag(trace.size <= report.lemma2_size_bound)
    a["lemma1"] = _flag(hb <= report.lemma1_bound)
    a["size_facts"] = _flag(math.ceil(math.log2(n)) <= m <= r * (n - 1))

    optima = None if enumerate_limit == 0 else enumerate_optima(instance, m, enumerate_limit)
    if optima:
        bs = [count_exactly_r(list(o), instance) for o in optima]
        report.num_optima = len(optima)
        report.min_hash_b, report.max_hash_b = min(bs), max(bs)
        a["lemma2_min"] = _flag(trace.size <= lemma2_size_bound(h0, report.min_hash_b, m, r))
        a["lemma1_all"] = _flag(report.max_hash_b <= report.lemma1_bound)
    else:
        a["lemma2_min"] = a["lemma1_all"] = "skip"

    pt = trace_potential(trace, cert, instance)
    report.potential_split, report.k = pt.split, pt.k
    a["potential"] = "skip" if pt.skipped else _flag(pt.ok)
    return report


def balance_grid(n: int, r: int, points: int = 20001) -> np.ndarray:
    """Real-valued grid over [1, r(n-1)] used for monotonicity scans."""
    return np.linspace(1.0, float(r * (n - 1)), points)
