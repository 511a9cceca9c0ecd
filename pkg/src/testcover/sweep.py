"""Batch ratio study: generate feasible instances, run SGA and the oracle, report bounds."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analysis import ASSERTIONS, full_report
from .core import is_feasible, is_r_test_set
from .generators import GenSpec, gen_random
from .sga import run_sga

CSV_COLUMNS = [
    "n", "t", "r", "seed", "m_star", "sga_size", "ratio", "rho1", "hash_b",
    "lemma1_bound", "lemma2_size_bound", "assertions_passed",
]
EXTRA_COLUMNS = [
    "status", "hash_0", "rho2", "theorem_expr", "min_hash_b", "max_hash_b",
    "footnote_ok", "attempts", *[f"check_{a}" for a in ASSERTIONS], "error",
]
SUMMARY_COLUMNS = ["n", "r", "instances", "certified", "max_ratio", "failures"]


@dataclass
class SweepConfig:
    ns: list[int] = field(default_factory=lambda: [4, 5, 6, 7, 8])
    rs: list[int] = field(default_factory=lambda: [1, 2, 3])
    seeds: int = 50
    t: int = 10
    p: float = 0.5
    seed: int = 0
    oracle_budget: int | None = 200_000
    skip_oracle: bool = False
    enumerate_limit: int | None = 200_000
    max_attempts: int = 1000
    workers: int = 1

    def cells(self) -> list[tuple[int, int, int]]:
        return [(n, r, i) for n in self.ns for r in self.rs for i in range(self.seeds)]


def instance_seed(base: int, n: int, r: int, i: int, attempt: int) -> int:
    ss = np.random.SeedSequence([base, n, r, i, attempt])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def run_cell(cfg: SweepConfig, n: int, r: int, i: int) -> dict:
    row: dict = {"n": n, "t": cfg.t, "r": r}
    for attempt in range(cfg.max_attempts):
        seed = instance_seed(cfg.seed, n, r, i, attempt)
        inst = gen_random(GenSpec(n=n, t=cfg.t, p=cfg.p, r=r, seed=seed))
        if is_feasible(inst):
            break
    else:
        row.update(seed=seed, attempts=cfg.max_attempts, error="no feasible instance", assertions_passed="skip")
        return row
    row.update(seed=seed, attempts=attempt + 1)
    trace = run_sga(inst)
    if not is_r_test_set(trace.final, inst):
        raise AssertionError(f"SGA returned a non r-test set for seed {seed}")
    budget = 0 if cfg.skip_oracle else cfg.oracle_budget
    rep = full_report(inst, budget=budget, trace=trace, enumerate_limit=cfg.enumerate_limit)
    row.update(
        sga_size=rep.sga_size, m_star=rep.m_star, ratio=rep.ratio, rho1=rep.rho1, hash_b=rep.hash_b,
        lemma1_bound=rep.lemma1_bound, lemma2_size_bound=rep.lemma2_size_bound,
        assertions_passed=rep.assertions_passed, status="oracle-skipped" if rep.status == "unknown" else rep.status,
        hash_0=rep.hash_0, rho2=rep.rho2, theorem_expr=rep.theorem_expr, min_hash_b=rep.min_hash_b,
        max_hash_b=rep.max_hash_b, footnote_ok=rep.footnote_ok,
    )
    for a in ASSERTIONS:
        row[f"check_{a}"] = rep.assertions.get(a, "skip")
    return row


def _run_cell_args(args):
    return run_cell(*args)


def run_sweep(cfg: SweepConfig) -> list[dict]:
    """One row per (n, r, seed index), always in cell order."""
    jobs = [(cfg, n, r, i) for n, r, i in cfg.cells()]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            return list(pool.map(_run_cell_args, jobs, chunksize=8))
    return [run_cell(*job) for job in jobs]


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = CSV_COLUMNS + EXTRA_COLUMNS
    w.writerow(cols)
    for row in rows:
        w.writerow([_fmt(row.get(c)) for c in cols])
    return buf.getvalue()


def summarize(rows: list[dict]) -> list[dict]:
    """Max observed ratio per (n, r) cell."""
    cells: dict[tuple[int, int], dict] = {}
    for row in rows:
        cell = cells.setdefault(
            (row["n"], row["r"]),
            {"n": row["n"], "r": row["r"], "instances": 0, "certified": 0, "max_ratio": None, "failures": 0},
        )
        cell["instances"] += 1
        if row.get("ratio") is not None:
            cell["certified"] += 1
            cell["max_ratio"] = row["ratio"] if cell["max_ratio"] is None else max(cell["max_ratio"], row["ratio"])
        if row.get("assertions_passed") == "fail":
            cell["failures"] += 1
    return list(cells.values())


def summary_to_csv(summary: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_COLUMNS)
    for cell in summary:
        w.writerow([_fmt(cell[c]) for c in SUMMARY_COLUMNS])
    return buf.getvalue()


def parse_int_range(text: str) -> list[int]:
    """``"4-8"`` -> [4..8], ``"1,2,3"`` -> [1, 2, 3], ``""`` -> []."""
    out: list[int] = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "-" in part:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out

