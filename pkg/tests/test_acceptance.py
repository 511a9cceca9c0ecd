"""Exit criteria.  Each test prints one ``[PASS]``/``[FAIL]`` line.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""
import json
import math
import os
import random
import time
from itertools import combinations

import numpy as np
import pytest

import oracles
from testcover.analysis import (
    balance_search,
    initial_measure_nr,
    lemma1_bound,
    lemma2_size_bound,
    min_rho,
    rho1,
    rho2_worst,
    trace_potential,
)
from testcover.cli import main
from testcover.core import InfeasibleError, Instance, all_proper_subsets, is_feasible, is_r_test_set, make_instance
from testcover.exact import count_exactly_r, enumerate_optima, solve_exact
from testcover.generators import GenSpec, gen_random
from testcover.multicover import reduce, verify_equivalence
from testcover.sga import run_sga
from testcover.sweep import SweepConfig, rows_to_csv, run_sweep

# 5 values of n x 3 values of r x 34 seeds = 510 instances (>= 500)
SWEEP = SweepConfig(ns=[4, 5, 6, 7, 8], rs=[1, 2, 3], seeds=34, t=12, p=0.5, seed=20240501)
SWEEP_ARGS = ["sweep", "--n-range", "4-8", "--r-range", "1-3", "--seeds", "34", "--t", "12", "--p", "0.5",
              "--seed", "20240501"]


@pytest.fixture
def verdict(capsys):
    def emit(label, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, detail
    return emit


@pytest.fixture(scope="module")
def sweep():
    t0 = time.perf_counter()
    rows = run_sweep(SWEEP)
    elapsed = time.perf_counter() - t0
    items = []
    for row in rows:
        inst = gen_random(GenSpec(n=row["n"], t=row["t"], p=SWEEP.p, r=row["r"], seed=row["seed"]))
        items.append((row, inst))
    return items, elapsed


@pytest.fixture(scope="module")
def certified(sweep):
    """(row, instance, certificate, trace) for every oracle-certified sweep instance."""
    items, _ = sweep
    out = []
    for row, inst in items:
        if row.get("status") != "optimal":
            continue
        cert = solve_exact(inst)
        assert cert.m_star == row["m_star"]
        out.append((row, inst, cert, run_sga(inst)))
    return out


def test_ac01_reduction_iff(verdict):
    rng = random.Random(1)
    t0 = time.perf_counter()
    agree, outcomes = 0, set()
    for _ in range(1000):
        n, t, r = rng.randint(2, 8), rng.randint(0, 12), rng.randint(1, 3)
        inst = make_instance(n, [{i for i in range(n) if rng.random() < 0.5} for _ in range(t)], r)
        picks = [j for j in range(t) if rng.random() < 0.7]
        lhs = is_r_test_set(picks, inst)
        agree += lhs == reduce(inst).is_r_cover(picks)
        outcomes.add(lhs)
    elapsed = time.perf_counter() - t0
    verdict("AC1 reduction iff", agree == 1000 and outcomes == {True, False} and elapsed < 5.0,
            f"{agree}/1000 agree, {elapsed:.2f}s")


def test_ac02_sga_equals_greedy_multicover(verdict):
    rng = random.Random(2)
    t0 = time.perf_counter()
    ok = done = 0
    while done < 200:
        n, t, r = rng.randint(2, 8), rng.randint(1, 12), rng.randint(1, 3)
        inst = make_instance(n, [{i for i in range(n) if rng.random() < 0.5} for _ in range(t)], r)
        if not is_feasible(inst):
            continue
        ok += verify_equivalence(inst)
        done += 1
    elapsed = time.perf_counter() - t0
    verdict("AC2 SGA == greedy multicover", ok == 200 and elapsed < 10.0, f"{ok}/200 identical, {elapsed:.2f}s")


def test_ac03_validity_exhaustive_n3(verdict):
    subsets = all_proper_subsets(3)
    assert len(subsets) == 6
    valid = raised = total = 0
    t0 = time.perf_counter()
    for k in range(len(subsets) + 1):
        for fam in combinations(subsets, k):
            for r in (1, 2):
                inst = Instance(3, fam, r)
                total += 1
                if is_feasible(inst):
                    valid += is_r_test_set(run_sga(inst).final, inst)
                else:
                    try:
                        run_sga(inst)
                    except InfeasibleError:
                        raised += 1
    feasible = sum(is_feasible(Instance(3, fam, r)) for k in range(7) for fam in combinations(subsets, k) for r in (1, 2))
    ok = total == 128 and valid == feasible and raised == total - feasible
    verdict("AC3 validity (n=3 exhaustive)", ok,
            f"{total} instances, {valid} valid outputs, {raised} infeasibility errors, {time.perf_counter() - t0:.2f}s")


def test_ac04_rho1_bound(sweep, verdict):
    items, elapsed = sweep
    certs = [(row, inst) for row, inst in items if row.get("status") == "optimal"]
    bad = [row for row, _ in certs if not row["sga_size"] <= (math.log(row["hash_0"]) - math.log(row["m_star"]) + 1) * row["m_star"]]
    ok = len(items) >= 500 and len(certs) == len(items) and not bad and elapsed < 120
    verdict("AC4 rho1 bound", ok, f"{len(certs)}/{len(items)} certified, {len(bad)} violations, sweep {elapsed:.1f}s")


def test_ac05_size_bound(certified, verdict):
    bad = []
    for row, inst, cert, trace in certified:
        bound = lemma2_size_bound(row["hash_0"], cert.hash_b, cert.m_star, inst.r)
        if not trace.size <= bound:
            bad.append(row)
    verdict("AC5 size bound", not bad and len(certified) >= 500, f"{len(certified)} instances, {len(bad)} violations")


def test_ac06_exactly_r_cap(certified, verdict, tmp_path_factory):
    dump_dir = os.environ.get("TESTCOVER_COUNTEREXAMPLES") or str(tmp_path_factory.mktemp("counterexamples"))
    bad, all_optima_checked = [], 0
    for row, inst, cert, _ in certified:
        cap = lemma1_bound(inst.n, cert.m_star, inst.r)
        if count_exactly_r(cert.witness, inst) > cap:
            bad.append({"instance": inst.to_dict(), "witness": cert.witness.picks, "cap": cap})
        if inst.n <= 5:
            # plain enumeration, independent of the branch-and-bound search
            m, opts = oracles.optima(inst.n, inst.r, list(inst.tests))
            assert m == cert.m_star
            assert enumerate_optima(inst, m) == opts
            for opt in opts:
                hb = oracles.exactly_r(inst.n, inst.r, [inst.tests[j] for j in opt])
                if hb > cap:
                    bad.append({"instance": inst.to_dict(), "witness": list(opt), "cap": cap})
            all_optima_checked += 1
    for i, ce in enumerate(bad):
        with open(os.path.join(dump_dir, f"exactly_r_counterexample_{i}.json"), "w") as fh:
            json.dump(ce, fh)
    detail = f"{len(certified)} witnesses, all optima of {all_optima_checked} n<=5 instances, {len(bad)} violations"
    if bad:
        detail += f" (dumped to {dump_dir})"
    verdict("AC6 exactly-r cap", not bad and all_optima_checked > 0, detail)


def test_ac07_potential(certified, verdict):
    checked, bad, skipped = 0, [], 0
    for row, inst, cert, trace in certified:
        if cert.m_star < 2:
            continue
        pt = trace_potential(trace, cert, inst)
        if pt.skipped:
            skipped += 1
            continue
        checked += 1
        if not (pt.checks["monotone"] and pt.checks["f_start"] and pt.checks["prefix_k"] and pt.checks["f_prefix"]):
            bad.append((row["seed"], pt.checks))
    verdict("AC7 potential function", not bad and skipped == 0 and checked > 0,
            f"{checked} traces, {skipped} skipped, {len(bad)} violations")


def test_ac08_size_facts(certified, verdict):
    bad = [row for row, inst, cert, _ in certified
           if not math.ceil(math.log2(inst.n)) <= cert.m_star <= inst.r * (inst.n - 1)]
    verdict("AC8 size facts", not bad, f"{len(certified)} instances, {len(bad)} violations")


def test_ac09_balancing(verdict):
    worst_gap, mono_ok = 0.0, True
    for n in (16, 64, 256):
        for r in (1, 2, 3):
            _, val = balance_search(n, r)
            ms = np.arange(1, r * (n - 1) + 1)
            scan = max(min_rho(n, int(m), r) for m in ms)
            worst_gap = max(worst_gap, abs(val - scan))
            h0 = initial_measure_nr(n, r)
            for grid in (ms.astype(float), np.linspace(1.0, r * (n - 1), 20001)):
                r1 = np.array([rho1(h0, m) for m in grid])
                r2 = np.array([rho2_worst(n, m, r) for m in grid])
                mono_ok &= bool((np.diff(r1) < 0).all() and (np.diff(r2) >= 0).all())
                if r > 1:
                    mono_ok &= bool((np.diff(r2) > 0).all())
    verdict("AC9 balancing", worst_gap <= 1e-9 and mono_ok, f"max |search - scan| = {worst_gap:.2e}, monotone={mono_ok}")


def test_ac10_determinism(tmp_path, verdict):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(SWEEP_ARGS + ["--output", str(a), "--summary", str(tmp_path / "sa.csv")]) == 0
    assert main(SWEEP_ARGS + ["--output", str(b), "--summary", str(tmp_path / "sb.csv")]) == 0
    same = a.read_bytes() == b.read_bytes()
    matches_lib = a.read_text() == rows_to_csv(run_sweep(SWEEP))
    verdict("AC10 determinism", same and matches_lib, f"{len(a.read_bytes())} bytes, identical={same}")
