"""Exact minimum r-test sets by iterative-deepening branch and bound.

Only meant for small instances (roughly n <= 12, t <= 20).  The search
visits index combinations in lexicographic order, so the first witness
found at the optimal size is the lexicographically smallest optimum.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .core import InfeasibleError, Instance, Solution, initial_measure, is_feasible, is_r_test_set, pair_counts


@dataclass
class OptimalCertificate:
    status: str  # "optimal" or "unknown"
    m_star: int | None = None
    witness: Solution = field(default_factory=Solution)
    hash_b: int | None = None
    nodes: int = 0
    lower_bound: int = 0

    @property
    def certified(self) -> bool:
        return self.status == "optimal"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "m_star": self.m_star,
            "witness": list(self.witness.picks),
            "hash_b": self.hash_b,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class _BudgetExhausted(Exception):
    pass


def count_exactly_r(picks, instance: Instance) -> int:
    """Pairs differentiated by exactly r of the picked tests."""
    if not is_r_test_set(picks, instance):
        raise ValueError("count_exactly_r needs an r-test set")
    return int(np.count_nonzero(pair_counts(instance, picks) == instance.r))


class _Search:
    def __init__(self, instance: Instance, budget: int | None):
        self.inst = instance
        self.r = instance.r
        self.inc = instance.incidence.astype(np.int64)
        self.t = instance.t
        # suffix[j, e]: tests with index >= j that differentiate pair e
        suffix = np.zeros((self.t + 1, instance.num_pairs), dtype=np.int64)
        for j in range(self.t - 1, -1, -1):
            suffix[j] = suffix[j + 1] + self.inc[j]
        self.suffix = suffix
        self.budget = budget
        self.nodes = 0

    def _tick(self):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _BudgetExhausted

    def run(self, k: int, collect_all: bool = False) -> list[tuple[int, ...]]:
        found: list[tuple[int, ...]] = []
        residual = np.full(self.inst.num_pairs, self.r, dtype=np.int64)
        self._dfs(0, k, residual, [], found, collect_all)
        return found

    def _dfs(self, start, slots, residual, chosen, found, collect_all) -> bool:
        self._tick()
        measure = int(residual.sum())
        if measure == 0:
            found.append(tuple(chosen))
            return not collect_all
        if slots == 0 or start >= self.t:
            return False
        if residual.max() > slots:
            return False
        if (residual > self.suffix[start]).any():
            return False
        alive = residual > 0
        deltas = self.inc[start:, :][:, alive].sum(axis=1)
        top = np.sort(deltas)[::-1][:slots]
        if measure > top.sum():
            return False
        for j in range(start, self.t):
            if deltas[j - start] == 0:
                continue
            nxt = np.maximum(residual - self.inc[j], 0)
            chosen.append(j)
            stop = self._dfs(j + 1, slots - 1, nxt, chosen, found, collect_all)
            chosen.pop()
            if stop:
                return True
        return False


def lower_bound(instance: Instance) -> int:
    """max(ceil(log2 n), ceil(#0 / largest single-test delta), r)."""
    best = max((len(c) for c in instance.cover_sets), default=0)
    lb = max(math.ceil(math.log2(instance.n)), instance.r)
    if best:
        lb = max(lb, -(-initial_measure(instance) // best))
    return lb


def solve_exact(instance: Instance, budget: int | None = None) -> OptimalCertificate:
    """Optimal size, the lexicographically smallest optimal witness, and its #_B.

    ``budget`` caps the number of search nodes; when it runs out the
    certificate comes back with ``status="unknown"`` and no m*.
    """
    if not is_feasible(instance):
        raise InfeasibleError("the full test collection is not an r-test set")
    search = _Search(instance, budget)
    lb = lower_bound(instance)
    try:
        for k in range(lb, instance.t + 1):
            found = search.run(k)
            if found:
                witness = Solution(list(found[0]))
                return OptimalCertificate(
                    status="optimal",
                    m_star=k,
                    witness=witness,
                    hash_b=count_exactly_r(witness, instance),
                    nodes=search.nodes,
                    lower_bound=lb,
                )
    except _BudgetExhausted:
        return OptimalCertificate(status="unknown", nodes=search.nodes, lower_bound=lb)
    raise AssertionError("feasible instance without a solution of size <= t")


def enumerate_optima(instance: Instance, m_star: int, budget: int | None = None) -> list[tuple[int, ...]] | None:
    """Every r-test set of size ``m_star`` in lexicographic order; None if the budget runs out."""
    search = _Search(instance, budget)
    try:
        return search.run(m_star, collect_all=True)
    except _BudgetExhausted:
        return None
