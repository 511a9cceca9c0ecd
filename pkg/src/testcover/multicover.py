"""Reduction to constrained set multicover and a plain greedy multicover solver.

The solver here deliberately shares no delta code with :mod:`testcover.sga`;
it works on explicit element sets and a residual-demand table so that
comparing the two selections is a genuine cross-check.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .core import InfeasibleError, Instance, Solution, pair_index
from .sga import run_sga


@dataclass(frozen=True)
class MulticoverInstance:
    universe_size: int
    subsets: tuple[frozenset[int], ...]
    coverage: int

    def to_dict(self) -> dict:
        return {"N": self.universe_size, "r": self.coverage, "subsets": [sorted(s) for s in self.subsets]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> "MulticoverInstance":
        return cls(int(doc["N"]), tuple(frozenset(s) for s in doc["subsets"]), int(doc["r"]))

    def is_r_cover(self, picks) -> bool:
        hits = [0] * self.universe_size
        for j in picks:
            for e in self.subsets[j]:
                hits[e] += 1
        return all(h >= self.coverage for h in hits)


def pair_cover(test: frozenset[int], n: int) -> frozenset[int]:
    """Element ids of ``{{i, j} : i in test, j not in test}``."""
    rest = [j for j in range(n) if j not in test]
    return frozenset(pair_index(min(i, j), max(i, j), n) for i in test for j in rest)


def reduce(instance: Instance) -> MulticoverInstance:
    n = instance.n
    return MulticoverInstance(
        universe_size=n * (n - 1) // 2,
        subsets=tuple(pair_cover(t, n) for t in instance.tests),
        coverage=instance.r,
    )


def greedy_multicover(mc: MulticoverInstance) -> Solution:
    """Repeatedly take the unused subset covering the most outstanding demand."""
    demand = {e: mc.coverage for e in range(mc.universe_size)}
    unused = list(range(len(mc.subsets)))
    picks: list[int] = []
    while demand:
        best, gain = None, 0
        for j in unused:
            g = sum(1 for e in mc.subsets[j] if e in demand)
            if g > gain:
                best, gain = j, g
        if best is None:
            raise InfeasibleError(f"{len(demand)} elements cannot reach coverage {mc.coverage}")
        unused.remove(best)
        picks.append(best)
        for e in mc.subsets[best]:
            if e in demand:
                demand[e] -= 1
                if demand[e] == 0:
                    del demand[e]
    return Solution(picks)


def verify_equivalence(instance: Instance) -> bool:
    """SGA and greedy multicover on the reduced instance pick identical sequences."""
    try:
        sga_picks = run_sga(instance).final.picks
    except InfeasibleError:
        sga_picks = None
    try:
        mc_picks = greedy_multicover(reduce(instance)).picks
    except InfeasibleError:
        mc_picks = None
    return sga_picks == mc_picks
