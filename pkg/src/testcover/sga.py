"""Set-cover greedy algorithm (SGA) with lazily re-evaluated deltas."""
from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field

import numpy as np

from .core import DifferentiationState, InfeasibleError, Instance, Solution, is_feasible


@dataclass(frozen=True)
class SgaStep:
    test: int
    measure_before: int
    measure_after: int
    delta: int


@dataclass
class SgaTrace:
    steps: list[SgaStep] = field(default_factory=list)
    final: Solution = field(default_factory=Solution)

    @property
    def size(self) -> int:
        return len(self.final)

    def measures(self) -> list[int]:
        """Measure before the first pick followed by the measure after each pick."""
        if not self.steps:
            return []
        return [self.steps[0].measure_before] + [s.measure_after for s in self.steps]

    def to_records(self) -> list[dict]:
        return [
            {"test": s.test, "measure_before": s.measure_before, "measure_after": s.measure_after}
            for s in self.steps
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_records())

    @classmethod
    def from_records(cls, records: list[dict]) -> "SgaTrace":
        steps = [
            SgaStep(int(d["test"]), int(d["measure_before"]), int(d["measure_after"]),
                    int(d["measure_before"]) - int(d["measure_after"]))
            for d in records
        ]
        return cls(steps, Solution([s.test for s in steps]))


def greedy_delta(state: DifferentiationState, j: int) -> int:
    """Number of still-alive pairs (count < r) that test ``j`` differentiates."""
    return state.delta(j)


def _priority(t: int, tie_break: str, seed: int | None) -> list[int]:
    if tie_break == "index":
        return list(range(t))
    if tie_break == "random":
        rng = np.random.default_rng(seed)
        return [int(x) for x in rng.permutation(t)]
    raise ValueError(f"unknown tie-break mode {tie_break!r}")


def run_sga(
    instance: Instance,
    *,
    tie_break: str = "index",
    seed: int | None = None,
    check_feasible: bool = False,
) -> SgaTrace:
    """Pick tests greedily until every pair is differentiated ``r`` times.

    Each step takes the unpicked test with the largest residual delta, ties
    going to the lowest index (or to a seeded random order when
    ``tie_break="random"``).  Cached deltas only ever shrink as counts grow,
    so the heap top is re-evaluated and committed once its fresh value still
    beats every stale key.
    """
    if check_feasible and not is_feasible(instance):
        raise InfeasibleError("the full test collection is not an r-test set")
    prio = _priority(instance.t, tie_break, seed)
    state = DifferentiationState(instance)
    heap = [(-state.delta(j), prio[j], j) for j in range(instance.t)]
    heapq.heapify(heap)
    trace = SgaTrace()
    while state.measure > 0:
        chosen = None
        while heap:
            neg, p, j = heapq.heappop(heap)
            d = state.delta(j)
            if d == -neg:
                chosen = (j, d)
                break
            heapq.heappush(heap, (-d, p, j))
        if chosen is None or chosen[1] == 0:
            raise InfeasibleError(
                f"no remaining test reduces the measure ({state.measure} demand units left)"
            )
        j, d = chosen
        before = state.measure
        state.apply(j)
        trace.steps.append(SgaStep(j, before, state.measure, d))
    trace.final = Solution(list(state.applied))
    return trace


def brute_force_step(state: DifferentiationState) -> tuple[int, int]:
    """Recompute every unpicked test's delta; return (best index, delta), lowest index on ties."""
    best, best_d = -1, -1
    taken = set(state.applied)
    for j in range(state.instance.t):
        if j in taken:
            continue
        d = state.delta(j)
        if d > best_d:
            best, best_d = j, d
    return best, best_d
