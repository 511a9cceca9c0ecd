"""Instance model and differentiation bookkeeping for test sets with redundancy.

Items are the integers ``0..n-1``.  An unordered item pair ``{i, j}`` with
``i < j`` is addressed by a flat index (see :func:`pair_index`) so that
per-pair state lives in a single integer array.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np


class InfeasibleError(ValueError):
    """Raised when no subfamily of the tests is an r-test set."""


class InstanceFormatError(ValueError):
    """Malformed instance document."""


@dataclass(frozen=True, order=True)
class ItemPair:
    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError(f"an item pair needs two distinct items, got ({self.i}, {self.j})")
        if self.i > self.j:
            # canonical ordering
            a, b = self.j, self.i
            object.__setattr__(self, "i", a)
            object.__setattr__(self, "j", b)

    def index(self, n: int) -> int:
        return pair_index(self.i, self.j, n)


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(i: int, j: int, n: int) -> int:
    """Flat index of the pair ``{i, j}``; ``i < j`` is required."""
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def pair_from_index(e: int, n: int) -> ItemPair:
    i = 0
    while e >= n - 1 - i:
        e -= n - 1 - i
        i += 1
    return ItemPair(i, i + 1 + e)


def all_pairs(n: int) -> list[ItemPair]:
    return [ItemPair(i, j) for i, j in combinations(range(n), 2)]


def differentiates(test: Iterable[int], a: ItemPair) -> bool:
    """True iff exactly one item of ``a`` is in ``test``."""
    s = test if isinstance(test, (set, frozenset)) else set(test)
    return (a.i in s) != (a.j in s)


@dataclass(frozen=True)
class Instance:
    """Items ``0..n-1``, an indexed collection of tests, and redundancy ``r``."""

    n: int
    tests: tuple[frozenset[int], ...]
    r: int = 1

    def __post_init__(self):
        object.__setattr__(self, "tests", tuple(frozenset(int(x) for x in t) for t in self.tests))
        if self.n < 2:
            raise ValueError(f"need at least 2 items, got n={self.n}")
        if self.r < 1:
            raise ValueError(f"redundancy must be positive, got r={self.r}")
        for j, t in enumerate(self.tests):
            bad = [x for x in t if not 0 <= x < self.n]
            if bad:
                raise ValueError(f"test {j} has items outside 0..{self.n - 1}: {sorted(bad)}")

    @property
    def t(self) -> int:
        return len(self.tests)

    @property
    def num_pairs(self) -> int:
        return num_pairs(self.n)

    @cached_property
    def cover_sets(self) -> tuple[np.ndarray, ...]:
        """Per test, the sorted flat indices of the pairs it differentiates."""
        out = []
        for t in self.tests:
            inside = sorted(t)
            outside = [x for x in range(self.n) if x not in t]
            idx = [pair_index(min(a, b), max(a, b), self.n) for a in inside for b in outside]
            out.append(np.array(sorted(idx), dtype=np.int64))
        return tuple(out)

    @cached_property
    def incidence(self) -> np.ndarray:
        """Boolean matrix ``(t, num_pairs)``: test ``j`` differentiates pair ``e``."""
        m = np.zeros((self.t, self.num_pairs), dtype=bool)
        for j, cs in enumerate(self.cover_sets):
            m[j, cs] = True
        return m

    def with_r(self, r: int) -> "Instance":
        return Instance(self.n, self.tests, r)

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "tests": [sorted(t) for t in self.tests]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc) -> "Instance":
        if not isinstance(doc, dict):
            raise InstanceFormatError("instance must be a JSON object with keys n, r, tests")
        for key in ("n", "tests"):
            if key not in doc:
                raise InstanceFormatError(f"missing field {key!r}")
        n, r, tests = doc["n"], doc.get("r", 1), doc["tests"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise InstanceFormatError(f"field 'n' must be an integer, got {n!r}")
        if not isinstance(r, int) or isinstance(r, bool):
            raise InstanceFormatError(f"field 'r' must be an integer, got {r!r}")
        if not isinstance(tests, list):
            raise InstanceFormatError("field 'tests' must be a list of lists of item ids")
        for j, t in enumerate(tests):
            if not isinstance(t, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in t):
                raise InstanceFormatError(f"field 'tests[{j}]' must be a list of integer item ids")
        try:
            return cls(n, tuple(tests), r)
        except ValueError as exc:
            raise InstanceFormatError(str(exc)) from exc

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        return cls.from_dict(doc)


def load_instance(path) -> Instance:
    with open(path) as fh:
        return Instance.from_json(fh.read())


def save_instance(instance: Instance, path) -> None:
    with open(path, "w") as fh:
        fh.write(instance.to_json() + "\n")


@dataclass
class Solution:
    """Selected test indices in the order they were picked."""

    picks: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.picks = [int(j) for j in self.picks]
        if len(set(self.picks)) != len(self.picks):
            raise ValueError(f"duplicate test indices in {self.picks}")

    def __len__(self):
        return len(self.picks)

    def check(self, instance: Instance) -> None:
        bad = [j for j in self.picks if not 0 <= j < instance.t]
        if bad:
            raise ValueError(f"test indices {bad} out of range for {instance.t} tests")


def _picked_tests(picks, instance: Instance | None):
    if isinstance(picks, Solution):
        picks = picks.picks
    out = []
    for p in picks:
        if isinstance(p, (int, np.integer)):
            if instance is None:
                raise TypeError("test indices need an instance to resolve them")
            out.append(instance.tests[p])
        else:
            out.append(frozenset(p))
    return out


def perp_count(a: ItemPair, picks, instance: Instance | None = None) -> int:
    """Number of picked tests that differentiate ``a``.

    ``picks`` may hold test indices (resolved against ``instance``) or
    the item sets themselves.
    """
    return sum(differentiates(t, a) for t in _picked_tests(picks, instance))


def pair_counts(instance: Instance, picks) -> np.ndarray:
    """Batch recomputation of the uncapped count for every pair."""
    if isinstance(picks, Solution):
        picks = picks.picks
    picks = list(picks)
    if not picks:
        return np.zeros(instance.num_pairs, dtype=np.int64)
    if not all(isinstance(p, (int, np.integer)) for p in picks):
        # raw item sets rather than test indices
        return Instance(instance.n, tuple(picks), instance.r).incidence.sum(axis=0).astype(np.int64)
    return instance.incidence[picks].sum(axis=0).astype(np.int64)


def initial_measure(instance: Instance) -> int:
    return instance.r * instance.n * (instance.n - 1) // 2


def measure_of(instance: Instance, picks) -> int:
    """Residual demand of ``picks`` computed from scratch."""
    counts = pair_counts(instance, picks)
    return int(np.maximum(instance.r - counts, 0).sum())


def is_r_test_set(picks, instance: Instance) -> bool:
    if isinstance(picks, Solution):
        picks.check(instance)
    return bool((pair_counts(instance, picks) >= instance.r).all())


def is_feasible(instance: Instance) -> bool:
    return is_r_test_set(range(instance.t), instance)


def validate_no_complements(instance: Instance) -> list[tuple[int, int]]:
    """Index pairs ``(j, k)``, ``j < k``, where test j is the complement of test k."""
    full = frozenset(range(instance.n))
    first: dict[frozenset, list[int]] = {}
    for k, t in enumerate(instance.tests):
        first.setdefault(t, []).append(k)
    out = []
    for j, t in enumerate(instance.tests):
        for k in first.get(full - t, ()):
            if j < k:
                out.append((j, k))
    return sorted(out)


class DifferentiationState:
    """Uncapped per-pair counts plus the running residual measure.

    ``counts`` holds the true number of applied tests differentiating each
    pair; residual demand ``max(r - count, 0)`` is derived from it.
    """

    def __init__(self, instance: Instance):
        self.instance = instance
        self.counts = np.zeros(instance.num_pairs, dtype=np.int64)
        self.measure = initial_measure(instance)
        self.applied: list[int] = []
        self._applied_set: set[int] = set()

    def delta(self, j: int) -> int:
        """Residual demand test ``j`` would satisfy if applied now."""
        cs = self.instance.cover_sets[j]
        return int(np.count_nonzero(self.counts[cs] < self.instance.r))

    def apply(self, j: int) -> "DifferentiationState":
        if j in self._applied_set:
            raise ValueError(f"test {j} already applied")
        if not 0 <= j < self.instance.t:
            raise IndexError(f"test index {j} out of range")
        d = self.delta(j)
        self.counts[self.instance.cover_sets[j]] += 1
        self.measure -= d
        self.applied.append(j)
        self._applied_set.add(j)
        return self

    def recomputed_measure(self) -> int:
        return int(np.maximum(self.instance.r - self.counts, 0).sum())

    def copy(self) -> "DifferentiationState":
        other = DifferentiationState.__new__(DifferentiationState)
        other.instance = self.instance
        other.counts = self.counts.copy()
        other.measure = self.measure
        other.applied = list(self.applied)
        other._applied_set = set(self._applied_set)
        return other


def apply_test(state: DifferentiationState, j: int) -> DifferentiationState:
    return state.apply(j)


def all_proper_subsets(n: int) -> list[frozenset[int]]:
    """Nonempty proper subsets of ``0..n-1`` ordered by (size, sorted items)."""
    out = []
    for k in range(1, n):
        out.extend(frozenset(c) for c in combinations(range(n), k))
    return out


def make_instance(n: int, tests: Sequence[Iterable[int]], r: int = 1) -> Instance:
    return Instance(n, tuple(frozenset(t) for t in tests), r)
