"""Seeded instance generators: Bernoulli random tests and string barcoding."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .core import Instance


@dataclass
class GenSpec:
    kind: str = "random"  # "random" | "barcode"
    n: int = 6
    t: int = 10
    p: float = 0.5
    r: int = 1
    seed: int = 0
    sequences: list[str] = field(default_factory=list)
    min_len: int = 1
    max_len: int = 1

    def __post_init__(self):
        if self.kind not in ("random", "barcode"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == "random" and not 0 < self.p < 1:
            raise ValueError(f"inclusion probability must lie in (0, 1), got {self.p}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_dict(cls, doc: dict) -> "GenSpec":
        return cls(**doc)


def gen_random(spec: GenSpec) -> Instance:
    """``t`` tests, each item included independently with probability ``p``."""
    rng = np.random.default_rng(spec.seed)
    mask = rng.random((spec.t, spec.n)) < spec.p
    tests = tuple(frozenset(np.flatnonzero(row).tolist()) for row in mask)
    return Instance(spec.n, tests, spec.r)


def gen_barcode(spec: GenSpec) -> Instance:
    """Tests are the item sets of sequences containing each candidate substring.

    Candidates are all contiguous substrings with length in
    ``[min_len, max_len]``, scanned by (length, lexicographic order).  Empty and
    full occurrence sets are dropped and equal sets are kept once.
    """
    seqs = list(spec.sequences)
    if len(seqs) < 2:
        raise ValueError("barcoding needs at least two sequences")
    n = len(seqs)
    subs = {
        s[i : i + L]
        for s in seqs
        for L in range(spec.min_len, spec.max_len + 1)
        for i in range(len(s) - L + 1)
    }
    seen: set[frozenset[int]] = set()
    tests = []
    for sub in sorted(subs, key=lambda x: (len(x), x)):
        occ = frozenset(i for i, s in enumerate(seqs) if sub in s)
        if not occ or len(occ) == n or occ in seen:
            continue
        seen.add(occ)
        tests.append(occ)
    return Instance(n, tuple(tests), spec.r)


def generate(spec: GenSpec) -> Instance:
    return gen_random(spec) if spec.kind == "random" else gen_barcode(spec)
