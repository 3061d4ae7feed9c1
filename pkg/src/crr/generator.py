"""Seeded random CRR instances.

Random streams come from numpy's PCG64 bit generator (stable across
platforms for a fixed seed). Zero positions are picked with a partial
Fisher-Yates shuffle driven by ``Generator.integers``, so a seed pins the
instance bit for bit.

The number of zero cells in an ``n x n`` matrix is ``round_half_up(p * n**2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from crr.core import BitMatrix, CrrInstance, Hypergraph, Arc, derive_r, derive_s

__all__ = [
    "GenSpec",
    "make_rng",
    "zero_count",
    "random_zero_matrix",
    "gen_instance",
    "gen_pq_uniform",
    "gen_pq_band",
    "gen_sat_instance",
    "derive_seed",
]

_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class GenSpec:
    n: int
    m: int
    p: float
    q: float
    seed: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"n and m must be >= 1, got ({self.n}, {self.m})")
        for name in ("p", "q"):
            val = getattr(self, name)
            if not 0.0 <= val <= 1.0:
                raise ValueError(f"{name}={val} outside [0, 1]")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed) & _SEED_MASK))


def derive_seed(*parts: int) -> int:
    """Deterministic 64-bit child seed from a tuple of non-negative ints."""
    ss = np.random.SeedSequence([int(x) & _SEED_MASK for x in parts])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def zero_count(fraction: float, cells: int) -> int:
    return min(cells, int(math.floor(fraction * cells + 0.5)))


def _partial_shuffle(rng: np.random.Generator, size: int, k: int) -> np.ndarray:
    idx = np.arange(size)
    for i in range(k):
        j = int(rng.integers(i, size))
        idx[i], idx[j] = idx[j], idx[i]
    return idx[:k]


def random_zero_matrix(rng: np.random.Generator, size: int, fraction: float) -> BitMatrix:
    """Square 0/1 matrix with exactly ``zero_count(fraction, size**2)`` zeros."""
    cells = size * size
    flat = np.ones(cells, dtype=np.bool_)
    flat[_partial_shuffle(rng, cells, zero_count(fraction, cells))] = False
    return BitMatrix(flat.reshape(size, size))


def gen_instance(spec: GenSpec, source: str = "random") -> CrrInstance:
    rng = make_rng(spec.seed)
    s = random_zero_matrix(rng, spec.n, spec.p)
    r = random_zero_matrix(rng, spec.m, spec.q)
    meta = {"seed": spec.seed, "p": spec.p, "q": spec.q, "source": source}
    return CrrInstance(s, r, meta)


def gen_pq_uniform(n: int, m: int, seed: int) -> CrrInstance:
    """Draw p, q uniformly from [0, 1) and generate with the same seed."""
    rng = make_rng(seed)
    p, q = float(rng.random()), float(rng.random())
    return gen_instance(GenSpec(n, m, p, q, seed), source="uniform")


def gen_pq_band(n: int, m: int, lo: float, hi: float, seed: int) -> CrrInstance:
    """Like :func:`gen_pq_uniform` with p, q drawn uniformly from [lo, hi]."""
    if not 0.0 <= lo <= hi <= 1.0:
        raise ValueError(f"bad band [{lo}, {hi}]")
    rng = make_rng(seed)
    p = lo + (hi - lo) * float(rng.random())
    q = lo + (hi - lo) * float(rng.random())
    return gen_instance(GenSpec(n, m, p, q, seed), source="band")


def _nonempty_subset(rng: np.random.Generator, n: int, density: float) -> frozenset:
    while True:
        picked = np.flatnonzero(rng.random(n) < density)
        if picked.size:
            return frozenset(picked.tolist())


def gen_sat_instance(n: int, m: int, arc_density: float, seed: int) -> tuple[CrrInstance, Hypergraph]:
    """Random hypergraph with ``m`` arcs and its derived (S, R).

    Every species joins each tail/head independently with probability
    ``arc_density``; empty tails or heads are redrawn.
    """
    if not 0.0 < arc_density <= 1.0:
        raise ValueError(f"arc_density={arc_density} outside (0, 1]")
    if n < 1 or m < 0:
        raise ValueError(f"bad sizes ({n}, {m})")
    rng = make_rng(seed)
    arcs = []
    for a in range(m):
        tail = _nonempty_subset(rng, n, arc_density)
        head = _nonempty_subset(rng, n, arc_density)
        arcs.append(Arc(tail, head, f"r{a}"))
    h = Hypergraph(tuple(f"v{i}" for i in range(n)), tuple(arcs))
    inst = CrrInstance(derive_s(h), derive_r(h), {"seed": seed, "source": "sat-by-construction"})
    return inst, h
