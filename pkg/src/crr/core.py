"""Boolean matrices, reaction hypergraphs and the S/R derivations.

All matrices are dense 0/1 arrays. Products use Boolean arithmetic, i.e.
``(A.B)[i, j] = OR_k (A[i, k] AND B[k, j])``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from crr.errors import ShapeError

__all__ = [
    "BitMatrix",
    "Arc",
    "Hypergraph",
    "CrrInstance",
    "Reconstruction",
    "TotalGraph",
    "bool_product",
    "incidence",
    "derive_s",
    "derive_r",
    "total_graph",
    "verify",
    "witnesses_s",
    "witnesses_r",
    "identity",
    "ones",
    "zeros",
]


class BitMatrix:
    """Immutable dense 0/1 matrix backed by a read-only numpy bool array.

    Accepts anything ``np.asarray`` understands, plus a sequence of
    ``"0101"`` style row strings. A 1-d input is rejected; use an explicit
    shape for empty matrices (``BitMatrix.zeros(3, 0)``).
    """

    __slots__ = ("_a",)

    def __init__(self, data, shape: tuple[int, int] | None = None):
        if isinstance(data, BitMatrix):
            arr = data._a
        elif isinstance(data, (list, tuple)) and data and isinstance(data[0], str):
            arr = _rows_from_strings(data)
        else:
            arr = np.asarray(data)
        if shape is not None:
            arr = arr.reshape(shape)
        if arr.ndim != 2:
            if arr.size == 0 and shape is None:
                arr = arr.reshape(0, 0)
            else:
                raise ShapeError(f"BitMatrix needs 2-d data, got shape {arr.shape}")
        if arr.dtype != np.bool_:
            if arr.size and not np.isin(arr, (0, 1)).all():
                raise ValueError("BitMatrix cells must be 0 or 1")
            arr = arr.astype(np.bool_)
        else:
            arr = arr.copy() if arr.flags.writeable else arr
        arr.flags.writeable = False
        self._a = arr

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(np.zeros((rows, cols), dtype=np.bool_))

    @classmethod
    def ones(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(np.ones((rows, cols), dtype=np.bool_))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(np.eye(n, dtype=np.bool_))

    @property
    def array(self) -> np.ndarray:
        """Read-only bool view of the cells."""
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def bits(self) -> tuple[int, ...]:
        """Row-major cell sequence."""
        return tuple(int(b) for b in self._a.ravel())

    def count_ones(self) -> int:
        return int(self._a.sum())

    def count_zeros(self) -> int:
        return self._a.size - self.count_ones()

    def zero_fraction(self) -> float:
        """Fraction of zero cells; 0.0 for an empty matrix."""
        return self.count_zeros() / self._a.size if self._a.size else 0.0

    def to_rows(self) -> list[str]:
        return ["".join("1" if b else "0" for b in row) for row in self._a]

    def with_bit(self, i: int, j: int, value: bool) -> "BitMatrix":
        a = self._a.copy()
        a[i, j] = value
        return BitMatrix(a)

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self._a.T)

    T = property(transpose)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return bool_product(self, other)

    def __getitem__(self, key):
        return self._a[key]

    def __array__(self, dtype=None, copy=None):
        return self._a if dtype is None else self._a.astype(dtype)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        return hash((self.shape, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.to_rows()!r}, shape={self.shape})"

    def __str__(self) -> str:
        return "\n".join(self.to_rows())


def _rows_from_strings(rows: Sequence[str]) -> np.ndarray:
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ShapeError("row strings have unequal length")
    for r in rows:
        if set(r) - {"0", "1"}:
            raise ValueError(f"row {r!r} contains characters other than 0/1")
    return np.array([[c == "1" for c in r] for r in rows], dtype=np.bool_)


def zeros(rows: int, cols: int) -> BitMatrix:
    return BitMatrix.zeros(rows, cols)


def ones(rows: int, cols: int) -> BitMatrix:
    return BitMatrix.ones(rows, cols)


def identity(n: int) -> BitMatrix:
    return BitMatrix.identity(n)


def bool_product(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Boolean (OR of ANDs) matrix product; zero inner dimension gives all zeros."""
    a = a if isinstance(a, BitMatrix) else BitMatrix(a)
    b = b if isinstance(b, BitMatrix) else BitMatrix(b)
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    # numpy bool matmul already computes OR over AND
    return BitMatrix(a.array @ b.array)


@dataclass(frozen=True)
class Arc:
    """One reaction: reactant (tail) and product (head) species indices."""

    tail: frozenset
    head: frozenset
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "tail", frozenset(self.tail))
        object.__setattr__(self, "head", frozenset(self.head))


@dataclass(frozen=True)
class Hypergraph:
    """Directed hypergraph of a reaction network.

    Species are addressed by position; ``species`` only carries labels.
    Tails and heads may overlap (catalysts).
    """

    species: tuple
    arcs: tuple = ()

    def __post_init__(self):
        species = tuple(self.species)
        arcs = tuple(a if isinstance(a, Arc) else Arc(*a) for a in self.arcs)
        if len(set(species)) != len(species):
            raise ValueError("species identifiers must be unique")
        n = len(species)
        for k, arc in enumerate(arcs):
            for idx in arc.tail | arc.head:
                if not (isinstance(idx, (int, np.integer)) and 0 <= idx < n):
                    raise ValueError(f"arc {k} refers to species index {idx!r} outside 0..{n - 1}")
        object.__setattr__(self, "species", species)
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_named(cls, species: Iterable[str], reactions: Iterable[tuple]) -> "Hypergraph":
        """Build from labels, e.g. ``[("R1", ["A", "B"], ["C"])]``."""
        species = tuple(species)
        pos = {s: i for i, s in enumerate(species)}
        arcs = []
        for name, tail, head in reactions:
            arcs.append(Arc(frozenset(pos[s] for s in tail), frozenset(pos[s] for s in head), name))
        return cls(species, tuple(arcs))

    @classmethod
    def from_incidence(cls, e: BitMatrix, p: BitMatrix, species=None) -> "Hypergraph":
        e, p = BitMatrix(e), BitMatrix(p)
        if e.cols != p.rows or p.cols != e.rows:
            raise ShapeError(f"incidence shapes {e.shape} and {p.shape} do not match")
        n, m = e.shape
        species = tuple(species) if species is not None else tuple(f"v{i}" for i in range(n))
        arcs = tuple(
            Arc(frozenset(np.flatnonzero(e[:, a]).tolist()), frozenset(np.flatnonzero(p[a, :]).tolist()), f"r{a}")
            for a in range(m)
        )
        return cls(species, arcs)

    @property
    def n(self) -> int:
        return len(self.species)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def relabel(self, species_perm: Sequence[int], arc_perm: Sequence[int] | None = None) -> "Hypergraph":
        """Species ``i`` moves to position ``species_perm[i]``; arcs likewise."""
        n = self.n
        species = [None] * n
        for i, s in enumerate(self.species):
            species[species_perm[i]] = s
        arcs = [Arc(frozenset(species_perm[i] for i in a.tail), frozenset(species_perm[i] for i in a.head), a.name)
                for a in self.arcs]
        if arc_perm is not None:
            moved = [None] * len(arcs)
            for k, a in enumerate(arcs):
                moved[arc_perm[k]] = a
            arcs = moved
        return Hypergraph(tuple(species), tuple(arcs))


@dataclass(frozen=True)
class CrrInstance:
    """A pair (S, R) to be reconstructed, with optional provenance."""

    s: BitMatrix
    r: BitMatrix
    meta: Mapping = field(default_factory=dict, compare=False)

    def __post_init__(self):
        s, r = BitMatrix(self.s), BitMatrix(self.r)
        if s.rows != s.cols:
            raise ShapeError(f"S must be square, got {s.shape}")
        if r.rows != r.cols:
            raise ShapeError(f"R must be square, got {r.shape}")
        meta = dict(self.meta or {})
        for key, mat in (("p", s), ("q", r)):
            val = meta.get(key)
            if val is not None and mat.array.size:
                if abs(float(val) - mat.zero_fraction()) > 1.0 / mat.array.size + 1e-12:
                    raise ValueError(f"meta {key}={val} disagrees with zero fraction {mat.zero_fraction()}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "meta", MappingProxyType(meta))

    @property
    def n(self) -> int:
        return self.s.rows

    @property
    def m(self) -> int:
        return self.r.rows


@dataclass(frozen=True)
class Reconstruction:
    """Candidate incidence pair: ``e`` is n x m, ``p`` is m x n."""

    e: BitMatrix
    p: BitMatrix

    def __post_init__(self):
        object.__setattr__(self, "e", BitMatrix(self.e))
        object.__setattr__(self, "p", BitMatrix(self.p))

    def hypergraph(self, species=None) -> Hypergraph:
        return Hypergraph.from_incidence(self.e, self.p, species)


@dataclass(frozen=True)
class TotalGraph:
    """Block matrix ``[[S, E], [P, R]]`` on species followed by reactions."""

    t: BitMatrix
    n: int

    @property
    def s(self) -> BitMatrix:
        return BitMatrix(self.t[: self.n, : self.n])

    @property
    def e(self) -> BitMatrix:
        return BitMatrix(self.t[: self.n, self.n:])

    @property
    def p(self) -> BitMatrix:
        return BitMatrix(self.t[self.n:, : self.n])

    @property
    def r(self) -> BitMatrix:
        return BitMatrix(self.t[self.n:, self.n:])


def incidence(h: Hypergraph) -> tuple[BitMatrix, BitMatrix]:
    """Reactant matrix E (n x m) and product matrix P (m x n) of ``h``."""
    e = np.zeros((h.n, h.m), dtype=np.bool_)
    p = np.zeros((h.m, h.n), dtype=np.bool_)
    for a, arc in enumerate(h.arcs):
        e[list(arc.tail), a] = True
        p[a, list(arc.head)] = True
    return BitMatrix(e), BitMatrix(p)


def derive_s(h: Hypergraph) -> BitMatrix:
    e, p = incidence(h)
    return bool_product(e, p)


def derive_r(h: Hypergraph) -> BitMatrix:
    e, p = incidence(h)
    return bool_product(p, e)


def total_graph(h: Hypergraph) -> TotalGraph:
    e, p = incidence(h)
    s, r = bool_product(e, p), bool_product(p, e)
    t = np.block([[s.array, e.array], [p.array, r.array]]) if h.m else s.array
    return TotalGraph(BitMatrix(t, shape=(h.n + h.m, h.n + h.m)), h.n)


def _check_shapes(inst: CrrInstance, rec: Reconstruction) -> None:
    if rec.e.shape != (inst.n, inst.m) or rec.p.shape != (inst.m, inst.n):
        raise ShapeError(
            f"reconstruction shapes E{rec.e.shape}, P{rec.p.shape} do not fit n={inst.n}, m={inst.m}"
        )


def verify(inst: CrrInstance, rec: Reconstruction) -> bool:
    """True iff ``E.P == S`` and ``P.E == R``."""
    _check_shapes(inst, rec)
    return bool_product(rec.e, rec.p) == inst.s and bool_product(rec.p, rec.e) == inst.r


def witnesses_s(inst: CrrInstance, rec: Reconstruction, i: int, j: int) -> set[int]:
    """Reactions ``a`` with ``e[i, a] = p[a, j] = 1``."""
    _check_shapes(inst, rec)
    return set(np.flatnonzero(rec.e[i, :] & rec.p[:, j]).tolist())


def witnesses_r(inst: CrrInstance, rec: Reconstruction, a: int, b: int) -> set[int]:
    """Species ``i`` with ``p[a, i] = e[i, b] = 1``."""
    _check_shapes(inst, rec)
    return set(np.flatnonzero(rec.p[a, :] & rec.e[:, b]).tolist())
