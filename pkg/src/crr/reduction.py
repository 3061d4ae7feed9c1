"""Set Basis -> bordered Set Basis -> CRR, with solutions mapped both ways.

A Set Basis instance is a 0/1 matrix ``S`` (rows = subsets, columns =
elements) and a bound ``k``: is ``S = E.P`` for an ``n x k`` usage matrix E
and a ``k x m`` basis matrix P?

The bordered matrix has an all-ones first row and column, zeros in the rest
of row 2 and column 2, and ``S`` in the lower right block, with ``k + 2``
basis vectors. A square bordered matrix paired with the all-ones
``(k+2) x (k+2)`` reaction matrix is a CRR instance that is satisfiable iff
the Set Basis instance is solvable.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from crr.core import BitMatrix, CrrInstance, Reconstruction, bool_product, verify
from crr.errors import ContractError, CrrError, ShapeError

__all__ = [
    "SbInstance",
    "sb_to_sbmod",
    "square_pad",
    "sbmod_to_crr",
    "reduce_sb",
    "embed_sb_solution",
    "extract_sb_solution",
    "sb_solve",
    "sb_solve_exhaustive",
    "unpad_factors",
]


@dataclass(frozen=True)
class SbInstance:
    s: BitMatrix
    k: int

    def __post_init__(self):
        object.__setattr__(self, "s", BitMatrix(self.s))
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")

    @property
    def n(self) -> int:
        return self.s.rows

    @property
    def m(self) -> int:
        return self.s.cols


def sb_to_sbmod(sb: SbInstance) -> tuple[BitMatrix, int]:
    n, m = sb.s.shape
    out = np.zeros((n + 2, m + 2), dtype=np.bool_)
    out[0, :] = True
    out[:, 0] = True
    out[2:, 2:] = sb.s.array
    return BitMatrix(out), sb.k + 2


def square_pad(s: BitMatrix) -> BitMatrix:
    """Append zero rows (or zero columns) until ``s`` is square."""
    s = BitMatrix(s)
    n, m = s.shape
    size = max(n, m)
    out = np.zeros((size, size), dtype=np.bool_)
    out[:n, :m] = s.array
    return BitMatrix(out)


def sbmod_to_crr(sbar: BitMatrix, kbar: int) -> CrrInstance:
    sbar = BitMatrix(sbar)
    if sbar.rows != sbar.cols:
        raise ShapeError(f"bordered matrix must be square (pad first), got {sbar.shape}")
    return CrrInstance(sbar, BitMatrix.ones(kbar, kbar), {"source": "set-basis"})


def reduce_sb(sb: SbInstance) -> CrrInstance:
    """Pad to square, add the border, pair with the all-ones R."""
    sbar, kbar = sb_to_sbmod(SbInstance(square_pad(sb.s), sb.k))
    return sbmod_to_crr(sbar, kbar)


def embed_sb_solution(e: BitMatrix, p: BitMatrix, s: BitMatrix | None = None) -> Reconstruction:
    """Bordered incidence pair built from a Set Basis factorisation.

    ``e`` is ``n x k``, ``p`` is ``k x m``. The border is: first row of E
    all ones, second row ``(1, 0, ..., 0)``, column 1 of E ones and column 2
    zeros below; first column of P all ones, first row ``(1, 0, ..., 0)``,
    second row all ones, column 2 zeros below. The all-ones second row
    of P covers the first row of the bordered matrix even where ``S`` has
    an empty column.
    """
    e, p = BitMatrix(e), BitMatrix(p)
    if e.cols != p.rows:
        raise ShapeError(f"factor shapes {e.shape} and {p.shape} do not chain")
    if s is not None and bool_product(e, p) != BitMatrix(s):
        raise ContractError("E.P does not reproduce the Set Basis matrix")
    n, k = e.shape
    m = p.cols
    eb = np.zeros((n + 2, k + 2), dtype=np.bool_)
    eb[0, :] = True
    eb[1, 0] = True
    eb[2:, 0] = True
    eb[2:, 2:] = e.array
    pb = np.zeros((k + 2, m + 2), dtype=np.bool_)
    pb[:, 0] = True
    pb[1, :] = True
    pb[2:, 2:] = p.array
    return Reconstruction(BitMatrix(eb), BitMatrix(pb))


def _swap_basis(eb: np.ndarray, pb: np.ndarray, x: int, y: int) -> None:
    # permuting E columns together with P rows keeps E.P
    eb[:, [x, y]] = eb[:, [y, x]]
    pb[[x, y], :] = pb[[y, x], :]


def extract_sb_solution(rec: Reconstruction, check: bool = True) -> tuple[BitMatrix, BitMatrix]:
    """Normalise a bordered factorisation and strip the border.

    Steps: move the basis row ``(1, 0, ..., 0)`` to position 1; set E's row
    2 to ``(1, 0, ..., 0)``, E's row 1 and P's column 1 to all ones; move a
    remaining basis row with a 1 in column 2 to position 2. After that the
    lower-right blocks of E and P factor ``S``. Cells the normal form leaves
    unspecified are never read.
    """
    eb, pb = np.array(rec.e.array), np.array(rec.p.array)
    target = bool_product(rec.e, rec.p).array if check else None
    nb, kb = eb.shape
    mb = pb.shape[1]
    if kb < 2 or nb < 2 or mb < 2:
        raise ShapeError("bordered factors need at least two rows and columns")

    def assert_same(step):
        if check and not np.array_equal((eb.astype(np.int64) @ pb.astype(np.int64)) > 0, target):
            raise CrrError(f"normalisation step '{step}' changed the product")

    unit = np.zeros(mb, dtype=np.bool_)
    unit[0] = True
    hits = [a for a in range(kb) if np.array_equal(pb[a], unit)]
    if not hits:
        raise CrrError("no basis row (1, 0, ..., 0); input does not factor a bordered matrix")
    _swap_basis(eb, pb, 0, hits[0])
    assert_same("unit row first")
    eb[1, :] = False
    eb[1, 0] = True
    eb[0, :] = True
    pb[:, 0] = True
    assert_same("border rewrite")
    col2 = [a for a in range(1, kb) if pb[a, 1]]
    if not col2:
        raise CrrError("no basis row covers column 2")
    _swap_basis(eb, pb, 1, col2[0])
    assert_same("column-2 row second")
    if eb[2:, 1].any():
        raise CrrError("rows below the border use basis vector 2")
    return BitMatrix(eb[2:, 2:]), BitMatrix(pb[2:, 2:])


def unpad_factors(e: BitMatrix, p: BitMatrix, n: int, m: int) -> tuple[BitMatrix, BitMatrix]:
    """Drop rows of E / columns of P that ``square_pad`` added."""
    return BitMatrix(e[:n, :]), BitMatrix(p[:, :m])


def _closure(rows: list[int]) -> list[int]:
    """All non-empty intersections of row masks."""
    seen = set()
    frontier = set(r for r in rows if r)
    while frontier:
        seen |= frontier
        frontier = {a & b for a in seen for b in seen if a & b} - seen
    return sorted(seen)


def _masks(s: BitMatrix) -> list[int]:
    return [sum(1 << j for j in np.flatnonzero(row)) for row in s.array]


def _usage(rows: list[int], basis: tuple) -> list[int] | None:
    """Greedy usage: each row takes every basis vector inside it."""
    usage = []
    for r in rows:
        used = [b for b in basis if b & ~r == 0]
        cover = 0
        for b in used:
            cover |= b
        if cover != r:
            return None
        usage.append(sum(1 << t for t, b in enumerate(basis) if b & ~r == 0))
    return usage


def _factors(n, m, k, basis, usage):
    e = np.array([[(u >> t) & 1 for t in range(k)] for u in usage], dtype=np.bool_).reshape(n, k)
    p = np.array([[(b >> j) & 1 for j in range(m)] for b in basis], dtype=np.bool_).reshape(k, m)
    return BitMatrix(e), BitMatrix(p)


def sb_solve(sb: SbInstance) -> tuple[BitMatrix, BitMatrix] | None:
    """Factor ``S`` with ``k`` basis vectors, or ``None``.

    Any used basis vector can be replaced by the intersection of the rows
    that use it, so candidates are restricted to intersections of rows.
    """
    n, m, k = sb.n, sb.m, sb.k
    rows = _masks(sb.s)
    cands = _closure(rows)
    for size in range(min(k, len(cands)) + 1):
        for basis in combinations(cands, size):
            usage = _usage(rows, basis)
            if usage is not None:
                basis = basis + (0,) * (k - size)
                return _factors(n, m, k, basis, usage)
    return None


def sb_solve_exhaustive(sb: SbInstance, limit: int = 16) -> tuple[BitMatrix, BitMatrix] | None:
    """Enumerate every ``k x m`` basis matrix (for ``k*m <= limit``)."""
    n, m, k = sb.n, sb.m, sb.k
    if k * m > limit:
        raise ValueError(f"k*m = {k * m} exceeds limit {limit}")
    rows = _masks(sb.s)
    for basis in product(range(1 << m), repeat=k):
        usage = _usage(rows, basis)
        if usage is not None:
            return _factors(n, m, k, basis, usage)
    return None


def is_reduced_model(inst: CrrInstance, rec: Reconstruction) -> bool:
    return verify(inst, rec)
