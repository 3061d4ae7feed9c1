"""Exhaustive oracle over all (E, P) pairs.

Rows of E and P are handled as integer bit masks. For each E the check runs
vectorised over every P at once, in ascending code order, so "first model"
is well defined: E code major, P code minor, where bit ``i*m + a`` of the
E code is ``e[i, a]`` and bit ``a*n + j`` of the P code is ``p[a, j]``.
"""
from __future__ import annotations

import time
from typing import Iterator

import numpy as np

from crr.core import BitMatrix, CrrInstance, Reconstruction, verify
from crr.errors import BudgetExceeded
from crr.solver.record import SolveRecord

__all__ = ["DEFAULT_BUDGET", "brute_force", "brute_force_models", "enumeration_size"]

DEFAULT_BUDGET = 1 << 24


def enumeration_size(n: int, m: int) -> int:
    return 1 << (2 * n * m)


def _row_masks(mat: np.ndarray) -> list[int]:
    return [int(sum(1 << k for k in np.flatnonzero(row))) for row in mat]


def _decode(e_code: int, p_code: int, n: int, m: int) -> Reconstruction:
    e = np.array([(e_code >> k) & 1 for k in range(n * m)], dtype=np.bool_).reshape(n, m)
    p = np.array([(p_code >> k) & 1 for k in range(m * n)], dtype=np.bool_).reshape(m, n)
    return Reconstruction(BitMatrix(e), BitMatrix(p))


def brute_force_models(inst: CrrInstance, budget: int = DEFAULT_BUDGET) -> Iterator[Reconstruction]:
    """Yield every verifying (E, P) pair in enumeration order."""
    n, m = inst.n, inst.m
    if enumeration_size(n, m) > budget:
        raise BudgetExceeded(f"2^{2 * n * m} candidate pairs exceed budget {budget}")
    if n == 0 or m == 0:
        rec = Reconstruction(BitMatrix.zeros(n, m), BitMatrix.zeros(m, n))
        if verify(inst, rec):
            yield rec
        return
    s_rows = _row_masks(inst.s.array)
    r_rows = _row_masks(inst.r.array)
    codes = np.arange(1 << (m * n), dtype=np.int64)
    nmask, mmask = (1 << n) - 1, (1 << m) - 1
    p_rows = [(codes >> (a * n)) & nmask for a in range(m)]
    subsets = np.arange(1 << n, dtype=np.int64)
    for e_code in range(1 << (n * m)):
        e_rows = [(e_code >> (i * m)) & mmask for i in range(n)]
        ok = np.ones(codes.size, dtype=np.bool_)
        for i in range(n):
            row = np.zeros(codes.size, dtype=np.int64)
            for a in range(m):
                if (e_rows[i] >> a) & 1:
                    row |= p_rows[a]
            ok &= row == s_rows[i]
            if not ok.any():
                break
        if not ok.any():
            continue
        # union of E rows over every species subset, indexed by subset mask
        table = np.zeros(1 << n, dtype=np.int64)
        for i in range(n):
            table |= np.where((subsets >> i) & 1, e_rows[i], 0)
        for a in range(m):
            ok &= table[p_rows[a]] == r_rows[a]
        for p_code in np.flatnonzero(ok):
            yield _decode(e_code, int(p_code), n, m)


def brute_force(inst: CrrInstance, budget: int = DEFAULT_BUDGET) -> SolveRecord:
    """Decide ``inst`` by enumeration; refuses instances beyond ``budget``."""
    start = time.monotonic()
    model = next(brute_force_models(inst, budget), None)
    return SolveRecord(
        outcome="sat" if model is not None else "unsat",
        model=model,
        wall_time=time.monotonic() - start,
        solver_id="brute",
        encoder_id="none",
    )
