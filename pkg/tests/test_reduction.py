import itertools

import numpy as np
import pytest

from crr.core import BitMatrix, Reconstruction, bool_product, verify
from crr.errors import ContractError, CrrError, ShapeError
from crr.reduction import (SbInstance, embed_sb_solution, extract_sb_solution, reduce_sb, sb_solve,
                           sb_solve_exhaustive, sb_to_sbmod, sbmod_to_crr, square_pad, unpad_factors)
from crr.solver.dispatch import solve

from oracles import sb_sat


def random_sb(count, seed, max_n=3, max_m=3, max_k=3):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n, m, k = (int(rng.integers(1, x + 1)) for x in (max_n, max_m, max_k))
        yield SbInstance(BitMatrix(rng.random((n, m)) < 0.5), k)


def test_border_on_single_cell():
    sbar, kbar = sb_to_sbmod(SbInstance(BitMatrix([[1]]), 1))
    assert sbar == BitMatrix(["111", "100", "101"]) and kbar == 3


def test_border_layout():
    s = BitMatrix(["011", "110"])
    sbar, kbar = sb_to_sbmod(SbInstance(s, 2))
    assert sbar.shape == (4, 5) and kbar == 4
    assert sbar.array[0].all() and sbar.array[:, 0].all()
    assert not sbar.array[1, 1:].any() and not sbar.array[1:, 1].any()
    assert BitMatrix(sbar[2:, 2:]) == s


def test_square_pad():
    assert square_pad(BitMatrix(["01", "11", "10"])) == BitMatrix(["010", "110", "100"])
    assert square_pad(BitMatrix(["011"])) == BitMatrix(["011", "000", "000"])
    assert square_pad(BitMatrix(["10", "01"])) == BitMatrix(["10", "01"])


def test_sbmod_to_crr_shapes():
    with pytest.raises(ShapeError):
        sbmod_to_crr(BitMatrix(["111", "100"]), 3)
    inst = sbmod_to_crr(BitMatrix(["111", "100", "101"]), 3)
    assert inst.r == BitMatrix.ones(3, 3) and inst.meta["source"] == "set-basis"


def test_sb_validation():
    with pytest.raises(ValueError):
        SbInstance(BitMatrix(["1"]), 0)


def test_incomparable_rows():
    s = BitMatrix(["110", "011", "101"])
    assert sb_solve(SbInstance(s, 1)) is None and sb_solve(SbInstance(s, 2)) is None
    e, p = sb_solve(SbInstance(s, 3))
    assert bool_product(e, p) == s
    for k in (1, 2, 3):
        assert solve(reduce_sb(SbInstance(s, k)), "cdcl").outcome == ("sat" if k == 3 else "unsat")


def test_sb_solvers_agree_with_oracle():
    for sb in random_sb(150, 1):
        rows = sb.s.array.astype(int).tolist()
        expected = sb_sat(rows, sb.k)
        for solver in (sb_solve, sb_solve_exhaustive):
            got = solver(sb)
            assert (got is not None) == expected
            if got is not None:
                assert got[0].shape == (sb.n, sb.k) and bool_product(*got) == sb.s


def test_padding_preserves_solvability():
    for sb in random_sb(80, 2, 3, 3, 2):
        padded = SbInstance(square_pad(sb.s), sb.k)
        assert (sb_solve(sb) is None) == (sb_solve(padded) is None)


def test_border_preserves_solvability():
    # a factorisation of the bordered matrix with k+2 vectors exists iff S has one with k
    for sb in random_sb(60, 3, 2, 2, 2):
        sbar, kbar = sb_to_sbmod(sb)
        assert (sb_solve(sb) is None) == (sb_solve(SbInstance(sbar, kbar)) is None)


def test_embed_verifies_reduced_instance():
    for sb in random_sb(80, 4):
        fac = sb_solve(sb)
        if fac is None:
            continue
        padded = square_pad(sb.s)
        e = BitMatrix(np.vstack([fac[0].array, np.zeros((padded.rows - sb.n, sb.k), dtype=bool)]))
        p = BitMatrix(np.hstack([fac[1].array, np.zeros((sb.k, padded.cols - sb.m), dtype=bool)]))
        rec = embed_sb_solution(e, p, padded)
        assert verify(reduce_sb(sb), rec)


def test_embed_empty_column():
    # S has an empty column, so only the all-ones second row of P covers the top border
    e, p = BitMatrix(["1"]), BitMatrix(["10"])
    sb = SbInstance(BitMatrix(["10", "00"]), 1)
    rec = embed_sb_solution(BitMatrix(["1", "0"]), p)
    assert verify(reduce_sb(sb), rec)
    assert rec.p.array[1].all()


def test_embed_contract():
    with pytest.raises(ContractError):
        embed_sb_solution(BitMatrix(["1"]), BitMatrix(["1"]), BitMatrix(["0"]))
    with pytest.raises(ShapeError):
        embed_sb_solution(BitMatrix(["1"]), BitMatrix(["1", "1"]))


def test_round_trip_identity():
    for sb in random_sb(100, 5):
        fac = sb_solve(sb)
        if fac is None:
            continue
        e, p = extract_sb_solution(embed_sb_solution(*fac, sb.s))
        assert e == fac[0] and p == fac[1]


def test_extract_from_solver_models():
    for sb in random_sb(40, 6, 3, 3, 2):
        inst = reduce_sb(sb)
        rec = solve(inst, "cdcl")
        assert (rec.outcome == "sat") == (sb_solve(sb) is not None)
        if rec.model is None:
            continue
        e, p = extract_sb_solution(rec.model)
        e, p = unpad_factors(e, p, sb.n, sb.m)
        assert e.shape == (sb.n, sb.k) and p.shape == (sb.k, sb.m)
        assert bool_product(e, p) == sb.s


def test_extract_ignores_unspecified_cells():
    s = BitMatrix(["11", "01"])
    fac = (BitMatrix(["11", "01"]), BitMatrix(["10", "01"]))
    inst = reduce_sb(SbInstance(s, 2))
    base = embed_sb_solution(*fac, s)
    eb, pb = base.e.array, base.p.array
    free = [("e", i, 0) for i in range(2, eb.shape[0])]
    free += [("p", a, 1) for a in range(2, pb.shape[0])]
    free += [("p", 1, j) for j in range(2, pb.shape[1])]
    seen = 0
    for bits in itertools.product((False, True), repeat=len(free)):
        e2, p2 = eb.copy(), pb.copy()
        for (which, x, y), b in zip(free, bits):
            (e2 if which == "e" else p2)[x, y] = b
        rec = Reconstruction(BitMatrix(e2), BitMatrix(p2))
        if not verify(inst, rec):
            continue
        seen += 1
        assert extract_sb_solution(rec) == fac
    assert seen > 1


def test_extract_rejects_non_bordered():
    with pytest.raises(CrrError):
        extract_sb_solution(Reconstruction(BitMatrix.zeros(3, 3), BitMatrix.zeros(3, 3)))
    with pytest.raises(ShapeError):
        extract_sb_solution(Reconstruction(BitMatrix(["1"]), BitMatrix(["1"])))


def test_exhaustive_limit():
    with pytest.raises(ValueError):
        sb_solve_exhaustive(SbInstance(BitMatrix.zeros(2, 5), 4))
