import numpy as np
import pytest
from hypothesis import given, strategies as st

from crr import data
from crr.core import (Arc, BitMatrix, CrrInstance, Hypergraph, Reconstruction, bool_product, derive_r,
                      derive_s, incidence, total_graph, verify, witnesses_r, witnesses_s)
from crr.errors import ShapeError
from crr.ingest import read_hypergraph

from oracles import bool_mul

# total graph of the two-reaction network, rows of [[S, E], [P, R]]
FIG4_T = [
    "00110010",
    "00110010",
    "00001101",
    "00000000",
    "00000000",
    "00000000",
    "00110001",
    "00001100",
]


def bitmatrices(rows, cols):
    return st.lists(st.lists(st.booleans(), min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda x: BitMatrix(np.array(x, dtype=bool).reshape(rows, cols)))


@pytest.fixture
def fig1():
    return read_hypergraph(data.path("fig1.hyper"))


class TestBitMatrix:
    def test_from_strings_and_bits(self):
        m = BitMatrix(["010", "001"])
        assert m.shape == (2, 3)
        assert m.bits == (0, 1, 0, 0, 0, 1)
        assert m.to_rows() == ["010", "001"]

    def test_immutable(self):
        m = BitMatrix.zeros(2, 2)
        with pytest.raises(ValueError):
            m.array[0, 0] = True

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            BitMatrix([[0, 2]])

    def test_rejects_ragged_strings(self):
        with pytest.raises(ShapeError):
            BitMatrix(["01", "1"])

    def test_counts(self):
        m = BitMatrix(["110", "000"])
        assert (m.count_ones(), m.count_zeros()) == (2, 4)
        assert m.zero_fraction() == pytest.approx(4 / 6)

    def test_equality_and_hash(self):
        a, b = BitMatrix(["01"]), BitMatrix([[0, 1]])
        assert a == b and hash(a) == hash(b)
        assert a != BitMatrix(["10"])

    def test_empty_shapes(self):
        assert BitMatrix.zeros(3, 0).shape == (3, 0)
        assert bool_product(BitMatrix.zeros(3, 0), BitMatrix.zeros(0, 2)) == BitMatrix.zeros(3, 2)


class TestBoolProduct:
    @given(bitmatrices(2, 2))
    def test_identity_left(self, m):
        assert bool_product(BitMatrix.identity(2), m) == m

    def test_saturation(self):
        assert bool_product(BitMatrix.ones(3, 3), BitMatrix.ones(3, 3)) == BitMatrix.ones(3, 3)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            bool_product(BitMatrix.ones(2, 3), BitMatrix.ones(2, 3))

    def test_fig4_blocks(self, fig1):
        t = BitMatrix(FIG4_T)
        e, p = BitMatrix(t[:6, 6:]), BitMatrix(t[6:, :6])
        assert bool_product(e, p) == BitMatrix(t[:6, :6])

    @given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5), st.data())
    def test_matches_loop_oracle(self, n, k, m, d):
        a = d.draw(bitmatrices(n, k))
        b = d.draw(bitmatrices(k, m))
        ref = bool_mul(a.array.astype(int).tolist(), b.array.astype(int).tolist())
        assert bool_product(a, b).array.astype(int).tolist() == ref

    @given(bitmatrices(5, 5))
    def test_saturated_stays_saturated(self, a):
        ones = BitMatrix.ones(5, 5)
        once = bool_product(a, ones)
        assert bool_product(once, ones) == once


class TestDerivation:
    def test_fig2_s(self, fig1):
        s = derive_s(fig1)
        sp = fig1.species
        edges = {(sp[i], sp[j]) for i, j in zip(*np.nonzero(s.array))}
        assert edges == {("A", "C"), ("A", "D"), ("B", "C"), ("B", "D"), ("C", "E"), ("C", "F")}

    def test_fig2_r(self, fig1):
        assert derive_r(fig1) == BitMatrix(["01", "00"])

    def test_fig4_total_graph(self, fig1):
        tg = total_graph(fig1)
        assert tg.t == BitMatrix(FIG4_T)
        assert tg.s == derive_s(fig1) and tg.r == derive_r(fig1)
        assert (tg.e, tg.p) == incidence(fig1)

    def test_arcless(self):
        h = Hypergraph(("A", "B", "C"), ())
        e, p = incidence(h)
        assert e.shape == (3, 0) and p.shape == (0, 3)
        assert derive_s(h) == BitMatrix.zeros(3, 3)
        assert derive_r(h).shape == (0, 0)
        assert total_graph(h).t == BitMatrix.zeros(3, 3)

    def test_catalyst_self_loop(self):
        h = Hypergraph.from_named(["A"], [("R", ["A"], ["A"])])
        e, p = incidence(h)
        assert e == BitMatrix([[1]]) and p == BitMatrix([[1]])
        assert derive_s(h) == BitMatrix([[1]])

    def test_catalyst_among_others(self):
        h = Hypergraph.from_named(["A", "B"], [("R", ["A"], ["A", "B"])])
        assert derive_s(h) == BitMatrix(["11", "00"])

    def test_fig3_ambiguity(self):
        a = read_hypergraph(data.path("fig3a.hyper"))
        b = read_hypergraph(data.path("fig3b.hyper"))
        assert incidence(a) != incidence(b)
        assert derive_s(a) == derive_s(b) == BitMatrix(["0011", "0011", "0000", "0000"])
        # neither network feeds a product back into a reaction
        assert derive_r(a) == derive_r(b) == BitMatrix.zeros(2, 2)

    def test_permutation_relabel(self, fig1):
        rng = np.random.default_rng(3)
        sp = rng.permutation(fig1.n).tolist()
        ap = rng.permutation(fig1.m).tolist()
        moved = fig1.relabel(sp, ap)
        q = np.zeros((fig1.n, fig1.n), dtype=int)
        q[sp, range(fig1.n)] = 1  # column i has its 1 at row sp[i]
        w = np.zeros((fig1.m, fig1.m), dtype=int)
        w[ap, range(fig1.m)] = 1
        t0, t1 = total_graph(fig1), total_graph(moved)
        assert t1.s.array.astype(int).tolist() == (q @ t0.s.array @ q.T).tolist()
        assert t1.r.array.astype(int).tolist() == (w @ t0.r.array @ w.T).tolist()
        assert t1.e.array.astype(int).tolist() == (q @ t0.e.array @ w.T).tolist()

    def test_hypergraph_validation(self):
        with pytest.raises(ValueError):
            Hypergraph(("A", "A"), ())
        with pytest.raises(ValueError):
            Hypergraph(("A",), (Arc(frozenset({0}), frozenset({1})),))


class TestVerify:
    def test_fig4_verifies(self, fixture_path):
        from crr.harness.formats import read_instance, read_solution
        assert verify(read_instance(fixture_path("fig2.crr")), read_solution(fixture_path("fig4.sol")))

    def test_broken_witness(self, fig1):
        e, p = incidence(fig1)
        inst = CrrInstance(derive_s(fig1), derive_r(fig1))
        # B -> C is witnessed only by R1; dropping B from R1's tail breaks it
        assert not verify(inst, Reconstruction(e.with_bit(1, 0, False), p))

    @given(st.integers(1, 5).flatmap(lambda n: bitmatrices(n, n)))
    def test_self_instance(self, s):
        inst = CrrInstance(s, s)
        assert verify(inst, Reconstruction(BitMatrix.identity(s.rows), s))

    def test_shape_error_not_false(self, fig1):
        inst = CrrInstance(derive_s(fig1), derive_r(fig1))
        with pytest.raises(ShapeError):
            verify(inst, Reconstruction(BitMatrix.zeros(6, 3), BitMatrix.zeros(3, 6)))

    def test_witnesses(self, fig1):
        e, p = incidence(fig1)
        inst = CrrInstance(derive_s(fig1), derive_r(fig1))
        rec = Reconstruction(e, p)
        assert witnesses_s(inst, rec, 1, 2) == {0}
        assert witnesses_s(inst, rec, 0, 0) == set()
        assert witnesses_r(inst, rec, 0, 1) == {2}

    def test_witnesses_all_ones(self):
        inst = CrrInstance(BitMatrix.ones(3, 3), BitMatrix.ones(4, 4))
        rec = Reconstruction(BitMatrix.ones(3, 4), BitMatrix.ones(4, 3))
        assert witnesses_s(inst, rec, 2, 1) == {0, 1, 2, 3}

    @given(st.integers(1, 4), st.integers(1, 4), st.data())
    def test_round_trip(self, n, m, d):
        e = d.draw(bitmatrices(n, m))
        p = d.draw(bitmatrices(m, n))
        h = Hypergraph.from_incidence(e, p)
        assert verify(CrrInstance(derive_s(h), derive_r(h)), Reconstruction(*incidence(h)))

    @given(st.integers(1, 4), st.integers(1, 4), st.data())
    def test_permutation_equivariance(self, n, m, d):
        e = d.draw(bitmatrices(n, m)).array.astype(int)
        p = d.draw(bitmatrices(m, n)).array.astype(int)
        s, r = (e @ p > 0), (p @ e > 0)
        q = np.eye(n, dtype=int)[d.draw(st.permutations(range(n)))]
        w = np.eye(m, dtype=int)[d.draw(st.permutations(range(m)))]
        inst = CrrInstance(BitMatrix(q @ s @ q.T), BitMatrix(w @ r @ w.T))
        assert verify(inst, Reconstruction(BitMatrix(q @ e @ w.T), BitMatrix(w @ p @ q.T)))

    def test_meta_consistency(self):
        with pytest.raises(ValueError):
            CrrInstance(BitMatrix.zeros(2, 2), BitMatrix.zeros(1, 1), {"p": 0.0})
        inst = CrrInstance(BitMatrix.zeros(2, 2), BitMatrix.zeros(1, 1), {"p": 1.0, "q": 1.0})
        assert inst.meta["p"] == 1.0
        with pytest.raises(TypeError):
            inst.meta["p"] = 0.5

    def test_non_square_rejected(self):
        with pytest.raises(ShapeError):
            CrrInstance(BitMatrix.zeros(2, 3), BitMatrix.zeros(1, 1))
