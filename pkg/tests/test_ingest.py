import csv
import io

import pytest

from crr import data
from crr.core import CrrInstance, incidence, verify, Reconstruction
from crr.errors import ParseError
from crr.generator import gen_sat_instance
from crr.ingest import (NetworkStats, hypergraph_text, instance_from_network, parse_hypergraph, read_hypergraph,
                        stats_report)
from crr.solver.dispatch import solve
from crr.solver.record import SolveRecord

FIG1 = """hyper 1
species A B C D E F
reaction R1 : A B -> C D
reaction R2 : C -> E F
"""


def test_fig1_network():
    h = parse_hypergraph(FIG1)
    assert h.species == ("A", "B", "C", "D", "E", "F") and h.m == 2
    assert h.arcs[0].tail == frozenset({0, 1}) and h.arcs[1].head == frozenset({4, 5})
    assert h == read_hypergraph(data.path("fig1.hyper"))


def test_comments_and_repeated_species_lines():
    h = parse_hypergraph("# net\nhyper 1\nspecies A\nspecies B  # more\n\nreaction r : A -> B\n")
    assert h.species == ("A", "B") and h.arcs[0].name == "r"


def test_catalytic_arc():
    h = parse_hypergraph("hyper 1\nspecies A\nreaction R : A -> A\n")
    inst, st = instance_from_network(h)
    assert inst.s.to_rows() == ["1"] and inst.r.to_rows() == ["1"]


@pytest.mark.parametrize("text,line,fragment", [
    ("hyper 1\nspecies A B\nreaction R1 : A -> B\nreaction R2 : A -> X\n", 4, "undeclared species 'X'"),
    ("hyper 1\nspecies A\nreaction R : 2 A -> A\n", 3, "multiplicity"),
    ("hyper 1\nspecies A\nreaction R : 2A -> A\n", 3, "multiplicity"),
    ("hyper 1\nspecies A B\nreaction R : A A -> B\n", 3, "repeated"),
    ("hyper 1\nspecies A\nreaction R : -> A\n", 3, "empty tail"),
    ("hyper 1\nspecies A\nreaction R : A ->\n", 3, "empty head"),
    ("hyper 1\nspecies A A\n", 2, "duplicate species"),
    ("hyper 1\nspecies A\nreaction R : A -> A\nreaction R : A -> A\n", 4, "duplicate reaction"),
    ("hyper 1\nspecies A\nreaction R A -> A\n", 3, "expected 'reaction"),
    ("hyper 1\nspecies A\nreaction R : A -> A -> A\n", 3, "expected 'reaction"),
    ("hyper 1\nmolecule A\n", 2, "unknown statement"),
    ("hyper 2\n", 1, "header"),
])
def test_parse_errors(text, line, fragment):
    with pytest.raises(ParseError) as err:
        parse_hypergraph(text)
    assert err.value.line_no == line and fragment in str(err.value)


def test_missing_header():
    with pytest.raises(ParseError):
        parse_hypergraph("# nothing\n")


def test_write_round_trip():
    for seed in range(10):
        _, h = gen_sat_instance(7, 5, 0.3, seed)
        assert parse_hypergraph(hypergraph_text(h)) == h


def test_write_rejects_bad_labels():
    from crr.core import Hypergraph
    with pytest.raises(ValueError):
        hypergraph_text(Hypergraph(("a b",), ()))


def test_fig1_stats():
    inst, st = instance_from_network(read_hypergraph(data.path("fig1.hyper")), "fig1")
    assert (st.n, st.m, st.ones_s, st.ones_r) == (6, 2, 6, 1)
    assert st.p == pytest.approx(1 - 6 / 36) and st.q == pytest.approx(0.75)
    assert inst.meta["source"] == "network"


def test_table_row_shape():
    st = NetworkStats.from_counts("4-Hydroxybenzoate", 110, 102, 249, 374)
    assert round(st.p, 3) == 0.979 and round(st.q, 3) == 0.964
    with pytest.raises(ValueError):
        NetworkStats.from_counts("x", 2, 2, 5, 0)


def test_ingested_instances_are_sat():
    for seed in range(8):
        _, h = gen_sat_instance(6, 4, 0.3, seed)
        inst, st = instance_from_network(parse_hypergraph(hypergraph_text(h)))
        assert verify(inst, Reconstruction(*incidence(h)))
        assert solve(inst).outcome == "sat"
        assert st.p == pytest.approx(inst.s.zero_fraction(), abs=1e-9)
        assert st.q == pytest.approx(inst.r.zero_fraction(), abs=1e-9)


def test_large_network_stats():
    _, h = gen_sat_instance(130, 110, 0.01, 4)
    _, st = instance_from_network(h, "big")
    assert 0 <= st.p <= 1 and 0 <= st.q <= 1


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_report_empty():
    assert stats_report([]) == "name,n,m,p,q\n"


def test_report_fig1():
    _, st = instance_from_network(read_hypergraph(data.path("fig1.hyper")), "fig1")
    assert rows(stats_report([st]))[1] == ["fig1", "6", "2", "0.833333", "0.75"]


def test_report_order_and_outcomes():
    a = NetworkStats.from_counts("b-net", 2, 1, 1, 1)
    b = NetworkStats.from_counts("a-net", 3, 2, 0, 4)
    out = rows(stats_report([a, b], [SolveRecord("unsat", wall_time=0.5), None]))
    assert out[0] == ["name", "n", "m", "p", "q", "outcome", "wall_time_ms"]
    assert [r[0] for r in out[1:]] == ["b-net", "a-net"]
    assert out[1][5:] == ["unsat", "500.000"] and out[2][5:] == ["", ""]
    with pytest.raises(ValueError):
        stats_report([a], [])
