"""Reaction networks in the ``hyper 1`` text format, and their statistics.

Grammar (one statement per line, ``#`` starts a comment)::

    hyper 1
    species <id> <id> ...
    reaction <id> : <id> ... -> <id> ...

``species`` lines may repeat; a reaction may only name species declared
above it. Identifiers are whitespace-free tokens other than ``:`` and
``->``. Stoichiometric multiplicities (``2 A``, or naming a species twice on
one side) are rejected: only which species take part is modelled. A
reversible reaction is written as two reactions.
"""
from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from typing import Iterable, TextIO

from crr.core import Arc, CrrInstance, Hypergraph, derive_r, derive_s
from crr.errors import ParseError

__all__ = [
    "NetworkStats",
    "parse_hypergraph",
    "read_hypergraph",
    "write_hypergraph",
    "hypergraph_text",
    "instance_from_network",
    "stats_report",
    "STATS_COLUMNS",
]

HEADER = "hyper 1"
_REACTION = re.compile(r"^reaction\s+(\S+)\s*:(.*)$")
_RESERVED = {":", "->"}


def _tokens(text: str, no: int, line: str, side: str, pos: dict) -> frozenset:
    toks = text.split()
    if not toks:
        raise ParseError(f"empty {side}", no, line)
    out = []
    for t in toks:
        if t not in pos:
            if t.isdigit() or re.fullmatch(r"\d+\S+", t):
                raise ParseError(f"multiplicity {t!r} in {side}; stoichiometry is not modelled, "
                                 "list each species once", no, line)
            raise ParseError(f"undeclared species {t!r} in {side}", no, line)
        out.append(pos[t])
    if len(set(out)) != len(out):
        raise ParseError(f"species repeated in {side} (multiplicities are not modelled)", no, line)
    return frozenset(out)


def parse_hypergraph(text: str) -> Hypergraph:
    species: list[str] = []
    pos: dict[str, int] = {}
    arcs: list[Arc] = []
    names: set[str] = set()
    seen_header = False
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line.split() != HEADER.split():
                raise ParseError(f"expected header {HEADER!r}", no, raw)
            seen_header = True
            continue
        keyword = line.split(None, 1)[0]
        if keyword == "species":
            ids = line.split()[1:]
            if not ids:
                raise ParseError("species line lists no identifiers", no, raw)
            for s in ids:
                if s in _RESERVED:
                    raise ParseError(f"{s!r} is not a valid identifier", no, raw)
                if s in pos:
                    raise ParseError(f"duplicate species {s!r}", no, raw)
                pos[s] = len(species)
                species.append(s)
        elif keyword == "reaction":
            mt = _REACTION.match(line)
            if not mt or mt.group(2).count("->") != 1:
                raise ParseError("expected 'reaction <id> : <ids> -> <ids>'", no, raw)
            name = mt.group(1).rstrip(":")
            if name in names:
                raise ParseError(f"duplicate reaction {name!r}", no, raw)
            names.add(name)
            lhs, rhs = mt.group(2).split("->")
            arcs.append(Arc(_tokens(lhs, no, raw, "tail", pos), _tokens(rhs, no, raw, "head", pos), name))
        else:
            raise ParseError(f"unknown statement {keyword!r}", no, raw)
    if not seen_header:
        raise ParseError(f"missing header {HEADER!r}")
    return Hypergraph(tuple(species), tuple(arcs))


def read_hypergraph(path) -> Hypergraph:
    with open(path) as fh:
        return parse_hypergraph(fh.read())


def write_hypergraph(h: Hypergraph, sink: TextIO) -> None:
    for s in h.species:
        if not s or any(c.isspace() for c in str(s)) or s in _RESERVED or "#" in str(s):
            raise ValueError(f"species label {s!r} cannot be written as an identifier")
    sink.write(HEADER + "\n")
    if h.species:
        sink.write("species " + " ".join(map(str, h.species)) + "\n")
    for k, arc in enumerate(h.arcs):
        if not arc.tail or not arc.head:
            raise ValueError(f"arc {k} has an empty tail or head")
        tail = " ".join(h.species[i] for i in sorted(arc.tail))
        head = " ".join(h.species[i] for i in sorted(arc.head))
        sink.write(f"reaction {arc.name or f'r{k}'} : {tail} -> {head}\n")


def hypergraph_text(h: Hypergraph) -> str:
    buf = io.StringIO()
    write_hypergraph(h, buf)
    return buf.getvalue()


@dataclass(frozen=True)
class NetworkStats:
    name: str
    n: int
    m: int
    ones_s: int
    ones_r: int

    @property
    def p(self) -> float:
        return 1.0 - self.ones_s / (self.n * self.n) if self.n else 0.0

    @property
    def q(self) -> float:
        return 1.0 - self.ones_r / (self.m * self.m) if self.m else 0.0

    @classmethod
    def from_counts(cls, name: str, n: int, m: int, ones_s: int, ones_r: int) -> "NetworkStats":
        if not (0 <= ones_s <= n * n and 0 <= ones_r <= m * m):
            raise ValueError("one-counts out of range for the given sizes")
        return cls(name, n, m, ones_s, ones_r)


def instance_from_network(h: Hypergraph, name: str = "network") -> tuple[CrrInstance, NetworkStats]:
    s, r = derive_s(h), derive_r(h)
    stats = NetworkStats(name, h.n, h.m, s.count_ones(), r.count_ones())
    meta = {"source": "network", "name": name}
    if h.n and h.m:
        meta.update(p=stats.p, q=stats.q)
    return CrrInstance(s, r, meta), stats


STATS_COLUMNS = ("name", "n", "m", "p", "q")


def stats_report(stats: Iterable[NetworkStats], records=None) -> str:
    """CSV with one row per network, in input order.

    ``records`` (parallel to ``stats``) adds ``outcome`` and ``wall_time_ms``
    columns from solver records.
    """
    stats = list(stats)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = list(STATS_COLUMNS)
    if records is not None:
        records = list(records)
        if len(records) != len(stats):
            raise ValueError("records must parallel stats")
        cols += ["outcome", "wall_time_ms"]
    w.writerow(cols)
    for k, st in enumerate(stats):
        row = [st.name, st.n, st.m, f"{st.p:.6g}", f"{st.q:.6g}"]
        if records is not None:
            rec = records[k]
            row += [rec.short_outcome, f"{rec.wall_time * 1000:.3f}"] if rec is not None else ["", ""]
        w.writerow(row)
    return buf.getvalue()
