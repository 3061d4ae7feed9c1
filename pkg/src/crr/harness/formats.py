"""Line-oriented text formats for instances, Set Basis instances and solutions.

Every file starts with a ``<kind> 1`` header and is written bit-exactly:
``\\n`` line endings, no trailing whitespace, one matrix row per line.

::

    crr 1          sb 1           sol 1
    n 2            n 2            E
    m 1            m 3            1
    S              k 2            0
    01             S              P
    00             011            01
    R              110
    0
"""
from __future__ import annotations

import io
from pathlib import Path
from typing import TextIO

import numpy as np

from crr.core import BitMatrix, CrrInstance, Reconstruction
from crr.errors import ParseError
from crr.ingest import hypergraph_text, parse_hypergraph, read_hypergraph, write_hypergraph
from crr.reduction import SbInstance

__all__ = [
    "write_instance", "read_instance", "instance_text", "parse_instance",
    "write_sb", "read_sb", "sb_text", "parse_sb",
    "write_solution", "read_solution", "solution_text", "parse_solution",
    "write_factors", "parse_factors", "read_factors",
    "write_hypergraph", "read_hypergraph", "hypergraph_text", "parse_hypergraph",
    "detect_kind",
]


def _rows(mat: BitMatrix) -> list[str]:
    return ["".join("1" if b else "0" for b in row) for row in mat.array]


def write_instance(inst: CrrInstance, sink: TextIO) -> None:
    sink.write(f"crr 1\nn {inst.n}\nm {inst.m}\nS\n")
    for row in _rows(inst.s):
        sink.write(row + "\n")
    sink.write("R\n")
    for row in _rows(inst.r):
        sink.write(row + "\n")


def write_sb(sb: SbInstance, sink: TextIO) -> None:
    sink.write(f"sb 1\nn {sb.n}\nm {sb.m}\nk {sb.k}\nS\n")
    for row in _rows(sb.s):
        sink.write(row + "\n")


def write_factors(e: BitMatrix, p: BitMatrix, sink: TextIO) -> None:
    """``sol 1`` layout for any chained pair, e.g. a Set Basis E (n x k), P (k x m)."""
    sink.write("sol 1\nE\n")
    for row in _rows(e):
        sink.write(row + "\n")
    sink.write("P\n")
    for row in _rows(p):
        sink.write(row + "\n")


def write_solution(rec: Reconstruction, sink: TextIO) -> None:
    write_factors(rec.e, rec.p, sink)


def _text(writer, obj) -> str:
    buf = io.StringIO()
    writer(obj, buf)
    return buf.getvalue()


def instance_text(inst: CrrInstance) -> str:
    return _text(write_instance, inst)


def sb_text(sb: SbInstance) -> str:
    return _text(write_sb, sb)


def solution_text(rec: Reconstruction) -> str:
    return _text(write_solution, rec)


class _Lines:
    def __init__(self, text: str):
        self.lines = text.split("\n")
        if self.lines and self.lines[-1] == "":
            self.lines.pop()
        self.pos = 0

    def next(self, what: str) -> str:
        if self.pos >= len(self.lines):
            raise ParseError(f"unexpected end of file, expected {what}", self.pos + 1)
        line = self.lines[self.pos].rstrip("\r")
        self.pos += 1
        return line

    def expect(self, literal: str) -> None:
        line = self.next(repr(literal))
        if line.strip() != literal:
            raise ParseError(f"expected {literal!r}", self.pos, line)

    def keyed_int(self, key: str) -> int:
        line = self.next(f"'{key} <int>'")
        parts = line.split()
        if len(parts) != 2 or parts[0] != key or not parts[1].isdigit():
            raise ParseError(f"expected '{key} <int>'", self.pos, line)
        return int(parts[1])

    def block(self, rows: int, cols: int) -> BitMatrix:
        out = np.zeros((rows, cols), dtype=np.bool_)
        for i in range(rows):
            line = self.next(f"matrix row of length {cols}").strip()
            if len(line) != cols or set(line) - {"0", "1"}:
                raise ParseError(f"expected {cols} characters from {{0,1}}", self.pos, line)
            out[i] = [c == "1" for c in line]
        return BitMatrix(out)

    def rows_until(self, stop: str | None) -> list[str]:
        rows = []
        while self.pos < len(self.lines):
            line = self.lines[self.pos].rstrip("\r").strip()
            if stop is not None and line == stop:
                break
            self.pos += 1
            if set(line) - {"0", "1"}:
                raise ParseError("expected a row of characters from {0,1}", self.pos, line)
            rows.append(line)
        return rows

    def done(self) -> None:
        while self.pos < len(self.lines):
            line = self.lines[self.pos]
            self.pos += 1
            if line.strip():
                raise ParseError("trailing content", self.pos, line)


def parse_instance(text: str, meta=None) -> CrrInstance:
    ln = _Lines(text)
    ln.expect("crr 1")
    n = ln.keyed_int("n")
    m = ln.keyed_int("m")
    ln.expect("S")
    s = ln.block(n, n)
    ln.expect("R")
    r = ln.block(m, m)
    ln.done()
    return CrrInstance(s, r, meta or {})


def parse_sb(text: str) -> SbInstance:
    ln = _Lines(text)
    ln.expect("sb 1")
    n = ln.keyed_int("n")
    m = ln.keyed_int("m")
    k = ln.keyed_int("k")
    ln.expect("S")
    s = ln.block(n, m)
    ln.done()
    return SbInstance(s, k)


def _matrix(rows: list[str], what: str, width: int | None = None) -> BitMatrix:
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ParseError(f"ragged rows in {what} block")
    cols = widths.pop() if widths else (width or 0)
    if not rows:
        return BitMatrix(np.zeros((0, cols), dtype=np.bool_))
    return BitMatrix([[c == "1" for c in r] for r in rows])


def parse_factors(text: str) -> tuple[BitMatrix, BitMatrix]:
    ln = _Lines(text)
    ln.expect("sol 1")
    ln.expect("E")
    e_rows = ln.rows_until("P")
    ln.expect("P")
    p_rows = ln.rows_until(None)
    e = _matrix(e_rows, "E", len(p_rows))
    p = _matrix(p_rows, "P", 0)
    if e.cols != p.rows:
        raise ParseError(f"E is {e.shape} but P is {p.shape}")
    return e, p


def parse_solution(text: str) -> Reconstruction:
    e, p = parse_factors(text)
    if e.shape != (p.cols, p.rows):
        raise ParseError(f"E is {e.shape} but P is {p.shape}; not an incidence pair")
    return Reconstruction(e, p)


def _read(path) -> str:
    return Path(path).read_text()


def read_instance(path) -> CrrInstance:
    return parse_instance(_read(path), {"source": str(path)})


def read_sb(path) -> SbInstance:
    return parse_sb(_read(path))


def read_solution(path) -> Reconstruction:
    return parse_solution(_read(path))


def read_factors(path) -> tuple[BitMatrix, BitMatrix]:
    return parse_factors(_read(path))


def detect_kind(text: str) -> str:
    """``crr``, ``sb``, ``sol`` or ``hyper`` from the header line."""
    for line in text.splitlines():
        s = line.split("#", 1)[0].strip()
        if s:
            kind, _, ver = s.partition(" ")
            if kind in ("crr", "sb", "sol", "hyper") and ver.strip() == "1":
                return kind
            break
    raise ParseError("unrecognised file header", 1)
