"""SMT-LIB v2 script for a CRR instance.

S, R, E and P are Boolean-valued uninterpreted functions over two declared
sorts. Species and reactions are distinct constants, and a domain-closure
axiom limits each sort to its constants so the quantifiers range over the
network only. ``quantified=False`` writes the ground expansion instead.
"""
from __future__ import annotations

import io
import re
from typing import TextIO

import numpy as np

from crr.core import BitMatrix, CrrInstance, Reconstruction
from crr.errors import DecodeError, ParseError

__all__ = ["write_smtlib", "smtlib_text", "read_smt_output"]


def _bool(b) -> str:
    return "true" if b else "false"


def _or(terms: list[str]) -> str:
    if not terms:
        return "false"
    return terms[0] if len(terms) == 1 else f"(or {' '.join(terms)})"


def write_smtlib(inst: CrrInstance, sink: TextIO, quantified: bool = True) -> None:
    n, m = inst.n, inst.m
    # sorts must be non-empty, so empty networks fall back to ground form
    quantified = quantified and n > 0 and m > 0
    sp = [f"s{i}" for i in range(n)]
    rx = [f"r{a}" for a in range(m)]
    w = sink.write
    w(f"; CRR instance n={n} m={m}\n")
    w(f"(set-logic {'UF' if quantified else 'QF_UF'})\n")
    w("(set-option :produce-models true)\n")
    w("(declare-sort Species 0)\n(declare-sort Reaction 0)\n")
    for c in sp:
        w(f"(declare-const {c} Species)\n")
    for c in rx:
        w(f"(declare-const {c} Reaction)\n")
    if n > 1:
        w(f"(assert (distinct {' '.join(sp)}))\n")
    if m > 1:
        w(f"(assert (distinct {' '.join(rx)}))\n")
    w("(declare-fun S (Species Species) Bool)\n")
    w("(declare-fun R (Reaction Reaction) Bool)\n")
    w("(declare-fun E (Species Reaction) Bool)\n")
    w("(declare-fun P (Reaction Species) Bool)\n")
    s, r = inst.s.array, inst.r.array
    for i in range(n):
        for j in range(n):
            w(f"(assert (= (S {sp[i]} {sp[j]}) {_bool(s[i, j])}))\n")
    for a in range(m):
        for b in range(m):
            w(f"(assert (= (R {rx[a]} {rx[b]}) {_bool(r[a, b])}))\n")
    if quantified:
        w(f"(assert (forall ((x Species)) {_or([f'(= x {c})' for c in sp])}))\n")
        w(f"(assert (forall ((y Reaction)) {_or([f'(= y {c})' for c in rx])}))\n")
        w("(assert (forall ((i Species) (j Species))\n"
          "  (= (S i j) (exists ((a Reaction)) (and (E i a) (P a j))))))\n")
        w("(assert (forall ((a Reaction) (b Reaction))\n"
          "  (= (R a b) (exists ((i Species)) (and (P a i) (E i b))))))\n")
    else:
        for i in range(n):
            for j in range(n):
                body = _or([f"(and (E {sp[i]} {x}) (P {x} {sp[j]}))" for x in rx])
                w(f"(assert (= (S {sp[i]} {sp[j]}) {body}))\n")
        for a in range(m):
            for b in range(m):
                body = _or([f"(and (P {rx[a]} {x}) (E {x} {rx[b]}))" for x in sp])
                w(f"(assert (= (R {rx[a]} {rx[b]}) {body}))\n")
    w("(check-sat)\n")
    cells = [f"(E {sp[i]} {rx[a]})" for i in range(n) for a in range(m)]
    cells += [f"(P {rx[a]} {sp[j]})" for a in range(m) for j in range(n)]
    if cells:
        w(f"(get-value ({' '.join(cells)}))\n")
    w("(get-model)\n")


def smtlib_text(inst: CrrInstance, quantified: bool = True) -> str:
    buf = io.StringIO()
    write_smtlib(inst, buf, quantified)
    return buf.getvalue()


_VALUE = re.compile(r"\(\s*\(\s*([EP])\s+([sr])(\d+)\s+([sr])(\d+)\s*\)\s+(true|false)\s*\)")


def read_smt_output(text: str, n: int, m: int) -> tuple[str, Reconstruction | None]:
    """Outcome token plus the E/P model from the ``get-value`` reply."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty SMT solver output")
    status = lines[0]
    if status == "unsat":
        return "unsat", None
    if status in ("unknown", "timeout"):
        return "indetermined", None
    if status != "sat":
        raise ParseError("expected sat/unsat/unknown", 1, status)
    e = np.zeros((n, m), dtype=np.bool_)
    p = np.zeros((m, n), dtype=np.bool_)
    seen = set()
    for fn, k1, x, k2, y, val in _VALUE.findall(text):
        x, y = int(x), int(y)
        if fn == "E" and k1 == "s" and k2 == "r" and x < n and y < m:
            e[x, y] = val == "true"
        elif fn == "P" and k1 == "r" and k2 == "s" and x < m and y < n:
            p[x, y] = val == "true"
        else:
            raise ParseError(f"unexpected value entry ({fn} {k1}{x} {k2}{y})")
        seen.add((fn, x, y))
    if len(seen) != 2 * n * m:
        raise DecodeError(f"SMT output gave {len(seen)} of {2 * n * m} incidence values")
    return "sat", Reconstruction(BitMatrix(e), BitMatrix(p))
