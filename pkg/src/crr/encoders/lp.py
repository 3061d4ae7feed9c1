"""0/1 integer program in CPLEX LP file format.

Zero cells forbid every witness (``e + p <= 1``). One cells get explicit
witness variables ``w = e AND p`` linearised as ``w <= e``, ``w <= p``,
``w >= e + p - 1`` together with ``sum w >= 1``. The objective is the
constant 0; only feasibility matters.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, TextIO

import numpy as np

from crr.core import BitMatrix, CrrInstance, Reconstruction
from crr.errors import DecodeError, ParseError

__all__ = ["IlpModel", "Constraint", "build_ilp", "write_lp", "lp_text", "ilp_var_count",
           "ilp_feasible", "read_lp_solution"]


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple  # ((coef, var), ...)
    sense: str  # "<=", ">=", "="
    rhs: int

    def holds(self, values: Mapping[str, int]) -> bool:
        lhs = sum(c * values[v] for c, v in self.terms)
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class IlpModel:
    n: int
    m: int
    variables: list = field(default_factory=list)
    constraints: list = field(default_factory=list)

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    @property
    def num_constraints(self) -> int:
        return len(self.constraints)


def e_name(i, a):
    return f"e_{i}_{a}"


def p_name(a, j):
    return f"p_{a}_{j}"


def ilp_var_count(inst: CrrInstance) -> int:
    """``2nm + m*|ones(S)| + n*|ones(R)|``."""
    n, m = inst.n, inst.m
    return 2 * n * m + m * inst.s.count_ones() + n * inst.r.count_ones()


def build_ilp(inst: CrrInstance) -> IlpModel:
    n, m = inst.n, inst.m
    model = IlpModel(n, m)
    model.variables += [e_name(i, a) for i in range(n) for a in range(m)]
    model.variables += [p_name(a, j) for a in range(m) for j in range(n)]
    cons = model.constraints
    s, r = inst.s.array, inst.r.array

    def cell(kind, x, y, pairs):
        # pairs: (witness index, left var, right var)
        ones_cell = (s if kind == "S" else r)[x, y]
        if not ones_cell:
            for k, u, v in pairs:
                cons.append(Constraint(f"z{kind}_{x}_{y}_{k}", ((1, u), (1, v)), "<=", 1))
            return
        ws = []
        for k, u, v in pairs:
            w = f"w{kind}_{x}_{y}_{k}"
            ws.append(w)
            model.variables.append(w)
            cons.append(Constraint(f"a{kind}_{x}_{y}_{k}", ((1, w), (-1, u)), "<=", 0))
            cons.append(Constraint(f"b{kind}_{x}_{y}_{k}", ((1, w), (-1, v)), "<=", 0))
            cons.append(Constraint(f"c{kind}_{x}_{y}_{k}", ((1, w), (-1, u), (-1, v)), ">=", -1))
        cons.append(Constraint(f"o{kind}_{x}_{y}", tuple((1, w) for w in ws), ">=", 1))

    for i, j in product(range(n), repeat=2):
        cell("S", i, j, [(a, e_name(i, a), p_name(a, j)) for a in range(m)])
    for a, b in product(range(m), repeat=2):
        cell("R", a, b, [(i, p_name(a, i), e_name(i, b)) for i in range(n)])
    return model


def _fmt_terms(terms) -> str:
    parts = []
    for k, (c, v) in enumerate(terms):
        mag = "" if abs(c) == 1 else f"{abs(c)} "
        if k == 0:
            parts.append(f"{'-' if c < 0 else ''}{mag}{v}")
        else:
            parts.append(f"{'-' if c < 0 else '+'} {mag}{v}")
    return " ".join(parts)


def write_lp(inst: CrrInstance, sink: TextIO) -> IlpModel:
    model = build_ilp(inst)
    w = sink.write
    w(f"\\ CRR instance n={inst.n} m={inst.m}\n")
    w("Minimize\n obj: 0\n")
    w("Subject To\n")
    for c in model.constraints:
        if c.terms:
            w(f" {c.name}: {_fmt_terms(c.terms)} {c.sense} {c.rhs}\n")
        else:
            # sum over an empty witness set; only possible with m == 0 or n == 0
            w(f" {c.name}: 0 x_infeasible >= 1\n")
    w("Binary\n")
    for v in model.variables:
        w(f" {v}\n")
    w("End\n")
    return model


def lp_text(inst: CrrInstance) -> str:
    buf = io.StringIO()
    write_lp(inst, buf)
    return buf.getvalue()


def ilp_feasible(model: IlpModel, limit: int = 1 << 20) -> Reconstruction | None:
    """Exhaustive feasibility check over the E/P variables.

    Witness variables are fixed to ``e AND p``; if any witness choice is
    feasible then this one is, so enumeration over E/P alone is complete.
    """
    n, m = model.n, model.m
    k = 2 * n * m
    if (1 << k) > limit:
        raise ValueError(f"2^{k} assignments exceed limit {limit}")
    inc = model.variables[:k]
    witness = [v for v in model.variables[k:]]
    parsed = []
    for w in witness:
        kind, x, y, z = w[1], *map(int, w[3:].split("_"))
        parsed.append((w, (e_name(x, z), p_name(z, y)) if kind == "S" else (p_name(x, z), e_name(z, y))))
    for code in range(1 << k):
        vals = {v: (code >> t) & 1 for t, v in enumerate(inc)}
        for w, (u, v) in parsed:
            vals[w] = vals[u] & vals[v]
        if all(c.holds(vals) for c in model.constraints):
            e = np.array([[vals[e_name(i, a)] for a in range(m)] for i in range(n)], dtype=np.bool_).reshape(n, m)
            p = np.array([[vals[p_name(a, j)] for j in range(n)] for a in range(m)], dtype=np.bool_).reshape(m, n)
            return Reconstruction(BitMatrix(e), BitMatrix(p))
    return None


def read_lp_solution(text: str, n: int, m: int) -> tuple[str, Reconstruction | None]:
    """Parse a CBC-style solution file.

    First line carries the status (``Optimal``, ``Infeasible``, ...); each
    further line is ``index name value [reduced cost]``.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty LP solution file")
    status = lines[0].strip().lower()
    if status.startswith("stopped"):
        return "indetermined", None
    if "infeasible" in status.split(" - ")[0]:
        return "unsat", None
    if not status.startswith("optimal"):
        raise ParseError("unknown LP status", 1, lines[0])
    vals = {}
    for no, line in enumerate(lines[1:], 2):
        parts = line.replace("**", " ").split()
        if len(parts) < 3:
            raise ParseError("short solution line", no, line)
        try:
            vals[parts[1]] = round(float(parts[2]))
        except ValueError:
            raise ParseError("non-numeric value", no, line) from None
    # solvers may omit variables at zero
    e = np.array([[vals.get(e_name(i, a), 0) for a in range(m)] for i in range(n)], dtype=np.int64).reshape(n, m)
    p = np.array([[vals.get(p_name(a, j), 0) for j in range(n)] for a in range(m)], dtype=np.int64).reshape(m, n)
    if not (np.isin(e, (0, 1)).all() and np.isin(p, (0, 1)).all()):
        raise DecodeError("LP solution has non-binary incidence values")
    return "sat", Reconstruction(BitMatrix(e), BitMatrix(p))
