"""Propositional form of a CRR instance.

Every cell of S and R becomes one constraint over the incidence variables:

* ``s[i][j] = 1``: ``OR_a (e[i,a] AND p[a,j])``
* ``s[i][j] = 0``: ``AND_a (NOT e[i,a] OR NOT p[a,j])``
* ``r[a][b] = 1``: ``OR_i (p[a,i] AND e[i,b])``
* ``r[a][b] = 0``: ``AND_i (NOT p[a,i] OR NOT e[i,b])``

Variables are numbered canonically: ``e[i,a]`` first in row-major order,
then ``p[a,j]`` row-major, so indices ``1..2nm`` are the incidence cells.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

import numpy as np

from crr.core import CrrInstance

__all__ = ["Var", "Not", "And", "Or", "Node", "VarMap", "DirectFormula", "encode_direct", "evaluate",
           "evaluate_many", "formula_satisfiable"]


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Not:
    child: "Node"


@dataclass(frozen=True)
class And:
    children: tuple
    label: tuple | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Or:
    children: tuple
    label: tuple | None = field(default=None, compare=False)


Node = Union[Var, Not, And, Or]


@dataclass
class VarMap:
    """Links DIMACS variable indices to E/P cells and auxiliary origins."""

    n: int
    m: int
    aux: dict = field(default_factory=dict)

    @property
    def num_incidence(self) -> int:
        return 2 * self.n * self.m

    def e_var(self, i: int, a: int) -> int:
        return 1 + i * self.m + a

    def p_var(self, a: int, j: int) -> int:
        return 1 + self.n * self.m + a * self.n + j

    @property
    def e_vars(self) -> dict:
        return {(i, a): self.e_var(i, a) for i in range(self.n) for a in range(self.m)}

    @property
    def p_vars(self) -> dict:
        return {(a, j): self.p_var(a, j) for a in range(self.m) for j in range(self.n)}

    def describe(self, var: int) -> tuple:
        """``("e", i, a)``, ``("p", a, j)`` or ``("aux", *tag)``."""
        nm = self.n * self.m
        if 1 <= var <= nm:
            i, a = divmod(var - 1, self.m)
            return ("e", i, a)
        if nm < var <= 2 * nm:
            a, j = divmod(var - 1 - nm, self.n)
            return ("p", a, j)
        if var in self.aux:
            return ("aux",) + tuple(self.aux[var])
        raise KeyError(var)


@dataclass
class DirectFormula:
    root: And
    varmap: VarMap

    def evaluate(self, assignment: Mapping[int, bool]) -> bool:
        return evaluate(self.root, assignment)

    def satisfiable(self, chunk: int = 1 << 16) -> bool:
        return formula_satisfiable(self.root, self.varmap.num_incidence, chunk)


def encode_direct(inst: CrrInstance) -> DirectFormula:
    n, m = inst.n, inst.m
    vm = VarMap(n, m)
    e = lambda i, a: Var(vm.e_var(i, a))  # noqa: E731
    p = lambda a, j: Var(vm.p_var(a, j))  # noqa: E731
    s, r = inst.s.array, inst.r.array
    cells = []
    for i in range(n):
        for j in range(n):
            if s[i, j]:
                cells.append(Or(tuple(And((e(i, a), p(a, j)), ("S", i, j, a)) for a in range(m)), ("S", i, j)))
            else:
                cells.append(And(tuple(Or((Not(e(i, a)), Not(p(a, j))), ("S", i, j, a)) for a in range(m)),
                                 ("S", i, j)))
    for a in range(m):
        for b in range(m):
            if r[a, b]:
                cells.append(Or(tuple(And((p(a, i), e(i, b)), ("R", a, b, i)) for i in range(n)), ("R", a, b)))
            else:
                cells.append(And(tuple(Or((Not(p(a, i)), Not(e(i, b))), ("R", a, b, i)) for i in range(n)),
                                 ("R", a, b)))
    return DirectFormula(And(tuple(cells), ("root",)), vm)


def evaluate(node: Node, assignment: Mapping[int, bool]) -> bool:
    """Evaluate a formula tree; missing variables raise ``KeyError``."""
    if isinstance(node, Var):
        return bool(assignment[node.index])
    if isinstance(node, Not):
        return not evaluate(node.child, assignment)
    if isinstance(node, And):
        return all(evaluate(c, assignment) for c in node.children)
    if isinstance(node, Or):
        return any(evaluate(c, assignment) for c in node.children)
    raise TypeError(f"not a formula node: {node!r}")


def evaluate_many(node: Node, columns: Mapping[int, np.ndarray]) -> np.ndarray:
    """Evaluate ``node`` on many assignments at once; ``columns[v]`` is a bool array."""
    if isinstance(node, Var):
        return columns[node.index]
    if isinstance(node, Not):
        return ~evaluate_many(node.child, columns)
    if isinstance(node, (And, Or)):
        parts = [evaluate_many(c, columns) for c in node.children]
        size = len(next(iter(columns.values()))) if columns else 1
        if not parts:
            return np.full(size, isinstance(node, And))
        op = np.logical_and if isinstance(node, And) else np.logical_or
        return op.reduce(parts)
    raise TypeError(f"not a formula node: {node!r}")


def formula_satisfiable(node: Node, num_vars: int, chunk: int = 1 << 16) -> bool:
    """Exhaustive satisfiability over variables ``1..num_vars``, ``chunk`` assignments at a time."""
    total = 1 << num_vars
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cols = {v: ((codes >> (v - 1)) & 1).astype(np.bool_) for v in range(1, num_vars + 1)}
        if evaluate_many(node, cols).any():
            return True
    return False
