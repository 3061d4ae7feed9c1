"""Tseitin conversion of the direct formula and DIMACS I/O."""
from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Iterable, Mapping, TextIO

import numpy as np

from crr.core import BitMatrix, CrrInstance, Reconstruction
from crr.encoders.formula import And, DirectFormula, Node, Not, Or, Var, VarMap, encode_direct
from crr.errors import DecodeError, ParseError

__all__ = [
    "CnfFormula",
    "DimacsResult",
    "tseitin_cnf",
    "encode_cnf",
    "compact_cnf",
    "write_dimacs",
    "dimacs_text",
    "read_dimacs",
    "read_dimacs_model",
    "decode_model",
]

MODES = ("compact", "full")


@dataclass
class CnfFormula:
    num_vars: int
    clauses: list
    varmap: VarMap

    def __post_init__(self):
        for k, clause in enumerate(self.clauses):
            if not clause:
                raise ValueError(f"clause {k} is empty")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"clause {k} has literal {lit} outside 1..{self.num_vars}")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        return all(any(assignment[abs(l)] == (l > 0) for l in c) for c in self.clauses)


class _Builder:
    def __init__(self, varmap: VarMap, polarity: bool):
        self.varmap = varmap
        self.next_var = varmap.num_incidence + 1
        self.clauses: list[list[int]] = []
        self.polarity = polarity

    def fresh(self, tag) -> int:
        v = self.next_var
        self.next_var += 1
        self.varmap.aux[v] = tag if tag is not None else ("tseitin",)
        return v

    def emit_false(self, tag) -> None:
        x = self.fresh(tag)
        self.clauses.append([x])
        self.clauses.append([-x])

    def define(self, node: Node, positive: bool = True) -> int:
        """Literal equivalent to ``node``.

        With polarity on, only the implication direction required by the
        node's polarity is emitted (Plaisted-Greenbaum).
        """
        lit = _literal(node)
        if lit is not None:
            return lit
        if isinstance(node, Not):
            return -self.define(node.child, not positive)
        pos = positive or not self.polarity
        neg = (not positive) or not self.polarity
        kids = [self.define(c, positive) for c in node.children]
        x = self.fresh(node.label)
        if isinstance(node, And):
            if pos:
                self.clauses.extend([-x, c] for c in kids)
            if neg:
                self.clauses.append([x] + [-c for c in kids])
        else:
            if pos:
                self.clauses.append([-x] + kids)
            if neg:
                self.clauses.extend([x, -c] for c in kids)
        return x

    def assert_compact(self, node: Node) -> None:
        """Emit ``node`` as top-level constraints with as few auxiliaries as possible."""
        lit = _literal(node)
        if lit is not None:
            self.clauses.append([lit])
        elif isinstance(node, And):
            for c in node.children:
                self.assert_compact(c)
        elif isinstance(node, Or):
            if not node.children:
                self.emit_false(node.label)
                return
            clause = []
            for c in node.children:
                lit = _literal(c)
                clause.append(lit if lit is not None else self.define(c, True))
            self.clauses.append(clause)
        else:
            self.clauses.append([self.define(node, True)])


def _literal(node: Node) -> int | None:
    if isinstance(node, Var):
        return node.index
    if isinstance(node, Not) and isinstance(node.child, Var):
        return -node.child.index
    return None


def tseitin_cnf(formula: DirectFormula, mode: str = "compact", polarity: bool = False) -> CnfFormula:
    """Equisatisfiable CNF for ``formula``.

    ``mode="compact"`` keeps clause-shaped constraints (the 0-cells) as-is
    and introduces one auxiliary per conjunct under a disjunction.
    ``mode="full"`` names every internal node, as a generic converter would.
    ``polarity`` switches to the one-sided (Plaisted-Greenbaum) encoding.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    vm = VarMap(formula.varmap.n, formula.varmap.m)
    b = _Builder(vm, polarity)
    if mode == "compact":
        b.assert_compact(formula.root)
    else:
        b.clauses.append([b.define(formula.root, True)])
    return CnfFormula(b.next_var - 1, b.clauses, vm)


def compact_cnf(inst: CrrInstance, polarity: bool = False) -> CnfFormula:
    """Compact-mode CNF built straight from the matrices.

    Produces exactly what ``tseitin_cnf(encode_direct(inst), "compact")``
    produces, without materialising the formula tree.
    """
    n, m = inst.n, inst.m
    vm = VarMap(n, m)
    aux = vm.aux
    nxt = 2 * n * m + 1
    clauses = []
    add = clauses.append
    s, r = inst.s.array.tolist(), inst.r.array.tolist()
    nm1 = n * m + 1

    def one_cell(kind, x, y, pairs):
        nonlocal nxt
        if not pairs:
            aux[nxt] = (kind, x, y)
            add([nxt])
            add([-nxt])
            nxt += 1
            return
        ws = []
        for k, u, v in pairs:
            w = nxt
            nxt += 1
            aux[w] = (kind, x, y, k)
            add([-w, u])
            add([-w, v])
            if not polarity:
                add([w, -u, -v])
            ws.append(w)
        add(ws)

    for i in range(n):
        row = s[i]
        for j in range(n):
            pairs = [(a, 1 + i * m + a, nm1 + a * n + j) for a in range(m)]
            if row[j]:
                one_cell("S", i, j, pairs)
            else:
                clauses.extend([-u, -v] for _, u, v in pairs)
    for a in range(m):
        row = r[a]
        for b in range(m):
            pairs = [(i, nm1 + a * n + i, 1 + i * m + b) for i in range(n)]
            if row[b]:
                one_cell("R", a, b, pairs)
            else:
                clauses.extend([-u, -v] for _, u, v in pairs)
    return CnfFormula(nxt - 1, clauses, vm)


def encode_cnf(inst: CrrInstance, mode: str = "compact", polarity: bool = False) -> CnfFormula:
    """Same result as ``tseitin_cnf(encode_direct(inst), mode, polarity)``."""
    if mode == "compact":
        return compact_cnf(inst, polarity)
    return tseitin_cnf(encode_direct(inst), mode=mode, polarity=polarity)


def write_dimacs(cnf: CnfFormula, sink: TextIO, comments: Iterable[str] = ()) -> None:
    for c in comments:
        sink.write(f"c {c}\n")
    sink.write(f"p cnf {cnf.num_vars} {len(cnf.clauses)}\n")
    for clause in cnf.clauses:
        sink.write(" ".join(map(str, clause)))
        sink.write(" 0\n")


def dimacs_text(cnf: CnfFormula) -> str:
    buf = io.StringIO()
    write_dimacs(cnf, buf)
    return buf.getvalue()


def read_dimacs(text: str) -> tuple[int, list[list[int]]]:
    """Parse a DIMACS CNF file into ``(num_vars, clauses)``."""
    num_vars = num_clauses = None
    clauses, current = [], []
    for no, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("c") or s.startswith("%"):
            continue
        if s.startswith("p"):
            parts = s.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("bad problem line", no, line)
            num_vars, num_clauses = int(parts[2]), int(parts[3])
            continue
        if num_vars is None:
            raise ParseError("clause before problem line", no, line)
        try:
            lits = [int(t) for t in s.split()]
        except ValueError:
            raise ParseError("non-integer literal", no, line) from None
        for lit in lits:
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    if num_vars is None:
        raise ParseError("missing problem line")
    if num_clauses != len(clauses):
        raise ParseError(f"header announces {num_clauses} clauses, found {len(clauses)}")
    return num_vars, clauses


@dataclass
class DimacsResult:
    outcome: str  # "sat" | "unsat" | "indetermined"
    assignment: dict

    @property
    def literals(self) -> list[int]:
        return [v if val else -v for v, val in sorted(self.assignment.items())]


_STATUS = {
    "SATISFIABLE": "sat",
    "UNSATISFIABLE": "unsat",
    "UNKNOWN": "indetermined",
    "SAT": "sat",
    "UNSAT": "unsat",
    "INDET": "indetermined",
    "INDETERMINATE": "indetermined",
}


def read_dimacs_model(text: str) -> DimacsResult:
    """Parse solver output in SAT-competition form.

    Accepts ``c`` comment lines, one ``s <STATUS>`` line and ``v`` literal
    lines. The bare MiniSat result-file layout (``SAT`` then a literal
    line) is accepted as well.
    """
    outcome = None
    assignment: dict[int, bool] = {}
    bare = False
    for no, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("c"):
            continue
        head, _, rest = s.partition(" ")
        if head == "s":
            status = rest.strip().upper()
            if status not in _STATUS or outcome is not None:
                raise ParseError("unexpected status line", no, line)
            outcome = _STATUS[status]
        elif head == "v" or (bare and outcome == "sat"):
            body = rest if head == "v" else s
            try:
                lits = [int(t) for t in body.split()]
            except ValueError:
                raise ParseError("non-integer literal in model line", no, line) from None
            for lit in lits:
                if lit:
                    assignment[abs(lit)] = lit > 0
        elif outcome is None and s.upper() in _STATUS:
            outcome = _STATUS[s.upper()]
            bare = True
        else:
            raise ParseError("unrecognised solver output", no, line)
    if outcome is None:
        raise ParseError("no status line in solver output")
    if outcome != "sat":
        assignment = {}
    return DimacsResult(outcome, assignment)


def decode_model(varmap: VarMap, assignment) -> Reconstruction:
    """Read E and P off a variable assignment; auxiliaries are ignored.

    ``assignment`` is a mapping ``var -> bool`` or an iterable of signed
    literals.
    """
    if not isinstance(assignment, Mapping):
        assignment = {abs(int(l)): int(l) > 0 for l in assignment if int(l)}
    n, m = varmap.n, varmap.m
    e = np.zeros((n, m), dtype=np.bool_)
    p = np.zeros((m, n), dtype=np.bool_)
    try:
        for i in range(n):
            for a in range(m):
                e[i, a] = assignment[varmap.e_var(i, a)]
        for a in range(m):
            for j in range(n):
                p[a, j] = assignment[varmap.p_var(a, j)]
    except KeyError as exc:
        raise DecodeError(f"assignment lacks variable {exc.args[0]} ({varmap.describe(exc.args[0])})") from None
    return Reconstruction(BitMatrix(e), BitMatrix(p))
