"""Backtracking CNF solver with two-watched-literal unit propagation.

Plain DPLL with chronological backtracking is the default. ``learn=True``
switches conflict handling to first-UIP clause learning with
non-chronological backjumping. Neither mode uses randomisation, so runs
are reproducible down to the statistics.

Branching follows a static order: variables sorted by number of clause
occurrences (descending), ties broken by lower index. The first value tried
is the polarity the variable occurs with more often (``phase="occurrence"``),
or a fixed ``True``/``False``.

Literals are stored internally as ``2*v`` (positive) and ``2*v + 1``
(negative), so negation is ``lit ^ 1``.
"""
from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

__all__ = ["DpllResult", "DpllSolver", "solve_cnf"]


@dataclass
class DpllResult:
    status: str  # "sat" | "unsat" | "indetermined"
    model: list | None  # model[v] for v in 1..num_vars (index 0 unused)
    decisions: int = 0
    propagations: int = 0
    conflicts: int = 0
    learned: int = 0
    wall_time: float = 0.0
    stats: dict = field(default_factory=dict)

    def literals(self) -> list[int]:
        if self.model is None:
            return []
        return [v if self.model[v] else -v for v in range(1, len(self.model))]


def _code(lit: int) -> int:
    return 2 * lit if lit > 0 else -2 * lit + 1


class DpllSolver:
    def __init__(self, num_vars: int, clauses, learn: bool = False, phase="occurrence"):
        self.num_vars = num_vars
        self.learn = learn
        nlits = 2 * (num_vars + 1)
        self.val = [0] * nlits
        self.level = [0] * (num_vars + 1)
        self.reason = [None] * (num_vars + 1)
        self.trail: list[int] = []
        self.qhead = 0
        self.clauses: list[list[int]] = []
        self.watches: list[list[int]] = [[] for _ in range(nlits)]
        self.bins: list[list[int]] = [[] for _ in range(nlits)]
        self.bin_cid: list[list[int]] = [[] for _ in range(nlits)]
        self.units: list[int] = []
        self.trivially_unsat = False
        self.decisions = self.propagations = self.conflicts = self.learned = 0

        occ = [0] * nlits
        for raw in clauses:
            lits = []
            seen = set()
            taut = False
            for l in raw:
                c = _code(int(l))
                if c ^ 1 in seen:
                    taut = True
                    break
                if c not in seen:
                    seen.add(c)
                    lits.append(c)
            if taut:
                continue
            for c in lits:
                occ[c] += 1
            self._add_clause(lits)

        score = [(-(occ[2 * v] + occ[2 * v + 1]), v) for v in range(1, num_vars + 1)]
        score.sort()
        self.order = [v for _, v in score]
        if phase == "occurrence":
            self.first = [False] + [occ[2 * v] > occ[2 * v + 1] for v in range(1, num_vars + 1)]
        else:
            self.first = [bool(phase)] * (num_vars + 1)

    def _add_clause(self, lits: list[int]) -> int:
        cid = len(self.clauses)
        self.clauses.append(lits)
        if not lits:
            self.trivially_unsat = True
        elif len(lits) == 1:
            self.units.append(cid)
        elif len(lits) == 2:
            a, b = lits
            self.bins[a].append(b)
            self.bin_cid[a].append(cid)
            self.bins[b].append(a)
            self.bin_cid[b].append(cid)
        else:
            self.watches[lits[0]].append(cid)
            self.watches[lits[1]].append(cid)
        return cid

    # -- assignment ----------------------------------------------------
    def _assign(self, lit: int, reason, lvl: int) -> None:
        self.val[lit] = 1
        self.val[lit ^ 1] = -1
        v = lit >> 1
        self.level[v] = lvl
        self.reason[v] = reason
        self.trail.append(lit)

    def _undo(self, trail_len: int) -> None:
        val, trail = self.val, self.trail
        for k in range(len(trail) - 1, trail_len - 1, -1):
            lit = trail[k]
            val[lit] = 0
            val[lit ^ 1] = 0
        del trail[trail_len:]
        self.qhead = min(self.qhead, trail_len)

    def _propagate(self, lvl: int):
        """Unit propagation; returns the conflicting clause id or ``None``."""
        val, trail, clauses = self.val, self.trail, self.clauses
        bins, bin_cid, watches, level, reason = self.bins, self.bin_cid, self.watches, self.level, self.reason
        props = 0
        while self.qhead < len(trail):
            f = trail[self.qhead] ^ 1
            self.qhead += 1
            bl = bins[f]
            for k in range(len(bl)):
                o = bl[k]
                vo = val[o]
                if vo == 1:
                    continue
                if vo == -1:
                    self.propagations += props
                    return bin_cid[f][k]
                val[o] = 1
                val[o ^ 1] = -1
                level[o >> 1] = lvl
                reason[o >> 1] = bin_cid[f][k]
                trail.append(o)
                props += 1
            ws = watches[f]
            if not ws:
                continue
            keep = []
            n_ws = len(ws)
            k = 0
            while k < n_ws:
                cid = ws[k]
                k += 1
                c = clauses[cid]
                if c[0] == f:
                    c[0] = c[1]
                    c[1] = f
                first = c[0]
                if val[first] == 1:
                    keep.append(cid)
                    continue
                for idx in range(2, len(c)):
                    lit = c[idx]
                    if val[lit] != -1:
                        c[1] = lit
                        c[idx] = f
                        watches[lit].append(cid)
                        break
                else:
                    keep.append(cid)
                    if val[first] == -1:
                        keep.extend(ws[k:])
                        watches[f] = keep
                        self.propagations += props
                        return cid
                    val[first] = 1
                    val[first ^ 1] = -1
                    level[first >> 1] = lvl
                    reason[first >> 1] = cid
                    trail.append(first)
                    props += 1
            watches[f] = keep
        self.propagations += props
        return None

    # -- learning ------------------------------------------------------
    def _analyze(self, confl: int, lvl: int) -> tuple[list[int], int]:
        """First-UIP learned clause (asserting literal first) and backjump level."""
        seen = [False] * (self.num_vars + 1)
        learnt = [0]
        counter = 0
        lit = None
        idx = len(self.trail) - 1
        clause = self.clauses[confl]
        while True:
            for q in clause:
                if lit is not None and q == lit:
                    continue
                v = q >> 1
                if not seen[v] and self.level[v] > 0:
                    seen[v] = True
                    if self.level[v] >= lvl:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[self.trail[idx] >> 1]:
                idx -= 1
            lit = self.trail[idx]
            idx -= 1
            v = lit >> 1
            seen[v] = False
            counter -= 1
            if counter == 0:
                break
            clause = self.clauses[self.reason[v]]
        learnt[0] = lit ^ 1
        if len(learnt) == 1:
            return learnt, 0
        best = max(range(1, len(learnt)), key=lambda k: self.level[learnt[k] >> 1])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, self.level[learnt[1] >> 1]

    # -- search --------------------------------------------------------
    def solve(self, timeout: float | None = None) -> DpllResult:
        start = time.monotonic()
        self._deadline = None if timeout is None else start + timeout

        def done(status):
            model = None
            if status == "sat":
                model = [False] * (self.num_vars + 1)
                for v in range(1, self.num_vars + 1):
                    model[v] = self.val[2 * v] == 1
            return DpllResult(status, model, self.decisions, self.propagations, self.conflicts,
                              self.learned, time.monotonic() - start)

        if self.trivially_unsat:
            return done("unsat")
        for cid in self.units:
            lit = self.clauses[cid][0]
            if self.val[lit] == -1:
                return done("unsat")
            if self.val[lit] == 0:
                self._assign(lit, cid, 0)
        if self._propagate(0) is not None:
            return done("unsat")
        return done(self._search_learning() if self.learn else self._search_chronological())

    def _expired(self) -> bool:
        return self._deadline is not None and time.monotonic() > self._deadline

    def _search_chronological(self) -> str:
        order, val, first = self.order, self.val, self.first
        pos = 0
        # decision stack entries: [trail length before, literal, flipped, order position]
        stack: list[list] = []
        n_order = len(order)
        while True:
            if self._expired():
                return "indetermined"
            while pos < n_order and val[2 * order[pos]] != 0:
                pos += 1
            if pos == n_order:
                return "sat"
            v = order[pos]
            lit = 2 * v if first[v] else 2 * v + 1
            self.decisions += 1
            stack.append([len(self.trail), lit, False, pos])
            self._assign(lit, None, len(stack))
            confl = self._propagate(len(stack))
            while confl is not None:
                self.conflicts += 1
                if (self.conflicts & 255) == 0 and self._expired():
                    return "indetermined"
                while stack and stack[-1][2]:
                    stack.pop()
                if not stack:
                    return "unsat"
                top = stack[-1]
                self._undo(top[0])
                top[2] = True
                pos = top[3]
                self._assign(top[1] ^ 1, None, len(stack))
                confl = self._propagate(len(stack))

    def _search_learning(self) -> str:
        """CDCL loop: VSIDS-style activities seeded with occurrence counts,
        saved phases and Luby restarts (unit 100 conflicts)."""
        n = self.num_vars
        val = self.val
        act = [0.0] * (n + 1)
        for rank, v in enumerate(self.order):
            act[v] = float(n - rank)
        saved = list(self.first)
        heap = [(-act[v], v) for v in range(1, n + 1)]
        heapq.heapify(heap)
        inc = 1.0
        lim: list[int] = []  # trail length at the start of each level
        restart_idx, budget = 1, 100 * _luby(1)

        def backjump(level: int) -> None:
            if level >= len(lim):
                return
            cut = lim[level]
            for k in range(cut, len(self.trail)):
                lit = self.trail[k]
                v = lit >> 1
                saved[v] = not (lit & 1)
                heapq.heappush(heap, (-act[v], v))
            self._undo(cut)
            del lim[level:]

        while True:
            if self._expired():
                return "indetermined"
            if budget <= 0:
                backjump(0)
                restart_idx += 1
                budget = 100 * _luby(restart_idx)
            v = 0
            while heap:
                a, cand = heapq.heappop(heap)
                if val[2 * cand] == 0 and -a == act[cand]:
                    v = cand
                    break
            if v == 0:
                if any(val[2 * x] == 0 for x in range(1, n + 1)):
                    heap = [(-act[x], x) for x in range(1, n + 1) if val[2 * x] == 0]
                    heapq.heapify(heap)
                    continue
                return "sat"
            self.decisions += 1
            lim.append(len(self.trail))
            self._assign(2 * v if saved[v] else 2 * v + 1, None, len(lim))
            confl = self._propagate(len(lim))
            while confl is not None:
                self.conflicts += 1
                budget -= 1
                if (self.conflicts & 255) == 0 and self._expired():
                    return "indetermined"
                if not lim:
                    return "unsat"
                learnt, back = self._analyze(confl, len(lim))
                for lit in learnt:
                    u = lit >> 1
                    act[u] += inc
                    heapq.heappush(heap, (-act[u], u))
                inc /= 0.95
                if inc > 1e100:
                    act = [x * 1e-100 for x in act]
                    inc *= 1e-100
                    heap = [(-act[x], x) for x in range(1, n + 1) if val[2 * x] == 0]
                    heapq.heapify(heap)
                backjump(back)
                cid = self._add_clause(learnt)
                self.learned += 1
                self._assign(learnt[0], cid, back)
                confl = self._propagate(back)


def _luby(i: int) -> int:
    """i-th element (1-based) of the Luby sequence 1,1,2,1,1,2,4,..."""
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while True:
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i:
            k += 1


def solve_cnf(num_vars: int, clauses, timeout: float | None = None, learn: bool = False,
              phase="occurrence") -> DpllResult:
    return DpllSolver(num_vars, clauses, learn=learn, phase=phase).solve(timeout)
