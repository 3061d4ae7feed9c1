"""Front door: pick a backend, run it, verify every sat answer."""
from __future__ import annotations

import time
from dataclasses import replace

from crr.core import CrrInstance, verify
from crr.encoders.cnf import CnfFormula, decode_model, encode_cnf
from crr.errors import IntegrityError
from crr.solver.brute import DEFAULT_BUDGET, brute_force, enumeration_size
from crr.solver.dpll import solve_cnf
from crr.solver.external import solve_external
from crr.solver.record import SolveRecord

__all__ = ["STRATEGIES", "DEFAULT_TIMEOUT", "dpll_solve", "solve", "route"]

STRATEGIES = ("auto", "brute", "dpll", "cdcl", "external")
DEFAULT_TIMEOUT = 3600.0


def dpll_solve(cnf: CnfFormula, timeout: float | None = DEFAULT_TIMEOUT, learn: bool = False,
               inst: CrrInstance | None = None) -> SolveRecord:
    """Run the internal solver on ``cnf`` and decode E, P from its model.

    With ``inst`` given the decoded model is checked against it.
    """
    res = solve_cnf(cnf.num_vars, cnf.clauses, timeout=timeout, learn=learn)
    model = None
    if res.status == "sat":
        lits = res.literals()
        if not cnf.satisfied_by({abs(l): l > 0 for l in lits}):
            raise IntegrityError("internal solver returned an assignment violating a clause")
        model = decode_model(cnf.varmap, lits)
        if inst is not None and not verify(inst, model):
            raise IntegrityError("decoded model does not reproduce S and R")
    wall = res.wall_time
    if res.status == "indetermined" and timeout is not None:
        wall = max(wall, timeout)
    stats = {"decisions": res.decisions, "propagations": res.propagations,
             "conflicts": res.conflicts, "learned": res.learned}
    return SolveRecord(res.status, model, wall, "cdcl" if learn else "dpll", "dimacs", stats,
                       timeout, cnf.num_vars, cnf.num_clauses)


def route(inst: CrrInstance, budget: int = DEFAULT_BUDGET) -> str:
    """Backend chosen by ``strategy="auto"``."""
    return "brute" if enumeration_size(inst.n, inst.m) <= budget else "cdcl"


def solve(inst: CrrInstance, strategy: str = "auto", timeout: float | None = DEFAULT_TIMEOUT,
          **options) -> SolveRecord:
    """Decide ``inst``.

    ``auto`` uses brute force when ``2^(2nm) <= 2^24`` and the internal
    solver with clause learning otherwise. ``dpll`` is the plain
    chronological solver. ``external`` forwards ``encoder``, ``command``,
    ``cnf_mode`` and ``keep_dir`` to :func:`solve_external`.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if strategy == "auto":
        strategy = route(inst, options.get("budget", DEFAULT_BUDGET))
    start = time.monotonic()
    if strategy == "brute":
        rec = brute_force(inst, options.get("budget", DEFAULT_BUDGET))
    elif strategy == "external":
        rec = solve_external(inst, timeout=timeout, **options)
    else:
        cnf = encode_cnf(inst, mode=options.get("cnf_mode", "compact"))
        deadline = None if timeout is None else max(0.0, timeout - (time.monotonic() - start))
        rec = dpll_solve(cnf, deadline, learn=(strategy == "cdcl"))
        wall = time.monotonic() - start
        if rec.outcome == "indetermined" and timeout is not None:
            wall = max(wall, timeout)
        rec = replace(rec, wall_time=wall, timeout=timeout)
    if rec.outcome == "sat" and not verify(inst, rec.model):
        raise IntegrityError(f"{rec.solver_id} returned a model that does not verify")
    return rec
