"""Backends that decide CRR instances."""
from crr.solver.brute import brute_force, brute_force_models
from crr.solver.dispatch import DEFAULT_TIMEOUT, STRATEGIES, dpll_solve, route, solve
from crr.solver.dpll import DpllSolver, solve_cnf
from crr.solver.external import solve_external
from crr.solver.record import SolveRecord

__all__ = [
    "DEFAULT_TIMEOUT",
    "STRATEGIES",
    "SolveRecord",
    "DpllSolver",
    "brute_force",
    "brute_force_models",
    "dpll_solve",
    "route",
    "solve",
    "solve_cnf",
    "solve_external",
]
