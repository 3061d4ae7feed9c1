"""Bridge to external solvers through files and a subprocess.

The command is an argv template. Placeholders:

``{input}``     path of the encoded instance (``.cnf``, ``.smt2`` or ``.lp``)
``{solution}``  path the solver may write its answer to
``{timeout}``   timeout in whole seconds (at least 1)

Both files live in a fresh temporary directory that is removed after the
run unless ``keep_dir`` is given. Output grammar per encoder:

``dimacs``  SAT-competition ``s``/``v`` lines, read from the solution file if
            the solver wrote one, else from stdout. Exit codes 0, 10, 20.
``smt2``    ``sat``/``unsat``/``unknown`` on stdout, then ``get-value``
            output. A non-zero exit is tolerated only after ``unsat``, since
            some solvers complain about the trailing ``get-value``.
``lp``      CBC-style solution file (status line, then variable lines).
            Exit code 0.
"""
from __future__ import annotations

import math
import os
import shlex
import subprocess
import tempfile
import time
from pathlib import Path

from crr.core import CrrInstance, verify
from crr.encoders.cnf import decode_model, encode_cnf, read_dimacs_model, write_dimacs
from crr.encoders.lp import read_lp_solution, write_lp
from crr.encoders.smtlib import read_smt_output, write_smtlib
from crr.errors import IntegrityError, ParseError, SolverExitError, SolverSpawnError
from crr.solver.record import SolveRecord

__all__ = ["ENCODERS", "ENV_VAR", "solve_external", "expand_command"]

ENCODERS = ("dimacs", "smt2", "lp")
ENV_VAR = "CRR_EXTERNAL_SOLVER"
_SUFFIX = {"dimacs": ".cnf", "smt2": ".smt2", "lp": ".lp"}


def expand_command(command, input_path, solution_path, timeout) -> list[str]:
    if command is None:
        command = os.environ.get(ENV_VAR)
        if not command:
            raise SolverSpawnError(f"no solver command given and ${ENV_VAR} is unset")
    argv = shlex.split(command) if isinstance(command, str) else list(command)
    secs = str(max(1, math.ceil(timeout))) if timeout is not None else "0"
    subst = {"input": str(input_path), "solution": str(solution_path), "timeout": secs}
    try:
        return [a.format(**subst) for a in argv]
    except (KeyError, IndexError) as exc:
        raise SolverSpawnError(f"bad placeholder in solver command: {exc}") from None


def solve_external(inst: CrrInstance, encoder: str = "dimacs", command=None,
                   timeout: float | None = 3600.0, cnf_mode: str = "compact",
                   keep_dir: str | os.PathLike | None = None) -> SolveRecord:
    """Encode ``inst``, run the external solver, decode and verify its answer."""
    if encoder not in ENCODERS:
        raise ValueError(f"unknown encoder {encoder!r}; expected one of {ENCODERS}")
    if keep_dir is not None:
        Path(keep_dir).mkdir(parents=True, exist_ok=True)
        return _run(inst, encoder, command, timeout, cnf_mode, Path(keep_dir))
    with tempfile.TemporaryDirectory(prefix="crr-") as tmp:
        return _run(inst, encoder, command, timeout, cnf_mode, Path(tmp))


def _run(inst, encoder, command, timeout, cnf_mode, workdir: Path) -> SolveRecord:
    input_path = workdir / ("instance" + _SUFFIX[encoder])
    solution_path = workdir / "solution.txt"
    cnf = None
    with open(input_path, "w") as fh:
        if encoder == "dimacs":
            cnf = encode_cnf(inst, mode=cnf_mode)
            write_dimacs(cnf, fh)
            size = (cnf.num_vars, cnf.num_clauses)
        elif encoder == "lp":
            model = write_lp(inst, fh)
            size = (len(model.variables), len(model.constraints))
        else:
            write_smtlib(inst, fh)
            size = (None, None)
    argv = expand_command(command, input_path, solution_path, timeout)
    solver_id = Path(argv[0]).name

    def record(outcome, model=None, wall=0.0, stats=None):
        return SolveRecord(outcome, model, wall, solver_id, encoder, stats or {}, timeout, *size)

    start = time.monotonic()
    try:
        proc = subprocess.run(argv, capture_output=True, text=True, timeout=timeout)
    except subprocess.TimeoutExpired:
        wall = time.monotonic() - start
        return record("indetermined", wall=max(wall, timeout))
    except OSError as exc:
        raise SolverSpawnError(f"cannot start {argv[0]!r}: {exc}") from exc
    wall = time.monotonic() - start
    out = proc.stdout
    stats = {"returncode": proc.returncode}

    if encoder == "dimacs":
        if proc.returncode not in (0, 10, 20):
            raise SolverExitError(f"{solver_id} exited with {proc.returncode}", proc.returncode, out + proc.stderr)
        text = solution_path.read_text() if solution_path.exists() and solution_path.stat().st_size else out
        res = read_dimacs_model(text)
        outcome = res.outcome
        model = decode_model(cnf.varmap, res.assignment) if outcome == "sat" else None
    elif encoder == "smt2":
        try:
            outcome, model = read_smt_output(out, inst.n, inst.m)
        except ParseError:
            if proc.returncode != 0:
                raise SolverExitError(f"{solver_id} exited with {proc.returncode}", proc.returncode,
                                      out + proc.stderr) from None
            raise
        if proc.returncode != 0 and outcome != "unsat":
            raise SolverExitError(f"{solver_id} exited with {proc.returncode}", proc.returncode, out + proc.stderr)
    else:
        if proc.returncode != 0:
            raise SolverExitError(f"{solver_id} exited with {proc.returncode}", proc.returncode, out + proc.stderr)
        if not solution_path.exists():
            raise ParseError(f"{solver_id} wrote no solution file")
        outcome, model = read_lp_solution(solution_path.read_text(), inst.n, inst.m)

    if outcome == "sat" and not verify(inst, model):
        raise IntegrityError(f"{solver_id} reported sat but its model does not reproduce S and R")
    if outcome == "indetermined" and timeout is not None:
        wall = max(wall, timeout)
    return record(outcome, model, wall, stats)
