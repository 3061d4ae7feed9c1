"""``crr`` command line.

Exit codes: 0 success, 10 sat, 20 unsat, 30 indetermined (``solve`` only),
1 any error (message on stderr).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from crr.core import verify
from crr.encoders.cnf import encode_cnf, write_dimacs
from crr.encoders.lp import write_lp
from crr.encoders.smtlib import write_smtlib
from crr.errors import CrrError
from crr.generator import GenSpec, gen_instance, gen_sat_instance
from crr.harness import formats
from crr.harness.report import cumulative_csv, load_rows, proportions_csv
from crr.harness.sweep import SweepSpec, run_sweep
from crr.ingest import instance_from_network, read_hypergraph, stats_report
from crr.reduction import extract_sb_solution, reduce_sb, unpad_factors
from crr.solver.dispatch import DEFAULT_TIMEOUT, STRATEGIES, solve
from crr.solver.external import ENCODERS

EXIT_OK, EXIT_ERROR, EXIT_SAT, EXIT_UNSAT, EXIT_INDET = 0, 1, 10, 20, 30
_EXIT = {"sat": EXIT_SAT, "unsat": EXIT_UNSAT, "indetermined": EXIT_INDET}


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline="\n"), True


def _emit(path, writer, obj):
    fh, close = _open_out(path)
    try:
        return writer(obj, fh)
    finally:
        if close:
            fh.close()


def _size(text: str) -> tuple[int, int]:
    try:
        n, m = text.lower().split("x")
        return int(n), int(m)
    except ValueError:
        raise argparse.ArgumentTypeError(f"size must look like 10x10, got {text!r}") from None


def cmd_gen(a) -> int:
    if a.arc_density is not None:
        inst, h = gen_sat_instance(a.n, a.m, a.arc_density, a.seed)
        if a.hyper:
            _emit(a.hyper, formats.write_hypergraph, h)
    else:
        inst = gen_instance(GenSpec(a.n, a.m, a.p, a.q, a.seed))
    _emit(a.out, formats.write_instance, inst)
    return EXIT_OK


def cmd_encode(a) -> int:
    inst = formats.read_instance(a.input)
    if a.format == "dimacs":
        cnf = encode_cnf(inst, mode=a.mode, polarity=a.polarity)
        _emit(a.out, lambda c, fh: write_dimacs(c, fh, [f"crr n={inst.n} m={inst.m} mode={a.mode}"]), cnf)
    elif a.format == "smt2":
        _emit(a.out, lambda i, fh: write_smtlib(i, fh, quantified=not a.ground), inst)
    else:
        _emit(a.out, write_lp, inst)
    return EXIT_OK


def cmd_solve(a) -> int:
    inst = formats.read_instance(a.input)
    opts = {}
    if a.strategy == "external":
        opts = {"encoder": a.encoder, "command": a.command}
    elif a.strategy in ("dpll", "cdcl"):
        opts = {"cnf_mode": a.mode}
    rec = solve(inst, a.strategy, a.timeout, **opts)
    print(f"{rec.outcome} solver={rec.solver_id} time={rec.wall_time:.3f}s")
    if rec.model is not None and a.solution:
        _emit(a.solution, formats.write_solution, rec.model)
    return _EXIT[rec.outcome]


def cmd_verify(a) -> int:
    inst = formats.read_instance(a.instance)
    rec = formats.read_solution(a.solution)
    if verify(inst, rec):
        print("OK")
        return EXIT_OK
    print("MISMATCH: E.P / P.E do not reproduce S / R", file=sys.stderr)
    return EXIT_ERROR


def cmd_reduce(a) -> int:
    if a.extract:
        if not a.solution:
            raise CrrError("--extract needs --solution")
        e, p = extract_sb_solution(formats.read_solution(a.solution))
        if a.input:
            sb = formats.read_sb(a.input)
            e, p = unpad_factors(e, p, sb.n, sb.m)
        _emit(a.out, lambda f, fh: formats.write_factors(*f, fh), (e, p))
        return EXIT_OK
    sb = formats.read_sb(a.input)
    _emit(a.out, formats.write_instance, reduce_sb(sb))
    return EXIT_OK


def cmd_ingest(a) -> int:
    stats, recs = [], []
    for path in a.input:
        h = read_hypergraph(path)
        inst, st = instance_from_network(h, name=Path(path).stem)
        stats.append(st)
        if a.out and len(a.input) == 1:
            _emit(a.out, formats.write_instance, inst)
        recs.append(solve(inst, a.strategy, a.timeout) if a.solve else None)
    report = stats_report(stats, recs if a.solve else None)
    if a.stats:
        Path(a.stats).write_text(report)
    elif not a.out or a.out != "-":
        sys.stdout.write(report)
    return EXIT_OK


def cmd_sweep(a) -> int:
    forced = []
    for item in a.force or ():
        p, q = item.split(",")
        forced.append((float(p), float(q)))
    opts = {}
    if a.strategy == "external":
        opts = {"encoder": a.encoder, "command": a.command}
    spec = SweepSpec(tuple(a.sizes), a.count, a.mode, a.step, a.lo, a.hi, a.timeout, a.strategy, a.seed,
                     tuple(forced), opts)
    progress = None
    if a.verbose:
        def progress(row):
            print(",".join(row), file=sys.stderr)
    run_sweep(spec, a.out, instance_dir=a.instances, workers=a.workers, resume=not a.fresh,
              svg=not a.no_svg, progress=progress)
    return EXIT_OK


def cmd_report(a) -> int:
    rows = load_rows(a.csv)
    props, cum = proportions_csv(rows), cumulative_csv(rows)
    if a.prefix:
        Path(a.prefix + ".proportions.csv").write_text(props)
        Path(a.prefix + ".cumulative.csv").write_text(cum)
    else:
        sys.stdout.write(props + "\n" + cum)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="crr", description="Reconstruct reaction hypergraphs from S and R graphs.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a random instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--p", type=float, default=0.5, help="zero fraction of S")
    g.add_argument("--q", type=float, default=0.5, help="zero fraction of R")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--arc-density", type=float, help="derive S, R from a random hypergraph instead")
    g.add_argument("--hyper", help="with --arc-density, also write the hypergraph here")
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("encode", help="write an instance as DIMACS, SMT-LIB or LP")
    e.add_argument("--in", dest="input", required=True)
    e.add_argument("--format", choices=ENCODERS, default="dimacs")
    e.add_argument("--mode", choices=("compact", "full"), default="compact", help="Tseitin variant")
    e.add_argument("--polarity", action="store_true", help="one-sided Tseitin definitions")
    e.add_argument("--ground", action="store_true", help="SMT-LIB without quantifiers")
    e.add_argument("--out", default="-")
    e.set_defaults(func=cmd_encode)

    s = sub.add_parser("solve", help="decide an instance")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--strategy", choices=STRATEGIES, default="auto")
    s.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT, help="seconds")
    s.add_argument("--mode", choices=("compact", "full"), default="compact")
    s.add_argument("--encoder", choices=ENCODERS, default="dimacs")
    s.add_argument("--command", help="external solver argv template ({input}, {solution}, {timeout})")
    s.add_argument("--solution", help="write the model here when sat")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution against an instance")
    v.add_argument("--instance", required=True)
    v.add_argument("--solution", required=True)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reduce", help="Set Basis to CRR, or extract a Set Basis solution")
    r.add_argument("--in", dest="input", help="sb 1 instance")
    r.add_argument("--extract", action="store_true", help="map a CRR solution back to E (n x k), P (k x m)")
    r.add_argument("--solution", help="CRR solution to extract from")
    r.add_argument("--out", default="-")
    r.set_defaults(func=cmd_reduce)

    i = sub.add_parser("ingest", help="derive instances and statistics from hyper 1 networks")
    i.add_argument("--in", dest="input", nargs="+", required=True)
    i.add_argument("--out", help="instance file (single input only)")
    i.add_argument("--stats", help="statistics CSV (default stdout)")
    i.add_argument("--solve", action="store_true", help="add outcome and time columns")
    i.add_argument("--strategy", choices=STRATEGIES, default="auto")
    i.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT)
    i.set_defaults(func=cmd_ingest)

    w = sub.add_parser("sweep", help="generate and solve a batch of random instances")
    w.add_argument("--sizes", type=_size, nargs="+", default=[(10, 10)])
    w.add_argument("--count", type=int, default=1)
    w.add_argument("--mode", choices=("uniform", "grid", "band"), default="uniform")
    w.add_argument("--step", type=float, default=0.1)
    w.add_argument("--lo", type=float, default=0.0)
    w.add_argument("--hi", type=float, default=1.0)
    w.add_argument("--force", nargs="*", metavar="P,Q", help="fixed (p,q) for the first instances of each size")
    w.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT)
    w.add_argument("--strategy", choices=STRATEGIES, default="auto")
    w.add_argument("--encoder", choices=ENCODERS, default="dimacs")
    w.add_argument("--command")
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--workers", type=int, default=1)
    w.add_argument("--instances", help="directory for the generated instance files")
    w.add_argument("--fresh", action="store_true", help="overwrite instead of resuming")
    w.add_argument("--no-svg", action="store_true")
    w.add_argument("--verbose", action="store_true")
    w.add_argument("--out", required=True)
    w.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="summarise sweep CSVs")
    p.add_argument("csv", nargs="+")
    p.add_argument("--prefix", help="write <prefix>.proportions.csv and <prefix>.cumulative.csv")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CrrError, ValueError, OSError) as exc:
        print(f"crr {args.cmd}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
