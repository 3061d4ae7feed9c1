"""Phase-transition sweeps: generate, solve, append one CSV row per instance.

Instance ids are consecutive integers over ``sizes x count``, so the largest
id already present in an output file is the resume point. Rows are always
written in id order, also with several workers.
"""
from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from crr.core import CrrInstance
from crr.generator import GenSpec, derive_seed, gen_instance, gen_pq_band, gen_pq_uniform
from crr.harness.formats import instance_text
from crr.solver.dispatch import DEFAULT_TIMEOUT, STRATEGIES, solve

__all__ = ["SweepSpec", "RESULT_COLUMNS", "SCATTER_COLUMNS", "PALETTE", "run_sweep", "plan",
           "read_results", "write_scatter", "scatter_svg"]

RESULT_COLUMNS = ("instance_id", "n", "m", "p", "q", "seed", "encoder", "solver", "outcome",
                  "wall_time_ms", "num_vars", "num_constraints")
SCATTER_COLUMNS = ("instance_id", "n", "m", "p", "q", "outcome")
PALETTE = {"sat": "#2ca02c", "unsat": "#d62728", "indet": "#1f77b4"}
MODES = ("uniform", "grid", "band")


@dataclass(frozen=True)
class SweepSpec:
    sizes: tuple
    count: int = 1
    mode: str = "uniform"
    step: float = 0.1
    lo: float = 0.0
    hi: float = 1.0
    timeout: float = DEFAULT_TIMEOUT
    strategy: str = "auto"
    seed: int = 0
    # (p, q) pairs that replace the first instances of every size
    forced: tuple = ()
    solver_options: dict = field(default_factory=dict)

    def __post_init__(self):
        sizes = tuple((int(n), int(m)) for n, m in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "forced", tuple((float(p), float(q)) for p, q in self.forced))
        if not sizes or any(n < 1 or m < 1 for n, m in sizes):
            raise ValueError("sizes must be a non-empty list of positive (n, m)")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if len(self.forced) > self.count:
            raise ValueError("more forced (p, q) pairs than instances per size")
        if self.mode not in MODES:
            raise ValueError(f"unknown pq mode {self.mode!r}; expected one of {MODES}")
        if self.mode == "grid":
            k = round(1 / self.step) if self.step > 0 else 0
            if k < 1 or abs(k * self.step - 1) > 1e-9:
                raise ValueError(f"grid step {self.step} does not divide 1 evenly")
        if self.mode == "band" and not (0 <= self.lo <= self.hi <= 1):
            raise ValueError("band needs 0 <= lo <= hi <= 1")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")

    @property
    def total(self) -> int:
        return len(self.sizes) * self.count

    def grid_points(self) -> list[tuple[float, float]]:
        k = round(1 / self.step)
        vals = [i / k for i in range(k + 1)]
        return [(p, q) for p in vals for q in vals]


def plan(spec: SweepSpec) -> list[tuple[int, int, int, int, int]]:
    """``(instance_id, n, m, index_within_size, seed)`` for every instance."""
    out = []
    for s, (n, m) in enumerate(spec.sizes):
        for k in range(spec.count):
            out.append((s * spec.count + k, n, m, k, derive_seed(spec.seed, n, m, k)))
    return out


def make_instance(spec: SweepSpec, n: int, m: int, k: int, seed: int) -> CrrInstance:
    if k < len(spec.forced):
        p, q = spec.forced[k]
        return gen_instance(GenSpec(n, m, p, q, seed), source="forced")
    if spec.mode == "uniform":
        return gen_pq_uniform(n, m, seed)
    if spec.mode == "band":
        return gen_pq_band(n, m, spec.lo, spec.hi, seed)
    points = spec.grid_points()
    p, q = points[(k - len(spec.forced)) % len(points)]
    return gen_instance(GenSpec(n, m, p, q, seed), source="grid")


def _fmt(x) -> str:
    return "" if x is None else str(x)


def _run_one(args):
    spec, (iid, n, m, k, seed) = args
    inst = make_instance(spec, n, m, k, seed)
    rec = solve(inst, spec.strategy, spec.timeout, **spec.solver_options)
    row = [iid, n, m, f"{inst.meta['p']:.6f}", f"{inst.meta['q']:.6f}", seed, rec.encoder_id, rec.solver_id,
           rec.short_outcome, f"{rec.wall_time * 1000:.3f}", _fmt(rec.num_vars), _fmt(rec.num_constraints)]
    return [str(x) for x in row], instance_text(inst)


def _high_water(path: Path) -> int:
    rows = read_results(path)
    return max((int(r["instance_id"]) for r in rows), default=-1)


def run_sweep(spec: SweepSpec, out, instance_dir=None, workers: int = 1, resume: bool = True,
              svg: bool = True, progress=None) -> Path:
    """Run ``spec`` and append rows to the CSV at ``out``.

    With ``resume`` an existing file is continued after its highest
    instance id; otherwise it is overwritten. Instance files go to
    ``instance_dir/<id>.crr`` when a directory is given. The scatter CSV
    (and SVG) next to ``out`` is rebuilt from the full result file at the end.
    """
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    start = _high_water(out) + 1 if resume and out.exists() and out.stat().st_size else 0
    if start == 0:
        with open(out, "w", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerow(RESULT_COLUMNS)
    if instance_dir is not None:
        instance_dir = Path(instance_dir)
        instance_dir.mkdir(parents=True, exist_ok=True)
    todo = [(spec, item) for item in plan(spec) if item[0] >= start]

    with open(out, "a", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if workers > 1:
            pool = ProcessPoolExecutor(max_workers=workers)
            results = pool.map(_run_one, todo)
        else:
            pool = None
            results = map(_run_one, todo)
        try:
            for (_, item), (row, text) in zip(todo, results):
                if instance_dir is not None:
                    with open(instance_dir / f"{item[0]:06d}.crr", "w", newline="\n") as f:
                        f.write(text)
                w.writerow(row)
                fh.flush()
                if progress is not None:
                    progress(row)
        finally:
            if pool is not None:
                pool.shutdown(cancel_futures=True)
    write_scatter(out, svg=svg)
    return out


def read_results(path) -> list[dict]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in RESULT_COLUMNS if c not in (reader.fieldnames or ())]
        if missing:
            raise ValueError(f"{path}: missing column {missing[0]!r}")
        return list(reader)


def _scatter_paths(out: Path) -> tuple[Path, Path]:
    stem = out.with_suffix("")
    return stem.with_name(stem.name + ".scatter.csv"), stem.with_name(stem.name + ".scatter.svg")


def write_scatter(results_path, svg: bool = True) -> tuple[Path, Path | None]:
    results_path = Path(results_path)
    rows = read_results(results_path)
    csv_path, svg_path = _scatter_paths(results_path)
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SCATTER_COLUMNS)
        for r in rows:
            w.writerow([r[c] for c in SCATTER_COLUMNS])
    if not svg:
        return csv_path, None
    svg_path.write_text(scatter_svg(rows))
    return csv_path, svg_path


def scatter_svg(rows: list[dict], panel: int = 240, pad: int = 30) -> str:
    """One (p, q) panel per size; p on the x axis, q upwards."""
    sizes = []
    for r in rows:
        key = (int(r["n"]), int(r["m"]))
        if key not in sizes:
            sizes.append(key)
    width = max(1, len(sizes)) * (panel + pad) + pad
    height = panel + 2 * pad
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
             f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
             '<rect width="100%" height="100%" fill="white"/>']
    for s, (n, m) in enumerate(sizes):
        x0 = pad + s * (panel + pad)
        y0 = pad
        parts.append(f'<rect x="{x0}" y="{y0}" width="{panel}" height="{panel}" fill="none" stroke="black"/>')
        parts.append(f'<text x="{x0 + panel / 2}" y="{y0 - 8}" text-anchor="middle">({n},{m})</text>')
        parts.append(f'<text x="{x0 + panel / 2}" y="{y0 + panel + 20}" text-anchor="middle">p</text>')
        parts.append(f'<text x="{x0 - 14}" y="{y0 + panel / 2}" text-anchor="middle">q</text>')
        for r in rows:
            if (int(r["n"]), int(r["m"])) != (n, m):
                continue
            cx = x0 + float(r["p"]) * panel
            cy = y0 + (1 - float(r["q"])) * panel
            colour = PALETTE.get(r["outcome"], "gray")
            parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="2.5" fill="{colour}"/>')
    legend_x = pad
    for k, (label, colour) in enumerate(PALETTE.items()):
        x = legend_x + k * 70
        parts.append(f'<circle cx="{x}" cy="{height - 8}" r="4" fill="{colour}"/>')
        parts.append(f'<text x="{x + 8}" y="{height - 4}">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def default_workers() -> int:
    return max(1, min(4, os.cpu_count() or 1))


def fraction_in(rows: list[dict], outcome: str, pred) -> float:
    sel = [r for r in rows if pred(float(r["p"]), float(r["q"]))]
    return math.nan if not sel else sum(r["outcome"] == outcome for r in sel) / len(sel)
