"""Summaries of sweep results: outcome proportions and solved-by-time curves."""
from __future__ import annotations

import csv
import io
import math
from collections import OrderedDict

from crr.harness.sweep import RESULT_COLUMNS

__all__ = ["load_rows", "proportions", "cumulative", "proportions_csv", "cumulative_csv", "time_grid"]

OUTCOMES = ("sat", "unsat", "indet")


def load_rows(paths) -> list[dict]:
    rows = []
    for path in paths:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            fields = reader.fieldnames or []
            for col in RESULT_COLUMNS:
                if col not in fields:
                    raise ValueError(f"{path}: missing column {col!r}")
            for r in reader:
                if r["outcome"] not in OUTCOMES:
                    raise ValueError(f"{path}: column 'outcome' has unknown value {r['outcome']!r}")
                rows.append(r)
    return rows


def _by_size(rows) -> OrderedDict:
    groups = OrderedDict()
    for r in rows:
        groups.setdefault((int(r["n"]), int(r["m"])), []).append(r)
    return groups


def proportions(rows) -> OrderedDict:
    """``(n, m) -> (count, sat, unsat, indet)`` fractions, sizes in first-seen order."""
    out = OrderedDict()
    for size, group in _by_size(rows).items():
        total = len(group)
        out[size] = (total,) + tuple(sum(r["outcome"] == o for r in group) / total for o in OUTCOMES)
    return out


def time_grid(rows, per_decade: int = 4) -> list[float]:
    """Log-spaced thresholds in ms, from 1 ms up to the slowest solve."""
    times = [float(r["wall_time_ms"]) for r in rows] or [1.0]
    top = max(1.0, max(times))
    steps = math.ceil(math.log10(top) * per_decade)
    return [10 ** (k / per_decade) for k in range(steps + 1)]


def cumulative(rows, grid=None) -> OrderedDict:
    """``(n, m) -> [(t_ms, solved_within_t)]``; solved means sat or unsat."""
    grid = time_grid(rows) if grid is None else grid
    out = OrderedDict()
    for size, group in _by_size(rows).items():
        solved = sorted(float(r["wall_time_ms"]) for r in group if r["outcome"] != "indet")
        series, k = [], 0
        for t in grid:
            while k < len(solved) and solved[k] <= t:
                k += 1
            series.append((t, k))
        out[size] = series
    return out


def proportions_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "m", "count", "sat", "unsat", "indet"])
    for (n, m), (total, *fr) in proportions(rows).items():
        w.writerow([n, m, total] + [f"{x:.4f}" for x in fr])
    return buf.getvalue()


def cumulative_csv(rows, grid=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "m", "t_ms", "solved"])
    for (n, m), series in cumulative(rows, grid).items():
        for t, c in series:
            w.writerow([n, m, f"{t:.6g}", c])
    return buf.getvalue()
