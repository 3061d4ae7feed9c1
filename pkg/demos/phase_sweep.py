"""Small phase-transition sweep: random (p, q) at (6,6), then per-size
outcome proportions and a solved-by-time curve. Writes into ./sweep_demo/."""
import sys
from pathlib import Path

from crr.harness.report import cumulative_csv, load_rows, proportions_csv
from crr.harness.sweep import SweepSpec, run_sweep

out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else "sweep_demo")
spec = SweepSpec(sizes=((6, 6), (8, 8)), count=40, mode="uniform", timeout=10, seed=1,
                 forced=((0.0, 0.0), (1.0, 1.0)))
csv_path = run_sweep(spec, out_dir / "results.csv", instance_dir=out_dir / "instances", resume=False)
rows = load_rows([csv_path])
print(proportions_csv(rows))
print(cumulative_csv(rows))
print("scatter plot:", csv_path.with_name("results.scatter.svg"))
