import csv
import random

import pytest

from crr.generator import zero_count
from crr.harness.formats import parse_instance
from crr.harness.report import cumulative, cumulative_csv, load_rows, proportions, proportions_csv, time_grid
from crr.harness.sweep import (PALETTE, RESULT_COLUMNS, SweepSpec, plan, read_results, run_sweep, scatter_svg)


def small_spec(**kw):
    base = dict(sizes=((3, 3), (4, 4)), count=6, timeout=10, seed=7)
    base.update(kw)
    return SweepSpec(**base)


def strip_time(rows):
    return [{k: v for k, v in r.items() if k != "wall_time_ms"} for r in rows]


class TestSpec:
    @pytest.mark.parametrize("kw", [dict(count=0), dict(sizes=()), dict(sizes=((0, 3),)),
                                    dict(mode="grid", step=0.3), dict(mode="band", lo=0.8, hi=0.2),
                                    dict(mode="spiral"), dict(strategy="guess"),
                                    dict(count=1, forced=((0, 0), (1, 1)))])
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            small_spec(**kw)

    def test_plan(self):
        items = plan(small_spec())
        assert [i[0] for i in items] == list(range(12))
        assert items[6][1:4] == (4, 4, 0)
        assert len({i[4] for i in items}) == 12

    def test_grid_points(self):
        pts = small_spec(mode="grid", step=0.5).grid_points()
        assert len(pts) == 9 and (0.5, 1.0) in pts


class TestSweep:
    def test_count_one(self, tmp_path):
        out = run_sweep(SweepSpec(((3, 3),), 1, seed=1, timeout=10), tmp_path / "r.csv")
        assert len(read_results(out)) == 1

    def test_columns_and_conservation(self, tmp_path):
        out = run_sweep(small_spec(), tmp_path / "r.csv")
        with open(out) as fh:
            assert fh.readline().strip() == ",".join(RESULT_COLUMNS)
        rows = read_results(out)
        for size, (count, *fr) in proportions(rows).items():
            assert count == 6 and sum(fr) == pytest.approx(1.0)
        assert {r["solver"] for r in rows} == {"brute", "cdcl"}
        assert [int(r["instance_id"]) for r in rows] == list(range(12))

    def test_deterministic(self, tmp_path):
        a = run_sweep(small_spec(), tmp_path / "a.csv", instance_dir=tmp_path / "ia")
        b = run_sweep(small_spec(), tmp_path / "b.csv", instance_dir=tmp_path / "ib")
        assert strip_time(read_results(a)) == strip_time(read_results(b))
        for f in sorted((tmp_path / "ia").iterdir()):
            assert f.read_bytes() == (tmp_path / "ib" / f.name).read_bytes()
        assert len(list((tmp_path / "ia").iterdir())) == 12

    def test_instance_files_match_rows(self, tmp_path):
        out = run_sweep(small_spec(), tmp_path / "r.csv", instance_dir=tmp_path / "inst")
        for r in read_results(out):
            inst = parse_instance((tmp_path / "inst" / f"{int(r['instance_id']):06d}.crr").read_text())
            assert (inst.n, inst.m) == (int(r["n"]), int(r["m"]))
            # the row carries the sampled p; the matrix realises it rounded to whole cells
            assert inst.s.count_zeros() == zero_count(float(r["p"]), inst.n * inst.n)

    def test_workers_same_rows(self, tmp_path):
        a = run_sweep(small_spec(), tmp_path / "a.csv")
        b = run_sweep(small_spec(), tmp_path / "b.csv", workers=2)
        assert strip_time(read_results(a)) == strip_time(read_results(b))

    def test_resume(self, tmp_path):
        full = run_sweep(small_spec(), tmp_path / "full.csv")
        part = tmp_path / "part.csv"
        lines = full.read_text().splitlines(keepends=True)
        part.write_text("".join(lines[:5]))
        seen = []
        run_sweep(small_spec(), part, progress=seen.append)
        assert [int(r[0]) for r in seen] == list(range(4, 12))
        assert strip_time(read_results(part)) == strip_time(read_results(full))

    def test_fresh_overwrites(self, tmp_path):
        out = run_sweep(small_spec(), tmp_path / "r.csv")
        run_sweep(small_spec(count=2), out, resume=False)
        assert len(read_results(out)) == 4

    def test_forced_and_modes(self, tmp_path):
        out = run_sweep(small_spec(forced=((0, 0), (1, 1))), tmp_path / "f.csv")
        rows = read_results(out)
        assert (rows[0]["p"], rows[1]["q"]) == ("0.000000", "1.000000")
        assert rows[0]["outcome"] == rows[1]["outcome"] == "sat"
        band = read_results(run_sweep(small_spec(mode="band", lo=0.6, hi=0.9), tmp_path / "b.csv"))
        assert all(0.5 <= float(r["p"]) <= 1.0 for r in band)
        grid = read_results(run_sweep(small_spec(mode="grid", step=0.5), tmp_path / "g.csv"))
        assert {(r["p"], r["q"]) for r in grid[:6]} <= {(f"{p:.6f}", f"{q:.6f}") for p in (0, .5, 1)
                                                         for q in (0, .5, 1)} | {("0.555556", "0.555556")}

    def test_scatter_agreement(self, tmp_path):
        out = run_sweep(small_spec(), tmp_path / "r.csv")
        rows = read_results(out)
        with open(tmp_path / "r.scatter.csv") as fh:
            pts = list(csv.DictReader(fh))
        assert [p["instance_id"] for p in pts] == [r["instance_id"] for r in rows]
        assert all(p["outcome"] == r["outcome"] for p, r in zip(pts, rows))
        svg = (tmp_path / "r.scatter.svg").read_text()
        assert svg.count("<circle") == len(rows) + len(PALETTE)
        assert PALETTE["sat"] == "#2ca02c" and PALETTE["unsat"] == "#d62728" and PALETTE["indet"] == "#1f77b4"

    def test_no_svg(self, tmp_path):
        run_sweep(small_spec(count=1), tmp_path / "r.csv", svg=False)
        assert not (tmp_path / "r.scatter.svg").exists()

    def test_indet_rows(self, tmp_path):
        spec = SweepSpec(((10, 10),), 1, forced=((0.25, 0.35),), strategy="dpll", timeout=0.001)
        row = read_results(run_sweep(spec, tmp_path / "t.csv"))[0]
        assert row["outcome"] == "indet" and float(row["wall_time_ms"]) >= 1.0


def write_csv(path, outcomes, times=None, size=(10, 10)):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(RESULT_COLUMNS)
        for k, o in enumerate(outcomes):
            t = times[k] if times else 1.0
            w.writerow([k, *size, 0.5, 0.5, k, "dimacs", "cdcl", o, t, 10, 20])
    return path


class TestReport:
    def test_single_sat(self, tmp_path):
        rows = load_rows([write_csv(tmp_path / "a.csv", ["sat"])])
        assert proportions(rows)[(10, 10)] == (1, 1.0, 0.0, 0.0)

    def test_known_mix(self, tmp_path):
        rows = load_rows([write_csv(tmp_path / "a.csv", ["sat"] * 3 + ["unsat"] * 2 + ["indet"] * 5)])
        assert proportions(rows)[(10, 10)] == (10, 0.3, 0.2, 0.5)
        assert proportions_csv(rows).splitlines()[1] == "10,10,10,0.3000,0.2000,0.5000"

    def test_several_files_and_sizes(self, tmp_path):
        a = write_csv(tmp_path / "a.csv", ["sat", "unsat"])
        b = write_csv(tmp_path / "b.csv", ["indet"], size=(20, 10))
        assert list(proportions(load_rows([a, b]))) == [(10, 10), (20, 10)]

    def test_cumulative_monotone(self, tmp_path):
        rng = random.Random(3)
        for trial in range(20):
            k = rng.randint(1, 40)
            outcomes = [rng.choice(["sat", "unsat", "indet"]) for _ in range(k)]
            times = [10 ** rng.uniform(-1, 5) for _ in range(k)]
            rows = load_rows([write_csv(tmp_path / f"c{trial}.csv", outcomes, times)])
            series = cumulative(rows)[(10, 10)]
            counts = [c for _, c in series]
            ts = [t for t, _ in series]
            assert counts == sorted(counts) and ts == sorted(ts)
            assert counts[-1] == sum(o != "indet" for o in outcomes)

    def test_time_grid(self):
        assert time_grid([{"wall_time_ms": "1000"}]) == pytest.approx([10 ** (k / 4) for k in range(13)])

    def test_cumulative_csv(self, tmp_path):
        rows = load_rows([write_csv(tmp_path / "a.csv", ["sat", "indet"], [5.0, 7.0])])
        lines = cumulative_csv(rows).splitlines()
        assert lines[0] == "n,m,t_ms,solved" and lines[-1].endswith(",1")

    def test_schema_errors(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("instance_id,n,m\n0,1,1\n")
        with pytest.raises(ValueError, match="'p'"):
            load_rows([bad])
        odd = write_csv(tmp_path / "odd.csv", ["maybe"])
        with pytest.raises(ValueError, match="'outcome'"):
            load_rows([odd])


def test_svg_empty():
    assert scatter_svg([]).startswith("<svg")
