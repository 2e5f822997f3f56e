import csv
import json
import math

import numpy as np
import pytest

from padeforge import cli
from padeforge.cli import ApproximationSchedule, main, parse_schedule
from padeforge.errors import InsufficientTruncation


def _run(argv):
    return main([str(a) for a in argv])


def _read_csv(path):
    lines = path.read_text().splitlines()
    assert lines[0] == "pade-forge/v1"
    reader = csv.DictReader(lines[1:])
    return list(reader)


@pytest.fixture
def region_file(tmp_path):
    path = tmp_path / "region.json"
    path.write_text(json.dumps({"kind": "whole_plane"}))
    return path


class TestSchedule:
    def test_diag(self):
        sched = parse_schedule("diag:4")
        assert sched.pairs == ((1, 1), (2, 2), (3, 3), (4, 4))
        assert sched.kind == "diagonal"

    def test_row(self):
        sched = parse_schedule("row:2")
        assert all(q == 2 for _, q in sched.pairs)
        ps = [p for p, _ in sched.pairs]
        assert ps == sorted(set(ps))

    def test_file(self, tmp_path):
        path = tmp_path / "sched.json"
        path.write_text(json.dumps({"pairs": [[0, 1]]}))
        assert parse_schedule(str(path)).pairs == ((0, 1),)

    def test_invalid(self):
        with pytest.raises(ValueError):
            ApproximationSchedule((), "custom")
        with pytest.raises(ValueError):
            ApproximationSchedule(((2, 0), (1, 0)), "custom")
        with pytest.raises(ValueError):
            ApproximationSchedule(((1, 2), (2, 2)), "diagonal")


class TestTable:
    def test_exp_table(self, tmp_path, region_file):
        out = tmp_path / "table.csv"
        assert _run([
            "table", "--series", "exp", "--pmax", 4, "--qmax", 4,
            "--region", region_file, "--n", 2, "--out", out,
        ]) == 0
        rows = _read_csv(out)
        assert len(rows) == 25
        # the hand-derived [1/1] = (1+z/2)/(1-z/2) has its pole at z=2, which
        # lies on K_2 of the whole plane: the cell records an infinite error
        # and a pole on the compact
        cell = next(r for r in rows if r["p"] == "1" and r["q"] == "1")
        assert cell["in_Dpq"] == "true"
        assert float(cell["sup_err_Kn"]) == float("inf")
        assert cell["pole_free"] == "false"
        assert float(cell["order_residual"]) <= 1e-9
        # a pole-free cell matches a direct evaluation of its approximant
        cell22 = next(r for r in rows if r["p"] == "2" and r["q"] == "2")
        from padeforge import PadeIndex, compute_pade, exhaustion_K, sup_norm, whole_plane
        from padeforge.cli import load_series
        s = load_series("exp", 28)
        approx = compute_pade(s, PadeIndex(2, 2))
        K = exhaustion_K(whole_plane(), 2)
        want = sup_norm(lambda z: approx(z) - s(z), K)
        assert float(cell22["sup_err_Kn"]) == pytest.approx(want, rel=1e-6)

    def test_one_plus_z_squared_cell(self, tmp_path, region_file):
        series = tmp_path / "s.json"
        series.write_text(json.dumps({"coeffs": [[1, 0], [0, 0], [1, 0]] + [[0, 0]] * 20}))
        out = tmp_path / "t.csv"
        assert _run([
            "table", "--series", series, "--pmax", 2, "--qmax", 2,
            "--region", region_file, "--n", 1, "--out", out,
        ]) == 0
        rows = _read_csv(out)
        cell = next(r for r in rows if r["p"] == "1" and r["q"] == "1")
        assert cell["in_Dpq"] == "false"
        assert cell["order_residual"] == "" and cell["sup_err_Kn"] == ""

    def test_q_zero_column_residuals(self, tmp_path, region_file):
        out = tmp_path / "t.csv"
        _run([
            "table", "--series", "geom", "--pmax", 3, "--qmax", 1,
            "--region", region_file, "--n", 1, "--out", out,
        ])
        for row in _read_csv(out):
            if row["q"] == "0":
                assert float(row["order_residual"]) == 0.0


class TestConverge:
    def test_exp_diagonal_error_drop(self, tmp_path):
        region = tmp_path / "r.json"
        region.write_text(json.dumps({"kind": "disk", "center": [0, 0], "radius": 2}))
        out = tmp_path / "c.csv"
        assert _run([
            "converge", "--series", "exp", "--schedule", "diag:8",
            "--region", region, "--nmax", 4, "--out", out,
        ]) == 0
        rows = _read_csv(out)
        errs = {int(r["m"]): float(r["sup_err_K4"]) for r in rows}
        assert errs[8] < errs[2] / 1e4

    def test_geometric_exact_cell(self, tmp_path, region_file):
        sched = tmp_path / "sched.json"
        sched.write_text(json.dumps([[0, 1]]))
        region = tmp_path / "r.json"
        region.write_text(json.dumps({"kind": "disk", "center": [0, 0], "radius": 0.5}))
        out = tmp_path / "c.csv"
        assert _run([
            "converge", "--series", "geom", "--schedule", sched,
            "--region", region, "--nmax", 3, "--out", out,
        ]) == 0
        rows = _read_csv(out)
        # [0/1] of the geometric series is exactly 1/(1-z); only the reference
        # truncation separates them, at machine scale on this small compact
        assert float(rows[0]["sup_err_K3"]) < 1e-12

    def test_polynomial_row_schedule(self, tmp_path, region_file):
        series = tmp_path / "s.json"
        coeffs = [[1, 0], [2, 0], [0, 0], [3, 0]] + [[0, 0]] * 30
        series.write_text(json.dumps({"coeffs": coeffs}))
        sched = tmp_path / "sched.json"
        sched.write_text(json.dumps([[3, 0], [4, 0], [5, 0]]))
        out = tmp_path / "c.csv"
        _run([
            "converge", "--series", series, "--schedule", sched,
            "--region", region_file, "--nmax", 2, "--out", out,
        ])
        for row in _read_csv(out):
            assert float(row["sup_err_K2"]) < 1e-12

    def test_insufficient_truncation_names_pair(self, tmp_path, region_file):
        series = tmp_path / "s.json"
        series.write_text(json.dumps({"coeffs": [[1, 0], [1, 0], [1, 0]]}))
        sched = tmp_path / "sched.json"
        sched.write_text(json.dumps([[1, 1], [4, 4]]))
        rc = _run([
            "converge", "--series", series, "--schedule", sched,
            "--region", region_file, "--nmax", 2, "--out", tmp_path / "x.csv",
        ])
        assert rc == 2


class TestDensity:
    def test_polynomial_target_pass(self, tmp_path, region_file):
        target = tmp_path / "target.json"
        target.write_text(json.dumps({"coeffs": [[1, 0]]}))
        out = tmp_path / "run"
        rc = _run([
            "density", "--target", target, "--p", 2, "--q", 1,
            "--region", region_file, "--n", 2, "--s", 10, "--bigN", 2,
            "--eps", 0.1, "--seed", 0, "--out", out,
        ])
        assert rc == 0
        cert = json.loads((out / "certificate.json").read_text())
        report = json.loads((out / "report.json").read_text())
        assert report["pass"] and cert["p"] == 2

    def test_rational_target_with_pole_audit(self, tmp_path):
        region = tmp_path / "r.json"
        region.write_text(json.dumps(
            {"kind": "plane_minus_disks", "disks": [{"center": [3, 0], "radius": 0.5}]}
        ))
        target = tmp_path / "target.json"
        target.write_text(json.dumps({"num": [[1, 0]], "den": [[1, 0], [-1 / 3, 0]]}))
        out = tmp_path / "run"
        rc = _run([
            "density", "--target", target, "--p", 1, "--q", 2,
            "--region", region, "--n", 2, "--s", 10, "--bigN", 2,
            "--eps", 0.1, "--seed", 0, "--out", out,
        ])
        assert rc == 0
        cert = json.loads((out / "certificate.json").read_text())
        assert cert["pole_audit"]["pass"]

    def test_index_too_small_rejected(self, tmp_path, region_file, capsys):
        target = tmp_path / "target.json"
        target.write_text(json.dumps({"coeffs": [[1, 0]]}))
        rc = _run([
            "density", "--target", target, "--p", 0, "--q", 1,
            "--region", region_file, "--n", 2, "--s", 10, "--bigN", 2,
            "--eps", 0.1, "--seed", 0, "--out", tmp_path / "run",
        ])
        assert rc == 2
        assert "IndexTooSmall" in capsys.readouterr().err


class TestDeterminism:
    def test_byte_identical_outputs(self, tmp_path, region_file):
        outs = []
        for name in ("a", "b"):
            out = tmp_path / f"{name}.csv"
            _run([
                "table", "--series", "exp", "--pmax", 3, "--qmax", 3,
                "--region", region_file, "--n", 2, "--out", out,
            ])
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

        runs = []
        target = tmp_path / "target.json"
        target.write_text(json.dumps({"coeffs": [[1, 0]]}))
        for name in ("da", "db"):
            out = tmp_path / name
            _run([
                "density", "--target", target, "--p", 2, "--q", 1,
                "--region", region_file, "--n", 2, "--s", 10, "--bigN", 2,
                "--eps", 0.1, "--seed", 7, "--out", out,
            ])
            runs.append(
                (out / "certificate.json").read_bytes() + (out / "report.json").read_bytes()
            )
        assert runs[0] == runs[1]
