import json
import math
import os
import pathlib
import subprocess

import jsonschema
import pytest

import tnindex

ROOT = pathlib.Path(__file__).resolve().parents[2]
CLI = os.environ.get("TN_INDEX_CLI")
SCHEMA = json.loads((ROOT / "docs" / "index_report.schema.json").read_text())


def test_metric_on_the_equator():
    g = tnindex.metric_at([0.5, 0.0, 0.0, 0.0])
    assert g.shape == (4, 4)
    assert g[0, 0] == pytest.approx(2.0)
    assert g[3, 3] == pytest.approx(0.5)


def test_curvature_is_ricci_flat():
    c = tnindex.curvature([1.0, 0.5, 0.3])
    assert abs(c["ricci"]).max() < 1e-6 * c["riemann_norm"]


def test_field_strength_is_anti_self_dual():
    s = tnindex.field_strength(0.3, 1.0, [0.4, -0.2, 0.9])
    assert s["asd_defect"] < 1e-8 * s["norm"]


def test_bulk_matches_closed_form():
    value, err = tnindex.bulk_action([(0.3, -1.0, 0)])
    assert value == pytest.approx(-0.5 * 1.3**2, abs=1e-9)
    assert err >= 0.0


def test_eta_routes_and_spectrum():
    ref = tnindex.eta(0.25)
    assert ref["a0"] == pytest.approx(-0.25)
    for route in ("mode_sum", "poisson"):
        v = tnindex.eta(0.25, route)
        assert v["a0"] == pytest.approx(ref["a0"], abs=1e-6)
        assert v["a2"] == pytest.approx(ref["a2"], abs=1e-6)
    assert tnindex.vertical_spectrum(0.25, 1) == [-1.25, -0.25, 0.75]
    lhs, rhs = tnindex.poisson_check(0.1, 0.1)
    assert lhs == pytest.approx(rhs, abs=1e-10)


def test_boundary_and_formula():
    b = tnindex.boundary_data([(0.3, 0.0, 0), (0.7, 0.0, 0)])
    assert b["delta"] == 0.15
    assert tnindex.index_formula([(0.25, 0.0, 0)], 0.0) == pytest.approx(0.09375)
    assert tnindex.integrality_check(-2.0000001, 1e-5) == (-2, pytest.approx(1e-7), True)


def test_errors_carry_their_kind():
    with pytest.raises(tnindex.TnIndexError) as info:
        tnindex.boundary_data([(1.0, 0.0, 0)])
    assert info.value.args[0] == "genericity"


def test_report_validates_against_schema():
    report = tnindex.assemble([(0.3, 2.0, -2), (0.7, -1.0, 1)], grav="lemma")
    jsonschema.validate(report, SCHEMA)
    assert report["cancellation_residual"] < 1e-9
    assert math.isclose(report["grav"], 2.0 / 12.0)


def test_run_config_in_process(tmp_path):
    cfg = {"mode": "eta", "instanton": {"channels": [{"lambda": 0.4}]}, "out": str(tmp_path)}
    res = tnindex.run_config(json.dumps(cfg))
    assert res["passed"]
    assert (tmp_path / "eta_routes.csv").exists()


def run_cli(*args, cwd=None):
    return subprocess.run([CLI, *args], capture_output=True, text=True, cwd=cwd)


needs_cli = pytest.mark.skipif(CLI is None, reason="TN_INDEX_CLI not set")


@needs_cli
def test_cli_index_report(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({
        "mode": "index",
        "instanton": {"channels": [{"lambda": 0.25, "m": 0.5, "chern": 1}]},
    }))
    p = run_cli("--config", str(cfg), "--grav", "lemma", "--route", "all", "--out", str(tmp_path))
    assert p.returncode == 0, p.stderr
    for route in ("mode_sum", "poisson", "bernoulli"):
        report = json.loads((tmp_path / f"index_report_{route}.json").read_text())
        jsonschema.validate(report, SCHEMA)


@needs_cli
@pytest.mark.parametrize(
    "content, code",
    [
        ("{", 2),
        ('{"mode": "eta", "instanton": {"channels": [{"lambda": 0.3, "chern": 0.5}]}}', 2),
        ('{"mode": "eta", "instanton": {"channels": [{"lambda": 2.0}]}}', 3),
        ('{"mode": "eta"}', 3),
        ('{"mode": "pontryagin", "tol": 1e-14, "quadrature": {"n_r": 32}}', 1),
    ],
)
def test_cli_exit_codes(tmp_path, content, code):
    cfg = tmp_path / "run.json"
    cfg.write_text(content)
    p = run_cli("--config", str(cfg), "--out", str(tmp_path))
    assert p.returncode == code
    err = json.loads(p.stderr)
    assert err["error"]["exit_code"] == code


@needs_cli
def test_cli_unknown_flag_and_missing_file(tmp_path):
    assert run_cli("--bogus").returncode == 2
    assert run_cli("--config", str(tmp_path / "absent.json")).returncode == 2
