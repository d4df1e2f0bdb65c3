"""Command-line interface: subcommands, exit codes, config handling."""

import json
import os

import pytest

from pwlienard import Case, LienardSystem, RingElem
from pwlienard.cli import EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION, main


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


@pytest.fixture
def outdir(tmp_path):
    return tmp_path / "out"


def test_melnikov_report(outdir):
    rc = main(["--out", str(outdir), "melnikov", "--preset", "example1",
               "--h-grid", "1,4"])
    assert rc == EXIT_OK
    doc = read_json(outdir / "melnikov.json")
    assert doc["case"] == "Y"
    assert doc["zero_bound"] == {"M0": 3, "M1": 4}
    # exact rational coefficients of M1, keyed by doubled exponent
    assert {k: v[0]["q"] for k, v in doc["M1"].items()} == {
        "1": "24/1", "2": "-50/1", "3": "35/1", "4": "-10/1", "5": "1/1"}
    for row in doc["grid"]:
        assert abs(row["M1"]) < 1e-9  # h = 1 and 4 are zeros


def test_roots_report(outdir):
    rc = main(["--out", str(outdir), "roots", "--preset", "example1",
               "--which", "M1"])
    assert rc == EXIT_OK
    doc = read_json(outdir / "roots.json")
    assert doc["certified_count"] == 4
    assert doc["theorem_bound"] == 4
    mids = [r["mid"] for r in doc["h_roots"]]
    assert mids == pytest.approx([1.0, 4.0, 9.0, 16.0], abs=1e-9)
    for r in doc["h_roots"]:
        assert r["hi"] - r["lo"] <= 1e-12


def test_oracle_pass(outdir):
    rc = main(["--out", str(outdir), "oracle", "--preset", "example2",
               "--h-grid", "0.5,2"])
    assert rc == EXIT_OK
    lines = (outdir / "oracle.csv").read_text().strip().splitlines()
    assert lines[0] == "h,term,closed,oracle,rel_err,status"
    assert all(line.endswith("pass") for line in lines[1:])
    assert len(lines) == 5  # 2 h values x (M0, M1)


def test_oracle_detects_oddness_mismatch(tmp_path, outdir):
    """Negative control: outside the oddness hypothesis the projected
    closed form and the quadrature of the full system disagree, and the
    harness must say so with exit code 3."""
    sys_ = LienardSystem.build(Case.SWITCH_Y, 0, 1, b0=[1], c=[0, 1])
    doc_path = tmp_path / "bad.json"
    doc_path.write_text(json.dumps(sys_.to_json()))
    rc = main(["--out", str(outdir), "oracle", "--system", str(doc_path),
               "--h-grid", "1.0"])
    assert rc == EXIT_NUMERICAL
    text = (outdir / "oracle.csv").read_text()
    assert "FAIL" in text


def test_rel_tol_env_override(tmp_path, outdir, monkeypatch):
    sys_ = LienardSystem.build(Case.SWITCH_Y, 0, 1, b0=[1], c=[0, 1])
    doc_path = tmp_path / "bad.json"
    doc_path.write_text(json.dumps(sys_.to_json()))
    monkeypatch.setenv("PWLIENARD_REL_TOL", "1e6")
    rc = main(["--out", str(outdir), "oracle", "--system", str(doc_path),
               "--h-grid", "1.0"])
    assert rc == EXIT_OK


def test_design_round_trip(outdir):
    rc = main(["--out", str(outdir), "design", "--case", "Y", "--m", "3",
               "--n", "3", "--targets", "1,4,9,16"])
    assert rc == EXIT_OK
    doc = read_json(outdir / "design.json")
    assert doc["verified"]
    assert doc["roots"]["certified_count"] == 4
    # the emitted system document must load back
    sys_ = LienardSystem.from_json(doc["system"])
    assert sys_.case is Case.SWITCH_Y


def test_design_too_many_targets(outdir):
    rc = main(["--out", str(outdir), "design", "--case", "X", "--m", "3",
               "--n", "3", "--targets", "1,2,3,4,5"])
    assert rc == EXIT_VALIDATION


def test_simulate_finds_cycles(tmp_path, outdir):
    inv_pi = RingElem.term(1, p=-1)
    sys_ = LienardSystem.build(
        Case.SWITCH_Y, 4, 0,
        a1=[inv_pi * RingElem.rational(2), 0, inv_pi * RingElem.rational(-5),
            0, inv_pi])
    doc_path = tmp_path / "sys.json"
    doc_path.write_text(json.dumps(sys_.to_json()))
    rc = main(["--out", str(outdir), "simulate", "--system", str(doc_path),
               "--lam", "0.02", "--eps", "4e-4", "--r-range", "1.2:1.7",
               "--grid", "15"])
    assert rc == EXIT_OK
    doc = read_json(outdir / "cycles.json")
    assert doc["backend"] in ("compiled", "python")
    assert len(doc["cycles"]) == 1
    assert doc["cycles"][0]["h_star"] == pytest.approx(1.0, abs=1e-3)
    disp = (outdir / "displacement.csv").read_text().strip().splitlines()
    assert disp[0] == "r,displacement"
    assert len(disp) == 16


def test_simulate_trajectory_dump(outdir):
    rc = main(["--out", str(outdir), "simulate", "--preset", "example1",
               "--r-range", "1.5:2.5", "--grid", "3",
               "--dump-traj", "2.0"])
    assert rc == EXIT_OK
    rows = (outdir / "trajectory.csv").read_text().strip().splitlines()
    assert rows[0] == "t,x,y,side"
    assert len(rows) >= 3


def test_verify_pass(outdir):
    rc = main(["--out", str(outdir), "verify", "--preset", "example1",
               "--h-grid", "0.5,2"])
    assert rc == EXIT_OK
    lines = (outdir / "verify.csv").read_text().strip().splitlines()
    assert lines[0] == "check,value,reference,rel_err,tol,status"
    assert all(line.endswith("pass") for line in lines[1:])


def test_config_file_defaults(tmp_path, outdir):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"h_grid": "1,4", "preset": "example1"}))
    rc = main(["--config", str(cfg), "--out", str(outdir), "melnikov"])
    assert rc == EXIT_OK
    doc = read_json(outdir / "melnikov.json")
    assert [row["h"] for row in doc["grid"]] == [1.0, 4.0]


def test_config_flag_beats_config_file(tmp_path, outdir):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"h_grid": "1,4", "preset": "example1"}))
    rc = main(["--config", str(cfg), "--out", str(outdir), "melnikov",
               "--h-grid", "9"])
    assert rc == EXIT_OK
    doc = read_json(outdir / "melnikov.json")
    assert [row["h"] for row in doc["grid"]] == [9.0]


def test_config_unknown_key(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"no_such_flag": 1}))
    rc = main(["--config", str(cfg), "melnikov", "--preset", "example1"])
    assert rc == EXIT_VALIDATION


def test_missing_system_is_validation_error():
    assert main(["melnikov"]) == EXIT_VALIDATION


def test_unknown_preset_argparse_exit():
    with pytest.raises(SystemExit) as exc:
        main(["melnikov", "--preset", "nope"])
    assert exc.value.code == 2


def test_precision_flag(outdir):
    rc = main(["--out", str(outdir), "--precision", "3", "oracle",
               "--preset", "example2", "--h-grid", "2"])
    assert rc == EXIT_OK
    lines = (outdir / "oracle.csv").read_text().strip().splitlines()
    closed = lines[1].split(",")[2]
    assert len(closed.replace("-", "").replace(".", "").split("e")[0]) <= 4
