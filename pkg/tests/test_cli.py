from __future__ import annotations

import json
import subprocess
import sys

import pytest

from conftest import toy_instance
from localplp import io
from localplp.cli import EXIT_CAP, EXIT_INPUT, EXIT_OK, EXIT_REJECTED, InputError, main, parse_config
from localplp.core import PlpInstance
from localplp.exact import Poly


@pytest.fixture
def files(tmp_path):
    toy = tmp_path / "toy.json"
    toy.write_text(io.dumps(io.instance_to_json(toy_instance())))
    hard = tmp_path / "hard.json"  # needs x = 1/d^2, out of reach at cap 1
    hard.write_text(io.dumps(io.instance_to_json(PlpInstance.from_rows([([Poly([0, 0, 1])], 1)]))))
    opt = tmp_path / "opt.json"
    opt.write_text(json.dumps({"n": 1, "convention": "max-le-nonneg", "objective": [["1"]],
                               "constraints": [{"row": [["0", "1"]], "rhs": ["1"], "sense": "<="}]}))
    return tmp_path


def test_solve_both_sides(files, capsys):
    out = files / "cls.json"
    assert main(["solve", "--instance", str(files / "toy.json"), "--output", str(out)]) == EXIT_OK
    data = json.loads(out.read_text())
    assert data["summary"] == "Mixed"
    assert "summary: Mixed" in capsys.readouterr().err


def test_solve_is_deterministic(files):
    a, b = files / "a.json", files / "b.json"
    for path in (a, b):
        main(["solve", "--instance", str(files / "toy.json"), "--side", "neg", "--output", str(path)])
    assert a.read_bytes() == b.read_bytes()


def test_cap_exit_code_and_environment(files, monkeypatch):
    args = ["solve", "--instance", str(files / "hard.json"), "--side", "pos", "--output", str(files / "o.json")]
    assert main(args + ["--degree-cap", "1"]) == EXIT_CAP
    monkeypatch.setenv("LOCALPLP_DEGREE_CAP", "1")
    assert main(args) == EXIT_CAP
    assert main(args + ["--degree-cap", "2"]) == EXIT_OK


def test_eval_point(files, capsys):
    assert main(["eval-point", "--instance", str(files / "toy.json"), "--delta", "1/20"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "infeasible"
    main(["eval-point", "--instance", str(files / "toy.json"), "--delta", "1/2"])
    assert capsys.readouterr().out.strip() == "feasible"
    assert main(["eval-point", "--instance", str(files / "toy.json"), "--delta", "0.05"]) == EXIT_INPUT


def test_optimize(files, capsys):
    assert main(["optimize", "--instance", str(files / "opt.json")]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "LocallyOptimal"
    assert data["value"] == {"num": ["1"], "den": ["0", "1"]}


def test_check_certificate_accepts_and_rejects(files, capsys):
    cert = files / "neg.json"
    main(["solve", "--instance", str(files / "toy.json"), "--side", "neg", "--output", str(cert)])
    assert main(["check-certificate", "--instance", str(files / "toy.json"), "--certificate", str(cert)]) == EXIT_OK
    assert capsys.readouterr().out.startswith("valid")
    data = json.loads(cert.read_text())
    data["solution"][0] = {"num": ["-5"], "den": ["1"]}
    cert.write_text(json.dumps(data))
    rc = main(["check-certificate", "--instance", str(files / "toy.json"), "--certificate", str(cert)])
    assert rc == EXIT_REJECTED
    assert capsys.readouterr().out.startswith("rejected")


@pytest.mark.parametrize(
    "args, message",
    [
        (["solve"], "exactly one of --instance and --preset"),
        (["solve", "--preset", "nope"], "unknown preset"),
        (["solve", "--instance", "{dir}/missing.json"], "cannot read"),
        (["solve", "--instance", "{dir}/broken.json"], "malformed JSON"),
        (["solve", "--instance", "{dir}/mismatch.json"], "dimension mismatch"),
        (["verify-potential", "--preset", "broadcast-imp"], "needs --potential"),
        (["solve", "--instance", "{dir}/toy.json", "--degree-cap", "-1"], "must be >= 0"),
    ],
)
def test_input_errors(files, capsys, args, message):
    (files / "broken.json").write_text("{")
    (files / "mismatch.json").write_text(json.dumps({"n": 2, "constraints": [{"row": [["1"]], "rhs": ["0"]}]}))
    args = [a.format(dir=files) for a in args]
    assert main(args) == EXIT_INPUT
    assert message in capsys.readouterr().err


def test_unknown_command_is_an_input_error():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_INPUT


def test_bad_environment_cap():
    with pytest.raises(InputError, match="LOCALPLP_DEGREE_CAP"):
        parse_config(["solve", "--preset", "broadcast-imp"], env={"LOCALPLP_DEGREE_CAP": "x"})


def test_preset_defaults():
    cfg = parse_config(["solve", "--preset", "pca-nand-vertex"], env={})
    assert cfg.side == "pos" and cfg.ell == 3 and cfg.degree_cap is None


@pytest.mark.slow
def test_verify_published_broadcast_potential(files, capsys):
    out = files / "imp.json"
    assert main(["verify-potential", "--preset", "broadcast-imp", "--potential", "pot_imp", "--output", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["verdict"] == "Feasible"


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "localplp", "eval-point", "--instance", str(files / "toy.json"), "--delta", "0"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "feasible"
