"""CLI golden files and the exit-code contract.

Set AHK_REGEN_GOLDEN=1 to rewrite the reference files after an intended change.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from affine_hypersurfaces.cli import main

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("AHK_REGEN_GOLDEN") == "1"

# name -> (argv, expected exit code, writes --out file)
GOLDEN_CASES = {
    "curvature_gk_cylinder": (["curvature", "--spec", "cylinder.json", "--quantity", "gk", "--grid", "-1..1:5"], 0, False),
    "curvature_mean_three": (["curvature", "--spec", "three.json", "--quantity", "mean", "--grid", "-1..1:4"], 0, False),
    "curvature_ki_csv": (["curvature", "--spec", "exp_pair.json", "--quantity", "Ki", "--index", "2",
                          "--grid", "-1..1:3", "--out", "{out}"], 0, True),
    "construct_crc": (["construct", "--theorem", "crc", "--k0", "4", "--c", "1", "--out", "{out}"], 0, True),
    "construct_cimc": (["construct", "--theorem", "cimc", "--matrix", "[[1, 1], [0, 2]]", "--h0", "1",
                        "--c", "0.5", "1.5", "--d", "0.25", "0", "--out", "{out}"], 0, True),
    "construct_eigen": (["construct", "--theorem", "eigen", "--matrix", "[[1, 0.5], [0, 1]]", "--lambda", "-1",
                         "--c", "1", "0.5", "--d", "0", "0.25", "--mu", "0.5", "-0.5", "--out", "{out}"], 0, True),
    "construct_cylinder": (["construct", "--theorem", "cylinder", "--n", "3", "--index", "1", "--slope", "2",
                            "--profile", '{"kind": "quadratic", "c": 1}',
                            "--profile", '{"kind": "exp_pair", "c": 1, "d": 1, "a": 2}', "--out", "{out}"], 0, True),
    "verify_cimc": (["verify", "--spec", "cimc_spec.json", "--theorem", "4.2", "--grid", "-1..1:5"], 0, False),
    "verify_exp_pair_4_1": (["verify", "--spec", "exp_pair.json", "--theorem", "4.1", "--grid", "-1..1:5"], 0, False),
    "verify_eigen": (["verify", "--spec", "eigen_spec.json", "--theorem", "4.3", "--lambda", "-1",
                      "--grid", "-1..1:5"], 0, False),
    "verify_cylinder_1_1": (["verify", "--spec", "cylinder.json", "--theorem", "1.1", "--grid", "-1..1:5"], 0, False),
    "export_scherk_obj": (["export", "--spec", "scherk.json", "--format", "obj", "--grid", "-1.2..1.2:5",
                           "--out", "{out}"], 0, True),
    "export_quadratic_csv": (["export", "--spec", "crc_spec.json", "--format", "csv", "--quantity", "relative",
                              "--grid", "-1..1:3", "--out", "{out}"], 0, True),
}

SUFFIX = {"construct": ".json", "export_scherk_obj": ".obj"}


def out_suffix(name):
    if name in SUFFIX:
        return SUFFIX[name]
    return SUFFIX.get(name.split("_")[0], ".csv")


def run_cli(argv, cwd=GOLDEN):
    return subprocess.run(
        [sys.executable, "-m", "affine_hypersurfaces", *argv],
        cwd=cwd, capture_output=True, text=True, check=False,
    )


def check_golden(path, actual):
    if REGEN:
        path.write_bytes(actual)
    assert path.exists(), f"missing golden file {path.name}; run with AHK_REGEN_GOLDEN=1"
    assert actual == path.read_bytes(), f"{path.name} differs from reference"


@pytest.mark.parametrize("name", list(GOLDEN_CASES))
def test_golden(name, tmp_path):
    argv, code, writes = GOLDEN_CASES[name]
    out = tmp_path / f"out{out_suffix(name)}"
    argv = [a.replace("{out}", str(out)) for a in argv]
    result = run_cli(argv)
    assert result.returncode == code, result.stderr
    check_golden(GOLDEN / f"{name}.stdout", result.stdout.encode())
    if writes:
        check_golden(GOLDEN / f"{name}.out{out_suffix(name)}", out.read_bytes())


def test_constructed_specs_match_their_verify_inputs():
    # the verify goldens read the specs the construct goldens produced
    for construct, spec in [("construct_cimc", "cimc_spec"), ("construct_eigen", "eigen_spec"),
                            ("construct_crc", "crc_spec")]:
        assert (GOLDEN / f"{construct}.out.json").read_bytes() == (GOLDEN / f"{spec}.json").read_bytes()


def test_gk_on_cylinder_reports_zero():
    report = json.loads((GOLDEN / "curvature_gk_cylinder.stdout").read_text())
    assert set(report) == {"quantity", "samples", "min", "max", "mean", "stddev", "is_constant",
                           "constant_value", "skipped", "verdict"}
    assert report["mean"] == 0.0 and report["is_constant"] and report["samples"] == 25


def test_construct_crc_gives_unit_squares():
    doc = json.loads((GOLDEN / "construct_crc.out.json").read_text())
    assert doc["ambient"] == "isotropic"
    assert [(p["kind"], p["c"], p["d"], p["e"]) for p in doc["profiles"]] == [("quadratic", 1.0, 0.0, 0.0)] * 2


def test_construct_eigen_negative_lambda_gives_trig_pairs():
    doc = json.loads((GOLDEN / "construct_eigen.out.json").read_text())
    assert {p["kind"] for p in doc["profiles"]} == {"trig_pair"}


def test_verify_verdicts():
    def verdict(name):
        return json.loads((GOLDEN / f"{name}.stdout").read_text())["verdict"]

    assert verdict("verify_cimc") == "ConfirmsTheorem"
    assert verdict("verify_exp_pair_4_1") == "NotApplicable"
    assert verdict("verify_eigen") == "ConfirmsTheorem"
    assert verdict("verify_cylinder_1_1") == "ConfirmsTheorem"


def test_obj_counts():
    lines = (GOLDEN / "export_scherk_obj.out.obj").read_text().splitlines()
    verts = [ln for ln in lines if ln.startswith("v ")]
    faces = [ln for ln in lines if ln.startswith("f ")]
    assert len(verts) == 25 and len(faces) == 2 * 4 * 4
    assert all(1 <= int(i) <= len(verts) for f in faces for i in f.split()[1:])


def test_csv_header_contract():
    text = (GOLDEN / "export_quadratic_csv.out.csv").read_bytes().decode()
    rows = text.split("\r\n")
    assert rows[0] == "x_1,x_2,z,quantity"
    assert len(rows) == 1 + 9 + 1 and rows[-1] == ""
    assert all(len(r.split(",")) == 4 for r in rows[1:-1])


# (argv, expected exit code, substring of the error message)
EXIT_CASES = [
    (["curvature", "--spec", "missing.json", "--quantity", "gk"], 2, "not found"),
    (["curvature", "--spec", "{tmp}/bad.json", "--quantity", "gk"], 2, "profiles[1].c"),
    (["curvature", "--spec", "{tmp}/broken.json", "--quantity", "gk"], 2, "line 1"),
    (["curvature", "--spec", "cylinder.json", "--quantity", "gk", "--grid", "1..0:5"], 2, ""),
    (["curvature", "--spec", "cylinder.json", "--quantity", "gk", "--grid", "nonsense"], 2, "LO..HI:N"),
    (["curvature", "--spec", "scherk.json", "--quantity", "gk"], 3, "euclidean"),
    (["curvature", "--spec", "scherk.json", "--quantity", "mean", "--grid", "0..3.141592653589793:3"], 3, "vanishes"),
    (["curvature", "--spec", "scherk.json", "--quantity", "mean", "--grid", "1.5..1.6:2", "--exclude", "0.2"],
     3, "excluded"),
    (["verify", "--spec", "cylinder.json", "--theorem", "4.1"], 3, "isotropic"),
    (["construct", "--theorem", "crc", "--k0", "0", "--c", "1"], 4, "cylinder"),
    (["construct", "--theorem", "crc", "--k0", "1"], 4, "--c"),
    (["construct", "--theorem", "cimc", "--h0", "1", "--c", "1", "2"], 4, "sum"),
    (["construct", "--theorem", "eigen", "--lambda", "0", "--c", "1", "1"], 4, "lambda"),
    (["construct", "--theorem", "eigen", "--lambda", "1", "--c", "1", "1", "--mu", "1", "1"], 4, "mu"),
    (["construct", "--theorem", "cylinder", "--index", "5", "--profile", '{"kind": "quadratic", "c": 1}'],
     4, "linear_index"),
    (["construct", "--theorem", "crc", "--k0", "1", "--c", "1", "--matrix", "[[1, 2], [2, 4]]"], 4, "singular"),
    (["export", "--spec", "three.json", "--format", "obj"], 6, "n = 2"),
]


def write_bad_files(tmp_path):
    (tmp_path / "bad.json").write_text('{"n": 2, "ambient": "euclidean", "matrix": [[1, 0], [0, 1]],\n'
                                        ' "profiles": [{"kind": "quadratic", "c": 1}, {"kind": "quadratic"}]}')
    (tmp_path / "broken.json").write_text('{"n": 2, ')
    return tmp_path


@pytest.fixture
def bad_files(tmp_path):
    return write_bad_files(tmp_path)


@pytest.mark.parametrize("argv, code, message", EXIT_CASES)
def test_exit_codes(argv, code, message, bad_files):
    argv = [a.replace("{tmp}", str(bad_files)) for a in argv]
    result = run_cli(argv)
    assert result.returncode == code, result.stderr
    assert message in result.stderr
    assert result.stdout == ""


def test_violation_exit_code(monkeypatch, capsys):
    # no valid spec can violate a theorem; force the reserved path
    from affine_hypersurfaces import cli
    from affine_hypersurfaces.reports import Verdict

    real = cli.theorem_verdict

    def violating(*args, **kwargs):
        return real(*args, **kwargs).with_verdict(Verdict.VIOLATES)

    monkeypatch.setattr(cli, "theorem_verdict", violating)
    code = main(["verify", "--spec", str(GOLDEN / "cylinder.json"), "--theorem", "1.1", "--grid", "-1..1:3"])
    assert code == 5
    assert json.loads(capsys.readouterr().out)["verdict"] == "ViolatesTheorem"


def test_workers_do_not_change_output():
    base = ["curvature", "--spec", "three.json", "--quantity", "principal", "--index", "2", "--grid", "-1..1:6"]
    assert run_cli(base).stdout == run_cli(base + ["--workers", "4"]).stdout


def test_grid_axes_per_dimension():
    one = run_cli(["curvature", "--spec", "cylinder.json", "--quantity", "gk", "--grid", "-1..1:3"])
    two = run_cli(["curvature", "--spec", "cylinder.json", "--quantity", "gk",
                   "--grid", "-1..1:3", "--grid", "-1..1:3"])
    assert one.stdout == two.stdout
    bad = run_cli(["curvature", "--spec", "cylinder.json", "--quantity", "gk",
                   "--grid", "-1..1:3", "--grid", "-1..1:4"])
    assert bad.returncode == 2
