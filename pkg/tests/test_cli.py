"""End-to-end command-line tests, each one a real subprocess.

The count is kept low on purpose: process startup dominates, and the unit
suites already cover the library underneath.
"""

import subprocess
import sys

import pytest


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "momquad", *args],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_moments_golden_output():
    code, out, err = run_cli("moments", "--preset", "normal", "--max-degree", "6")
    assert code == 0
    assert out == "# moments: normal\n0,1\n1,0\n2,1\n3,0\n4,3\n5,0\n6,15\n"
    assert err == ""


def test_gauss_from_csv_round_trip(tmp_path):
    # feed the CLI its own moments output and get the three-point rule back
    csv = tmp_path / "normal.csv"
    csv.write_text("# comment line\n0,1\n1,0\n2,1\n3,0\n4,3\n5,0\n")
    code, out, err = run_cli("gauss", "--moments", str(csv), "--d", "2")
    assert code == 0, err
    lines = out.splitlines()
    assert lines[0] == "degree,5"
    kinds = [line.split(",")[0] for line in lines[1:4]]
    assert kinds == ["real", "real", "real"]
    weights = [float(line.split(",")[2]) for line in lines[1:4]]
    assert weights == pytest.approx([1 / 6, 2 / 3, 1 / 6], abs=1e-11)


def test_even_verify_round_trip(tmp_path):
    rule_path = tmp_path / "rule.txt"
    code, out, err = run_cli(
        "even", "--preset", "normal", "--d", "3", "--y", "0",
        "-o", str(rule_path),
    )
    assert code == 0, err
    assert out == ""
    text = rule_path.read_text()
    assert text.splitlines()[0] == "degree,6"
    assert "infinity,," in text

    code, out, _ = run_cli("verify", "--preset", "normal", "--rule", str(rule_path))
    assert code == 0
    assert out.splitlines()[0] == "status,pass"

    # tamper with a weight: verification must fail loudly at total mass
    tampered = tmp_path / "bad.txt"
    tampered.write_text(text.replace("degree,6", "degree,6\nreal,9.5,0.001"))
    code, out, _ = run_cli("verify", "--preset", "normal", "--rule", str(tampered))
    assert code == 1
    assert out.splitlines()[0] == "status,fail"
    assert "first_failure,0" in out


def test_even_methods_cross_check():
    code, out, err = run_cli(
        "even", "--preset", "normal", "--d", "3", "--y", "1", "--method", "both"
    )
    assert code == 0, err
    assert out.splitlines()[0] == "degree,6"


def test_even_output_is_byte_deterministic():
    first = run_cli("even", "--preset", "normal", "--d", "3", "--y", "1")
    second = run_cli("even", "--preset", "normal", "--d", "3", "--y", "1")
    assert first == second
    assert first[0] == 0


def test_multinode_infeasible_exit_code():
    code, out, err = run_cli(
        "multinode", "--preset", "exponential", "--n", "3", "--l", "3",
        "--fix", "0.3333333333333333,11",
    )
    assert code == 1
    assert out.splitlines()[0] == "verdict,infeasible"
    assert out.count("candidate,") == 2


def test_multinode_feasible_prints_rule():
    code, out, err = run_cli(
        "multinode", "--preset", "normal", "--n", "2", "--l", "2", "--fix", "1",
    )
    assert code == 0, err
    assert out.splitlines()[0] == "verdict,feasible"
    assert "degree,6" in out


def test_curve_header_and_shape():
    code, out, err = run_cli(
        "curve", "--preset", "normal", "--d", "3", "--steps", "3"
    )
    assert code == 0, err
    lines = out.splitlines()
    assert lines[0] == "x,y,F,detM,inertia_pos,inertia_neg,inertia_zero"
    assert len(lines) == 1 + 9
    assert all(len(line.split(",")) == 7 for line in lines[1:])


def test_missing_source_is_usage_error():
    code, out, err = run_cli("gauss", "--d", "2")
    assert code == 2
    assert out == ""
    assert "error:" in err


def test_two_sources_is_usage_error(tmp_path):
    csv = tmp_path / "m.csv"
    csv.write_text("0,1\n1,0\n2,1\n3,0\n4,3\n5,0\n")
    code, _, err = run_cli(
        "gauss", "--preset", "normal", "--moments", str(csv), "--d", "2"
    )
    assert code == 2
    assert "exactly one" in err


def test_missing_rule_file_is_usage_error():
    code, _, err = run_cli(
        "verify", "--preset", "normal", "--rule", "/nonexistent/rule.txt"
    )
    assert code == 2
    assert "error:" in err


def test_too_few_moments_is_usage_error(tmp_path):
    csv = tmp_path / "short.csv"
    csv.write_text("0,1\n1,0\n2,1\n")
    code, _, err = run_cli("gauss", "--moments", str(csv), "--d", "2")
    assert code == 2


def test_degenerate_atoms_is_numerical_failure(tmp_path):
    atoms = tmp_path / "atoms.csv"
    atoms.write_text("0,1\n2,1\n")  # two atoms cannot support a 3-node rule
    code, out, err = run_cli("gauss", "--atoms", str(atoms), "--d", "2")
    assert code == 3
    assert out == ""
    assert "numerical failure" in err


def test_tolerance_flags_reach_the_solvers():
    # an absurd residual demand turns a perfectly fine run into a reported
    # numerical failure, which shows the flag is actually applied
    code, _, err = run_cli(
        "gauss", "--preset", "normal", "--d", "2", "--tol-residual", "1e-30"
    )
    assert code == 3
    assert "numerical failure" in err
