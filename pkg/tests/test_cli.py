"""CLI flag handling, report formats, exit codes, golden management."""

import json

import pytest

from padictheta.checks import REGISTRY
from padictheta.cli import main


def run_cli(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list_names(capsys):
    code, out, _ = run_cli(capsys, "--list")
    assert code == 0
    names = out.split()
    assert set(names) == set(REGISTRY)


def test_single_check_passes(capsys):
    code, out, _ = run_cli(capsys, "--check", "ell-relation", "--prime", "5")
    assert code == 0
    assert "PASS  ell-relation[p=5]" in out


def test_all_primes_run_without_prime_flag(capsys):
    code, out, _ = run_cli(capsys, "--check", "ell-relation")
    assert code == 0
    for p in (2, 3, 5):
        assert f"ell-relation[p={p}]" in out


def test_unknown_check_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "--check", "no-such-check")
    assert code == 2
    assert "no-such-check" in err


def test_unsupported_prime_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "--check", "qexp-congruence", "--prime", "5")
    assert code == 2


def test_structured_format(capsys):
    code, out, _ = run_cli(capsys, "--check", "lambda-binomial", "--prime", "3",
                           "--format", "structured", "--trials", "20")
    assert code == 0
    doc = json.loads(out)
    assert doc["version"]
    assert doc["params"]["prime"] == 3
    assert doc["checks"][0]["name"] == "lambda-binomial[p=3]"
    assert doc["checks"][0]["status"] == "pass"
    assert "millis" in doc["checks"][0]


def test_deterministic_output_with_omit_timing(capsys):
    args = ("--check", "f-congruence,ghost-formulas", "--prime", "3",
            "--format", "structured", "--omit-timing")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


def test_missing_golden_is_error(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "--check", "qexp-congruence", "--prime", "2",
                           "--q-terms", "16", "--golden", str(tmp_path))
    assert code == 1
    assert "ERROR" in out and "golden" in out


def test_golden_regeneration_then_match(tmp_path, capsys):
    args = ("--check", "qexp-congruence", "--prime", "2", "--q-terms", "16",
            "--golden", str(tmp_path))
    code, _, _ = run_cli(capsys, *args, "--regenerate-golden")
    assert code == 0
    assert (tmp_path / "qexp-congruence_p2_M16_N12.txt").exists()
    code, out, _ = run_cli(capsys, *args)
    assert code == 0 and "PASS" in out


def test_golden_mismatch_fails(tmp_path, capsys):
    args = ("--check", "qexp-congruence", "--prime", "2", "--q-terms", "16",
            "--golden", str(tmp_path))
    run_cli(capsys, *args, "--regenerate-golden")
    path = tmp_path / "qexp-congruence_p2_M16_N12.txt"
    path.write_text(path.read_text().replace("q^1", "q^999", 1))
    code, out, _ = run_cli(capsys, *args)
    assert code == 1
    assert "FAIL" in out and "golden mismatch" in out


def test_witness_printed_on_failure(tmp_path, capsys):
    # engineer a failure through a corrupted golden and confirm the witness line
    args = ("--check", "h-integrality", "--prime", "3", "--q-terms", "16",
            "--golden", str(tmp_path))
    run_cli(capsys, *args, "--regenerate-golden")
    path = tmp_path / "h-integrality_p3_M16_N12.txt"
    path.write_text("c0: 1 mod 3^9\n")
    code, out, _ = run_cli(capsys, *args)
    assert code == 1
    assert "| golden mismatch" in out
