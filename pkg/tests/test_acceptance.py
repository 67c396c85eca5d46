"""Acceptance suite: runs every shipped verification criterion at its stated
tolerance and prints one pass/fail line per criterion (visible with -s or in
the captured output of failing runs)."""

import subprocess
import sys

import pytest

import seqcore.acceptance as acceptance


@pytest.fixture(scope="module")
def battery():
    results = {}
    for check in acceptance.CHECKS:
        result = check()
        results[result.check_id] = result
        flag = "PASS" if result.passed else "FAIL"
        print(f"[{flag}] {result.check_id} {result.name}: {result.detail}")
    return results


@pytest.mark.parametrize("check_id", acceptance.CHECK_IDS)
def test_criterion(battery, check_id):
    result = battery[check_id]
    assert result.passed, f"{result.check_id} {result.name}: {result.detail}"


def test_all_checks_covered(battery):
    assert set(battery) == set(acceptance.CHECK_IDS)
    assert len(acceptance.CHECK_IDS) == 12


def _run_verify(out_path):
    return subprocess.run(
        [sys.executable, "-m", "seqcore.cli", "verify", "--out", str(out_path)],
        capture_output=True,
        text=True,
        timeout=600,
    )


def test_cli_verify_exits_zero_and_is_byte_stable(tmp_path):
    first = _run_verify(tmp_path / "verify1.json")
    assert first.returncode == 0, first.stdout + first.stderr
    second = _run_verify(tmp_path / "verify2.json")
    assert second.returncode == 0, second.stdout + second.stderr
    bytes1 = (tmp_path / "verify1.json").read_bytes()
    bytes2 = (tmp_path / "verify2.json").read_bytes()
    assert bytes1 == bytes2
    assert b'"all_passed":true' in bytes1
