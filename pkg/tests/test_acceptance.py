"""Exit criteria; each prints one PASS/FAIL line (run with ``-s`` to see them)."""

import subprocess
import sys

import pytest

from bdiv.acceptance import CHECKS, run_check


@pytest.mark.parametrize("number", [c[0] for c in CHECKS], ids=[f"criterion_{c[0]:02d}" for c in CHECKS])
def test_criterion(number):
    result = run_check(number)
    print(result.line())
    assert result.passed, result.line()


def test_verify_command_exits_zero():
    cp = subprocess.run([sys.executable, "-m", "bdiv", "verify"], capture_output=True, text=True)
    print(cp.stdout)
    assert cp.returncode == 0, cp.stdout
    assert "11/11 criteria passed" in cp.stdout
