import subprocess
import sys
from pathlib import Path

import pytest

DEMOS = sorted((Path(__file__).parent.parent / "demos").glob("*.py"))


@pytest.mark.parametrize("script", DEMOS, ids=lambda p: p.stem)
def test_demo_runs(script):
    proc = subprocess.run([sys.executable, str(script)], capture_output=True, text=True,
                          timeout=60)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout


def test_demo_outputs():
    out = {p.stem: subprocess.run([sys.executable, str(p)], capture_output=True,
                                  text=True).stdout for p in DEMOS}
    assert "spec s0 simulated by impl t0: False" in out["vending_machine"]
    assert "shared-trace bisimilar: True" in out["vending_machine"]
    assert "any-side coin simulated by d0: False" in out["coins"]
    assert "impl conforms to the strict spec: False" in out["ioco_testing"]
