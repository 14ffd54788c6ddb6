import os
import subprocess
import sys
import time
from pathlib import Path

import pytest

from acceptance import CRITERIA

BUDGETS = {1: 1, 2: 10, 3: 60, 4: 120, 5: 30, 6: 10, 7: 60, 8: 30, 9: 20, 10: 20, 11: 20}
RUNNER = Path(__file__).with_name("acceptance.py")
REPORTS = {}


def _line(capsys, text):
    with capsys.disabled():
        print(f"\n{text}")


def _report_json(n):
    if n not in REPORTS:
        REPORTS[n] = CRITERIA[n]().to_json()
    return REPORTS[n]


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    start = time.perf_counter()
    rep = CRITERIA[n]()
    elapsed = time.perf_counter() - start
    REPORTS[n] = rep.to_json()
    ok = rep.passed and elapsed < BUDGETS[n]
    _line(capsys, f"criterion {n}: {'pass' if ok else 'fail'} ({rep.verdict}, {elapsed:.2f} s, budget {BUDGETS[n]} s)")
    assert rep.passed, rep.summary()
    assert elapsed < BUDGETS[n]


def test_criterion_12_determinism(capsys):
    # a fresh interpreter with a different hash seed must print the same bytes
    env = dict(os.environ, PYTHONHASHSEED="12345")
    differing = []
    for n in sorted(CRITERIA):
        out = subprocess.run([sys.executable, str(RUNNER), str(n)], capture_output=True, text=True,
                             env=env, cwd=RUNNER.parent, check=True).stdout
        if out != _report_json(n):
            differing.append(n)
    _line(capsys, f"criterion 12: {'fail' if differing else 'pass'} (reports differing: {differing})")
    assert differing == []
