"""Golden reports for the built-in presets.

Regenerate with ``SHARPEVAL_UPDATE_GOLDEN=1 pytest tests/test_presets_golden.py``.
"""
import json
import math
import os
from pathlib import Path

import pytest

from sharpeval import presets
from sharpeval.runner import run, to_json

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("SHARPEVAL_UPDATE_GOLDEN") == "1"


def _close(a, b, path=""):
    if isinstance(a, dict):
        assert isinstance(b, dict) and sorted(a) == sorted(b), path
        for k in a:
            _close(a[k], b[k], f"{path}.{k}")
    elif isinstance(a, list):
        assert isinstance(b, list) and len(a) == len(b), path
        for i, (x, y) in enumerate(zip(a, b)):
            _close(x, y, f"{path}[{i}]")
    elif isinstance(a, float) and isinstance(b, float):
        assert math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-300), f"{path}: {a} != {b}"
    else:
        assert a == b, f"{path}: {a!r} != {b!r}"


@pytest.mark.parametrize("name", presets.names())
def test_preset_matches_golden(name):
    summary, reports = run(presets.get(name))
    doc = json.loads(to_json(summary, reports, timestamp=False))
    path = GOLDEN / f"{name}.json"
    if UPDATE or not path.exists():
        if not UPDATE:
            pytest.fail(f"missing golden file {path.name}; regenerate with SHARPEVAL_UPDATE_GOLDEN=1")
        path.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    _close(doc, json.loads(path.read_text()))
    assert summary.counts["fail"] == 0
    assert summary.exit_status == 0
