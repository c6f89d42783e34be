import csv
import io
import json

import pytest

from sharpeval import presets
from sharpeval.cli import main
from sharpeval.runner import run, to_json


def _write(tmp_path, raw, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(raw))
    return str(p)


SMALL = {
    "seed": 1,
    "spaces": {"f": {"domain": "fock", "n": 1, "alpha": 1.0, "p": 2.0},
               "b": {"domain": "ball", "n": 1, "alpha": 0.0, "p": 2.0}},
    "automorphisms": {"phi": {"automorphism": "ball", "z0_re": [0.3], "z0_im": [0.2]}},
    "functions": {"r": {"random": {"n": 1, "count": 2, "seed": 3}}},
    "checks": [
        {"type": "bound", "space": "f", "functions": ["r"], "points": {"random": 2}},
        {"type": "sharpness", "space": "b", "points": [{"re": [0.4], "im": [0.1]}]},
        {"type": "pluriharmonicity", "space": "b", "automorphism": "phi"},
    ],
}


def test_empty_checks_exit_zero(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify", "--config", _write(tmp_path, {"seed": 0, "checks": []}), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["summary"]["total"] == 0 and doc["reports"] == []


def test_pass_json_and_header(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--config", _write(tmp_path, SMALL), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert set(doc["header"]["spaces"]) == {"f", "b"}
    assert abs(doc["header"]["spaces"]["f"]["N"] - 3.141592653589793) < 1e-15
    assert doc["summary"]["counts"]["pass"] == doc["summary"]["total"] == len(doc["reports"])
    assert "timestamp" in doc["timing"]
    for r in doc["reports"]:
        assert r["method"] and "err_est" in r and r["case_id"]


def test_csv_columns(tmp_path):
    out = tmp_path / "r.csv"
    assert main(["verify", "--config", _write(tmp_path, SMALL), "--out", str(out), "--format", "csv"]) == 0
    text = out.read_text()
    header = [ln for ln in text.splitlines() if ln.startswith("#")]
    assert any(ln.startswith("# space f: N=") for ln in header)
    rows = list(csv.DictReader(io.StringIO("\n".join(ln for ln in text.splitlines() if not ln.startswith("#")))))
    assert list(rows[0]) == ["case_id", "check", "geometry", "n", "p", "alpha", "point", "lhs", "rhs", "ratio",
                             "err_est", "verdict"]
    assert all(r["verdict"] == "pass" for r in rows)


def test_failure_exit_one(tmp_path):
    raw = {"seed": 1, "spaces": SMALL["spaces"], "automorphisms": SMALL["automorphisms"],
           "checks": [{"type": "pluriharmonicity", "space": "b", "automorphism": "phi", "tol": 1e-30}]}
    assert main(["verify", "--config", _write(tmp_path, raw), "--out", str(tmp_path / "o.json")]) == 1


def test_inconclusive_exit_two(tmp_path):
    raw = {"seed": 1, "spaces": SMALL["spaces"],
           "functions": {"g": {"terms": [{"coeff_re": 1.0, "powers": [2]}, {"coeff_re": 0.5, "powers": [0],
                                                                             "exp_re": [1.0]}]}},
           "checks": [{"type": "bound", "space": "f", "functions": ["g"], "points": [{"re": [0.5]}],
                       "plan": {"nodes": 64, "tol": 1e-14}}]}
    assert main(["verify", "--config", _write(tmp_path, raw), "--out", str(tmp_path / "o.json")]) == 2


@pytest.mark.parametrize(
    "content",
    ["{not json", json.dumps({"checks": []}), json.dumps({"seed": 1, "checks": [{"type": "bound", "space": "x"}]})],
)
def test_config_errors_exit_64(tmp_path, content, capsys):
    p = tmp_path / "bad.json"
    p.write_text(content)
    assert main(["verify", "--config", str(p)]) == 64
    assert "config error" in capsys.readouterr().err


def test_missing_file_exit_64(tmp_path):
    assert main(["verify", "--config", str(tmp_path / "absent.json")]) == 64


def test_undefined_function_message(tmp_path, capsys):
    raw = {"seed": 1, "spaces": SMALL["spaces"], "checks": [{"type": "bound", "space": "f", "functions": ["ghost"]}]}
    assert main(["verify", "--config", _write(tmp_path, raw)]) == 64
    assert "'ghost'" in capsys.readouterr().err


def test_seed_override_changes_report(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    cfg = _write(tmp_path, SMALL)
    main(["verify", "--config", cfg, "--out", str(a), "--no-timestamp"])
    main(["verify", "--config", cfg, "--out", str(b), "--no-timestamp", "--seed", "2"])
    assert a.read_text() != b.read_text()


def test_byte_identical_reports_across_threads(tmp_path, monkeypatch):
    cfg = _write(tmp_path, SMALL)
    texts = []
    for threads in ("1", "4"):
        monkeypatch.setenv("SHARPEVAL_THREADS", threads)
        out = tmp_path / f"r{threads}.json"
        main(["verify", "--config", cfg, "--out", str(out)])
        doc = json.loads(out.read_text())
        doc.pop("timing")
        texts.append(json.dumps(doc, sort_keys=True))
    assert texts[0] == texts[1]
    s1, r1 = run(SMALL)
    s2, r2 = run(SMALL)
    assert to_json(s1, r1, timestamp=False) == to_json(s2, r2, timestamp=False)


def test_presets_list_exact(capsys):
    assert main(["presets", "list"]) == 0
    names = [ln.split()[0] for ln in capsys.readouterr().out.splitlines()]
    assert names == ["fock-theorem-f", "fock-aniso", "ball-bergman", "polydisc-bergman", "scheme-generic",
                     "integrated-remark"]


def test_presets_show_ball_range(capsys):
    assert main(["presets", "show", "ball-bergman"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["ranges"]["alpha"] == "(-1, inf)"
    assert doc["config"] == presets.get("ball-bergman")


def test_presets_show_unknown():
    assert main(["presets", "show", "nope"]) == 64


def test_verify_preset_fock_theorem_f(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--preset", "fock-theorem-f", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    checks = {r["check"] for r in doc["reports"]}
    assert {"bound", "sharpness"} <= checks
