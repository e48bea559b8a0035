import json
import subprocess
import sys
from pathlib import Path

import pytest

from skewdet.cli import (
    EXIT_DISAGREE,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_UNSUPPORTED,
    format_problem,
    load_problem,
    main,
)

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"
FIXTURES = sorted(PROBLEMS.glob("*.json"))


def run_cli(args):
    proc = subprocess.run(
        [sys.executable, "-m", "skewdet.cli", *args],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def parse_kv(stdout):
    out = {}
    for line in stdout.splitlines():
        key, _, value = line.partition(" = ")
        out[key] = value
    return out


def test_fixture_corpus_is_large_enough():
    assert len(FIXTURES) >= 6
    twists = set()
    for path in FIXTURES:
        twists.add(json.loads(path.read_text())["field"].get("twist"))
    assert twists == {"commutative", "differential", "shift", "qshift"}


def test_degdet_diag():
    code, out, _ = run_cli(["degdet", str(PROBLEMS / "commutative_diag.json")])
    assert code == EXIT_OK
    assert parse_kv(out)["degdet"] == "2"


def test_degdet_witness():
    code, out, _ = run_cli(["degdet", str(PROBLEMS / "differential_witness.json")])
    assert code == EXIT_OK
    assert parse_kv(out)["degdet"] == "0"


def test_degdet_singular(tmp_path):
    doc = {
        "field": {"base": "rationals", "twist": "commutative"},
        "matrix": [[["1"], ["1"]], [["1"], ["1"]]],
    }
    path = tmp_path / "singular.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(["degdet", str(path)])
    assert code == EXIT_OK
    assert parse_kv(out)["degdet"] == "-inf (singular)"


def test_dimension_reports_caveat():
    code, out, _ = run_cli(["dimension", str(PROBLEMS / "differential_order1.json")])
    assert code == EXIT_OK
    kv = parse_kv(out)
    assert kv["dimension"] == "1"
    assert "adequate extension" in kv["note"]


def test_dimension_examples():
    code, out, _ = run_cli(["dimension", str(PROBLEMS / "shift_constant.json")])
    assert parse_kv(out)["dimension"] == "1"
    code, out, _ = run_cli(["dimension", str(PROBLEMS / "shift_scaling.json")])
    assert parse_kv(out)["dimension"] == "0"


def test_dimension_unsupported_twist_exit_code():
    code, _, err = run_cli(["dimension", str(PROBLEMS / "commutative_diag.json")])
    assert code == EXIT_UNSUPPORTED
    assert "twist" in err


def test_smith_output():
    code, out, _ = run_cli(["smith", str(PROBLEMS / "commutative_diag.json")])
    kv = parse_kv(out)
    assert kv["alpha"] == "[0, 0]"
    assert kv["omega"] == "[0, 2, 4, 6]"


def test_zeta_algo_selection():
    for algo in ("relax", "expand", "oracle", "all"):
        code, out, _ = run_cli(
            ["zeta", str(PROBLEMS / "shift_f5t.json"), "--algo", algo]
        )
        assert code == EXIT_OK
        kv = parse_kv(out)
        assert kv["algorithm"] == algo
        assert kv["zeta"].isdigit()


def test_json_format():
    code, out, _ = run_cli(
        ["degdet", str(PROBLEMS / "commutative_f5.json"), "--format", "json"]
    )
    doc = json.loads(out)
    assert doc["degdet"] == 2
    assert doc["algorithm"] == "all"


def test_trace_file(tmp_path):
    trace = tmp_path / "trace.jsonl"
    code, _, _ = run_cli(
        [
            "zeta",
            str(PROBLEMS / "differential_witness.json"),
            "--algo",
            "relax",
            "--trace",
            str(trace),
        ]
    )
    assert code == EXIT_OK
    lines = [json.loads(line) for line in trace.read_text().splitlines()]
    assert lines and all("gamma" in rec and "dp" in rec for rec in lines)


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(["degdet", str(bad)])
    assert code == EXIT_PARSE and "parse error" in err
    bad2 = tmp_path / "bad2.json"
    bad2.write_text(json.dumps({"field": {"base": "rationals"}, "matrix": [[["1/t"]]]}))
    code2, _, err2 = run_cli(["degdet", str(bad2)])
    assert code2 == EXIT_PARSE


def test_bound_override(tmp_path):
    doc = {
        "field": {"base": "rationals", "twist": "commutative"},
        "matrix": [[["1"], ["0"]], [["0"], ["0", "0", "1"]]],
    }
    path = tmp_path / "deep.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(["degdet", str(path), "--bound", "1"])
    assert parse_kv(out)["degdet"] == "-inf (singular)"
    code, out, _ = run_cli(["degdet", str(path)])
    assert parse_kv(out)["degdet"] == "2"


def test_round_trip_fixture_corpus():
    for path in FIXTURES:
        doc = json.loads(path.read_text())
        matrix, _, _ = load_problem(str(path))
        assert format_problem(matrix) == {
            "field": doc["field"],
            "matrix": doc["matrix"],
        }, path.name


def test_main_entry_in_process(capsys):
    assert main(["degdet", str(PROBLEMS / "commutative_diag.json")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "degdet = 2" in out
