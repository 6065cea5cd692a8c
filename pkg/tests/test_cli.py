import json
import os

import pytest

from cli_cases import CASES, FIXTURES, Case, read_golden, run_in_process, run_subprocess, write_golden
from mlsc.cli import main

UPDATE = os.environ.get("MLSC_UPDATE_GOLDEN") == "1"


@pytest.mark.parametrize("case", CASES, ids=lambda c: c.name)
def test_golden(case):
    result = run_in_process(case)
    if UPDATE:
        write_golden(case, result)
    assert result == read_golden(case)


def test_golden_via_entry_point():
    # one full process run to cover the module entry point and stream encoding
    case = next(c for c in CASES if c.name == "convert_ontodm_mex")
    assert run_subprocess(case, "0") == read_golden(case)


def lines(result):
    return result.stdout.decode().splitlines()


def test_scenario_summary_and_exit():
    result = read_golden(next(c for c in CASES if c.name == "convert_ontodm_mex"))
    assert result.code == 0
    assert "1 ambiguous, 0 dropped" in result.stderr.decode().splitlines()
    assert "mexcore:ExperimentConfiguration" in result.stdout.decode()
    assert "mexalgo:Algorithm" in result.stdout.decode()


def test_lossy_conversion_output():
    result = read_golden(next(c for c in CASES if c.name == "convert_expose_mex"))
    assert result.code == 0
    assert " a " not in result.stdout.decode()
    assert "0 ambiguous, 1 dropped (Implementation)" in result.stderr.decode()
    assert read_golden(next(c for c in CASES if c.name == "convert_expose_mex_strict")).code == 1


@pytest.mark.parametrize("name,code", [
    ("convert_malformed", 1), ("validate_malformed", 1), ("convert_missing_input", 2),
    ("convert_unknown_vocab", 2), ("terms_unknown_vocab", 2), ("validate_lone_run", 0),
    ("validate_clean_strict", 0), ("inspect_unknown", 0),
])
def test_exit_codes(name, code):
    assert read_golden(next(c for c in CASES if c.name == name)).code == code


def test_validate_output_shapes():
    clean = read_golden(next(c for c in CASES if c.name == "validate_clean_strict"))
    assert clean.stdout == b"" and clean.stderr == b""
    lone = lines(read_golden(next(c for c in CASES if c.name == "validate_lone_run")))
    assert len(lone) == 1 and lone[0].startswith("WARNING MISSING_LINK http://example.org/v/run1 — ")
    bad = lines(read_golden(next(c for c in CASES if c.name == "validate_malformed")))
    assert len(bad) == 1 and bad[0].startswith("ERROR PARSE_ERROR malformed.ttl:4:1 — ")


def test_terms_line_counts():
    assert len(lines(read_golden(next(c for c in CASES if c.name == "terms_all")))) == 21
    assert len(lines(read_golden(next(c for c in CASES if c.name == "terms_mex_na")))) == 10
    assert len(lines(read_golden(next(c for c in CASES if c.name == "terms_ontodm_na")))) == 3


def test_inspect_counts():
    empty = lines(read_golden(next(c for c in CASES if c.name == "inspect_empty")))
    assert all(line.endswith(": 0") for line in empty)
    assert "Run: 2" in lines(read_golden(next(c for c in CASES if c.name == "inspect_mex_sample")))
    unknown = read_golden(next(c for c in CASES if c.name == "inspect_unknown"))
    assert "unknown: 1" in lines(unknown)
    assert "UNKNOWN_TERM" in unknown.stderr.decode()


def _counts(stdout: bytes) -> dict[str, int]:
    return {k: int(v) for k, v in (line.split(": ") for line in stdout.decode().splitlines())}


@pytest.mark.parametrize("target", ["mlschema", "ontodm", "dmop", "expose", "mex"])
def test_convert_then_inspect_matches_report(tmp_path, target):
    out, report = tmp_path / "out.ttl", tmp_path / "report.json"
    case = Case("x", ("convert", "--from", "mex", "--to", target, "-o", str(out), "--report", str(report), "mex_sample.ttl"))
    assert run_in_process(case).code == 0
    data = json.loads(report.read_text())
    inspected = run_in_process(Case("y", ("inspect", "--from", target, str(out))))
    counts = _counts(inspected.stdout)
    for cls, pair in data["counts"].items():
        assert counts[cls] == pair["out"], cls
    assert sum(v for k, v in counts.items() if k[0].isupper()) == sum(p["out"] for p in data["counts"].values())
    assert sum(v for k, v in counts.items() if k[0].islower() and k != "unknown") == data["edges"]["out"]


def test_output_format_follows_extension(tmp_path):
    out = tmp_path / "out.nt"
    assert run_in_process(Case("x", ("convert", "--from", "mex", "--to", "mex", "-o", str(out), "mex_sample.ttl"))).code == 0
    assert out.read_text().startswith("<http://example.org/mex/")


def test_input_format_override(tmp_path):
    doc = tmp_path / "doc.txt"
    doc.write_text("<http://x/r> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://mex.aksw.org/mex-core#Execution> .\n")
    result = run_in_process(Case("x", ("inspect", "--from", "mex", "--input-format", "nt", str(doc))))
    assert "Run: 1" in lines(result)


def test_overlay_flag(tmp_path):
    overlay = tmp_path / "mex.overlay"
    overlay.write_text("vocab.MEX.Implementation = mexalgo:Implementation\n")
    result = run_in_process(Case("x", ("convert", "--from", "expose", "--to", "mex", "--overlay", str(overlay), "expose_impl.ttl")))
    assert "mexalgo:Implementation" in result.stdout.decode()
    assert "0 ambiguous, 0 dropped" in result.stderr.decode()
    overlay.write_text("vocab.MEX.Foo = x\n")
    bad = run_in_process(Case("x", ("terms", "--overlay", str(overlay))))
    assert bad.code == 2 and "unknown canonical class" in bad.stderr.decode()


def test_bad_namespace_env():
    result = run_in_process(Case("x", ("terms",), {"MLSC_NAMESPACE": "relative"}))
    assert result.code == 2


def test_stdin_input(monkeypatch):
    import io
    import sys

    data = (FIXTURES / "myFile.ttl").read_bytes()
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(data)))
    assert main(["inspect", "--from", "ontodm", "--input-format", "ttl", "-"]) == 0


def test_missing_subcommand_is_usage_error(capsys):
    assert main([]) == 2
