from __future__ import annotations

import json
import subprocess
import sys
from collections import Counter
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest

from affine_cycles.cli import main
from affine_cycles.measures import MeasureParams, measure_N
from affine_cycles.partitions import Partition
from affine_cycles.samplers import TableauPath, total_variation
from affine_cycles.verify import exact_law


def schema(name: str) -> dict:
    text = resources.files("affine_cycles").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def usage_error(capsys, *argv) -> int:
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    capsys.readouterr()
    return exc.value.code


def test_series_row_one_is_not_separable(capsys):
    code, out, _ = run(capsys, "series", "--group", "A", "--q", "2", "--order", "10")
    table = json.loads(out)
    jsonschema.validate(table, schema("series"))
    assert code == 0
    assert table["rows"][1]["separable"] == "0"
    assert len(table["rows"]) == 11


def test_series_order_zero_gl(capsys):
    code, out, _ = run(capsys, "series", "--group", "GL", "--q", "2", "--order", "0")
    rows = json.loads(out)["rows"]
    assert code == 0
    assert rows == [{"n": 0, "separable": "1", "cyclic": "1", "semisimple": "1"}]


def test_series_limits(capsys):
    code, out, _ = run(capsys, "series", "--group", "A", "--q", "2", "--order", "3", "--limits")
    table = json.loads(out)
    jsonschema.validate(table, schema("series"))
    assert table["limits"]["cyclic"]["exact"] == "31/54"
    assert table["limits"]["cyclic"]["decimal"].startswith("0.574074074")
    assert table["limits"]["separable"]["exact"] == "1/4"


def test_series_tsv(capsys):
    code, out, _ = run(capsys, "series", "--group", "P", "--q", "3", "--order", "2", "--format", "tsv")
    lines = out.strip().split("\n")
    assert lines[0].split("\t")[:4] == ["n", "separable", "cyclic", "semisimple"]
    assert len(lines) == 4


def test_sample_conditional_n0(capsys):
    code, out, _ = run(capsys, "sample", "--algorithm", "conditional", "--n", "0", "--q", "2", "--count", "5")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert [r["partition"] for r in recs] == [[1]] * 5
    for r in recs:
        jsonschema.validate(r, schema("sample"))


@pytest.mark.parametrize("algorithm", ["yta", "terminating", "affine", "markov"])
def test_sample_records_validate_and_repeat(capsys, algorithm):
    argv = ("sample", "--algorithm", algorithm, "--u", "1/2", "--q", "3", "--count", "50", "--seed", "7")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    for line in first.splitlines():
        rec = json.loads(line)
        jsonschema.validate(rec, schema("sample"))
        assert rec["params"]["u"] == "1/2"
        if rec["path"] is not None:
            assert TableauPath.replay(rec["path"]).partition.to_json() == rec["partition"]
    _, other, _ = run(capsys, *argv[:-1], "8")
    assert other != first


def test_sample_affine_matches_N(capsys):
    code, out, _ = run(capsys, "sample", "--algorithm", "affine", "--u", "1/2", "--q", "2", "--count", "100000", "--seed", "7")
    counts = Counter(Partition(tuple(json.loads(line)["partition"])) for line in out.splitlines())
    law = exact_law(measure_N, MeasureParams.of(Fraction(1, 2), 2), start=1)
    assert code == 0
    assert total_variation(counts, law, 100_000) < 0.01


def test_sample_rejects_bad_u(capsys):
    assert usage_error(capsys, "sample", "--algorithm", "yta", "--u", "1", "--q", "2") == 2
    assert usage_error(capsys, "sample", "--algorithm", "yta", "--u", "0.5", "--q", "2") == 2
    assert usage_error(capsys, "sample", "--algorithm", "markov", "--q", "2") == 2
    assert usage_error(capsys, "sample", "--algorithm", "conditional", "--q", "2") == 2


def test_oracle_a12(capsys):
    code, out, _ = run(capsys, "oracle", "--group", "A", "--n", "1", "--q", "2")
    rows = json.loads(out)
    jsonschema.validate(rows, schema("census"))
    assert code == 0
    assert rows == [{"polys": [[[1, 1], [1, 1]]], "count": 1}, {"polys": [[[1, 1], [2]]], "count": 1}]


def test_oracle_sharded_output_identical(capsys, monkeypatch):
    monkeypatch.setenv("AFFINE_CYCLES_THREADS", "2")
    _, serial, _ = run(capsys, "oracle", "--group", "P", "--n", "2", "--q", "3")
    _, sharded, _ = run(capsys, "oracle", "--group", "P", "--n", "2", "--q", "3", "--shards", "4")
    assert serial == sharded
    rows = json.loads(serial)
    jsonschema.validate(rows, schema("census"))
    assert sum(r["count"] for r in rows) == 864


def test_oracle_summary(capsys):
    code, out, _ = run(capsys, "oracle", "--group", "GL", "--n", "2", "--q", "2", "--summary")
    s = json.loads(out)
    assert (s["order"], s["classes"], s["unipotent"]) == (6, 3, 4)


def test_oracle_cap_exit_code(capsys):
    code, _, err = run(capsys, "oracle", "--group", "A", "--n", "3", "--q", "2", "--cap", "100")
    assert code == 3
    assert "exceeds cap" in err


def test_oracle_needs_prime(capsys):
    assert usage_error(capsys, "oracle", "--group", "A", "--n", "1", "--q", "4") == 2
    assert usage_error(capsys, "oracle", "--group", "X", "--n", "1", "--q", "2") == 2


def test_centralizer_command(capsys):
    code, out, _ = run(capsys, "centralizer", "--group", "A", "--n", "1", "--q", "2")
    rep = json.loads(out)
    assert code == 0
    assert sorted(c["centralizer"] for c in rep["classes"]) == [2, 2]
    assert rep["matches"]["corrected"] is True
    code, _, _ = run(capsys, "centralizer", "--group", "A", "--n", "2", "--q", "3", "--cap", "10")
    assert code == 3


def test_measure_command(capsys):
    code, out, _ = run(capsys, "measure", "--u", "1", "--q", "2", "--partition", "1")
    rec = json.loads(out)
    assert rec["M"].startswith("0.288788095") and rec["N"].startswith("0.288788095")
    code, out, _ = run(capsys, "measure", "--u", "1/2", "--q", "2", "--partition", "")
    assert "N" not in json.loads(out)
    assert usage_error(capsys, "measure", "--u", "1/2", "--q", "2", "--partition", "1,x") == 2


def test_fixedspace_command(capsys):
    code, out, _ = run(capsys, "fixedspace", "--n", "1", "--q", "2")
    rows = json.loads(out)["rows"]
    assert [r["probability"] for r in rows] == ["1/2", "1/2"]
    assert [r["unipotent_count"] for r in rows] == ["1", "1"]


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "identities")
    assert code == 0
    assert "FAIL" not in out
    assert "PASS Rogers-Ramanujan first identity to t^40" in out


def test_verify_oracle(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "oracle", "--max-order", "100000")
    assert code == 0, out
    assert out.count("PASS census") >= 10


def test_verify_unknown_suite(capsys):
    assert usage_error(capsys, "verify", "--suite", "nonsense") == 2


def test_module_entry_point(tmp_path):
    target = tmp_path / "series.json"
    proc = subprocess.run(
        [sys.executable, "-m", "affine_cycles", "series", "--q", "3", "--order", "2", "-o", str(target)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    jsonschema.validate(json.loads(target.read_text()), schema("series"))
    proc = subprocess.run([sys.executable, "-m", "affine_cycles", "series"], capture_output=True, text=True)
    assert proc.returncode == 2
