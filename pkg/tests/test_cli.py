"""CLI dispatch, exit codes, and the JSON report format."""

import json
import os

import pytest

from smforge.cli import (
    RunConfig,
    SCHEMA_VERSION,
    UsageError,
    _emit_all,
    dispatch,
    emit_report,
    report_filename,
    report_to_json,
    validate_report,
)
from smforge.elimination import EliminationReport, small_disc_linear


def test_forms_json(capsys):
    assert dispatch(["forms", "--disc", "-23", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == [
        {"a": 1, "b": 1, "c": 6},
        {"a": 2, "b": -1, "c": 3},
        {"a": 2, "b": 1, "c": 3},
    ]


def test_forms_text(capsys):
    assert dispatch(["forms", "--disc", "-4"]) == 0
    assert capsys.readouterr().out.split() == ["1", "0", "1"]


def test_invalid_discriminant_is_usage_error(capsys):
    assert dispatch(["forms", "--disc", "5"]) == 2
    assert "error:" in capsys.readouterr().err


def test_unknown_command(capsys):
    assert dispatch(["frobnicate"]) == 2


def test_missing_required_flag(capsys):
    assert dispatch(["forms"]) == 2


def test_prec_too_small(capsys):
    assert dispatch(["forms", "--disc", "-23", "--prec", "32"]) == 2


def test_hilbert(capsys, tmp_path):
    code = dispatch([
        "hilbert", "--disc", "-15", "--json", "--cache", str(tmp_path),
    ])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["degree"] == 2
    assert out["coefficients"] == [1, 191025, -121287375]
    # the cache file landed and is reused on the second run
    assert (tmp_path / "hcp_15.txt").exists()
    assert dispatch([
        "hilbert", "--disc", "-15", "--json", "--cache", str(tmp_path),
    ]) == 0


def test_y0_membership(capsys):
    code = dispatch([
        "y0", "--tau", "(0+1/2*sqrt(-92))",
        "--tau2", "(-1/2+1/2*sqrt(-23))", "--json",
    ])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["on_y02"] is True and out["witness"]


def test_y0_bad_surd(capsys):
    assert dispatch(["y0", "--tau", "nope", "--tau2", "nope"]) == 2


def test_indep_rational_pair(capsys):
    code = dispatch(["indep", "--alpha", "1728", "--beta", "287496", "--json"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["status"] == "independent"


def test_indep_conjugate_spec(capsys, tmp_path):
    code = dispatch([
        "indep", "--alpha=-15:0", "--beta=-15:1",
        "--json", "--cache", str(tmp_path),
    ])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["status"] == "independent"


def test_indep_bad_index(capsys):
    assert dispatch(["indep", "--alpha=-15:7", "--beta", "2"]) == 2


# ---------------------------------------------------------------------------
# config
# ---------------------------------------------------------------------------


def test_cache_precedence(monkeypatch):
    class A:
        prec = None
        cache = None
        outdir = None
        json = False

    monkeypatch.setenv("SMFORGE_CACHE", "/tmp/envcache")
    assert RunConfig.from_args(A()).cache_dir == "/tmp/envcache"
    A.cache = "/tmp/flagcache"
    assert RunConfig.from_args(A()).cache_dir == "/tmp/flagcache"
    monkeypatch.delenv("SMFORGE_CACHE")
    A.cache = None
    assert RunConfig.from_args(A()).cache_dir is None


def test_runconfig_prec_floor():
    with pytest.raises(UsageError):
        RunConfig(precision_bits=63)


# ---------------------------------------------------------------------------
# report persistence
# ---------------------------------------------------------------------------


def test_report_filename_scheme():
    rep = EliminationReport("linear_small_r3", (-156, -39), "eliminated")
    assert report_filename(rep) == "linear_small_r3_156_39.json"
    rep = EliminationReport("linear_big", (), "eliminated")
    assert report_filename(rep) == "linear_big_all.json"


def test_emit_report_deterministic(tmp_path):
    rep = small_disc_linear(-71)
    config = RunConfig(out_dir=str(tmp_path))
    path = emit_report(rep, config)
    first = open(path, "rb").read()
    path2 = emit_report(rep, config)
    assert path2 == path
    assert open(path, "rb").read() == first


def test_emitted_report_validates(tmp_path):
    rep = small_disc_linear(-71)
    path = emit_report(rep, RunConfig(out_dir=str(tmp_path)))
    with open(path) as fh:
        doc = json.load(fh)
    assert doc["version"] == SCHEMA_VERSION
    assert validate_report(doc) == []


def test_validate_report_rejects_bad_docs():
    doc = report_to_json(small_disc_linear(-71))
    assert validate_report(doc) == []
    bad = dict(doc)
    del bad["outcome"]
    assert validate_report(bad)
    bad = dict(doc, outcome="maybe")
    assert validate_report(bad)
    bad = dict(doc, constants={"k": 3})
    assert validate_report(bad)


def test_schema_file_matches_validator():
    here = os.path.dirname(__file__)
    schema_path = os.path.join(
        here, "..", "src", "smforge", "report_schema.json"
    )
    with open(schema_path) as fh:
        schema = json.load(fh)
    from smforge.elimination import CASES, OUTCOMES

    assert set(schema["required"]) == {
        "case", "discs", "outcome", "constants", "transcript", "version",
    }
    assert tuple(schema["properties"]["case"]["enum"]) == CASES
    assert tuple(schema["properties"]["outcome"]["enum"]) == OUTCOMES


def test_emit_all_disambiguates(tmp_path):
    rep = EliminationReport("linear_big", (), "eliminated")
    paths = _emit_all([rep, rep, rep], RunConfig(out_dir=str(tmp_path)))
    names = [os.path.basename(p) for p in paths]
    assert names == [
        "linear_big_all.json", "linear_big_all_2.json", "linear_big_all_3.json",
    ]
    assert len(set(paths)) == 3
