"""Smoke tests for the python bindings."""

import json
import os

import pytest

nszoo = pytest.importorskip("nszoo")


def test_catalog_names():
    names = nszoo.catalog_names()
    for expected in ["DNR", "UDNR", "Pi01G", "UPi01G", "1GEN", "U1G", "PI01-TRANS"]:
        assert expected in names


def test_parse_print_roundtrip():
    text = "!st f:1. (?n:0. app(f,n) = 0) -> ?st m:0. app(f,m) = 0"
    printed = nszoo.parse_print(text)
    assert printed.strip() == text
    assert nszoo.classify(text) == "external"
    assert nszoo.classify("!x:0. x = x") == "internal"


def test_normalize_transfer():
    out = nszoo.normalize(nszoo.principle("PI01-TRANS")["statement"], "classical")
    assert out["normal_form"] == (
        "!st f:1. ?st m:0. (?n:0. app(f,n) != 0) -> ?i <= m. app(f,i) != 0"
    )
    assert "TransferComplement" in out["trace"]


def test_pipeline_verdicts():
    golden = os.path.join(os.path.dirname(__file__), "..", "..", "golden")
    report = nszoo.pipeline("Pi01G", "classical", golden_dir=golden)
    assert report["verdicts"]["round_trip"] == "pass"
    assert report["verdicts"]["golden"] == "pass"
    stages = {s["name"] for s in report["stages"]}
    assert {"uniform", "uniform_plus", "normal_form", "herbrandisation"} <= stages


def test_pipeline_deterministic_json():
    a = nszoo.pipeline_json("DNR", "intuitionistic", "", 7)
    b = nszoo.pipeline_json("DNR", "intuitionistic", "", 7)
    assert a == b
    json.loads(a)


def test_check_rule():
    out = nszoo.check_rule("HGMPst", seed=1, size=2, pairs=50)
    assert out["status"] == "pass"
    out = nszoo.check_rule("Idealisation", seed=1, size=3, pairs=100)
    assert out["status"] == "expected-counterexample"


def test_errors_surface_as_exceptions():
    with pytest.raises(nszoo.EngineError):
        nszoo.principle("FIP")
    with pytest.raises(Exception):
        nszoo.parse_print("!x:0. x =")
