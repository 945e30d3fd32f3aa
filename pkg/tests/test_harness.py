"""Suite runner: report structure, failure accounting, rendering,
config (de)serialization, and input validation."""

import json
from fractions import Fraction

import pytest

from ostro import RationalSquare, SuiteConfig, UnsupportedRadicand, run_suite
from ostro.harness import (
    config_from_json,
    corrected_failures,
    printed_failures,
    render_text,
    render_tsv,
)

SMALL = SuiteConfig(
    d_list=(Fraction(3), Fraction(2)),
    n_max=60,
    n_unique=30,
    lambda_n_max=15,
    lambda_samples=3,
    probe_samples=3,
    probe_l_max=4,
    class_l_max=6,
)


@pytest.fixture(scope="module")
def small_report():
    return run_suite(SMALL)


def test_report_structure(small_report):
    rep = small_report
    assert [r["d"] for r in rep["results"]] == ["3", "2"]
    res = rep["results"][0]
    for key in (
        "identities", "constants", "roundtrip_and_split", "uniqueness",
        "recover_frac", "recover_nat", "times_sqrt_exact", "times_sqrt_real",
        "prefix_probe", "class_probe",
    ):
        assert key in res
    assert res["period"] == [1, 2]
    assert res["roundtrip_and_split"]["checked"] == 61
    assert res["roundtrip_and_split"]["failures"] == 0
    assert res["uniqueness"]["failures"] == 0


def test_failure_accounting(small_report):
    rep = small_report
    assert corrected_failures(rep) == 0
    assert printed_failures(rep) > 0
    assert rep["summary"]["d_count"] == 2
    assert rep["summary"]["corrected_failures"] == 0
    assert rep["summary"]["printed_failures"] == printed_failures(rep)


def test_worked_example_embedded(small_report):
    ex = small_report["results"][0]["recovery_example"]
    assert ex["nat"]["n"] == 5
    assert ex["nat"]["rhs"] == "5+0*sqrt(3)"
    assert ex["frac"]["corrected"] == "holds"
    assert ex["frac"]["printed"] == "fails"


def test_report_is_json_ready(small_report):
    text = json.dumps(small_report)
    assert json.loads(text) == small_report


def test_render_text_and_tsv(small_report):
    text = render_text(small_report)
    assert "d=3" in text
    assert "pq-connection-p" in text
    assert "printed:fails" in text and "corrected:holds" in text
    tsv = render_tsv(small_report)
    rows = [line.split("\t") for line in tsv.strip().splitlines()]
    assert rows[0][0] == "d"
    assert any(row[0] == "3" for row in rows[1:])


def test_config_round_trip():
    blob = json.dumps(SMALL.to_json())
    assert config_from_json(json.loads(blob)) == SMALL


def test_config_partial_parse():
    cfg = config_from_json({"d_list": ["5", "3/2"], "n_max": 12, "eps": "1e-6"})
    assert cfg.d_list == (Fraction(5), Fraction(3, 2))
    assert cfg.n_max == 12
    assert cfg.eps == Fraction(1, 10**6)
    assert cfg.depth == SuiteConfig().depth


def test_suite_rejects_bad_radicands():
    with pytest.raises(RationalSquare):
        run_suite(SuiteConfig(d_list=(Fraction(3), Fraction(4))))
    with pytest.raises(UnsupportedRadicand):
        run_suite(SuiteConfig(d_list=(Fraction(1, 2),)))
