import csv
import io
import json
import math

import pytest

from dnchaos.errors import CapacityError, ConfigError
from dnchaos.experiments import (
    SUITES,
    Row,
    SuiteConfig,
    SuiteReport,
    default_configs,
    parse_report,
    recheck_rows,
    run_suite,
    run_suites,
    serialize_report,
    serialize_reports,
)


def csv_rows(blob):
    return list(csv.DictReader(io.StringIO(blob.decode())))


def test_norm_table_ten_rows():
    rep = run_suite(SuiteConfig("norm-table", n=1, k_max=10))
    assert len(rep.rows) == 10
    for row in rep.rows:
        k = row.extra["k"]
        assert row.passed
        assert row.measured == pytest.approx(math.factorial(k) / math.factorial(k - 1), rel=1e-10)


def test_periodic_suite_row():
    rep = run_suite(SuiteConfig("periodic", epsilon=1e-3))
    assert rep.passed
    near = rep.rows[0]
    assert near.name == "nearness_bound" and near.extra["N"] == 7
    assert near.measured == pytest.approx(1.984127e-4, abs=1e-9)


def test_criterion_suite_zero_polynomial():
    rep = run_suite(SuiteConfig("criterion", targets=[[0.0]]))
    assert rep.passed and len(rep.rows) == 3
    assert all(r.measured == 0.0 for r in rep.rows)


def test_unknown_suite_is_config_error():
    with pytest.raises(ConfigError):
        run_suite({"suite": "bogus"})


@pytest.mark.parametrize(
    "bad",
    [
        {"suite": "growth", "a": 1, "b": 0},
        {"suite": "growth", "norm": "lp", "p": 0.5},
        {"suite": "periodic", "epsilon": 0},
        {"suite": "growth", "n_max": 0},
        {"suite": "growth", "colour": "red"},
        {"n": 1},
    ],
)
def test_config_validation(bad):
    with pytest.raises(ConfigError):
        SuiteConfig.from_dict(bad)


def test_capacity_error_carries_suite_context():
    with pytest.raises(CapacityError, match="periodic"):
        run_suite(SuiteConfig("periodic", epsilon=1e-300))


@pytest.mark.parametrize("suite", SUITES)
def test_every_suite_runs_and_rechecks(suite):
    rep = run_suite(SuiteConfig(suite, count=3, n_max=12))
    d = json.loads(serialize_report(rep))
    assert recheck_rows(d) == []


def test_determinism_byte_identical():
    a = serialize_reports(run_suites(default_configs(seed=7)), include_timing=False)
    b = serialize_reports(run_suites(default_configs(seed=7)), include_timing=False)
    assert a == b


def test_seed_changes_random_suites():
    a = serialize_report(run_suite(SuiteConfig("criterion", count=4, seed=1)), include_timing=False)
    b = serialize_report(run_suite(SuiteConfig("criterion", count=4, seed=2)), include_timing=False)
    assert a != b


def test_json_round_trip():
    for rep in run_suites(default_configs(seed=3)):
        again = parse_report(serialize_report(rep))
        assert again == rep


def test_floats_have_17_significant_digits():
    rep = SuiteReport("growth", {}, [Row("x", 1 / 3, expected=0.1, tolerance=1.0)])
    text = serialize_report(rep).decode()
    assert "0.33333333333333331" in text
    assert json.loads(text)["rows"][0]["measured"] == 1 / 3


def test_json_schema_fields_and_order():
    d = json.loads(serialize_report(run_suite(SuiteConfig("norm-table", k_max=3))))
    assert list(d)[:3] == ["suite", "config", "rows"] and "duration_ms" in d
    row = d["rows"][0]
    assert list(row)[0] == "name"
    assert list(row)[-5:] == ["measured", "expected", "bound", "tolerance", "pass"]


def test_empty_row_report():
    rep = SuiteReport("norm-table", {"suite": "norm-table"}, [])
    d = json.loads(serialize_report(rep))
    assert d["rows"] == [] and d["config"] == {"suite": "norm-table"}
    assert recheck_rows(d) == []
    assert serialize_report(rep, "csv").decode().splitlines()[0].startswith("suite,")


def test_norm_table_csv_columns():
    blob = serialize_report(run_suite(SuiteConfig("norm-table", k_max=5)), "csv")
    header = blob.decode().splitlines()[0].split(",")
    for col in ("suite", "k", "measured", "expected", "tolerance", "pass"):
        assert col in header
    rows = csv_rows(blob)
    assert len(rows) == 5
    row3 = next(r for r in rows if r["k"] == "3")
    assert float(row3["measured"]) == pytest.approx(3.0, rel=1e-12)
    assert row3["pass"] == "true"


def test_growth_values_length():
    d = json.loads(serialize_report(run_suite(SuiteConfig("growth", n_max=17))))
    assert len(d["data"]["values"]) == 17


def test_growth_D_zero_from_row():
    rep = run_suite(SuiteConfig("growth", op="D", n=2, targets=[[0, 0, 0, 1.0]]))
    zero_row = next(r for r in rep.rows if r.name == "zero_from")
    assert zero_row.measured == 2 and zero_row.passed


def test_recheck_detects_dishonest_rows():
    d = json.loads(serialize_report(run_suite(SuiteConfig("norm-table", k_max=4))))
    d["rows"][1]["pass"] = False
    d["rows"][2]["measured"] += 1.0
    assert recheck_rows(d) == [1, 2]


def test_row_pass_semantics():
    assert Row("r", 1.0, expected=1.1, tolerance=0.1 + 1e-15).passed
    assert not Row("r", 1.0, expected=1.2, tolerance=0.1).passed
    assert Row("r", 0.5, bound=0.5).passed
    assert not Row("r", 0.6, bound=0.5).passed


def test_failed_check_is_reported_not_raised():
    rep = run_suite(SuiteConfig("growth", a=0.0, b=30.0, n_max=10))
    assert not rep.passed
    assert recheck_rows(json.loads(serialize_report(rep))) == []
