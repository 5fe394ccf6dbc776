import json

import pytest

from bihilbert.catalog import CatalogError, ExampleRecord, load_catalog, record_from_dict, run_catalog, verify_record


@pytest.fixture(scope="module")
def report():
    return run_catalog()


def test_all_records_pass(report):
    failures = [(r.name, c) for r in report.records for c in r.checks if not c.passed]
    assert failures == []
    assert report.passed


def test_every_record_was_fitted(report):
    assert all(r.report is not None for r in report.records)
    assert len(report.records) == len(load_catalog())


def test_strict_inequality_example(report):
    for name in ("x1y1_three_y_d012", "x1y1_three_y_d111"):
        rep = report[name].report
        assert rep.s > rep.deg_u


def test_rho_below_u_degree(report):
    for d in ("d012", "d111"):
        rep = report[f"x1_cap_y1y2_{d}"].report
        assert rep.rho == 0 < rep.deg_u
        assert rep.e == report[f"reduced_x2_y123_{d}"].report.e


def test_mismatch_is_reported():
    rec = load_catalog()[0]
    wrong = ExampleRecord(rec.name, "", rec.document, {"s": 7, "e": [1]})
    res = verify_record(wrong)
    assert not res.passed
    assert {c.name for c in res.checks if not c.passed} == {"s", "e"}


def test_record_invariants():
    base = json.loads(json.dumps({"name": "t", "presentation": {
        "kind": "quotient", "variables": ["X", "Y"], "n": 1, "degrees": [1], "generators": []}}))
    with pytest.raises(CatalogError):
        record_from_dict({**base, "expected": {"s": 1, "rdim": 4}})
    with pytest.raises(CatalogError):
        record_from_dict({**base, "expected": {"deg_u": 0, "x_dim": 2}})
    with pytest.raises(CatalogError):
        record_from_dict({**base, "fit": {"source": "dseq"}})


def test_unknown_names_rejected():
    with pytest.raises(KeyError):
        run_catalog(names=["nope"])
