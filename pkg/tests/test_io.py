import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bihilbert.catalog import load_catalog
from bihilbert.closed_forms import minors_mixed_mult, prop13_leading
from bihilbert.diagonal import EmbeddedDegreeCheck, UnivariateFit
from bihilbert.io import (
    PolynomialSyntaxError,
    PresentationDocument,
    PresentationError,
    document_to_dict,
    emit_presentation,
    emit_report,
    format_polynomial,
    parse_polynomial,
    parse_presentation,
    parse_report,
)
from bihilbert.oracle import GradingError, QuotientPresentation, hilbert_table
from bihilbert.polyfit import BinomialBasisPolynomial, FitRegion
from bihilbert.polynomials import SparsePolynomial
from bihilbert.report import MixedMultReport

NAMES = ("x", "y", "z")


def test_parse_polynomial_syntax():
    x, y, z = [SparsePolynomial.variable(i, 3) for i in range(3)]
    assert parse_polynomial("x^2 + y*z", NAMES) == x ** 2 + y * z
    assert parse_polynomial("2xy - 3/4 z^3", NAMES) == 2 * x * y - Fraction(3, 4) * z ** 3
    assert parse_polynomial("-(x + y)^2", NAMES) == -(x + y) ** 2
    assert parse_polynomial("  7 ", NAMES) == SparsePolynomial.constant(7, 3)


@pytest.mark.parametrize("text,column", [("x + w", 5), ("x^y", 3), ("x +", 4), ("x ** 2", 4), ("x $ y", 3), ("", 1)])
def test_parse_errors_carry_positions(text, column):
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_polynomial(text, NAMES)
    assert info.value.position + 1 == column
    assert f"column {column}" in str(info.value)


def test_multi_character_names():
    names = ("x11", "x12", "x1")
    p = parse_polynomial("x11x12 - x1^2", names)
    assert p.coefficient((1, 1, 0)) == 1 and p.coefficient((0, 0, 2)) == -1


polys = st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3),
                        st.one_of(st.integers(-9, 9), st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))),
                        max_size=6).map(lambda t: SparsePolynomial(t, 3))


@settings(max_examples=80)
@given(polys)
def test_format_parse_round_trip(p):
    assert parse_polynomial(format_polynomial(p, NAMES), NAMES) == p


@pytest.mark.parametrize("rec", load_catalog(), ids=lambda r: r.name)
def test_catalog_documents_round_trip(rec):
    text = emit_presentation(rec.document)
    back = parse_presentation(text)
    assert back == rec.document
    assert emit_presentation(back) == text


def test_rees_document():
    doc = parse_presentation(json.dumps({"kind": "rees", "variables": ["x", "y", "z"], "n": 3,
                                         "degrees": [2, 3], "generators": ["x^2", "y^3"]}))
    assert doc.presentation.kind == "rees" and doc.presentation.degrees == (2, 3)
    assert doc.colon is None


def test_quotient_document():
    doc = parse_presentation(json.dumps({"kind": "quotient", "variables": ["X1", "X2", "Y1"], "n": 2,
                                         "degrees": [1], "generators": ["X1*Y1"]}))
    assert doc.presentation.generators == (SparsePolynomial.monomial((1, 0, 1)),)


def test_wrong_declared_degree_is_grading_error():
    with pytest.raises(GradingError):
        parse_presentation(json.dumps({"kind": "rees", "variables": ["x", "y"], "n": 2,
                                       "degrees": [3], "generators": ["x^2"]}))


@pytest.mark.parametrize("doc,fragment", [
    ({"kind": "ring", "variables": ["x"], "n": 1, "degrees": [1]}, "unknown kind"),
    ({"kind": "rees", "variables": ["x"], "n": 2, "degrees": [1], "generators": ["x"]}, "n=2"),
    ({"kind": "rees", "variables": ["x", "x"], "n": 2, "degrees": [1], "generators": ["x"]}, "duplicate"),
    ({"kind": "rees", "variables": ["x"], "n": 1, "degrees": [1], "generators": ["y"]}, "unknown variable"),
    ({"kind": "rees", "variables": ["x"], "degrees": [1], "generators": ["x"]}, "missing field 'n'"),
    ({"kind": "rees", "variables": ["x", "y"], "n": 2, "r": 3, "degrees": [1], "generators": ["x"]}, "declared r"),
    ({"kind": "rees", "variables": ["x", "y"], "n": 2, "degrees": [2, 1], "generators": ["x^2", "y"],
      "colon": [{"generators": [], "dim": 2, "mult": 1}, {"generators": ["x^2"], "dim": 1, "mult": 2}]},
     "non-decreasing"),
])
def test_document_errors(doc, fragment):
    with pytest.raises(PresentationError) as info:
        parse_presentation(json.dumps(doc))
    assert fragment in str(info.value)


def test_invalid_json():
    with pytest.raises(PresentationError):
        parse_presentation("{not json")


def test_report_round_trips():
    values = [
        MixedMultReport(2, 2, (-6, 0, 1)),
        MixedMultReport(1, 1, (Fraction(1, 2), 3)),
        (BinomialBasisPolynomial({(0, 0): 1, (1, 1): Fraction(-2, 3)}, 2), FitRegion(2, 1, 0)),
        UnivariateFit((1, 8, 10), 2, 10, 0),
        EmbeddedDegreeCheck(10, 10, True, True),
        prop13_leading(3, (2, 3)),
        17,
        (0, 0, 1),
    ]
    for value in values:
        back = parse_report(emit_report(value, "json"))
        assert back == value


def test_mixedmult_json_shape():
    doc = json.loads(emit_report(minors_mixed_mult(2), "json"))
    assert doc["e"] == [0, 1] and doc["s"] == 1 and doc["rho"] == 1
    doc = json.loads(emit_report(MixedMultReport(0, 0, (Fraction(1, 3),)), "json"))
    assert doc["e"] == ["1/3"]


def test_table_csv_round_trip():
    table = hilbert_table(QuotientPresentation(1, (0, 1)), range(4), range(3))
    text = emit_report(table, "csv")
    assert text.splitlines()[0] == "u,v,dim"
    assert parse_report(text, "csv").cells == table.cells
    assert parse_report(emit_report(table, "json")).cells == table.cells


def test_text_and_csv_formats_for_all_reports():
    for value in [MixedMultReport(2, 2, (-6, 0, 1)), UnivariateFit((1, 8, 10), 2, 10, 0),
                  prop13_leading(2, (1, 2)), (0, 1)]:
        assert emit_report(value, "text")
        assert emit_report(value, "csv")
    with pytest.raises(ValueError):
        emit_report(MixedMultReport(0, 0, (1,)), "xml")
    with pytest.raises(TypeError):
        emit_report(object())


def test_default_names_when_missing():
    X = [SparsePolynomial.variable(i, 3) for i in range(3)]
    doc = PresentationDocument(QuotientPresentation(2, (1,), (X[0] * X[2],)))
    d = document_to_dict(doc)
    assert d["variables"] == ["X1", "X2", "Y1"] and d["generators"] == ["X1*Y1"]
