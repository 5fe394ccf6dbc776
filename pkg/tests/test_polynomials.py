from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from bihilbert.polynomials import (
    BiMonomial,
    SparsePolynomial,
    bigraded_basis,
    binom_comb,
    binom_poly_value,
    binomial_poly,
    count_monomials,
    divides,
    iter_multisets,
    monomials_of_degree,
    poly_mul,
)

coeffs = st.one_of(st.integers(-5, 5), st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4)))


def polys(nvars=3, max_deg=3):
    exps = st.tuples(*[st.integers(0, max_deg)] * nvars)
    return st.dictionaries(exps, coeffs, max_size=5).map(lambda t: SparsePolynomial(t, nvars))


def test_monomials_of_degree_order_and_count():
    mons = monomials_of_degree(3, 2)
    assert mons[0] == (2, 0, 0)
    assert mons[-1] == (0, 0, 2)
    assert len(mons) == 6 == count_monomials(3, 2)
    assert monomials_of_degree(2, -1) == []
    assert monomials_of_degree(0, 0) == [()]


@given(st.integers(1, 4), st.integers(0, 7))
def test_monomial_count_matches_binomial(n, u):
    mons = monomials_of_degree(n, u)
    assert len(mons) == len(set(mons)) == comb(u + n - 1, n - 1)
    assert all(sum(m) == u for m in mons)


def test_count_monomials_negative_degree():
    assert count_monomials(3, -1) == 0


def test_bigraded_basis_bidegrees():
    d = (0, 1, 2)
    basis = bigraded_basis(2, d, (4, 2))
    assert basis
    assert all(m.bidegree(d) == (4, 2) for m in basis)
    # brute force over all exponent vectors with bounded entries
    brute = set()
    for a in monomials_of_degree(3, 2):
        for x in monomials_of_degree(2, 4 - sum(dj * aj for dj, aj in zip(d, a))):
            brute.add(x + a)
    assert {m.exponents for m in basis} == brute


def test_bimonomial_bidegree():
    m = BiMonomial((1, 0), (0, 2))
    assert m.bidegree((1, 3)) == (7, 2)
    assert m.exponents == (1, 0, 0, 2)


def test_polynomial_basics():
    x, y = SparsePolynomial.variable(0, 2), SparsePolynomial.variable(1, 2)
    p = (x + y) ** 2
    assert p.coefficient((1, 1)) == 2
    assert p.is_homogeneous() and p.total_degree() == 2
    assert (x - x).is_zero()
    assert p.evaluate((1, 2)) == 9
    assert (x * Fraction(1, 2)).coefficient((1, 0)) == Fraction(1, 2)
    assert not (x + 1).is_homogeneous()
    assert p.weighted_degrees([(1, 0), (0, 1)]) == {(2, 0), (1, 1), (0, 2)}


def test_floats_rejected():
    with pytest.raises(TypeError):
        SparsePolynomial({(1,): 0.5})


def test_mismatched_variable_counts_rejected():
    with pytest.raises(ValueError):
        poly_mul(SparsePolynomial.variable(0, 2), SparsePolynomial.variable(0, 3))


@settings(max_examples=60)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == SparsePolynomial.zero(3)


@settings(max_examples=40)
@given(polys(), polys(), st.tuples(*[st.integers(-3, 3)] * 3))
def test_evaluation_is_a_homomorphism(a, b, pt):
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)


def test_embed_and_shift():
    x = SparsePolynomial.variable(0, 2)
    e = x.embed(4, offset=1)
    assert e.monomials() == [(0, 1, 0, 0)]
    assert x.shifted_terms((1, 2)) == {(2, 2): 1}
    assert divides((1, 0), (1, 3)) and not divides((2, 0), (1, 3))


def test_binomial_conventions():
    assert binom_comb(2, 3) == 0
    assert binom_comb(-1, 2) == 0
    assert binom_poly_value(-1, 2) == 1
    assert binom_poly_value(Fraction(1, 2), 2) == Fraction(-1, 8)
    p = binomial_poly(3, 0, 1, shift=2)
    assert all(p.evaluate((t,)) == binom_poly_value(t + 2, 3) for t in range(-5, 6))


def test_iter_multisets():
    ms = list(iter_multisets(2, 3))
    assert len(ms) == 4 and ms[0] == (0, 0, 0)
