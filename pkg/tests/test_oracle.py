from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from bihilbert.oracle import (
    CellBudgetExceeded,
    CellOracle,
    GradingError,
    OracleConfig,
    QuotientPresentation,
    ReesPresentation,
    graded_quotient_hilbert,
    hilbert_table,
    quotient_bigraded_hilbert,
    rees_hilbert,
)
from bihilbert.polynomials import SparsePolynomial, monomials_of_degree


def test_monomial_pair_small_values(xyz):
    x, y, z = xyz
    pres = ReesPresentation(3, (x ** 2, y ** 3), (2, 3))
    assert [rees_hilbert(pres, u, 1) for u in range(6)] == [0, 0, 1, 4, 9, 15]
    assert rees_hilbert(pres, 5, 2) == 4
    assert rees_hilbert(pres, 4, 0) == comb(6, 2)


def test_counting_and_rank_paths_agree(xyz):
    x, y, z = xyz
    pres = ReesPresentation(3, (x ** 2, x * y, y ** 3), (2, 2, 3))
    for v in range(1, 4):
        for u in range(0, 10):
            assert rees_hilbert(pres, u, v, method="count") == rees_hilbert(pres, u, v, method="rank")


def test_exact_and_modular_rank_agree(xyz):
    x, y, z = xyz
    f = (x ** 2 + y * z, y ** 3 + z ** 3 + x * y * z)
    pres = ReesPresentation(3, f, (2, 3))
    exact = OracleConfig(exact_rank=True)
    for u, v in [(6, 2), (9, 3), (12, 3)]:
        assert rees_hilbert(pres, u, v) == rees_hilbert(pres, u, v, exact)
        assert rees_hilbert(pres, u, v, OracleConfig(seed=7)) == rees_hilbert(pres, u, v)


def test_xyz_grid_table():
    pres = QuotientPresentation(1, (0, 1))
    t = hilbert_table(pres, range(5), range(5))
    assert all(t[(u, v)] == min(u, v) + 1 for u in range(5) for v in range(5))
    assert t.rows()[0] == (0, 0, 1)


def test_polynomial_ring_quotient_is_bigraded_count():
    pres = QuotientPresentation(2, (1, 2))
    for u in range(8):
        for v in range(4):
            brute = sum(comb(u - a - 2 * b + 1, 1) for a in range(v + 1) for b in [v - a]
                        if u - a - 2 * b >= 0)
            assert quotient_bigraded_hilbert(pres, u, v) == brute


def test_quotient_rank_path_matches_count():
    X1, X2, Y1, Y2, Y3 = [SparsePolynomial.variable(i, 5) for i in range(5)]
    pres = QuotientPresentation(2, (0, 1, 2), (X1 * Y1, X1 * Y2))
    for u in range(6):
        for v in range(4):
            assert (quotient_bigraded_hilbert(pres, u, v, method="count")
                    == quotient_bigraded_hilbert(pres, u, v, method="rank"))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
                .filter(lambda e: sum(e) > 0), min_size=1, max_size=3),
       st.integers(0, 6))
def test_graded_quotient_shortcuts_match_rank(exps, u):
    gens = [SparsePolynomial.monomial(e) for e in exps]
    assert (graded_quotient_hilbert(3, gens, u)
            == graded_quotient_hilbert(3, gens, u, method="count")
            == graded_quotient_hilbert(3, gens, u, method="rank"))


def test_principal_and_variable_shortcuts(xyz):
    x, y, z = xyz
    f = x * y + z ** 2
    for u in range(7):
        assert graded_quotient_hilbert(3, [f], u) == graded_quotient_hilbert(3, [f], u, method="rank")
        assert graded_quotient_hilbert(3, [x, y], u) == 1
    assert graded_quotient_hilbert(3, [x, y, z], 0) == 1
    assert graded_quotient_hilbert(3, [x, y, z], 2) == 0


def test_complete_intersection_hilbert_function(xyz):
    x, y, z = xyz
    gens = [x ** 2 + y * z, y ** 3 + z ** 3 + x * y * z]
    assert [graded_quotient_hilbert(3, gens, t) for t in range(9)] == [1, 3, 5, 6, 6, 6, 6, 6, 6]


def test_grading_errors(xyz):
    x, y, z = xyz
    with pytest.raises(GradingError):
        ReesPresentation(3, (x ** 2 + y,), (2,))
    with pytest.raises(GradingError):
        ReesPresentation(3, (x ** 2,), (3,))
    X, Y = SparsePolynomial.variable(0, 2), SparsePolynomial.variable(1, 2)
    with pytest.raises(GradingError):
        QuotientPresentation(1, (1,), (X + Y,))
    with pytest.raises(ValueError):
        ReesPresentation(3, (), ())


def test_cell_budget_and_skips(xyz):
    x, y, z = xyz
    pres = ReesPresentation(3, (x ** 2 + y * z, y ** 2 + x * z), (2, 2))
    tiny = OracleConfig(max_entries=10)
    with pytest.raises(CellBudgetExceeded):
        rees_hilbert(pres, 6, 2, tiny)
    t = hilbert_table(pres, range(7), range(3), tiny)
    assert t.skipped
    assert all(k not in t.cells for k in t.skipped)


def test_cell_oracle_memoizes(xyz):
    x, y, z = xyz
    oracle = CellOracle(ReesPresentation(3, (x ** 2, y ** 3), (2, 3)))
    assert oracle(4, 1) == 9
    assert oracle.cache == {(4, 1): 9}


def test_rees_row_zero_is_ambient():
    x = [SparsePolynomial.variable(i, 4) for i in range(4)]
    pres = ReesPresentation(4, (x[0] * x[1] - x[2] * x[3],), (2,))
    assert all(rees_hilbert(pres, u, 0) == len(monomials_of_degree(4, u)) for u in range(6))
