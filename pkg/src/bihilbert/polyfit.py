"""Exact interpolation of bivariate Hilbert polynomials from cell values.

The polynomial is sought on ``{u >= d v + u0, v >= v0}``. In the coordinates
``w = u - d v`` that region is a quadrant, so a rectangular Newton grid is
always unisolvent and the coefficients come straight out of forward
differences.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterator

from .oracle import DEFAULT_CONFIG, AlgebraPresentation, CellOracle, OracleConfig
from .polynomials import SparsePolynomial, binom_poly_value
from .report import MixedMultReport

DEFAULT_BUDGET = 40

Source = Callable[[int, int], int]


class StabilizationError(RuntimeError):
    """No validated polynomial was found within the retry budget."""

    def __init__(self, message: str, *, reason: str, attempts: int, last_region: "FitRegion"):
        super().__init__(message)
        self.reason = reason
        self.attempts = attempts
        self.last_region = last_region


@dataclass(frozen=True)
class FitRegion:
    d: int
    u0: int
    v0: int

    def __post_init__(self):
        if self.u0 < 0 or self.v0 < 0 or self.d < 0:
            raise ValueError("region offsets and shift must be non-negative")

    def contains(self, u: int, v: int) -> bool:
        return v >= self.v0 and u >= self.d * v + self.u0


def forward_differences(values: list) -> list:
    """``[f(0), (Df)(0), (D^2 f)(0), ...]`` for samples ``f(0), f(1), ...``."""
    vals = list(values)
    out = []
    while vals:
        out.append(vals[0])
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return out


def newton_coefficients_2d(grid: list[list]) -> dict[tuple[int, int], object]:
    """Coefficients ``c_ij`` of ``sum c_ij C(a, i) C(b, j)`` matching ``grid[a][b]``."""
    rows = [forward_differences(row) for row in grid]
    ncols = len(rows[0]) if rows else 0
    out = {}
    for j in range(ncols):
        col = forward_differences([row[j] for row in rows])
        for i, c in enumerate(col):
            if c:
                out[(i, j)] = c
    return out


@dataclass(frozen=True)
class BinomialBasisPolynomial:
    """``sum c_ij C(u - d v, i) C(v, j)`` with exact coefficients."""

    coeffs: dict
    d: int

    def __post_init__(self):
        clean = {}
        for (i, j), c in self.coeffs.items():
            c = Fraction(c)
            if c:
                clean[(int(i), int(j))] = int(c) if c.denominator == 1 else c
        object.__setattr__(self, "coeffs", clean)

    def __call__(self, u, v):
        w = u - self.d * v
        total = Fraction(0)
        for (i, j), c in self.coeffs.items():
            total += c * binom_poly_value(w, i) * binom_poly_value(v, j)
        return int(total) if total.denominator == 1 else total

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.coeffs), default=-1)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs.values())

    def to_power_basis(self) -> SparsePolynomial:
        """Expand to a polynomial in ``(u, v)``."""
        u = SparsePolynomial.variable(0, 2)
        v = SparsePolynomial.variable(1, 2)
        w = u - v * self.d
        wpow = _falling_binomials(w, max((i for i, _ in self.coeffs), default=0))
        vpow = _falling_binomials(v, max((j for _, j in self.coeffs), default=0))
        out = SparsePolynomial.zero(2)
        for (i, j), c in self.coeffs.items():
            out = out + wpow[i] * vpow[j] * c
        return out

    def __eq__(self, other):
        if not isinstance(other, BinomialBasisPolynomial):
            return NotImplemented
        return self.to_power_basis() == other.to_power_basis()

    def __hash__(self):
        return hash(self.to_power_basis())


def _falling_binomials(x: SparsePolynomial, k: int) -> list[SparsePolynomial]:
    """``[C(x, 0), ..., C(x, k)]`` as polynomials."""
    out = [SparsePolynomial.constant(1, x.nvars)]
    for t in range(k):
        out.append(out[-1] * (x - t) * Fraction(1, t + 1))
    return out


def search_schedule(budget: int) -> Iterator[tuple[int, int]]:
    """``(0,0), (1,0), (1,1), (2,1), ...``: ``budget`` retries after the first try."""
    u0 = v0 = 0
    yield (u0, v0)
    for k in range(budget):
        if k % 2 == 0:
            u0 += 1
        else:
            v0 += 1
        yield (u0, v0)


def _fit_at(source: Source, d: int, D: int, u0: int, v0: int) -> BinomialBasisPolynomial:
    grid = [[source(u0 + a + d * (v0 + b), v0 + b) for b in range(D + 1)] for a in range(D + 1)]
    local = newton_coefficients_2d(grid)

    # re-express in C(w, i) C(v, j) by sampling the local form on [0..D]^2
    def local_value(w, v):
        return sum((c * binom_poly_value(w - u0, i) * binom_poly_value(v - v0, j)
                    for (i, j), c in local.items()), Fraction(0))

    base = [[local_value(a, b) for b in range(D + 1)] for a in range(D + 1)]
    return BinomialBasisPolynomial(newton_coefficients_2d(base), d)


def validation_block(D: int, u0: int, v0: int) -> list[tuple[int, int]]:
    """``(w, v)`` points of the ``(D+2) x (D+2)`` block beyond the Newton grid."""
    return [(u0 + D + 1 + a, v0 + D + 1 + b) for a in range(D + 2) for b in range(D + 2)]


def _validates(p: BinomialBasisPolynomial, source: Source, D: int, u0: int, v0: int) -> bool:
    if p.total_degree > D:
        return False
    d = p.d
    return all(p(w + d * v, v) == source(w + d * v, v) for w, v in validation_block(D, u0, v0))


def fit_bivariate(source: Source, d: int, degree_bound: int,
                  budget: int = DEFAULT_BUDGET) -> tuple[BinomialBasisPolynomial, FitRegion]:
    """Fit the Hilbert polynomial of ``source`` on ``u >= d v + u0, v >= v0``.

    Offsets are tried in :func:`search_schedule` order; the first pair whose
    fit reproduces the validation block is returned.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be non-negative")
    if budget < 0:
        raise ValueError("budget must be non-negative")
    D = degree_bound
    attempts = 0
    u0 = v0 = 0
    for u0, v0 in search_schedule(budget):
        attempts += 1
        p = _fit_at(source, d, D, u0, v0)
        if _validates(p, source, D, u0, v0):
            return p, FitRegion(d, u0, v0)
    last = FitRegion(d, u0, v0)
    higher = _fit_at(source, d, D + 1, u0, v0)
    if _validates(higher, source, D + 1, u0, v0):
        raise StabilizationError(
            f"degree exceeds bound {D}: a degree {higher.total_degree} polynomial validates "
            f"at offset ({u0}, {v0})", reason="degree_exceeds_bound", attempts=attempts,
            last_region=last)
    raise StabilizationError(
        f"no stabilization found within budget ({attempts} offsets tried, last ({u0}, {v0}))",
        reason="no_stabilization", attempts=attempts, last_region=last)


def default_degree_bound(pres: AlgebraPresentation) -> int:
    if pres.kind == "rees":
        return pres.n - 1
    return max(pres.n + pres.r - 2, 0)


def fit_presentation(pres: AlgebraPresentation, *, degree_bound: int | None = None,
                     budget: int = DEFAULT_BUDGET, config: OracleConfig = DEFAULT_CONFIG,
                     source: Source | None = None) -> tuple[BinomialBasisPolynomial, FitRegion]:
    """Fit using the brute-force oracle (or ``source``) with the default bound."""
    D = default_degree_bound(pres) if degree_bound is None else degree_bound
    return fit_bivariate(source or CellOracle(pres, config), pres.d_max, D, budget)


def extract_report(p: BinomialBasisPolynomial) -> MixedMultReport:
    """Total degree, u-degree and mixed multiplicities of ``p``."""
    P = p.to_power_basis()
    if P.is_zero():
        return MixedMultReport(s=-1, deg_u=-1, e=(), flags={})
    s = P.total_degree()
    deg_u = max(e[0] for e in P.monomials())
    e = [P.coefficient((i, s - i)) * factorial(i) * factorial(s - i) for i in range(s + 1)]
    flags = {}
    if p.d == 0:
        flags["binomial_top_form_check"] = all(
            e[i] == p.coeffs.get((i, s - i), 0) for i in range(s + 1))
    return MixedMultReport(s=s, deg_u=deg_u, e=tuple(e), flags=flags)


def spot_check(p: BinomialBasisPolynomial, region: FitRegion, source: Source, degree_bound: int,
               count: int = 25, seed: int = 0, span: int | None = None) -> list[tuple[int, int, object, int]]:
    """Compare ``p`` with ``source`` at random region points off the grid and validation block.

    Returns the mismatches as ``(u, v, fitted, actual)``.
    """
    D = degree_bound
    span = span if span is not None else 2 * D + 6
    excluded = {(region.u0 + a, region.v0 + b) for a in range(D + 1) for b in range(D + 1)}
    excluded.update(validation_block(D, region.u0, region.v0))
    pool = [(region.u0 + a, region.v0 + b) for a in range(span + 1) for b in range(span + 1)
            if (region.u0 + a, region.v0 + b) not in excluded]
    rng = random.Random(seed)
    points = rng.sample(pool, min(count, len(pool)))
    bad = []
    for w, v in points:
        u = w + region.d * v
        got, want = p(u, v), source(u, v)
        if got != want:
            bad.append((u, v, got, want))
    return bad
