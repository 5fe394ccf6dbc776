"""Hilbert functions along the diagonal ``{(c v, e v)}`` and their multiplicities."""
from __future__ import annotations

from dataclasses import dataclass

from .closed_forms import HypothesisViolation, embedded_degree
from .oracle import DEFAULT_CONFIG, AlgebraPresentation, CellOracle, OracleConfig
from .polyfit import DEFAULT_BUDGET, Source, StabilizationError, FitRegion, forward_differences
from .polynomials import binom_poly_value
from .report import MixedMultReport

VALIDATION_WINDOW = 4


@dataclass(frozen=True)
class DiagonalSpec:
    c: int
    e: int

    def __post_init__(self):
        if self.c < 1 or self.e < 1:
            raise ValueError("c and e must be positive integers")

    def admissible(self, d_max: int) -> bool:
        return self.c > d_max * self.e


@dataclass(frozen=True)
class UnivariateFit:
    """``P(v) = sum_j coeffs[j] C(v - v0, j)``; the top coefficient is the multiplicity."""

    coeffs: tuple
    degree: int
    multiplicity: int
    v0: int

    def __call__(self, v: int):
        return sum(c * binom_poly_value(v - self.v0, j) for j, c in enumerate(self.coeffs))


def _fit_window(values: list, bound: int):
    diffs = forward_differences(values)
    if any(diffs[bound + 1:]):
        return None
    coeffs = list(diffs[:bound + 1])
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def diagonal_fit_source(source: Source, spec: DiagonalSpec, degree_bound: int,
                        budget: int = DEFAULT_BUDGET) -> UnivariateFit:
    """Fit ``v -> source(c v, e v)``; orders above ``degree_bound`` must vanish."""
    n_samples = degree_bound + 2 + VALIDATION_WINDOW
    for v0 in range(budget + 1):
        values = [source(spec.c * v, spec.e * v) for v in range(v0, v0 + n_samples)]
        coeffs = _fit_window(values, degree_bound)
        if coeffs is None:
            continue
        degree = len(coeffs) - 1
        mult = coeffs[-1] if coeffs else 0
        return UnivariateFit(tuple(coeffs), degree, mult, v0)
    raise StabilizationError(
        f"no stabilization found within budget along the ({spec.c}, {spec.e}) diagonal",
        reason="no_stabilization", attempts=budget + 1,
        last_region=FitRegion(0, 0, budget))


def diagonal_fit(pres: AlgebraPresentation, spec: DiagonalSpec, degree_bound: int | None = None,
                 budget: int = DEFAULT_BUDGET, config: OracleConfig = DEFAULT_CONFIG,
                 source: Source | None = None) -> UnivariateFit:
    if not spec.admissible(pres.d_max):
        raise HypothesisViolation(f"need c > d*e, got c={spec.c}, e={spec.e}, d={pres.d_max}")
    if degree_bound is None:
        degree_bound = pres.n - 1 if pres.kind == "rees" else max(pres.n + pres.r - 2, 0)
    return diagonal_fit_source(source or CellOracle(pres, config), spec, degree_bound, budget)


@dataclass(frozen=True)
class EmbeddedDegreeCheck:
    fitted: int
    formula: int
    equal: bool
    degree_matches: bool

    @property
    def ok(self) -> bool:
        return self.equal and self.degree_matches


def check_embedded_degree(fit: UnivariateFit, rep: MixedMultReport,
                          spec: DiagonalSpec) -> EmbeddedDegreeCheck:
    """Compare the diagonal multiplicity with the mixed-multiplicity expansion."""
    formula = embedded_degree(rep, spec.c, spec.e)
    return EmbeddedDegreeCheck(fit.multiplicity, formula, fit.multiplicity == formula,
                               fit.degree == rep.s)

