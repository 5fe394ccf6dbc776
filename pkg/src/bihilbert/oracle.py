"""Brute-force Hilbert function values of bigraded quotients and Rees algebras.

Every value here is a dimension obtained by counting monomials or by the
exact rank of an explicit spanning set. Nothing is extrapolated, so these
functions serve as the reference that closed formulas and fitted
polynomials are checked against.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence, Union

from .linalg import RationalMatrix, integer_nullspace, policy_rank
from .polynomials import (
    SparsePolynomial,
    bigraded_basis,
    count_monomials,
    divides,
    iter_multisets,
    monomials_of_degree,
    poly_mul,
)

DEFAULT_MAX_ENTRIES = 2_000_000


class GradingError(ValueError):
    """A generator is not homogeneous with respect to the declared grading."""


class CellBudgetExceeded(RuntimeError):
    """A spanning-set matrix would exceed the configured entry budget."""


@dataclass(frozen=True)
class OracleConfig:
    max_entries: int = DEFAULT_MAX_ENTRIES
    exact_rank: bool = False
    seed: int = 0

    def rng(self) -> random.Random:
        return random.Random(self.seed)


DEFAULT_CONFIG = OracleConfig()


@dataclass(frozen=True)
class ReesPresentation:
    """Rees algebra ``A[It]`` of ``I = (f_1..f_r)`` in ``A = k[x_1..x_n]``.

    ``A[It]_(u,v) = (I^v)_u``; generator ``f_j`` sits in bidegree ``(d_j, 1)``.
    """

    n: int
    generators: tuple[SparsePolynomial, ...]
    degrees: tuple[int, ...]
    names: tuple[str, ...] | None = None
    kind = "rees"

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "degrees", tuple(int(x) for x in self.degrees))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
        if self.n < 1:
            raise ValueError("need at least one variable")
        if not self.generators:
            raise ValueError("Rees presentation needs at least one generator")
        if len(self.degrees) != len(self.generators):
            raise ValueError("one declared degree per generator is required")
        for j, (f, dj) in enumerate(zip(self.generators, self.degrees)):
            if f.nvars != self.n:
                raise ValueError(f"generator {j + 1} lives in {f.nvars} variables, expected {self.n}")
            if f.is_zero():
                raise GradingError(f"generator {j + 1} is zero")
            if f.degrees() != {dj}:
                raise GradingError(
                    f"generator {j + 1} is not homogeneous of declared degree {dj} "
                    f"(term degrees {sorted(f.degrees())})")

    @property
    def r(self) -> int:
        return len(self.generators)

    @property
    def d_max(self) -> int:
        return max(self.degrees)

    def is_monomial(self) -> bool:
        return all(f.is_monomial() for f in self.generators)

    @cached_property
    def _grading(self) -> list[list[int]]:
        return fine_grading(self.generators, self.n)


@dataclass(frozen=True)
class QuotientPresentation:
    """Bigraded quotient ``S/J`` with ``S = k[X_1..X_n, Y_1..Y_r]``.

    ``X_i`` has bidegree (1, 0) and ``Y_j`` bidegree ``(d_j, 1)``; the
    generators of ``J`` are polynomials in the ``n + r`` variables, X's first.
    """

    n: int
    degrees: tuple[int, ...]
    generators: tuple[SparsePolynomial, ...] = ()
    names: tuple[str, ...] | None = None
    kind = "quotient"

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(g for g in self.generators))
        object.__setattr__(self, "degrees", tuple(int(x) for x in self.degrees))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
        if self.n < 0 or not self.degrees:
            raise ValueError("quotient presentation needs n >= 0 and r >= 1")
        if any(x < 0 for x in self.degrees):
            raise ValueError("degrees must be non-negative")
        N = self.n + self.r
        for j, g in enumerate(self.generators):
            if g.nvars != N:
                raise ValueError(f"generator {j + 1} lives in {g.nvars} variables, expected {N}")
            if g.is_zero():
                raise GradingError(f"generator {j + 1} is zero")
            if len(g.weighted_degrees(self.variable_bidegrees)) != 1:
                raise GradingError(f"generator {j + 1} is not bihomogeneous")

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def d_max(self) -> int:
        return max(self.degrees)

    @property
    def variable_bidegrees(self) -> list[tuple[int, int]]:
        return [(1, 0)] * self.n + [(dj, 1) for dj in self.degrees]

    @cached_property
    def generator_bidegrees(self) -> tuple[tuple[int, int], ...]:
        return tuple(next(iter(g.weighted_degrees(self.variable_bidegrees)))
                     for g in self.generators)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    @cached_property
    def _grading(self) -> list[list[int]]:
        return fine_grading(self.generators, self.n + self.r)


AlgebraPresentation = Union[ReesPresentation, QuotientPresentation]


def fine_grading(gens: Sequence[SparsePolynomial], nvars: int) -> list[list[int]]:
    """Integer weight vectors under which every generator is homogeneous.

    The vectors span the annihilator of all term differences inside the
    generators, so any product ``g * m`` has a single weight and spanning
    sets split into independent blocks.
    """
    diffs = []
    for g in gens:
        mons = g.monomials()
        for other in mons[1:]:
            diffs.append([a - b for a, b in zip(mons[0], other)])
    if not diffs:
        return [[1 if i == j else 0 for j in range(nvars)] for i in range(nvars)]
    return integer_nullspace(RationalMatrix(diffs, nvars))


def _weight_key(grading: list[list[int]]) -> Callable[[tuple], tuple]:
    def key(exps):
        return tuple(sum(w * e for w, e in zip(vec, exps)) for vec in grading)
    return key


def span_dimension(rows: Iterable[dict], grading: list[list[int]],
                   config: OracleConfig = DEFAULT_CONFIG) -> int:
    """Dimension of the span of sparse polynomial rows (dicts exps -> coefficient).

    Each row must be homogeneous for ``grading``; rows are bucketed by weight
    and the ranks of the buckets are added.
    """
    key = _weight_key(grading)
    blocks: dict[tuple, list[dict]] = {}
    for row in rows:
        if not row:
            continue
        k = key(next(iter(row)))
        blocks.setdefault(k, []).append(row)
    rng = config.rng()
    total = 0
    for k in sorted(blocks):
        brows = blocks[k]
        cols = sorted({e for row in brows for e in row}, reverse=True)
        if len(cols) == 1:
            total += 1
            continue
        if len(brows) * len(cols) > config.max_entries:
            raise CellBudgetExceeded(
                f"spanning matrix {len(brows)}x{len(cols)} exceeds {config.max_entries} entries")
        index = {e: j for j, e in enumerate(cols)}
        dense = []
        for row in brows:
            d = [0] * len(cols)
            for e, c in row.items():
                d[index[e]] = c
            dense.append(d)
        total += policy_rank(dense, len(cols), exact=config.exact_rank, rng=rng)
    return total


def hilbert_poly_ring(n: int, u: int) -> int:
    """``dim k[x_1..x_n]_u``, zero in negative degree."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return count_monomials(n, u)


def _rees_products(pres: ReesPresentation, v: int, u: int):
    """Yield ``(multiset, product polynomial)`` for multisets of total degree <= u."""
    cache: dict[tuple, SparsePolynomial] = {(): SparsePolynomial.constant(1, pres.n)}
    for ms in iter_multisets(pres.r, v):
        deg = sum(pres.degrees[j] for j in ms)
        if deg > u:
            continue
        k = len(ms)
        while ms[:k] not in cache:
            k -= 1
        prod = cache[ms[:k]]
        for t in range(k, len(ms)):
            prod = poly_mul(prod, pres.generators[ms[t]])
            cache[ms[:t + 1]] = prod
        yield ms, deg, prod


def ideal_power_component_dim(pres: ReesPresentation, v: int, u: int,
                              config: OracleConfig = DEFAULT_CONFIG, *,
                              method: str = "auto") -> int:
    """``dim_k (I^v)_u`` from the products ``f_j1 ... f_jv * m``.

    ``method`` is ``"auto"`` (count monomials when all generators are
    monomials), ``"count"`` or ``"rank"``.
    """
    if v < 1 or u < 0:
        raise ValueError("need v >= 1 and u >= 0")
    if u < min(pres.degrees) * v:
        return 0
    use_count = method == "count" or (method == "auto" and pres.is_monomial())
    if use_count:
        if not pres.is_monomial():
            raise ValueError("counting path needs monomial generators")
        seen = set()
        for _, deg, prod in _rees_products(pres, v, u):
            base = next(iter(prod.terms))
            for m in monomials_of_degree(pres.n, u - deg):
                seen.add(tuple(a + b for a, b in zip(base, m)))
        return len(seen)

    def rows():
        for _, deg, prod in _rees_products(pres, v, u):
            for m in monomials_of_degree(pres.n, u - deg):
                yield prod.shifted_terms(m)

    return span_dimension(rows(), pres._grading, config)


def rees_hilbert(pres: ReesPresentation, u: int, v: int,
                 config: OracleConfig = DEFAULT_CONFIG, *, method: str = "auto") -> int:
    """``H_{A[It]}(u, v) = dim (I^v)_u`` (``I^0 = A``)."""
    if u < 0 or v < 0:
        return 0
    if v == 0:
        return hilbert_poly_ring(pres.n, u)
    return ideal_power_component_dim(pres, v, u, config, method=method)


def quotient_bigraded_hilbert(pres: QuotientPresentation, u: int, v: int,
                              config: OracleConfig = DEFAULT_CONFIG, *,
                              method: str = "auto") -> int:
    """``dim (S/J)_(u,v)``.

    Counting path (monomial ``J``): bigraded basis monomials not divisible by
    any generator. Rank path: ``dim S_(u,v)`` minus the rank of all
    ``g * m`` landing in bidegree ``(u, v)``.
    """
    if u < 0 or v < 0:
        return 0
    basis = bigraded_basis(pres.n, pres.degrees, (u, v))
    if not pres.generators:
        return len(basis)
    use_count = method == "count" or (method == "auto" and pres.is_monomial())
    if use_count:
        if not pres.is_monomial():
            raise ValueError("counting path needs monomial generators")
        lead = [next(iter(g.terms)) for g in pres.generators]
        return sum(1 for m in basis
                   if not any(divides(g, m.exponents) for g in lead))

    def rows():
        for g, (gu, gv) in zip(pres.generators, pres.generator_bidegrees):
            for m in bigraded_basis(pres.n, pres.degrees, (u - gu, v - gv)):
                yield g.shifted_terms(m.exponents)

    return len(basis) - span_dimension(rows(), pres._grading, config)


def graded_quotient_hilbert(n: int, gens: Sequence[SparsePolynomial], u: int,
                            config: OracleConfig = DEFAULT_CONFIG, *,
                            method: str = "auto") -> int:
    """``dim (A/I)_u`` for a homogeneous ideal ``I`` of ``A = k[x_1..x_n]``.

    Under ``method="auto"`` three exact shortcuts apply before the rank path:
    a principal ideal (``A`` is a domain, so ``(g)_u = g * A_{u-e}``), an
    ideal generated by variables, and a monomial ideal (standard monomial
    count).
    """
    if u < 0:
        return 0
    gens = [g for g in gens if not g.is_zero()]
    for g in gens:
        if g.nvars != n:
            raise ValueError("generator has the wrong number of variables")
        if not g.is_homogeneous():
            raise GradingError("generators must be homogeneous")
    total = count_monomials(n, u)
    if not gens:
        return total
    if method == "auto":
        if len(gens) == 1:
            return total - count_monomials(n, u - gens[0].total_degree())
        if all(g.is_monomial() and g.total_degree() == 1 for g in gens):
            k = len({i for g in gens for i in g.variables_used()})
            return count_monomials(n - k, u) if n > k else int(u == 0)
    if method in ("auto", "count") and all(g.is_monomial() for g in gens):
        lead = [next(iter(g.terms)) for g in gens]
        return sum(1 for m in monomials_of_degree(n, u)
                   if not any(divides(g, m) for g in lead))
    if method == "count":
        raise ValueError("counting path needs monomial generators")

    def rows():
        for g in gens:
            for m in monomials_of_degree(n, u - g.total_degree()):
                yield g.shifted_terms(m)

    return total - span_dimension(rows(), fine_grading(gens, n), config)


def cell_value(pres: AlgebraPresentation, u: int, v: int,
               config: OracleConfig = DEFAULT_CONFIG, *, method: str = "auto") -> int:
    if pres.kind == "rees":
        return rees_hilbert(pres, u, v, config, method=method)
    return quotient_bigraded_hilbert(pres, u, v, config, method=method)


def cell_method(pres: AlgebraPresentation, v: int) -> str:
    if pres.kind == "rees" and v == 0:
        return "counting"
    return "counting" if pres.is_monomial() or not pres.generators else "rank"


class CellOracle:
    """Memoized ``(u, v) -> H(u, v)`` for a presentation."""

    def __init__(self, pres: AlgebraPresentation, config: OracleConfig = DEFAULT_CONFIG):
        self.pres = pres
        self.config = config
        self.cache: dict[tuple[int, int], int] = {}

    def __call__(self, u: int, v: int) -> int:
        key = (u, v)
        if key not in self.cache:
            self.cache[key] = cell_value(self.pres, u, v, self.config)
        return self.cache[key]


@dataclass
class HilbertTable:
    """Hilbert function values on a rectangle of bidegrees."""

    cells: dict[tuple[int, int], int] = field(default_factory=dict)
    methods: dict[tuple[int, int], str] = field(default_factory=dict)
    skipped: dict[tuple[int, int], str] = field(default_factory=dict)
    presentation_id: str = ""

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.cells[key]

    def __contains__(self, key) -> bool:
        return key in self.cells

    def rows(self) -> list[tuple[int, int, int]]:
        return [(u, v, self.cells[(u, v)]) for (u, v) in sorted(self.cells, key=lambda k: (k[1], k[0]))]


def hilbert_table(pres: AlgebraPresentation, u_range: Iterable[int], v_range: Iterable[int],
                  config: OracleConfig = DEFAULT_CONFIG, *, presentation_id: str = "",
                  source: Callable[[int, int], int] | None = None,
                  source_method: str | None = None) -> HilbertTable:
    """Fill a table over ``u_range x v_range``.

    Cells whose spanning matrix exceeds the budget are left out and listed in
    ``table.skipped`` with the reason. ``source`` replaces the oracle (e.g.
    a closed-form decomposition), tagged with ``source_method``.
    """
    table = HilbertTable(presentation_id=presentation_id)
    for v in v_range:
        for u in u_range:
            try:
                if source is not None:
                    val = source(u, v)
                    tag = source_method or "decomposition"
                else:
                    val = cell_value(pres, u, v, config)
                    tag = cell_method(pres, v)
            except CellBudgetExceeded as exc:
                table.skipped[(u, v)] = str(exc)
                continue
            table.cells[(u, v)] = val
            table.methods[(u, v)] = tag
    return table
