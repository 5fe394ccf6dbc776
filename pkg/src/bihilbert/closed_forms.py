"""Explicit formulas for leading coefficients and Hilbert functions.

Covers bigraded polynomial rings, sums of a univariate polynomial over
weighted compositions, Rees algebras of d-sequences (in particular regular
sequences and maximal minors of a generic matrix), the initial-ideal
decomposition behind them, the two-form Hilbert function in three
variables and the degree of embedded blow-ups.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .oracle import (
    DEFAULT_CONFIG,
    GradingError,
    OracleConfig,
    QuotientPresentation,
    graded_quotient_hilbert,
    hilbert_poly_ring,
)
from .polynomials import SparsePolynomial, binom_comb, compositions
from .report import MixedMultReport


class InvalidColonData(ValueError):
    pass


class HypothesisViolation(ValueError):
    pass


@dataclass(frozen=True)
class TopCoefficients:
    """The integers ``e_{i,j}`` with ``i + j = degree``."""

    degree: int
    values: dict

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if i < 0 or j < 0 or i + j != self.degree:
            raise KeyError(key)
        return self.values.get((i, j), 0)

    def sequence(self) -> tuple[int, ...]:
        """``(e_{0,deg}, e_{1,deg-1}, ..., e_{deg,0})``."""
        return tuple(self[(i, self.degree - i)] for i in range(self.degree + 1))


def complete_homogeneous(ds: Sequence[int], k: int) -> int:
    """``sum over j_1 + ... + j_r = k of d_1^j_1 ... d_r^j_r``."""
    if k < 0:
        return 0
    # h[t] over the first q variables, extended one variable at a time
    h = [1] + [0] * k
    for dj in ds:
        powers = [1]
        for _ in range(k):
            powers.append(powers[-1] * dj)
        h = [sum(powers[j] * h[t - j] for j in range(t + 1)) for t in range(k + 1)]
    return h[k] if ds else int(k == 0)


def prop13_leading(n: int, d: Sequence[int]) -> TopCoefficients:
    """Top coefficients of the Hilbert polynomial of ``k[X_1..X_n, Y_1..Y_r]``.

    ``bideg X_i = (1, 0)``, ``bideg Y_j = (d_j, 1)``; total degree ``n + r - 2``.
    """
    r = len(d)
    if n < 1 or r < 1:
        raise ValueError("need n >= 1 and r >= 1")
    deg = n + r - 2
    vals = {}
    for i in range(deg + 1):
        if i < n:
            vals[(i, deg - i)] = (-1) ** (n - i - 1) * complete_homogeneous(d, n - 1 - i)
        else:
            vals[(i, deg - i)] = 0
    return TopCoefficients(deg, vals)


def lemma14_leading(e: int, m: int, d: Sequence[int]) -> TopCoefficients:
    """Top coefficients of ``H(u,v) = sum_{|alpha|=v} f(u - d.alpha)``, ``f = e t^m/m! + ...``.

    Built by adding one degree at a time: with ``e'`` the coefficients for
    ``d_1..d_{r-1}``, ``e_{i} = sum_{h >= i} (-1)^(h-i) e'_h d_r^(h-i)``.
    """
    r = len(d)
    if m < 0 or r < 1:
        raise ValueError("need m >= 0 and r >= 1")
    # r = 1: the leading form of f(u - d_1 v)
    cur = [(-1) ** (m - i) * e * d[0] ** (m - i) for i in range(m + 1)]
    for q in range(1, r):
        dq = d[q]
        top = len(cur)  # new total degree m + q
        nxt = []
        for i in range(top + 1):
            if i == top:
                nxt.append(0)
                continue
            nxt.append(sum((-1) ** (h - i) * cur[h] * dq ** (h - i) for h in range(i, top)))
        cur = nxt
    deg = m + r - 1
    return TopCoefficients(deg, {(i, deg - i): cur[i] for i in range(deg + 1)})


@dataclass(frozen=True)
class ColonEntry:
    """Colon ideal ``I_q`` with ``dim A/I_q`` and ``e(A/I_q)``."""

    generators: tuple[SparsePolynomial, ...]
    dim: int
    mult: int

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))


@dataclass(frozen=True)
class ColonData:
    """Colon ideals ``I_q = (f_1..f_{q-1}) : f_q`` of a homogeneous d-sequence."""

    n: int
    d: tuple[int, ...]
    entries: tuple[ColonEntry, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.d) != len(self.entries) or not self.d:
            raise InvalidColonData("need one colon entry per generator degree")
        if any(a > b for a, b in zip(self.d, self.d[1:])):
            raise InvalidColonData(f"degrees {self.d} are not non-decreasing")
        dims = [e.dim for e in self.entries]
        if any(a <= b for a, b in zip(dims, dims[1:])):
            raise InvalidColonData(f"dim A/I_q must strictly decrease, got {dims}")
        for q, entry in enumerate(self.entries, 1):
            for g in entry.generators:
                if g.nvars != self.n:
                    raise InvalidColonData(f"generator of I_{q} has {g.nvars} variables")
                if not g.is_homogeneous():
                    raise GradingError(f"generator of I_{q} is not homogeneous")

    @property
    def r(self) -> int:
        return len(self.d)

    @property
    def s(self) -> int:
        return self.entries[0].dim - 1

    @property
    def m(self) -> int:
        return max(q for q, e in enumerate(self.entries, 1) if e.dim + q - 2 == self.s)

    @property
    def mults(self) -> tuple[int, ...]:
        return tuple(e.mult for e in self.entries)

    def quotient_hilbert(self, q: int, t: int, config: OracleConfig = DEFAULT_CONFIG) -> int:
        """``H_{A/I_q}(t)`` (1-based ``q``), memoized."""
        if t < 0:
            return 0
        key = (q, t)
        if key not in self._cache:
            self._cache[key] = graded_quotient_hilbert(
                self.n, self.entries[q - 1].generators, t, config)
        return self._cache[key]


def _mixed_report(s: int, e: list[int], **flags) -> MixedMultReport:
    return MixedMultReport(s=s, deg_u=s, e=tuple(e), flags=flags)


def dseq_mixed_mult(cd: ColonData) -> MixedMultReport:
    """Mixed multiplicities of ``A[It]`` for ``I`` generated by a d-sequence."""
    s, m, d = cd.s, cd.m, cd.d
    e = []
    for i in range(s + 1):
        total = 0
        for q in range(1, min(m, s - i + 1) + 1):
            k = s - q - i + 1
            total += (-1) ** k * cd.entries[q - 1].mult * complete_homogeneous(d[:q], k)
        e.append(total)
    return _mixed_report(s, e, m=m, e_s_equals_mult_1=(s < 0 or e[s] == cd.entries[0].mult))


def regseq_mixed_mult(n: int, eA: int, d: Sequence[int]) -> MixedMultReport:
    """Mixed multiplicities of the Rees algebra of a homogeneous regular sequence.

    ``n`` is ``dim A`` (so ``s = n - 1``) and ``eA`` the multiplicity of ``A``.
    """
    d = tuple(d)
    r = len(d)
    if any(a > b for a, b in zip(d, d[1:])):
        raise ValueError("degrees must be non-decreasing")
    if r > n:
        raise ValueError("a regular sequence has at most dim A elements")
    s = n - 1
    e = []
    for i in range(s + 1):
        total = 0
        for q in range(1, min(r, s - i + 1) + 1):
            k = s - q - i + 1
            inner = 0
            for js in compositions(q, k):
                term = 1
                for t, j in enumerate(js):
                    term *= d[t] ** (j + 1 if t < q - 1 else j)
                inner += term
            total += (-1) ** k * eA * inner
        e.append(total)
    return _mixed_report(s, e)


def minors_mixed_mult(r: int, degree: int | None = None) -> MixedMultReport:
    """Mixed multiplicities for the maximal minors of a generic ``(r-1) x r`` matrix.

    The minors have degree ``r - 1``, which is the default ``degree``; pass
    ``degree=r`` to evaluate the formula with that value substituted instead.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    delta = r - 1 if degree is None else degree
    s = (r - 1) * r - 1
    e = []
    for i in range(s + 1):
        total = 0
        for q in range(1, min(r, s - i + 1) + 1):
            k = s - q - i + 1
            total += (-1) ** k * comb(r - 1, q - 1) * comb(s - i, q - 1) * delta ** k
        e.append(total)
    return _mixed_report(s, e)


def dseq_hilbert(cd: ColonData, u: int, v: int, config: OracleConfig = DEFAULT_CONFIG) -> int:
    """``H_{A[It]}(u, v)`` from the colon ideals.

    For ``v >= 1`` this is the sum over ``q`` and ``alpha_1 + ... + alpha_q = v``
    with ``alpha_q >= 1`` of ``H_{A/I_q}(u - d.alpha)``; ``v = 0`` gives ``H_A(u)``.
    """
    if u < 0 or v < 0:
        return 0
    if v == 0:
        return hilbert_poly_ring(cd.n, u)
    total = 0
    for q in range(1, cd.r + 1):
        dq = cd.d[:q]
        # alpha_q >= 1: distribute v - 1 freely, then add one to the last part
        for alpha in compositions(q, v - 1):
            t = u - sum(a * b for a, b in zip(dq, alpha)) - dq[-1]
            if t >= 0:
                total += cd.quotient_hilbert(q, t, config)
    return total


def build_initial_ideal(cd: ColonData, names: Sequence[str] | None = None) -> QuotientPresentation:
    """``S/J*`` with ``J* = (I_1 Y_1, ..., I_r Y_r)`` in ``S = A[Y_1..Y_r]``."""
    N = cd.n + cd.r
    gens = []
    for q, entry in enumerate(cd.entries):
        y = [0] * N
        y[cd.n + q] = 1
        for g in entry.generators:
            if not g.is_homogeneous():
                raise GradingError("colon generators must be homogeneous")
            if g.is_zero():
                continue
            gens.append(g.embed(N).mul_monomial(tuple(y)))
    if names is not None and len(names) == cd.n:
        names = tuple(names) + tuple(f"Y{q + 1}" for q in range(cd.r))
    return QuotientPresentation(cd.n, cd.d, tuple(gens), names=names)


def ggh_hilbert(d1: int, d2: int, u_prime: int, v: int) -> int:
    """``dim (I^v)_{u' + d2 v}`` for a regular sequence of forms of degrees ``d1 <= d2`` in three variables."""
    if d1 > d2:
        raise ValueError("need d1 <= d2")
    if v < 0 or u_prime < 0:
        raise ValueError("need u' >= 0 and v >= 0")
    delta = d2 - d1
    total = sum(binom_comb(u_prime + delta * j + 2, 2) - binom_comb(u_prime + delta * j - d1 + 2, 2)
                for j in range(v))
    return total + binom_comb(u_prime + delta * v + 2, 2)


def embedded_degree(rep: MixedMultReport, c: int, e: int, d_max: int | None = None) -> int:
    """``sum_i C(s, i) e_i c^i e^(s-i)``, the degree of the embedding by ``(I^e)_c``."""
    if c < 1 or e < 1:
        raise HypothesisViolation("c and e must be positive")
    if d_max is not None and c <= d_max * e:
        raise HypothesisViolation(f"need c > d*e, got c={c}, d={d_max}, e={e}")
    s = rep.s
    return sum(comb(s, i) * rep.e[i] * c ** i * e ** (s - i) for i in range(s + 1))


def teissier_dseq(cd: ColonData) -> tuple[int, ...]:
    """``e_i(m|I)``: zero for ``i <= s - m``, else ``e(A/I_{s-i+1})``."""
    s, m = cd.s, cd.m
    return tuple(0 if i <= s - m else cd.entries[s - i].mult for i in range(s + 1))
