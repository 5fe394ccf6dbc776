"""Exact sparse multivariate polynomials and (bi)graded monomial enumeration.

Coefficients are :class:`fractions.Fraction` (or ``int``) values; nothing in
this module touches floating point. Monomials are plain tuples of
non-negative integers, one entry per variable.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

ExponentVector = tuple[int, ...]


def grlex_key(exps: ExponentVector) -> tuple:
    """Sort key for graded lexicographic order (ascending)."""
    return (sum(exps), exps)


def monomials_of_degree(n: int, u: int) -> list[ExponentVector]:
    """All exponent vectors of length ``n`` and entry sum ``u``.

    Returned in descending lexicographic order, i.e. ``(u, 0, ...)`` first.
    The count is ``C(u + n - 1, n - 1)``.
    """
    if u < 0:
        return []
    if n == 0:
        return [()] if u == 0 else []
    out = []
    # stars and bars: bar positions in ascending lex order give ascending
    # lex exponent vectors
    last = u + n - 2
    for bars in combinations(range(u + n - 1), n - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(last - prev)
        out.append(tuple(exps))
    out.reverse()
    return out


compositions = monomials_of_degree


def count_monomials(n: int, u: int) -> int:
    """``C(u + n - 1, n - 1)`` with the combinatorial convention (0 for u < 0)."""
    if u < 0:
        return 0
    if n == 0:
        return 1 if u == 0 else 0
    return comb(u + n - 1, n - 1)


@dataclass(frozen=True, order=True)
class BiMonomial:
    """A monomial ``x^a y^b`` of a bigraded polynomial ring."""

    x_part: ExponentVector
    y_part: ExponentVector

    def bidegree(self, d: Sequence[int]) -> tuple[int, int]:
        return (sum(self.x_part) + sum(dj * bj for dj, bj in zip(d, self.y_part)),
                sum(self.y_part))

    @property
    def exponents(self) -> ExponentVector:
        return self.x_part + self.y_part


def bigraded_basis(n: int, d: Sequence[int], point: tuple[int, int]) -> list[BiMonomial]:
    """Monomial basis of ``S_(u,v)`` where ``S = k[X_1..X_n, Y_1..Y_r]``.

    ``X_i`` has bidegree (1, 0) and ``Y_j`` has bidegree ``(d[j], 1)``.
    """
    u, v = point
    if u < 0 or v < 0:
        return []
    r = len(d)
    out = []
    for alpha in monomials_of_degree(r, v):
        rest = u - sum(dj * aj for dj, aj in zip(d, alpha))
        if rest < 0:
            continue
        for x in monomials_of_degree(n, rest):
            out.append(BiMonomial(x, alpha))
    out.sort(key=lambda m: m.exponents, reverse=True)
    return out


def _normalize(c) -> Fraction | int:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class SparsePolynomial:
    """Polynomial over the rationals as a map exponent-vector -> coefficient.

    Instances are treated as immutable. Zero coefficients are never stored.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping[ExponentVector, object] | None = None, nvars: int | None = None):
        clean: dict[ExponentVector, Fraction | int] = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(int(e) for e in exps)
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                if nvars is None:
                    nvars = len(exps)
                elif len(exps) != nvars:
                    raise ValueError(f"exponent vector {exps} does not have length {nvars}")
                if isinstance(c, float):
                    raise TypeError("floating point coefficients are not allowed")
                c = _normalize(Fraction(c)) if not isinstance(c, int) else c
                if c:
                    clean[exps] = clean.get(exps, 0) + c
                    if not clean[exps]:
                        del clean[exps]
        if nvars is None:
            raise ValueError("nvars is required for the zero polynomial")
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "SparsePolynomial":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "SparsePolynomial":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "SparsePolynomial":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "SparsePolynomial":
        exps = tuple(exps)
        return cls({exps: c}, len(exps))

    @classmethod
    def variable(cls, i: int, nvars: int) -> "SparsePolynomial":
        exps = [0] * nvars
        exps[i] = 1
        return cls({tuple(exps): 1}, nvars)

    # inspection
    @property
    def terms(self) -> dict[ExponentVector, Fraction | int]:
        return dict(self._terms)

    def items(self) -> list[tuple[ExponentVector, Fraction | int]]:
        """Terms in descending grlex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def monomials(self) -> list[ExponentVector]:
        return [e for e, _ in self.items()]

    def coefficient(self, exps: Sequence[int]):
        return self._terms.get(tuple(exps), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def degrees(self) -> set[int]:
        return {sum(e) for e in self._terms}

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def weighted_degrees(self, weights: Sequence[Sequence[int]]) -> set[tuple[int, ...]]:
        """Set of multidegrees of the terms, ``weights[i]`` being the degree of variable i."""
        out = set()
        for exps in self._terms:
            deg = [0] * len(weights[0])
            for e, w in zip(exps, weights):
                if e:
                    for k, wk in enumerate(w):
                        deg[k] += e * wk
            out.add(tuple(deg))
        return out

    def variables_used(self) -> set[int]:
        return {i for e in self._terms for i, a in enumerate(e) if a}

    def leading_term(self) -> tuple[ExponentVector, Fraction | int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self._terms, key=grlex_key)
        return exps, self._terms[exps]

    def evaluate(self, point: Sequence) -> Fraction | int:
        total = 0
        for exps, c in self._terms.items():
            t = c
            for x, e in zip(point, exps):
                if e:
                    t *= x ** e
            total += t
        return _normalize(Fraction(total)) if isinstance(total, Fraction) else total

    # arithmetic
    def _check(self, other: "SparsePolynomial") -> None:
        if not isinstance(other, SparsePolynomial):
            raise TypeError(f"expected SparsePolynomial, got {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePolynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _normalize(s)
            else:
                out.pop(e, None)
        return SparsePolynomial._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial._raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return SparsePolynomial.zero(self.nvars)
            return SparsePolynomial._raw(
                {e: _normalize(c * other) for e, c in self._terms.items()}, self.nvars)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = SparsePolynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_monomial(self, exps: ExponentVector) -> "SparsePolynomial":
        return SparsePolynomial._raw(
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self._terms.items()},
            self.nvars)

    def shifted_terms(self, exps: ExponentVector) -> dict[ExponentVector, Fraction | int]:
        """Terms of ``self * x^exps`` as a plain dict (no polynomial wrapper)."""
        return {tuple(a + b for a, b in zip(e, exps)): c for e, c in self._terms.items()}

    def embed(self, nvars: int, offset: int = 0) -> "SparsePolynomial":
        """View as a polynomial in ``nvars`` variables, placing ours at ``offset``."""
        if offset + self.nvars > nvars:
            raise ValueError("embedding does not fit")
        pad_l = (0,) * offset
        pad_r = (0,) * (nvars - offset - self.nvars)
        return SparsePolynomial._raw({pad_l + e + pad_r: c for e, c in self._terms.items()}, nvars)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePolynomial.constant(other, self.nvars)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "SparsePolynomial(0)"
        parts = [f"{c}*x^{e}" for e, c in self.items()]
        return "SparsePolynomial(" + " + ".join(parts) + ")"


def poly_mul(p: SparsePolynomial, q: SparsePolynomial) -> SparsePolynomial:
    """Exact product of two polynomials in the same number of variables."""
    p._check(q)
    out: dict[ExponentVector, Fraction | int] = {}
    for e1, c1 in p._terms.items():
        for e2, c2 in q._terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return SparsePolynomial._raw({e: _normalize(c) if isinstance(c, Fraction) else c
                                  for e, c in out.items()}, p.nvars)


def poly_product(polys: Iterable[SparsePolynomial], nvars: int) -> SparsePolynomial:
    out = SparsePolynomial.constant(1, nvars)
    for f in polys:
        out = poly_mul(out, f)
    return out


def divides(a: ExponentVector, b: ExponentVector) -> bool:
    """True when monomial ``a`` divides monomial ``b``."""
    return all(x <= y for x, y in zip(a, b))


def binomial_poly(k: int, var: int, nvars: int, shift=0) -> SparsePolynomial:
    """The polynomial ``C(x_var + shift, k)`` (polynomial convention)."""
    x = SparsePolynomial.variable(var, nvars) + shift
    out = SparsePolynomial.constant(1, nvars)
    for t in range(k):
        out = out * (x - t)
    return out * Fraction(1, _factorial(k))


def _factorial(k: int) -> int:
    out = 1
    for t in range(2, k + 1):
        out *= t
    return out


def binom_poly_value(a, k: int) -> Fraction | int:
    """``C(a, k)`` for integer or rational ``a`` using the polynomial convention."""
    if k < 0:
        return 0
    num = 1
    for t in range(k):
        num *= a - t
    val = Fraction(num, _factorial(k))
    return _normalize(val)


def binom_comb(a: int, k: int) -> int:
    """``C(a, k)`` with the combinatorial convention: 0 when ``a < k`` or ``a < 0``."""
    if k < 0 or a < k or a < 0:
        return 0
    return comb(a, k)


def iter_multisets(r: int, v: int) -> Iterator[tuple[int, ...]]:
    """Multisets of size ``v`` from ``range(r)`` as non-decreasing index tuples."""
    return combinations_with_replacement(range(r), v)
