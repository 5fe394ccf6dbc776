"""Exact linear algebra over the rationals with a modular fast path.

Rank is computed by fraction-free (Bareiss) elimination on integer-scaled
rows; the modular path reduces mod word-sized primes with numpy and is
only trusted when two independent primes agree.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import lcm
from typing import Sequence

import gmpy2
import numpy as np

# products of two residues must fit in int64
PRIME_LOW = 2**30
PRIME_HIGH = 2**31 - 1

# blocks at or below this many entries go straight to exact elimination
SMALL_BLOCK = 4096


class SingularMatrixError(ArithmeticError):
    """Raised by :func:`solve_square` on a singular system."""


class UnluckyPrimeError(ArithmeticError):
    """A denominator vanishes modulo the chosen prime; retry with another prime."""


def _to_fraction(x) -> Fraction | int:
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        raise TypeError("floating point entries are not allowed")
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f


class RationalMatrix:
    """Dense matrix of exact rationals; immutable by convention."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None):
        self.rows = tuple(tuple(_to_fraction(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
        self.ncols = ncols

    @classmethod
    def from_sparse(cls, rows: Sequence[dict[int, object]], ncols: int) -> "RationalMatrix":
        dense = []
        for srow in rows:
            row = [0] * ncols
            for j, c in srow.items():
                row[j] = c
            dense.append(row)
        return cls(dense, ncols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([list(col) for col in zip(*self.rows)] if self.rows else [],
                              self.nrows)

    def __matmul__(self, vec: Sequence) -> list:
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch")
        return [_to_fraction(sum((a * b for a, b in zip(row, vec)), Fraction(0))) for row in self.rows]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.rows == other.rows and self.ncols == other.ncols

    def __repr__(self):
        return f"RationalMatrix({[list(map(str, r)) for r in self.rows]})"


def _integer_rows(rows) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; rank is unchanged."""
    out = []
    for row in rows:
        dens = [x.denominator for x in row if isinstance(x, Fraction)]
        if dens:
            m = lcm(*dens)
            out.append([int(x * m) for x in row])
        else:
            out.append(list(row))
    return out


def bareiss_rank(rows: list[list[int]], ncols: int) -> int:
    """Rank of an integer matrix by in-place fraction-free elimination.

    Pivot = first nonzero entry (in row order) of the leftmost column that
    still has one.
    """
    nrows = len(rows)
    rank = 0
    prev = 1
    for c in range(ncols):
        if rank == nrows:
            break
        piv = None
        for i in range(rank, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != rank:
            rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        p = prow[c]
        for i in range(rank + 1, nrows):
            row = rows[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - f * prow[j]) // prev
            elif p != prev:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        rank += 1
    return rank


def rank(m: RationalMatrix) -> int:
    """Exact rank over the rationals."""
    return bareiss_rank(_integer_rows(m.rows), m.ncols)


def _mod_array(rows, ncols: int, p: int) -> np.ndarray:
    try:
        if not any(isinstance(x, Fraction) for row in rows for x in row):
            return np.array(rows, dtype=np.int64).reshape(len(rows), ncols) % p
    except OverflowError:
        pass
    out = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if not x:
                continue
            if isinstance(x, Fraction):
                den = x.denominator % p
                if den == 0:
                    raise UnluckyPrimeError(f"denominator {x.denominator} divisible by {p}")
                out[i, j] = (x.numerator % p) * pow(den, -1, p) % p
            else:
                out[i, j] = x % p
    return out


def rank_mod_p_array(a: np.ndarray, p: int) -> int:
    """Rank of an int64 array (entries already reduced mod ``p``) over GF(p)."""
    if a.shape[1] > a.shape[0]:
        a = a.T
    a = np.ascontiguousarray(a, dtype=np.int64).copy()
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            f = a[below, c][:, None]
            a[np.ix_(below, np.arange(c, ncols))] = (a[below, c:] - f * a[r, c:]) % p
        r += 1
    return r


def modular_rank(m: RationalMatrix, p: int) -> int:
    """Rank of ``m`` reduced modulo the prime ``p`` (never exceeds the rational rank)."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if p >= 2**31:
        return _modular_rank_python(m, p)
    return rank_mod_p_array(_mod_array(m.rows, m.ncols, p), p)


def _modular_rank_python(m: RationalMatrix, p: int) -> int:
    rows = []
    for row in m.rows:
        out = []
        for x in row:
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise UnluckyPrimeError(f"denominator {x.denominator} divisible by {p}")
                out.append(x.numerator * pow(x.denominator, -1, p) % p)
            else:
                out.append(x % p)
        rows.append(out)
    r = 0
    for c in range(m.ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def random_prime(rng: random.Random) -> int:
    while True:
        p = int(gmpy2.next_prime(rng.randrange(PRIME_LOW, PRIME_HIGH - 2**16)))
        if p <= PRIME_HIGH:
            return p


def policy_rank(rows, ncols: int, *, exact: bool = False, rng: random.Random | None = None) -> int:
    """Rank of a matrix given as a list of dense rows, using the two-prime policy.

    Small matrices and ``exact=True`` use Bareiss elimination directly.
    Otherwise the rank is taken modulo two random primes; agreement is
    accepted, disagreement falls back to exact elimination.
    """
    nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return 0
    if exact or nrows * ncols <= SMALL_BLOCK:
        return bareiss_rank(_integer_rows(rows), ncols)
    rng = rng or random.Random(0)
    ranks = []
    while len(ranks) < 2:
        p = random_prime(rng)
        try:
            ranks.append(rank_mod_p_array(_mod_array(rows, ncols, p), p))
        except UnluckyPrimeError:
            continue
    if ranks[0] == ranks[1]:
        return ranks[0]
    return bareiss_rank(_integer_rows(rows), ncols)


def solve_square(m: RationalMatrix, rhs: Sequence) -> list:
    """Exact solution of ``m x = rhs`` for square nonsingular ``m``."""
    n = m.nrows
    if m.ncols != n or len(rhs) != n:
        raise ValueError("solve_square needs a square system")
    aug = _integer_rows([list(row) + [_to_fraction(b)] for row, b in zip(m.rows, rhs)])
    prev = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c]), None)
        if piv is None:
            raise SingularMatrixError("interpolation grid not unisolvent")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        for i in range(c + 1, n):
            f = aug[i][c]
            row = aug[i]
            for j in range(c + 1, n + 1):
                row[j] = (p * row[j] - f * aug[c][j]) // prev
            row[c] = 0
        prev = p
    x: list = [0] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(aug[i][n])
        for j in range(i + 1, n):
            s -= aug[i][j] * x[j]
        x[i] = _to_fraction(s / aug[i][i])
    return x


def nullspace(m: RationalMatrix) -> list[list[Fraction | int]]:
    """Basis of the right kernel ``{x : m x = 0}`` via exact reduced row echelon form."""
    ncols = m.ncols
    rows = [[Fraction(x) for x in row] for row in m.rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec: list = [Fraction(0)] * ncols
        vec[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fcol]
        basis.append([_to_fraction(x) for x in vec])
    return basis


def integer_nullspace(m: RationalMatrix) -> list[list[int]]:
    """Kernel basis scaled to primitive integer vectors."""
    out = []
    for vec in nullspace(m):
        den = lcm(*[Fraction(x).denominator for x in vec])
        ints = [int(Fraction(x) * den) for x in vec]
        g = 0
        for x in ints:
            g = gmpy2.gcd(g, x)
        g = int(g) or 1
        out.append([x // g for x in ints])
    return out
