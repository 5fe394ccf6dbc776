from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class MixedMultReport:
    """Top-degree data of a bivariate Hilbert polynomial.

    ``e[i]`` is the mixed multiplicity ``e_i``: ``e_i / (i! (s-i)!)`` is the
    coefficient of ``u^i v^(s-i)``. ``s == -1`` encodes the zero polynomial.
    """

    s: int
    deg_u: int
    e: tuple
    flags: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        e = tuple(int(x) if isinstance(x, Fraction) and x.denominator == 1 else x for x in self.e)
        object.__setattr__(self, "e", e)
        if len(e) != self.s + 1:
            raise ValueError(f"expected {self.s + 1} mixed multiplicities, got {len(e)}")

    @property
    def rho(self) -> int:
        """Largest index with ``e_i != 0``; -1 when all vanish."""
        for i in range(len(self.e) - 1, -1, -1):
            if self.e[i]:
                return i
        return -1

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for x in self.e)
