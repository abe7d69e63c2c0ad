"""Effective divisors on the projective line over Q.

A divisor is a primitive integer polynomial (its root divisor, with
multiplicities from the squarefree decomposition) plus an explicit
multiplicity at the point at infinity.  The module also computes the
quantities that drive all local identities: the diagonal mass, the
small-diagonal ratio, and the pairwise difference product over distinct
finite support points, kept as an exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .exact import (
    DomainError,
    IntPoly,
    content_primitive,
    discriminant,
    resultant,
    squarefree_decomposition,
)

__all__ = [
    "EffectiveDivisor",
    "divisor_from_poly",
    "diagonal_mass",
    "small_diagonal_ratio",
    "d_star",
]


@dataclass(frozen=True)
class EffectiveDivisor:
    """Effective divisor of degree >= 1 on P^1(Qbar), Galois stable.

    finite_part is primitive with positive leading coefficient; inf_mult is
    the multiplicity of the point at infinity.  A constant finite_part means
    the divisor is supported at infinity alone.
    """

    finite_part: IntPoly
    inf_mult: int = 0

    def __post_init__(self):
        if self.inf_mult < 0:
            raise DomainError("negative multiplicity at infinity")
        if self.degree < 1:
            raise DomainError("divisor must have degree >= 1")

    @property
    def finite_degree(self) -> int:
        return self.finite_part.degree

    @property
    def degree(self) -> int:
        return self.finite_part.degree + self.inf_mult

    @cached_property
    def squarefree_factors(self) -> tuple[tuple[IntPoly, int], ...]:
        """Pairwise coprime squarefree factors with multiplicities."""
        return tuple(squarefree_decomposition(self.finite_part))

    @cached_property
    def diagonal_mass(self) -> int:
        """sum over support points of (multiplicity)^2."""
        m = sum(m * m * g.degree for g, m in self.squarefree_factors)
        if self.inf_mult:
            m += self.inf_mult ** 2
        return m

    @property
    def small_diagonal_ratio(self) -> Fraction:
        return Fraction(self.diagonal_mass, self.degree ** 2)

    @cached_property
    def d_star(self) -> Fraction:
        """Product of (w - w') over ordered pairs of distinct finite support
        points, weighted by multiplicities in the exponents.

        Within one squarefree factor g of degree d, leading coefficient l and
        multiplicity m, the ordered pairs contribute
        ((-1)^(d(d-1)/2) disc(g) / l^(2d-2))^(m^2).  Across two factors the
        contribution is ((-1)^(d1 d2) Res(g1, g2)^2 / (l1^(2 d2) l2^(2 d1)))
        raised to m1*m2.  Empty product (fewer than two points) gives 1.
        """
        fac = self.squarefree_factors
        out = Fraction(1)
        for g, m in fac:
            d, l = g.degree, g.lc
            if d >= 2:
                sign = -1 if (d * (d - 1) // 2) % 2 else 1
                base = Fraction(sign) * Fraction(discriminant(g), l ** (2 * d - 2))
                out *= base ** (m * m)
        for i in range(len(fac)):
            for j in range(i + 1, len(fac)):
                gi, mi = fac[i]
                gj, mj = fac[j]
                di, dj = gi.degree, gj.degree
                sign = -1 if (di * dj) % 2 else 1
                r = Fraction(resultant(gi, gj)) ** 2
                base = Fraction(sign) * r / (gi.lc ** (2 * dj) * gj.lc ** (2 * di))
                out *= base ** (mi * mj)
        if out == 0:
            raise AssertionError("pairwise difference product vanished")
        return out


def divisor_from_poly(coeffs: Iterable[int], inf_mult: int = 0) -> EffectiveDivisor:
    """Build a divisor from integer coefficients (ascending) and an optional
    multiplicity at infinity.  Content and overall sign are stripped, so the
    result only depends on the root divisor of the polynomial."""
    f = IntPoly.make(coeffs)
    _, f = content_primitive(f)
    if f.lc < 0:
        f = f.scale(-1)
    return EffectiveDivisor(f, inf_mult)


def diagonal_mass(Z: EffectiveDivisor) -> int:
    return Z.diagonal_mass


def small_diagonal_ratio(Z: EffectiveDivisor) -> Fraction:
    return Z.small_diagonal_ratio


def d_star(Z: EffectiveDivisor) -> Fraction:
    return Z.d_star
