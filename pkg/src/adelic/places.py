"""Places of Q and absolute values.

A Place is either the archimedean place or a finite place attached to a
prime p.  All residue degrees are 1 over Q, so no N_v weighting appears
anywhere.  log_abs returns exact rational multiples of log p at finite
places and an error-bounded float at the archimedean place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Union

from sympy import primerange

from .exact import DomainError, LogValue, factorize, require_prime, val_p

if TYPE_CHECKING:
    from .divisors import EffectiveDivisor
    from .weights import Weight

__all__ = [
    "Place",
    "ARCH",
    "log_abs",
    "log_abs_float",
    "product_formula_check",
    "RelevantPlaces",
    "relevant_places",
]

_EPS = 2.220446049250313e-16
Rational = Union[int, Fraction]


@dataclass(frozen=True, order=False)
class Place:
    """A place of Q: Place(None) is archimedean, Place(p) is p-adic."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None:
            require_prime(self.prime)

    @property
    def is_archimedean(self) -> bool:
        return self.prime is None

    @staticmethod
    def finite(p: int) -> "Place":
        return Place(p)

    def _key(self):
        return (1, 0) if self.prime is None else (0, self.prime)

    def __lt__(self, other: "Place") -> bool:
        return self._key() < other._key()

    def __str__(self) -> str:
        return "inf" if self.prime is None else str(self.prime)


#: The archimedean place.
ARCH = Place(None)


def log_abs_float(q: Rational) -> tuple[float, float]:
    """log |q| as a float with an error bound; safe for huge numerators."""
    q = Fraction(q)
    if q == 0:
        raise DomainError("log of zero")
    v = math.log(abs(q.numerator)) - math.log(q.denominator)
    return v, 4.0 * _EPS * (1.0 + abs(v))


def log_abs(q: Rational, v: Place) -> LogValue:
    """log of the v-adic absolute value of a nonzero rational."""
    q = Fraction(q)
    if q == 0:
        raise DomainError("absolute value of zero")
    if v.is_archimedean:
        val, err = log_abs_float(q)
        return LogValue.real(val, err)
    return LogValue.exact_log(-val_p(q, v.prime), v.prime)


def product_formula_check(q: Rational) -> bool:
    """Verify sum_v log|q|_v = 0 exactly, as an identity of factorizations.

    The numerator and denominator are factored completely; the check
    reconstructs |q| as a product of p^val_p(q) over the primes found and
    compares integers, with no floating point involved."""
    q = Fraction(q)
    if q == 0:
        raise DomainError("product formula needs a nonzero rational")
    primes = set(factorize(q.numerator)) | set(factorize(q.denominator))
    num = 1
    den = 1
    for p in primes:
        e = val_p(q, p)
        if e > 0:
            num *= p ** e
        elif e < 0:
            den *= p ** (-e)
    return num == abs(q.numerator) and den == q.denominator


@dataclass(frozen=True)
class RelevantPlaces:
    """Finite list of places that can carry nonzero local data for a divisor
    and weight, plus a certified bound on everything left out."""

    places: tuple[Place, ...]
    tail_bound: float
    prime_cutoff: int | None


def relevant_places(
    Z: "EffectiveDivisor",
    g: "Weight",
    tail_eps: float = 1e-9,
    prime_limit: int = 10 ** 7,
) -> RelevantPlaces:
    """Places where the divisor or the weight can contribute.

    Always includes the archimedean place, every prime dividing the leading
    coefficient of the finite part, and every prime dividing the numerator or
    denominator of the pairwise difference product.  For weights supported at
    infinitely many primes, also includes all p <= P with P minimal such that
    the weight's certified tail bound sum_{p>P} sup|g_p| drops below
    tail_eps / deg(Z).  The returned tail_bound certifies that sum.
    """
    if tail_eps <= 0:
        raise DomainError("tail_eps must be positive")
    ps: set[int] = set()
    f = Z.finite_part
    if not f.is_constant:
        ps |= set(factorize(f.lc))
    ds = Z.d_star
    if ds != 1:
        ps |= set(factorize(ds.numerator))
        ps |= set(factorize(ds.denominator))
    cutoff: int | None = None
    tail = 0.0
    if not g.finitely_supported:
        cutoff = g.prime_cutoff(tail_eps / Z.degree)
        if cutoff > prime_limit:
            raise DomainError(
                f"tail_eps={tail_eps} needs primes up to {cutoff}; raise"
                " tail_eps or prime_limit"
            )
        ps |= set(primerange(2, cutoff + 1))
        tail = g.tail_sum_bound(cutoff)
    places = tuple(sorted(Place(p) for p in ps)) + (ARCH,)
    return RelevantPlaces(places, tail, cutoff)
