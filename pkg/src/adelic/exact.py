"""Exact integer and rational building blocks.

This module is the arithmetic bedrock of the package: p-adic valuations,
primitive integer polynomials, squarefree decomposition, resultants via the
subresultant remainder sequence, discriminants, and Newton polygons.  Every
function here is exact; no floating point enters any computation.  The one
numeric type, LogValue, keeps finite-place values as exact rational multiples
of log p and archimedean values as floats with an explicit error bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

from sympy import factorint, isprime

__all__ = [
    "DomainError",
    "INF",
    "IntPoly",
    "LogValue",
    "val_p",
    "factorize",
    "require_prime",
    "content_primitive",
    "poly_gcd",
    "squarefree_decomposition",
    "resultant",
    "discriminant",
    "newton_polygon",
]


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


#: Marker for the valuation of a zero root (plus infinity).  A float so it
#: compares cleanly against Fraction slopes.
INF = math.inf

Rational = Union[int, Fraction]

_EPS = 2.220446049250313e-16  # double precision unit roundoff


def require_prime(p: int) -> int:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise DomainError(f"not a prime: {p!r}")
    return p


def val_p(q: Rational, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    require_prime(p)
    q = Fraction(q)
    if q == 0:
        raise DomainError("valuation of zero is undefined")
    v = 0
    n = q.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; n must be nonzero."""
    if n == 0:
        raise DomainError("cannot factor zero")
    return {int(p): int(e) for p, e in factorint(abs(n)).items()}


# ---------------------------------------------------------------------------
# integer polynomials
# ---------------------------------------------------------------------------

def _trim(cs: list[int]) -> tuple[int, ...]:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class IntPoly:
    """Nonzero polynomial in Z[z], coefficients ascending by degree."""

    coeffs: tuple[int, ...]

    @staticmethod
    def make(cs: Iterable[int]) -> "IntPoly":
        t = _trim([int(c) for c in cs])
        if not t:
            raise DomainError("zero polynomial")
        return IntPoly(t)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1]

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) == 1

    def __call__(self, x):
        # sparse Horner: cheap on polynomials like z^n - a
        terms = [(j, c) for j, c in enumerate(self.coeffs) if c != 0]
        acc = None
        prev = 0
        for j, c in reversed(terms):
            if acc is None:
                acc, prev = c, j
            else:
                acc = acc * x ** (prev - j) + c
                prev = j
        if acc is None:
            return 0 * x
        return acc * x ** prev if prev else acc + 0 * x

    def derivative(self) -> "IntPoly":
        if self.is_constant:
            raise DomainError("derivative of a constant is zero")
        return IntPoly(_trim([j * c for j, c in enumerate(self.coeffs)][1:]))

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPoly(_trim(out))

    def add_scalar(self, c: int) -> "IntPoly":
        cs = list(self.coeffs)
        cs[0] += c
        return IntPoly.make(cs)

    def scale(self, c: int) -> "IntPoly":
        if c == 0:
            raise DomainError("scaling by zero")
        return IntPoly(tuple(c * x for x in self.coeffs))

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                zj = "z" if j == 1 else f"z^{j}"
                parts.append(zj if c == 1 else f"-{zj}" if c == -1 else f"{c}*{zj}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


def _content(cs: Iterable[int]) -> int:
    return reduce(math.gcd, (abs(c) for c in cs), 0)


def content_primitive(f: IntPoly) -> tuple[int, IntPoly]:
    """Split f = content * primitive with content > 0; sign stays on the
    primitive part."""
    c = _content(f.coeffs)
    return c, IntPoly(tuple(x // c for x in f.coeffs))


def _deg(cs: list[int]) -> int:
    for i in range(len(cs) - 1, -1, -1):
        if cs[i]:
            return i
    return -1


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, as a raw list."""
    da, db = _deg(a), _deg(b)
    lb = b[db]
    r = list(a)
    mults = 0
    while True:
        dr = _deg(r)
        if dr < db:
            break
        top = r[dr]
        r = [lb * c for c in r]
        off = dr - db
        for i in range(db + 1):
            r[off + i] -= top * b[i]
        r[dr] = 0  # exact cancellation by construction
        mults += 1
    want = da - db + 1
    if mults < want:
        scale = lb ** (want - mults)
        r = [scale * c for c in r]
    return r


def _primitive_list(cs: list[int]) -> list[int]:
    c = _content(cs)
    if c == 0:
        return []
    return [x // c for x in cs]


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd in Z[z] with positive leading coefficient, computed with
    a primitive pseudo-remainder sequence."""
    a = _primitive_list(list(f.coeffs))
    b = _primitive_list(list(g.coeffs))
    if _deg(a) < _deg(b):
        a, b = b, a
    while _deg(b) >= 0:
        r = _primitive_list(_prem(a, b))
        a, b = b, r
    a = a[: _deg(a) + 1]
    if a[-1] < 0:
        a = [-c for c in a]
    return IntPoly(tuple(a))


def _divexact(f: IntPoly, g: IntPoly) -> IntPoly:
    """Exact quotient f / g in Q[z]; raises if the division is not exact.
    For primitive f, g with g | f the quotient is an integer polynomial."""
    num = [Fraction(c) for c in f.coeffs]
    den = [Fraction(c) for c in g.coeffs]
    dn, dd = len(num) - 1, len(den) - 1
    if dn < dd:
        raise DomainError("inexact polynomial division")
    q = [Fraction(0)] * (dn - dd + 1)
    for k in range(dn - dd, -1, -1):
        c = num[k + dd] / den[dd]
        q[k] = c
        if c:
            for i in range(dd + 1):
                num[k + i] -= c * den[i]
    if any(num):
        raise DomainError("inexact polynomial division")
    if any(c.denominator != 1 for c in q):
        raise DomainError("quotient not integral")
    return IntPoly.make([int(c) for c in q])


def _sub_lists(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _deriv_list(cs: tuple[int, ...]) -> tuple[int, ...]:
    return _trim([j * c for j, c in enumerate(cs)][1:])


def squarefree_decomposition(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun decomposition of a nonconstant f: pairwise coprime primitive
    squarefree factors with multiplicities, f = +/- content * prod f_i^(m_i).

    Factors come out with positive leading coefficient; content and the
    overall sign are dropped (neither affects a divisor)."""
    _, f = content_primitive(f)
    if f.is_constant:
        return []
    if f.lc < 0:
        f = f.scale(-1)
    d = f.derivative()
    a = poly_gcd(f, d)
    if a.is_constant:
        return [(f, 1)]
    b = _divexact(f, a)
    c = _divexact(d, a)
    out: list[tuple[IntPoly, int]] = []
    i = 1
    while b.degree > 0:
        z = _sub_lists(c.coeffs, _deriv_list(b.coeffs))
        if not z:
            out.append((b, i))
            break
        h = poly_gcd(b, IntPoly(z))
        if h.degree > 0:
            out.append((h, i))
            b = _divexact(b, h)
            c = _divexact(IntPoly(z), h)
        else:
            c = IntPoly(z)
        i += 1
    return out


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) = lc(f)^deg(g) * lc(g)^deg(f) * prod (alpha_i - beta_j) over
    the roots alpha of f and beta of g, computed exactly with the subresultant
    remainder sequence."""
    if f.degree == 0 and g.degree == 0:
        return 1
    s = 1
    A, B = list(f.coeffs), list(g.coeffs)
    if _deg(A) < _deg(B):
        if (_deg(A) & 1) and (_deg(B) & 1):
            s = -s
        A, B = B, A
    ca = _content(A)
    cb = _content(B)
    A = [c // ca for c in A]
    B = [c // cb for c in B]
    t = ca ** _deg(B) * cb ** _deg(A)
    gg = 1
    hh = 1
    while _deg(B) > 0:
        dA, dB = _deg(A), _deg(B)
        delta = dA - dB
        if (dA & 1) and (dB & 1):
            s = -s
        R = _prem(A, B)
        if _deg(R) < 0:
            return 0
        denom = gg * hh ** delta
        A = B
        B = [c // denom for c in R[: _deg(R) + 1]]
        gg = A[_deg(A)]
        if delta == 0:
            hh = hh  # h unchanged when degrees drop by zero steps
        else:
            hh = gg ** delta // hh ** (delta - 1)
    dA = _deg(A)
    lB = B[0]
    h_final = lB ** dA // hh ** (dA - 1) if dA >= 1 else 1
    return s * t * h_final


def discriminant(f: IntPoly) -> Fraction:
    """disc(f) = lc^(2d-2) * prod_{i<j} (alpha_i - alpha_j)^2, computed as
    (-1)^(d(d-1)/2) * Res(f, f') / lc(f).  Always an integer for f in Z[z]."""
    d = f.degree
    if d < 1:
        raise DomainError("discriminant needs degree >= 1")
    if d == 1:
        return Fraction(1)
    r = resultant(f, f.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    out = Fraction(sign * r, f.lc)
    if out.denominator != 1:
        raise AssertionError("discriminant was not integral")
    return out


def newton_polygon(f: IntPoly, p: int) -> list:
    """Multiset of valuations v_p(alpha) over the roots alpha of f in an
    algebraic closure of Q_p, from the lower convex hull of the points
    (j, v_p(c_j)).  Zero roots appear as INF entries.  Sorted ascending,
    INF entries last."""
    require_prime(p)
    if f.degree == 0:
        return []
    pts = [(j, val_p(c, p)) for j, c in enumerate(f.coeffs) if c != 0]
    j0 = pts[0][0]
    vals: list = []
    hull: list[tuple[int, int]] = []
    for x, y in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop middle points on or above the segment (lower hull)
            if (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append((x, y))
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = Fraction(y2 - y1, x2 - x1)
        vals.extend([-slope] * (x2 - x1))
    vals.sort()
    return vals + [INF] * j0


# ---------------------------------------------------------------------------
# LogValue
# ---------------------------------------------------------------------------

def _log_int(n: int) -> float:
    # math.log accepts arbitrarily large ints
    return math.log(n)


@dataclass(frozen=True)
class LogValue:
    """A logarithmic quantity attached to one place.

    Finite places carry an exact rational coefficient: the value is
    coeff * log(base) with base the residue prime.  Archimedean (or mixed)
    quantities carry a float plus a nonnegative error bound.  An exact zero
    has base None and combines with any base.
    """

    coeff: Fraction | None
    base: int | None
    value: float
    err: float

    # -- constructors --------------------------------------------------
    @staticmethod
    def exact_log(coeff: Rational, base: int) -> "LogValue":
        c = Fraction(coeff)
        if c == 0:
            return LogValue.zero()
        v = float(c) * _log_int(base)
        return LogValue(c, base, v, 0.0)

    @staticmethod
    def real(value: float, err: float = 0.0) -> "LogValue":
        return LogValue(None, None, float(value), float(err))

    @staticmethod
    def zero() -> "LogValue":
        return LogValue(Fraction(0), None, 0.0, 0.0)

    @staticmethod
    def minus_infinity() -> "LogValue":
        return LogValue(None, None, -math.inf, 0.0)

    # -- predicates ----------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.coeff is not None

    @property
    def is_minus_infinity(self) -> bool:
        return self.value == -math.inf

    # -- arithmetic ----------------------------------------------------
    def _as_float(self) -> tuple[float, float]:
        if self.coeff is None:
            return self.value, self.err
        return self.value, self.err + 2.0 * _EPS * (abs(self.value) + 1e-300)

    def __add__(self, other: "LogValue") -> "LogValue":
        if not isinstance(other, LogValue):
            return NotImplemented
        if self.is_minus_infinity or other.is_minus_infinity:
            return LogValue.minus_infinity()
        if self.is_exact and other.is_exact:
            if self.coeff == 0:
                return other
            if other.coeff == 0:
                return self
            if self.base == other.base:
                return LogValue.exact_log(self.coeff + other.coeff, self.base)
            raise DomainError("cannot add exact logs at different primes")
        a, ea = self._as_float()
        b, eb = other._as_float()
        return LogValue.real(a + b, ea + eb + _EPS * (abs(a + b) + 1e-300))

    def __neg__(self) -> "LogValue":
        if self.is_exact:
            if self.coeff == 0:
                return self
            return LogValue.exact_log(-self.coeff, self.base)
        return LogValue(None, None, -self.value, self.err)

    def __sub__(self, other: "LogValue") -> "LogValue":
        return self + (-other)

    def scaled(self, k: Rational) -> "LogValue":
        k = Fraction(k)
        if self.is_exact:
            if k == 0 or self.coeff == 0:
                return LogValue.zero()
            return LogValue.exact_log(self.coeff * k, self.base)
        kf = float(k)
        return LogValue(None, None, self.value * kf, self.err * abs(kf)
                        + _EPS * abs(self.value * kf))

    def to_json(self) -> dict:
        if self.is_exact and self.coeff != 0:
            return {"coeff": str(self.coeff), "log_base": self.base}
        if self.is_exact:
            return {"coeff": "0", "log_base": None}
        return {"value": self.value, "err": self.err}

    def __repr__(self) -> str:
        if self.is_exact:
            if self.coeff == 0:
                return "LogValue(0)"
            return f"LogValue({self.coeff}*log{self.base})"
        return f"LogValue({self.value}+/-{self.err:.2g})"


def float_sum(values: Iterable[LogValue]) -> tuple[float, float]:
    """Sum LogValues across places as floats, returning (value, error bound)."""
    tot, err = 0.0, 0.0
    for v in values:
        if v.is_minus_infinity:
            return -math.inf, 0.0
        x, e = v._as_float()
        tot += x
        err += e + _EPS * abs(x)
    return tot, err
