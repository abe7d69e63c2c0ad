"""Certified complex root isolation for integer polynomials.

Initial estimates come from the numpy companion-matrix solver, with a
divide-and-conquer reduction for polynomials whose root set is symmetric
about its mean (they are polynomials in (z - mu)^2, and iterated
quadratics fall in this class at every level).  Estimates are polished by
Newton iteration in mpmath against the exact integer coefficients at a
working precision chosen adaptively from rigorous evaluation-error
bounds.  Each returned root carries a radius d*|f(z)/f'(z)|, inflated by
the evaluation error, that is certified to contain a true root; the
disks are checked to be pairwise disjoint so multiplicities cannot be
confused.
"""

from __future__ import annotations

import cmath
import functools
import math
from fractions import Fraction

import mpmath
import numpy as np

from .exact import DomainError, IntPoly

DEGREE_CAP = 512
_MAX_DIGITS = 800


def _float_coeffs(coeffs: tuple[int, ...]) -> list[float]:
    bits = max(abs(c).bit_length() for c in coeffs if c != 0)
    shift = max(0, bits - 900)
    return [math.ldexp(1.0, -shift) * float(c >> shift) if shift else float(c) for c in coeffs]


def _mp_eval(coeffs, z):
    # dense Horner, highest degree first
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
    return acc


@functools.lru_cache(maxsize=256)
def certified_roots(f: IntPoly, tol: float = 1e-13) -> list[tuple[complex, float]]:
    """All complex roots of a squarefree integer polynomial, with radii.

    Returns (root, radius) pairs sorted by real then imaginary part; each
    disk of the given radius about the returned root contains exactly one
    root of f, and the radii are below tol.  Raises DomainError above
    degree 512 or if certification fails at the requested tolerance.
    Results are cached per (polynomial, tolerance).
    """
    d = f.degree
    if d > DEGREE_CAP:
        raise DomainError("degree %d exceeds the certified-root cap %d" % (d, DEGREE_CAP))
    if d == 0:
        return []
    out = []
    coeffs = f.coeffs
    ntrail = 0
    while coeffs[ntrail] == 0:
        ntrail += 1
    if ntrail > 1:
        raise DomainError("polynomial is not squarefree at 0")
    if ntrail == 1:
        out.append((0j, 0.0))
        coeffs = coeffs[1:]
        d -= 1
    if d == 0:
        return out
    if d == 1:
        root = -coeffs[0] / coeffs[1]
        out.append((complex(root), 4.0 * abs(root) * 2.3e-16))
        return sorted(out, key=lambda t: (t[0].real, t[0].imag))

    certified = _attempt(coeffs, _initial_estimates(coeffs), tol, d)
    if certified is None and d <= 64:
        with mpmath.workdps(160):
            try:
                fallback = mpmath.polyroots(
                    [mpmath.mpf(c) for c in reversed(coeffs)], maxsteps=100, extraprec=200
                )
            except mpmath.libmp.NoConvergence:
                fallback = None
        if fallback is not None:
            certified = _attempt(coeffs, list(fallback), tol, d)
    if certified is None:
        raise DomainError("could not certify roots to tolerance %g" % tol)
    return sorted(out + certified, key=lambda t: (t[0].real, t[0].imag))


def _eval_digits(coeffs, extra: int) -> int:
    # digits needed so Horner evaluation resolves values near the roots:
    # log10 of sum |c_k| B^k at the Fujiwara-style root bound B, plus slack
    d = len(coeffs) - 1
    lead = abs(coeffs[d]).bit_length()
    blog = 1.0
    for k in range(d):
        if coeffs[k]:
            blog = max(blog, 1.0 + (abs(coeffs[k]).bit_length() - lead) / (d - k))
    mag_bits = max(abs(c).bit_length() + k * blog for k, c in enumerate(coeffs) if c)
    return int(0.302 * (mag_bits + d.bit_length())) + extra


def _attempt(coeffs, roots, tol, d):
    # Certification drives the loop.  Each rung re-polishes only the
    # points whose disks failed, at the current working precision; the
    # precision grows only when certification reports evaluation noise,
    # since points stuck in a slow linear phase of Newton need more
    # iterations, not more digits.  Progress is measured by the failing
    # count; three rungs without improvement is a refusal.
    dps = max(30, _eval_digits(coeffs, 12 + int(-math.log10(tol))))
    bad = None
    best = (len(roots) + 1, math.inf)
    stall = 0
    for _ in range(24):
        roots = _polish(coeffs, roots, dps, idx=bad)
        pairs, suggest, bad = _certify(coeffs, roots, tol, dps)
        if bad is None:
            return pairs
        if not bad:
            return None
        worst = max(pairs[i][1] for i in bad)
        if len(bad) < best[0] or worst < 0.5 * best[1]:
            best = (min(best[0], len(bad)), min(best[1], worst))
            stall = 0
        else:
            stall += 1
            if stall >= 3:
                return None
        if suggest > dps:
            if suggest > _MAX_DIGITS:
                return None
            dps = suggest
    return None


def _taylor_shift(coeffs, a: Fraction) -> tuple[Fraction, ...]:
    # coefficients of f(z + a) by repeated synthetic division
    cs = [Fraction(c) for c in coeffs]
    d = len(cs) - 1
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            cs[j] += a * cs[j + 1]
    return tuple(cs)


def _clear_denominators(coeffs) -> tuple[int, ...]:
    scale = 1
    for c in coeffs:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    ints = [int(c * scale) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return tuple(c // g for c in ints)


def _looks_symmetric(coeffs, mu: Fraction) -> bool:
    # cheap necessary condition for the root set to be symmetric about mu
    with mpmath.workdps(30):
        m = mpmath.mpf(mu.numerator) / mu.denominator
        t = mpmath.mpc("0.8312", "0.3179")
        cs = [mpmath.mpmathify(c) for c in coeffs]
        a = _mp_eval(cs, m + t)
        b = _mp_eval(cs, m - t)
        return abs(a - b) <= mpmath.mpf("1e-9") * (1 + abs(a) + abs(b))


def _initial_estimates(coeffs) -> list[complex]:
    # If the root set is symmetric about its mean mu, then f(z + mu) is a
    # polynomial in z^2 and the roots are mu plus the square roots of the
    # half-degree even part's roots.  Recursing on that structure keeps the
    # eigenvalue stage well conditioned at high degree; anything without
    # the symmetry goes straight to the companion matrix.
    d = len(coeffs) - 1
    if d > 2 and d % 2 == 0:
        mu = Fraction(-coeffs[d - 1], d * coeffs[d])
        if _looks_symmetric(coeffs, mu):
            shifted = _taylor_shift(coeffs, mu)
            if all(shifted[j] == 0 for j in range(1, d + 1, 2)):
                even = _clear_denominators(shifted[::2])
                sub_dps = max(30, _eval_digits(even, 12))
                sub = _initial_estimates(even)
                for _ in range(3):
                    sub = _polish(even, sub, sub_dps)
                sub = [complex(z) for z in sub]
                m = complex(mu)
                roots = []
                for w in sub:
                    s = cmath.sqrt(complex(w))
                    roots.append(m + s)
                    roots.append(m - s)
                return roots
    approx = np.roots(list(reversed(_float_coeffs(coeffs))))
    return [complex(z) for z in approx]


def _polish(coeffs, roots, dps, idx=None, sweeps=12):
    # Best-effort simultaneous refinement; certification is the strict
    # gate.  Each sweep applies the repulsion-corrected Newton step
    #     z -= n / (1 - n * sum_j 1/(z - z_j)),   n = f(z)/f'(z),
    # so distinct points cannot merge onto one root the way independent
    # Newton runs do; exact duplicates are jittered apart first.  The
    # repulsion sums run in machine precision (they only matter while
    # steps are large); values below the rigorous evaluation-error floor
    # count as converged.  Only the points in idx move when it is given.
    d = len(coeffs) - 1
    deriv = tuple(j * coeffs[j] for j in range(1, d + 1))
    targets = list(range(len(roots))) if idx is None else list(idx)
    with mpmath.workdps(dps):
        unit = mpmath.mpf(2) ** (3 - mpmath.mp.prec)
        slack = (4 * d + 8) * unit
        cs = [mpmath.mpmathify(c) for c in coeffs]
        ds = [mpmath.mpmathify(c) for c in deriv]
        acs = [abs(c) for c in cs]
        half = mpmath.mpf("0.5")
        tiny = mpmath.mpf(10) ** (8 - dps)
        cur = [mpmath.mpc(z) for z in roots]
        seen = {}
        for i, z in enumerate(cur):
            key = complex(z)
            k = seen.get(key, 0)
            seen[key] = k + 1
            if k:
                bump = 1e-6 * (1.0 + abs(key)) * cmath.exp(2j * math.pi * (k / 7.0 + 0.1))
                cur[i] = z + bump
        active = set(targets)
        for _ in range(sweeps):
            if not active:
                break
            snap = np.array([complex(z) for z in cur])
            diff = snap[:, None] - snap[None, :]
            np.fill_diagonal(diff, np.inf)
            with np.errstate(divide="ignore", invalid="ignore"):
                rep = np.where(diff != 0, 1.0 / diff, 0.0).sum(axis=1)
            for i in tuple(active):
                z = cur[i]
                fz = _mp_eval(cs, z)
                if abs(fz) <= 3 * _mp_eval(acs, abs(z)) * slack:
                    active.discard(i)
                    continue
                dz = _mp_eval(ds, z)
                if dz == 0:
                    active.discard(i)
                    continue
                n = fz / dz
                try:
                    nf = complex(n)
                except (OverflowError, ValueError):
                    nf = 0.0
                denom = 1.0 - nf * complex(rep[i])
                if denom == 0 or not (math.isfinite(denom.real) and math.isfinite(denom.imag)):
                    denom = 1.0
                step = n / denom
                astep = abs(step)
                if astep > half * (1 + abs(z)):
                    continue
                cur[i] = z - step
                if astep <= tiny * (1 + abs(z)):
                    active.discard(i)
        return cur


def _certify(coeffs, roots, tol, dps):
    """One rigorous certification pass.

    Returns (pairs, dps, bad) with pairs holding a (point, radius) entry
    for every input point.  On success bad is None and every radius is
    below tol; when some disks fail, bad is the tuple of their indices
    and the middle entry is the working precision the pass wants next
    (equal to dps when more digits would not help); an empty bad marks a
    structural failure, meaning every disk certifies but two of them
    overlap, so the points do not separate the roots.
    """
    d = len(coeffs) - 1
    deriv = tuple(j * coeffs[j] for j in range(1, d + 1))
    tol_mp = mpmath.mpf(tol)
    with mpmath.workdps(dps + 20):
        unit = mpmath.mpf(2) ** (3 - mpmath.mp.prec)
        slack = 4 * d + 8
        cs = [mpmath.mpmathify(c) for c in coeffs]
        ds = [mpmath.mpmathify(c) for c in deriv]
        acs = [abs(c) for c in cs]
        ads = [abs(c) for c in ds]
        pairs = []
        suggest = dps
        bad = []
        for i, z in enumerate(roots):
            az = abs(z)
            fz = abs(_mp_eval(cs, z))
            dz = abs(_mp_eval(ds, z))
            magf = _mp_eval(acs, az)
            magd = _mp_eval(ads, az)
            ef = magf * unit * slack
            ed = magd * unit * slack
            if dz <= 2 * ed:
                # derivative drowned in evaluation noise: digits do help
                grow = int(mpmath.ceil(mpmath.log10(ed + 1))) + 15
                suggest = max(suggest, dps + max(grow, 10))
                bad.append(i)
                pairs.append((complex(z), math.inf))
                continue
            rad = d * (fz + ef) / (dz - ed)
            if rad < tol_mp:
                pairs.append((complex(z), float(rad * (1 + mpmath.mpf("1e-9")))))
                continue
            bad.append(i)
            pairs.append((complex(z), float(rad)))
            if ef >= fz / 4:
                # the residual is mostly evaluation noise: more digits
                u_req = tol_mp * dz / (6 * d * magf * slack)
                if u_req > 0:
                    suggest = max(suggest, int(mpmath.ceil(-mpmath.log10(u_req))) + 8)
                else:
                    suggest = max(suggest, 2 * dps)
        if bad:
            return pairs, suggest, tuple(bad)
    for i in range(len(pairs)):
        zi, ri = pairs[i]
        for j in range(i + 1, len(pairs)):
            zj, rj = pairs[j]
            if abs(zi - zj) <= ri + rj:
                return pairs, dps, ()
    return pairs, dps, None


def arch_support(divisor, tol: float = 1e-13) -> list[tuple[complex, float, int]]:
    """Certified complex support of the finite part, with multiplicities.

    Returns (root, radius, multiplicity) triples across all squarefree
    factors; the point at infinity is not included.
    """
    support = []
    for factor, mult in divisor.squarefree_factors:
        for z, rad in certified_roots(factor, tol):
            support.append((z, rad, mult))
    return support
