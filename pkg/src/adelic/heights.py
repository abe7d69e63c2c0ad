"""Adelic aggregation: weighted heights and global pairing reports.

Everything here folds the per-place data of ``local`` over the finite
list of relevant places.  Finite-place entries stay exact rationals
times log p; the archimedean entry and the omitted-place tail are the
only sources of interval width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .berkovich import INF_POINT
from .divisors import EffectiveDivisor
from .exact import _EPS, INF, LogValue, float_sum, val_p
from .local import (
    arch_support,
    fekete_sum,
    fekete_sum_arch_identity,
    mahler_g,
    mahler_sharp,
    nonarch_root_data,
)
from .places import ARCH, Place, log_abs, product_formula_check, relevant_places
from .weights import Weight

__all__ = [
    "HeightInterval",
    "PlaceRow",
    "GlobalReport",
    "height",
    "global_fekete",
    "uniform_sup",
]


@dataclass(frozen=True)
class HeightInterval:
    """Certified enclosure of a weighted adelic height.

    value carries the computed sum over relevant places, err the
    accumulated archimedean evaluation error, and tail a bound on the
    total contribution of every omitted place.  Exact inputs (finite
    places only, finitely supported weight) give a zero-width interval.
    """

    value: float
    err: float
    tail: float

    @property
    def lo(self) -> float:
        return self.value - self.err - self.tail

    @property
    def hi(self) -> float:
        return self.value + self.err + self.tail

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, x: float) -> bool:
        return self.lo <= float(x) <= self.hi

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "err": self.err,
            "tail": self.tail,
            "lo": self.lo,
            "hi": self.hi,
        }


def height(
    Z: EffectiveDivisor,
    g: Weight,
    tail_eps: float = 1e-9,
    root_tol: float = 1e-13,
) -> HeightInterval:
    """Weighted height of the divisor: sum over places of the weighted
    Mahler measure, divided by the degree.

    The place list is the certified relevant set for half of tail_eps,
    so the interval width never exceeds tail_eps plus the archimedean
    evaluation error.
    """
    rel = relevant_places(Z, g, tail_eps / 2.0)
    vals = [mahler_g(Z, g, v, root_tol) for v in rel.places]
    tot, err = float_sum(vals)
    d = Z.degree
    return HeightInterval(tot / d, err / d + _EPS * abs(tot / d), rel.tail_bound)


@dataclass(frozen=True)
class PlaceRow:
    """Per-place line of a global report.

    All four entries are LogValues: exact at finite places, error
    bounded floats at the archimedean place.
    """

    place: Place
    mahler_round: LogValue
    mahler_weighted: LogValue
    fekete: LogValue
    log_dstar: LogValue

    def to_json(self) -> dict:
        return {
            "place": str(self.place),
            "mahler_round": self.mahler_round.to_json(),
            "mahler_weighted": self.mahler_weighted.to_json(),
            "fekete": self.fekete.to_json(),
            "log_dstar": self.log_dstar.to_json(),
            "exact": self.fekete.is_exact,
        }


@dataclass(frozen=True)
class GlobalReport:
    """Adelic summary of one divisor against one weight.

    Aggregates are properties recomputed from the stored rows on every
    access, so they cannot drift from the per-place data.
    """

    degree: int
    inf_mult: int
    diagonal_mass: int
    diagonal_ratio: Fraction
    rows: tuple[PlaceRow, ...]
    tail_bound: float
    prime_cutoff: int | None
    identity_residual: float
    identity_slack: float
    dstar_product_formula: bool

    @property
    def height_interval(self) -> HeightInterval:
        tot, err = float_sum(r.mahler_weighted for r in self.rows)
        d = self.degree
        return HeightInterval(tot / d, err / d + _EPS * abs(tot / d), self.tail_bound)

    @property
    def fekete_total_ratio(self) -> float:
        tot, _ = float_sum(r.fekete for r in self.rows)
        return tot / self.degree ** 2

    @property
    def fekete_arch(self) -> float:
        for r in self.rows:
            if r.place.is_archimedean:
                return r.fekete._as_float()[0] / self.degree ** 2
        return 0.0

    @property
    def fekete_max_finite(self) -> float:
        best = 0.0
        for r in self.rows:
            if not r.place.is_archimedean:
                best = max(best, abs(r.fekete._as_float()[0]) / self.degree ** 2)
        return best

    @property
    def uniform_sup(self) -> float:
        """Largest normalized pairing magnitude over all places.

        Relevant places contribute their computed value; for every
        omitted place the pairing is bounded by 4 times the tail of the
        weight's sup norms, since only the weight terms survive there.
        """
        best = 4.0 * self.tail_bound
        for r in self.rows:
            if r.fekete.is_exact and r.fekete.coeff == 0:
                continue
            v, e = r.fekete._as_float()
            best = max(best, (abs(v) + e) / self.degree ** 2)
        return best

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "inf_mult": self.inf_mult,
            "diagonal_mass": self.diagonal_mass,
            "diagonal_ratio": str(self.diagonal_ratio),
            "rows": [r.to_json() for r in self.rows],
            "tail_bound": self.tail_bound,
            "prime_cutoff": self.prime_cutoff,
            "height": self.height_interval.to_json(),
            "fekete_total_ratio": self.fekete_total_ratio,
            "fekete_arch": self.fekete_arch,
            "fekete_max_finite": self.fekete_max_finite,
            "uniform_sup": self.uniform_sup,
            "identity_residual": self.identity_residual,
            "identity_slack": self.identity_slack,
            "dstar_product_formula": self.dstar_product_formula,
        }


def _diag_weight(Z: EffectiveDivisor, g: Weight, v: Place, root_tol: float) -> LogValue:
    # sum over support points of (multiplicity squared) * weight value
    if not v.is_archimedean:
        comp = g.finite(v.prime)
        acc = Fraction(0)
        for val, m in nonarch_root_data(Z, v.prime):
            s = -val if val != INF else -INF
            acc += m * m * comp.coeff_fn(s)
        acc += Z.inf_mult ** 2 * comp.at_infinity
        return LogValue.exact_log(acc, v.prime)
    tot = 0.0
    err = 0.0
    for w, rad, m in arch_support(Z, root_tol):
        t = g.arch(w)
        tot += m * m * t
        err += m * m * (g.arch.lip * rad + 4.0 * _EPS * (1.0 + abs(t)))
    if Z.inf_mult:
        t = g.arch(INF_POINT)
        tot += Z.inf_mult ** 2 * t
        err += Z.inf_mult ** 2 * 4.0 * _EPS * (1.0 + abs(t))
    return LogValue.real(tot, err)


def _diag_inf_link(Z: EffectiveDivisor, v: Place, root_tol: float) -> LogValue:
    # sum over finite support points of (multiplicity squared) times the
    # log of the round-metric distance to the point at infinity
    if not v.is_archimedean:
        acc = Fraction(0)
        for val, m in nonarch_root_data(Z, v.prime):
            if val != INF and val < 0:
                acc -= m * m * (-val)
        return LogValue.exact_log(acc, v.prime)
    tot = 0.0
    err = 0.0
    for w, rad, m in arch_support(Z, root_tol):
        t = -0.5 * math.log1p(abs(w) ** 2)
        tot += m * m * t
        err += m * m * (0.5 * rad + 4.0 * _EPS * (1.0 + abs(t)))
    return LogValue.real(tot, err)


def global_fekete(
    Z: EffectiveDivisor,
    g: Weight,
    tail_eps: float = 1e-9,
    root_tol: float = 1e-13,
) -> GlobalReport:
    """Per-place pairing table with the assembled global identity.

    For each relevant place the row carries the round and weighted
    Mahler measures, the off-diagonal pairing sum, and the local size of
    the pairwise difference product.  The report's identity_residual is
    the defect of the global relation

        sum_v (Z,Z)_v  =  -2 d^2 h + 2 sum_w m_w^2 G(w) - 2 cross

    with G(w) the adelic sum of weight values at the support point and
    cross the adelic sum of round-metric links to infinity; it must
    vanish within identity_slack.  The product formula for the pairwise
    difference product is checked exactly and reported as a flag.
    """
    rel = relevant_places(Z, g, tail_eps / 2.0)
    d = Z.degree
    ds = Z.d_star
    rows = []
    diag_vals = []
    cross_vals = []
    for v in rel.places:
        m_round = mahler_sharp(Z, v, root_tol)
        m_g = mahler_g(Z, g, v, root_tol)
        fek = fekete_sum(Z, g, v, root_tol)
        rows.append(PlaceRow(v, m_round, m_g, fek, log_abs(ds, v)))
        diag_vals.append(_diag_weight(Z, g, v, root_tol))
        cross_vals.append(_diag_inf_link(Z, v, root_tol))

    lhs, lhs_err = float_sum(r.fekete for r in rows)
    h_tot, h_err = float_sum(r.mahler_weighted for r in rows)
    dg, dg_err = float_sum(diag_vals)
    cr, cr_err = float_sum(cross_vals)
    rhs = -2.0 * d * h_tot + 2.0 * dg - 2.0 * cr
    slack = lhs_err + 2.0 * d * h_err + 2.0 * dg_err + 2.0 * cr_err
    slack += 16.0 * _EPS * (abs(lhs) + abs(rhs) + 1.0)
    residual = abs(lhs - rhs)

    # the archimedean row also has to match its difference-product route
    if d >= 2:
        direct = next(r.fekete for r in rows if r.place.is_archimedean)
        via_dstar = fekete_sum_arch_identity(Z, g, root_tol)
        dv, de = direct._as_float()
        iv, ie = via_dstar._as_float()
        residual = max(residual, abs(dv - iv))
        slack = max(slack, de + ie + 4.0 * _EPS * (1.0 + abs(dv)))

    return GlobalReport(
        degree=d,
        inf_mult=Z.inf_mult,
        diagonal_mass=Z.diagonal_mass,
        diagonal_ratio=Z.small_diagonal_ratio,
        rows=tuple(rows),
        tail_bound=rel.tail_bound,
        prime_cutoff=rel.prime_cutoff,
        identity_residual=residual,
        identity_slack=slack,
        dstar_product_formula=product_formula_check(ds),
    )


def uniform_sup(
    Z: EffectiveDivisor,
    g: Weight,
    tail_eps: float = 1e-9,
    root_tol: float = 1e-13,
) -> float:
    """Sup over all places of the normalized pairing magnitude, with the
    omitted places covered by four times the certified weight tail."""
    return global_fekete(Z, g, tail_eps, root_tol).uniform_sup
