import json
import math
import random
from fractions import Fraction

from adelic.divisors import divisor_from_poly
from adelic.heights import HeightInterval, global_fekete, height, uniform_sup
from adelic.weights import ex5_weight, std_weight, trivial_weight

from helpers import LOG2, random_divisor


def test_height_interval_contains():
    h = HeightInterval(1.0, 1e-3, 1e-4)
    assert h.lo < 1.0 < h.hi
    assert 1.0005 in h
    assert 1.01 not in h
    assert h.width <= 2 * (1e-3 + 1e-4) + 1e-15


def test_classical_weil_heights():
    g = std_weight()
    # h(2) via z - 2 and h(1/2) via 2z - 1 both equal log 2
    assert abs(height(divisor_from_poly([-2, 1]), g).value - LOG2) < 1e-12
    assert abs(height(divisor_from_poly([-1, 2]), g).value - LOG2) < 1e-12
    # h(sqrt 2) = (log 2)/2
    assert abs(height(divisor_from_poly([-2, 0, 1]), g).value - LOG2 / 2) < 1e-12
    # unit roots have height zero
    for n in (2, 3, 8):
        Z = divisor_from_poly([-1] + [0] * (n - 1) + [1])
        assert abs(height(Z, g).value) < 1e-12
    # the point at infinity alone
    assert abs(height(divisor_from_poly([1], inf_mult=1), g).value) < 1e-15


def test_height_scalar_invariance():
    rng = random.Random(88)
    g = std_weight()
    for _ in range(15):
        Z = random_divisor(rng, max_deg=6)
        k = rng.choice([-5, -2, 3, 7])
        scaled = divisor_from_poly(
            [k * c for c in Z.finite_part.coeffs], Z.inf_mult)
        a = height(Z, g)
        b = height(scaled, g)
        assert abs(a.value - b.value) <= a.err + b.err + 1e-14


def test_height_trivial_weight_hand_values():
    # round Mahler term plus the constant arch weight -1/4 per point
    g0 = trivial_weight()
    h = height(divisor_from_poly([-2, 1]), g0)
    assert abs(h.value - (0.5 * math.log(5) - 0.25)) < 1e-12
    h = height(divisor_from_poly([-1, 0, 1]), g0)
    assert abs(h.value - (0.5 * LOG2 - 0.25)) < 1e-12
    h = height(divisor_from_poly([1], inf_mult=1), g0)
    assert abs(h.value - (-0.25)) < 1e-14


def test_global_identity_residual_small():
    rng = random.Random(404)
    weights = [(trivial_weight(), 1e-9), (std_weight(), 1e-9), (ex5_weight(), 1e-2)]
    for _ in range(10):
        Z = random_divisor(rng, max_deg=6)
        for g, tail in weights:
            rep = global_fekete(Z, g, tail_eps=tail)
            assert rep.identity_residual <= rep.identity_slack
            assert rep.dstar_product_formula


def test_report_rows_are_exact_at_finite_places():
    Z = divisor_from_poly([-2, 0, 1])
    rep = global_fekete(Z, std_weight())
    for row in rep.rows:
        if row.place.is_archimedean:
            assert not row.fekete.is_exact
        else:
            assert row.fekete.is_exact
            assert row.log_dstar.is_exact


def test_uniform_sup_oracles():
    # z^2 - 2 with the trivial weight: the p = 2 row carries 3 log 2,
    # degree 2, so the normalized value is (3/4) log 2
    Z = divisor_from_poly([-2, 0, 1])
    u = uniform_sup(Z, trivial_weight())
    arch = abs(global_fekete(Z, trivial_weight()).fekete_arch)
    assert abs(u - max(0.75 * LOG2, arch)) < 1e-10
    # degree-1 divisors pair trivially
    assert uniform_sup(divisor_from_poly([-1, 2]), std_weight()) == 0.0


def test_uniform_sup_unit_roots_closed_form():
    Z = divisor_from_poly([-1] + [0] * 63 + [1])
    u = uniform_sup(Z, std_weight())
    assert abs(u - math.log(64) / 64) < 1e-6


def test_report_json_roundtrips():
    Z = divisor_from_poly([-2, 0, 1], inf_mult=1)
    rep = global_fekete(Z, std_weight())
    blob = json.dumps(rep.to_json())
    back = json.loads(blob)
    assert back["degree"] == 3
    assert back["inf_mult"] == 1
    assert back["diagonal_ratio"] == "1/3"
    assert len(back["rows"]) == len(rep.rows)
    assert back["height"]["lo"] <= back["height"]["value"] <= back["height"]["hi"]
    finite_rows = [r for r in back["rows"] if r["place"] != "inf"]
    assert all("coeff" in r["fekete"] for r in finite_rows)


def test_height_tail_is_reported():
    Z = divisor_from_poly([-1, 0, 1])
    h = height(Z, ex5_weight(), tail_eps=1e-2)
    assert 0 < h.tail < 1e-2
    assert h.hi - h.lo >= 2 * h.tail
