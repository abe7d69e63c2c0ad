import math
import random
from fractions import Fraction

import pytest

from adelic.divisors import divisor_from_poly
from adelic.exact import DomainError
from adelic.places import (
    ARCH,
    Place,
    log_abs,
    log_abs_float,
    product_formula_check,
    relevant_places,
)
from adelic.weights import ex5_weight, std_weight, trivial_weight


def test_place_construction_and_order():
    assert str(ARCH) == "inf"
    assert str(Place(7)) == "7"
    assert ARCH.is_archimedean and not Place(2).is_archimedean
    assert sorted([ARCH, Place(5), Place(2)]) == [Place(2), Place(5), ARCH]
    with pytest.raises(DomainError):
        Place(6)


def test_log_abs_exact_values():
    v = log_abs(Fraction(3, 8), Place(2))
    assert v.coeff == 3 and v.base == 2
    v = log_abs(Fraction(3, 8), Place(3))
    assert v.coeff == -1
    v = log_abs(Fraction(3, 8), ARCH)
    assert abs(v.value - math.log(3 / 8)) < 1e-15


def test_log_abs_float_big_integers():
    n = 10 ** 400 + 7
    val, err = log_abs_float(Fraction(n))
    assert abs(val - 400 * math.log(10)) < 1e-9
    assert err < 1e-12


def test_product_formula_rationals():
    rng = random.Random(9)
    for _ in range(100):
        q = Fraction(rng.randint(1, 10 ** 9), rng.randint(1, 10 ** 9))
        q *= rng.choice([1, -1])
        assert product_formula_check(q)
    assert product_formula_check(Fraction(1))


def test_relevant_places_finitely_supported():
    # std weight vanishes at finite places, so only lc/dstar primes matter
    Z = divisor_from_poly([-2, 0, 1])  # dstar -8, lc 1
    rel = relevant_places(Z, std_weight(), 1e-9)
    assert [str(v) for v in rel.places] == ["2", "inf"]
    assert rel.tail_bound == 0.0

    Z = divisor_from_poly([-1, 2])  # lc 2, single point
    rel = relevant_places(Z, trivial_weight(), 1e-9)
    assert [str(v) for v in rel.places] == ["2", "inf"]


def test_relevant_places_with_weight_tail():
    Z = divisor_from_poly([-1, 0, 1])
    g = ex5_weight()
    rel = relevant_places(Z, g, 0.05)
    primes = [v.prime for v in rel.places if not v.is_archimedean]
    # all primes up to the cutoff are present, plus the arch place
    assert rel.places[-1] is ARCH or rel.places[-1].is_archimedean
    assert primes == sorted(primes)
    assert rel.tail_bound < 0.05 / Z.degree
    assert rel.prime_cutoff >= primes[-1]


def test_relevant_places_cutoff_guard():
    # an infinitely supported weight with a microscopic tail target would
    # need an astronomical prime cutoff; that is refused, not attempted
    Z = divisor_from_poly([-1, 0, 1])
    with pytest.raises(DomainError):
        relevant_places(Z, ex5_weight(), 1e-9)
