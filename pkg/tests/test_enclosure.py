"""Ball arithmetic: every operation must contain the true value."""

import random
from fractions import Fraction

import mpmath
import pytest

from conetorsion.enclosure import (
    DEFAULT_DIGITS,
    DomainError,
    Enclosure,
    atanh,
    cosh,
    exp,
    expm1,
    log,
    log2_const,
    parse_decimal,
    pi,
    sinh,
    sqrt,
    sum_enclosures,
)


def mpf_fraction(x) -> Fraction:
    # exact binary value of an mpmath float
    sign, man, e, _ = x._mpf_
    f = Fraction(int(man)) * Fraction(2) ** e
    return -f if sign else f


def test_exact_has_zero_radius_for_small_ints():
    for v in (0, 1, -3, 7):
        e = Enclosure.exact(v, 30)
        assert float(e.radius) == 0.0
        assert e.contains_scalar(v)


def test_exact_fraction_is_contained():
    x = Fraction(22, 7)
    e = Enclosure.exact(x, 40)
    assert e.contains_scalar(x)
    assert float(e.radius) < 1e-39


def test_from_endpoints_orders_and_contains():
    e = Enclosure.from_endpoints(Fraction(1, 3), Fraction(1, 2), 30)
    assert e.contains_scalar(Fraction(2, 5))
    assert not e.contains_scalar(Fraction(3, 5))
    with pytest.raises(DomainError):
        Enclosure.from_endpoints(1, 0, 30)


def test_digit_bounds_rejected():
    with pytest.raises(DomainError):
        Enclosure.exact(1, 10)
    with pytest.raises(DomainError):
        Enclosure.exact(1, 10**4)


def test_arithmetic_inclusion_randomized():
    # sample exact rational points, push them through the four operations,
    # and require the interval image to contain the exact rational result
    rng = random.Random(20240817)
    for _ in range(200):
        a = Fraction(rng.randint(-999, 999), rng.randint(1, 999))
        b = Fraction(rng.randint(-999, 999), rng.randint(1, 999))
        ea, eb = Enclosure.exact(a, 30), Enclosure.exact(b, 30)
        assert (ea + eb).contains_scalar(a + b)
        assert (ea - eb).contains_scalar(a - b)
        assert (ea * eb).contains_scalar(a * b)
        if b != 0:
            assert (ea / eb).contains_scalar(a / b)


def test_division_through_zero_rejected():
    num = Enclosure.exact(1, 30)
    den = Enclosure.from_endpoints(-1, 1, 30)
    with pytest.raises(DomainError):
        num / den


def test_scalar_reflected_operators():
    e = Enclosure.exact(Fraction(1, 4), 30)
    assert (1 + e).contains_scalar(Fraction(5, 4))
    assert (1 - e).contains_scalar(Fraction(3, 4))
    assert (3 * e).contains_scalar(Fraction(3, 4))
    assert (1 / e).contains_scalar(4)


def test_pow_int_negative_exponent():
    e = Enclosure.exact(Fraction(3, 2), 30)
    assert e.pow_int(2).contains_scalar(Fraction(9, 4))
    assert e.pow_int(-2).contains_scalar(Fraction(4, 9))
    assert e.pow_int(0).contains_scalar(1)
    zero_straddle = Enclosure.from_endpoints(-1, 1, 30)
    with pytest.raises(DomainError):
        zero_straddle.pow_int(-1)


def test_monotone_functions_contain_true_value():
    mpmath.mp.dps = 60
    cases = [
        (exp, mpmath.exp, Fraction(7, 10)),
        (log, mpmath.log, Fraction(22, 7)),
        (sqrt, mpmath.sqrt, Fraction(5, 3)),
        (expm1, mpmath.expm1, Fraction(-3, 7)),
        (sinh, mpmath.sinh, Fraction(9, 8)),
        (cosh, mpmath.cosh, Fraction(9, 8)),
        (atanh, mpmath.atanh, Fraction(2, 5)),
    ]
    for ours, theirs, x in cases:
        e = ours(Enclosure.exact(x, 40))
        true = mpf_fraction(theirs(mpmath.mpf(x.numerator) / x.denominator))
        assert e.contains_scalar(true), ours
        assert float(e.radius) < 1e-35, ours


def test_function_domain_errors():
    with pytest.raises(DomainError):
        log(Enclosure.from_endpoints(-1, 1, 30))
    with pytest.raises(DomainError):
        sqrt(Enclosure.exact(-2, 30))
    with pytest.raises(DomainError):
        atanh(Enclosure.exact(1, 30))


def test_constants_against_mpmath():
    mpmath.mp.dps = 80
    assert pi(60).contains_scalar(mpf_fraction(mpmath.pi + 0))
    assert log2_const(60).contains_scalar(mpf_fraction(mpmath.log(2)))


def test_decimal_roundtrip_contains_original():
    e = log(Enclosure.exact(Fraction(10, 3), 40))
    back = parse_decimal(e.decimal(30), 40)
    assert e.contained_in(back)


def test_decimal_radius_is_padded_not_lost():
    e = Enclosure.exact(Fraction(1, 3), 40)
    printed = e.decimal(12)
    # at 12 displayed digits the printed radius absorbs the display rounding
    assert "±" in printed
    assert float(e.radius) < 1e-39


def test_widened_and_at_digits():
    e = Enclosure.exact(1, 40)
    w = e.widened(Fraction(1, 1000))
    assert w.contains_scalar(Fraction(1001, 1000))
    with pytest.raises(DomainError):
        e.widened(Fraction(-1, 2))
    down = w.at_digits(30)
    assert w.contained_in(down.widened(Fraction(1, 10**25)))
    assert down.digits == 30


def test_higher_precision_nests():
    x = Fraction(17, 13)
    coarse = log(Enclosure.exact(x, 25))
    fine = log(Enclosure.exact(x, 50))
    assert fine.at_digits(25).contained_in(coarse)


def test_predicates():
    a = Enclosure.from_endpoints(1, 2, 30)
    b = Enclosure.from_endpoints(3, 4, 30)
    assert a.strictly_less_than(b)
    assert a.separated_from(b)
    assert not a.consistent_with(b)
    assert a.is_strictly_positive()
    assert (-a).is_strictly_negative()
    assert a.inside_bounds(Fraction(1, 2), Fraction(5, 2))
    assert not a.inside_bounds(Fraction(3, 2), 3)


def test_sum_enclosures_matches_fold():
    rng = random.Random(7)
    terms = [Enclosure.exact(Fraction(rng.randint(-50, 50), rng.randint(1, 50)), 30)
             for _ in range(20)]
    total = sum_enclosures(terms, 30)
    fold = Enclosure.exact(0, 30)
    for t in terms:
        fold = fold + t
    assert total.consistent_with(fold)
    rng = random.Random(7)
    exact = sum(Fraction(rng.randint(-50, 50), rng.randint(1, 50))
                for _ in range(20))
    assert total.contains_scalar(exact)


def test_default_digits_value():
    assert DEFAULT_DIGITS == 60
    assert Enclosure.exact(1).digits == 60
