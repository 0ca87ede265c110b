"""Modified Bessel K by certified trapezoid quadrature."""

from fractions import Fraction

import mpmath
import pytest

from conetorsion.besselk import (
    bessel_k,
    bessel_k_half_closed,
    bessel_k_on_grid,
    build_bessel_grid,
    k_envelope_half,
)
from conetorsion.enclosure import DomainError, Enclosure
from test_enclosure import mpf_fraction


def mp_of(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def enclosure_of(x: Fraction, digits: int = 40) -> Enclosure:
    return Enclosure.exact(x, digits)


def test_k0_against_mpmath():
    mpmath.mp.dps = 60
    for x in (Fraction(1), Fraction(7, 2), Fraction(25, 4), Fraction(20)):
        ours = bessel_k(Enclosure.exact(0, 40), enclosure_of(x), 40)
        true = mpf_fraction(mpmath.besselk(0, mp_of(x)))
        assert ours.contains_scalar(true), x
        assert float(ours.radius) < 1e-30, x


def test_k_half_matches_closed_form():
    for x in (Fraction(2), Fraction(13, 3)):
        nu = Enclosure.exact(Fraction(1, 2), 40)
        quad = bessel_k(nu, enclosure_of(x), 40)
        closed = bessel_k_half_closed(enclosure_of(x), 40)
        assert quad.consistent_with(closed), x


def test_k_even_in_nu():
    x = enclosure_of(Fraction(3))
    plus = bessel_k(Enclosure.exact(Fraction(1, 2), 40), x, 40)
    minus = bessel_k(Enclosure.exact(Fraction(-1, 2), 40), x, 40)
    assert plus.consistent_with(minus)


def test_k0_positive_and_decreasing():
    values = [bessel_k(Enclosure.exact(0, 35), enclosure_of(Fraction(n)), 35)
              for n in (1, 2, 4, 8)]
    for v in values:
        assert v.is_strictly_positive()
    for a, b in zip(values, values[1:]):
        assert b.strictly_less_than(a)


def test_envelope_dominates_k0_on_tail():
    # K_0 < K_{1/2} pointwise
    for x in (Fraction(2), Fraction(6)):
        k0 = bessel_k(Enclosure.exact(0, 35), enclosure_of(x, 35), 35)
        env = k_envelope_half(enclosure_of(x, 35), 35)
        assert k0.strictly_less_than(env)


def test_grid_reuse_matches_fresh_calls():
    grid = build_bessel_grid(Fraction(2), None, 40)
    nu = Enclosure.exact(0, 40)
    for x in (Fraction(2), Fraction(5), Fraction(11)):
        shared = bessel_k_on_grid(grid, nu, enclosure_of(x))
        fresh = bessel_k(nu, enclosure_of(x), 40)
        assert shared.consistent_with(fresh)


def test_domain_rejections():
    with pytest.raises(DomainError):
        bessel_k(Enclosure.exact(0, 35), Enclosure.exact(0, 35), 35)
    with pytest.raises(DomainError):
        bessel_k(Enclosure.exact(0, 35), Enclosure.exact(-3, 35), 35)
    with pytest.raises(DomainError):
        bessel_k(Enclosure.exact(2, 35), Enclosure.exact(1, 35), 35)
