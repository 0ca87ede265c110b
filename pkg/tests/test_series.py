"""Series summation with certified tails."""

from fractions import Fraction

import pytest

from conetorsion.enclosure import Enclosure, PrecisionExhaustedError
from conetorsion.series import SeriesSpec, geometric_tail, sum_series


def geometric_spec(ratio: Fraction, digits: int) -> SeriesSpec:
    # sum_{n>=1} r^n = r/(1-r); tail after n is r^{n+1}/(1-r)
    return SeriesSpec(
        term=lambda n: Enclosure.exact(ratio**n, digits),
        tail_radius=lambda n: ratio ** (n + 1) / (1 - ratio),
    )


def test_geometric_series_hits_closed_form():
    r = Fraction(1, 3)
    total = sum_series(geometric_spec(r, 30), 30,
                       target_radius=Fraction(1, 10**20))
    assert total.contains_scalar(r / (1 - r))
    assert float(total.radius) <= 1e-20


def test_sum_series_without_target_uses_all_terms():
    r = Fraction(1, 2)
    total = sum_series(geometric_spec(r, 30), 30, max_terms=40)
    assert total.contains_scalar(1)
    assert float(total.radius) < 1e-10


def test_unreachable_target_raises_with_best_effort():
    r = Fraction(9, 10)
    with pytest.raises(PrecisionExhaustedError) as err:
        sum_series(geometric_spec(r, 30), 30,
                   target_radius=Fraction(1, 10**40), max_terms=10)
    best = err.value.best
    assert best is not None
    assert best.contains_scalar(9)


def test_summation_order_is_ascending():
    seen = []

    def term(n):
        seen.append(n)
        return Enclosure.exact(Fraction(1, 4**n), 25)

    spec = SeriesSpec(term=term, tail_radius=lambda n: Fraction(1, 3 * 4**n))
    sum_series(spec, 25, max_terms=6)
    assert seen == sorted(seen)
    assert seen[0] == 1


def test_geometric_tail_is_upper_bound():
    t = geometric_tail(Fraction(1, 100), Fraction(1, 2), 30)
    assert float(t) >= 0.02
    with pytest.raises(Exception):
        geometric_tail(Fraction(1, 100), 2, 30)


def test_bad_tail_rule_rejected():
    spec = SeriesSpec(term=lambda n: Enclosure.exact(1, 25),
                      tail_radius=lambda n: Fraction(-1, 2))
    with pytest.raises(Exception):
        sum_series(spec, 25, target_radius=Fraction(1, 10), max_terms=3)
