"""Certified summation of infinite series.

A series is described by a term generator together with a tail rule: an
upper bound for the absolute value of everything not yet summed.  The sum
of the terms actually evaluated is tracked in ball arithmetic, and the tail
bound is folded into the final radius, so the result encloses the exact
series value whenever the tail rule is valid.

Truncation policy: stop as soon as accumulated radius + tail bound meets
``target_radius``, or after ``max_terms`` evaluations.  Hitting the budget
with the target unmet raises :class:`PrecisionExhaustedError` carrying the
best enclosure found, which is still correct, just wider than requested.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

import gmpy2
from gmpy2 import mpfr

from .enclosure import (
    DEFAULT_DIGITS,
    DomainError,
    Enclosure,
    PrecisionExhaustedError,
    Scalar,
    _ctx,
)

RadiusLike = Union[int, Fraction, mpfr, Enclosure]


@dataclass(frozen=True)
class SeriesSpec:
    """Terms ``term(n)`` for n >= start, with ``tail_radius(n)`` bounding
    |sum of all terms with index > n|.  The tail rule must be valid for every
    index at which it is consulted; good rules are nonincreasing in n."""

    term: Callable[[int], Enclosure]
    tail_radius: Callable[[int], RadiusLike]
    start: int = 1


def _as_radius(x: RadiusLike, digits: int) -> mpfr:
    cs = _ctx(digits)
    if isinstance(x, Enclosure):
        v = x.hi
    elif isinstance(x, mpfr):
        v = x
    elif isinstance(x, int):
        v = cs.ru.add(mpfr(0), x)
    elif isinstance(x, Fraction):
        v = cs.ru.add(mpfr(0), gmpy2.mpq(x.numerator, x.denominator))
    else:
        raise TypeError(f"cannot interpret {type(x).__name__} as a radius")
    if not gmpy2.is_finite(v) or v < 0:
        raise DomainError(f"tail bound must be finite and nonnegative, got {v}")
    return v


def sum_series(spec: SeriesSpec,
               digits: int = DEFAULT_DIGITS,
               target_radius: Scalar | None = None,
               max_terms: int = 20_000,
               check_every: int = 1) -> Enclosure:
    """Sum a series in ascending index order to a certified enclosure."""
    if max_terms < 1:
        raise DomainError("max_terms must be at least 1")
    cs = _ctx(digits)
    target = None
    if target_radius is not None:
        target = _as_radius(target_radius, digits)
        if not target > 0:
            raise DomainError("target_radius must be positive")

    total = Enclosure.exact(0, digits)
    n = spec.start
    tail = None
    for evaluated in range(1, max_terms + 1):
        total = total + spec.term(n)
        if target is not None and evaluated % check_every == 0:
            tail = _as_radius(spec.tail_radius(n), digits)
            if cs.ru.add(total.radius, tail) <= target:
                return total.widened(tail)
        n += 1

    last = n - 1
    tail = _as_radius(spec.tail_radius(last), digits)
    best = total.widened(tail)
    if target is None:
        return best
    raise PrecisionExhaustedError(
        f"series did not reach radius {target} within {max_terms} terms "
        f"(achieved {best.radius})",
        best,
    )


def geometric_tail(first_omitted_bound: RadiusLike, ratio: RadiusLike,
                   digits: int = DEFAULT_DIGITS) -> mpfr:
    """Tail bound b/(1-r) for |a_{J+1}| <= b and |a_{n+1}/a_n| <= r < 1.

    Everything is computed rounding up, so the result is a true upper bound.
    """
    cs = _ctx(digits)
    b = _as_radius(first_omitted_bound, digits)
    r = _as_radius(ratio, digits)
    if not r < 1:
        raise DomainError(f"geometric ratio must be < 1, got {r}")
    den = cs.rd.sub(mpfr(1), r)
    return cs.ru.div(b, den)
