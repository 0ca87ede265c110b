"""Midpoint-radius arithmetic on MPFR floating-point numbers.

An :class:`Enclosure` is a pair (center, radius) representing the real
interval [center - radius, center + radius].  Every operation here is
inclusion-monotone: if x lies in the input interval(s), f(x) lies in the
output interval.  Rigor comes from three mechanisms:

* centers are computed with MPFR round-to-nearest at the working precision,
  and every result radius is padded by 2^(1-prec) * |center|, an upper bound
  for the half-ulp rounding error of the center operation;
* radius arithmetic is done in a dedicated low-precision context that always
  rounds up;
* monotone elementary functions (exp, log, sqrt, atanh, sinh) are evaluated
  at the interval endpoints with directed rounding, relying on MPFR's
  correct rounding in every mode.

Working precision is specified in decimal digits D (default 60, allowed
range [20, 500]) and converted to bits with a fixed guard.  All operations
are pure; nothing here mutates global rounding state, so concurrent use
from several threads is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Union

import gmpy2
from gmpy2 import mpfr

DEFAULT_DIGITS = 60
MIN_DIGITS = 20
MAX_DIGITS = 500

# Bits of a D-digit decimal mantissa, plus slack so that decimal round-trips
# at D-2 digits cannot be lossy.
_GUARD_BITS = 24
_RADIUS_BITS = 40

Scalar = Union[int, Fraction, mpfr]


class DomainError(ValueError):
    """An operation was applied to an interval outside its domain."""


class PrecisionExhaustedError(ArithmeticError):
    """A target radius could not be met within the configured budget.

    The best enclosure found so far is attached as ``best`` so callers can
    degrade gracefully instead of losing the work (None when the failure
    happened before any enclosure existed).
    """

    def __init__(self, message: str, best: "Enclosure | None" = None):
        super().__init__(message)
        self.best = best


def bits_for(digits: int) -> int:
    if not MIN_DIGITS <= digits <= MAX_DIGITS:
        raise DomainError(
            f"precision must be in [{MIN_DIGITS}, {MAX_DIGITS}] decimal digits, got {digits}"
        )
    return int(math.ceil(digits * math.log2(10))) + _GUARD_BITS


class _CtxSet:
    __slots__ = ("n", "u", "d", "ru", "rd", "prec")

    def __init__(self, prec: int):
        self.prec = prec
        self.n = gmpy2.context(precision=prec, round=gmpy2.RoundToNearest)
        self.u = gmpy2.context(precision=prec, round=gmpy2.RoundUp)
        self.d = gmpy2.context(precision=prec, round=gmpy2.RoundDown)
        self.ru = gmpy2.context(precision=_RADIUS_BITS, round=gmpy2.RoundUp)
        self.rd = gmpy2.context(precision=_RADIUS_BITS, round=gmpy2.RoundDown)


_CTX_CACHE: dict[int, _CtxSet] = {}


def _ctx(digits: int) -> _CtxSet:
    prec = bits_for(digits)
    cs = _CTX_CACHE.get(prec)
    if cs is None:
        cs = _CTX_CACHE[prec] = _CtxSet(prec)
    return cs


def _to_mpfr_directed(x: Scalar, cs: _CtxSet) -> tuple[mpfr, mpfr]:
    """Bracket a scalar between two directed conversions."""
    if isinstance(x, mpfr):
        return x, x
    if isinstance(x, int):
        return cs.d.add(mpfr(0), x), cs.u.add(mpfr(0), x)
    if isinstance(x, Fraction):
        q = gmpy2.mpq(x.numerator, x.denominator)
        return cs.d.add(mpfr(0), q), cs.u.add(mpfr(0), q)
    raise TypeError(f"cannot build an enclosure from {type(x).__name__}")


@dataclass(frozen=True)
class Enclosure:
    """The interval [center - radius, center + radius] at a stated precision."""

    center: mpfr
    radius: mpfr
    digits: int

    def __post_init__(self):
        if not (gmpy2.is_finite(self.center) and gmpy2.is_finite(self.radius)):
            raise DomainError("enclosure endpoints must be finite")
        if self.radius < 0:
            raise DomainError("radius must be nonnegative")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def exact(x: Scalar, digits: int = DEFAULT_DIGITS) -> "Enclosure":
        cs = _ctx(digits)
        lo, hi = _to_mpfr_directed(x, cs)
        return _from_endpoints(lo, hi, digits)

    @staticmethod
    def from_decimal(text: str, digits: int = DEFAULT_DIGITS) -> "Enclosure":
        """Enclose the exact value of a decimal literal."""
        prec = bits_for(digits)
        # string parsing honors the active thread context, so swap it in
        # for the two directed conversions
        with gmpy2.context(precision=prec, round=gmpy2.RoundDown):
            lo = mpfr(text)
        with gmpy2.context(precision=prec, round=gmpy2.RoundUp):
            hi = mpfr(text)
        return _from_endpoints(lo, hi, digits)

    @staticmethod
    def from_endpoints(lo: Scalar, hi: Scalar, digits: int = DEFAULT_DIGITS) -> "Enclosure":
        cs = _ctx(digits)
        lo_d, _ = _to_mpfr_directed(lo, cs)
        _, hi_u = _to_mpfr_directed(hi, cs)
        if lo_d > hi_u:
            raise DomainError("empty interval: lo > hi")
        return _from_endpoints(lo_d, hi_u, digits)

    # -- interval views ----------------------------------------------------

    @property
    def lo(self) -> mpfr:
        """Lower bound, rounded outward (<= center - radius)."""
        return _ctx(self.digits).d.sub(self.center, self.radius)

    @property
    def hi(self) -> mpfr:
        """Upper bound, rounded outward (>= center + radius)."""
        return _ctx(self.digits).u.add(self.center, self.radius)

    def __repr__(self) -> str:
        return f"Enclosure({self.decimal(12)}, digits={self.digits})"

    def __str__(self) -> str:
        return self.decimal(12)

    # -- certified predicates ---------------------------------------------
    #
    # All predicates are conservative: True is a proof, False only means
    # "not provable from these endpoints".

    def is_strictly_positive(self) -> bool:
        return self.lo > 0

    def is_strictly_negative(self) -> bool:
        return self.hi < 0

    def separated_from(self, other: "Enclosure") -> bool:
        return self.hi < other.lo or other.hi < self.lo

    def consistent_with(self, other: "Enclosure") -> bool:
        return not self.separated_from(other)

    def strictly_less_than(self, other: "Enclosure") -> bool:
        return self.hi < other.lo

    def contains_scalar(self, x: Scalar) -> bool:
        """Certify x in [center - radius, center + radius].

        Uses inward-rounded endpoints, so a True answer is a proof even
        though the exact endpoints may not be representable.
        """
        cs = _ctx(self.digits)
        inner_lo = cs.u.sub(self.center, self.radius)   # >= exact lower endpoint
        inner_hi = cs.d.add(self.center, self.radius)   # <= exact upper endpoint
        v = x if not isinstance(x, Fraction) else gmpy2.mpq(x.numerator, x.denominator)
        return inner_lo <= v <= inner_hi

    def inside_bounds(self, a: Scalar, b: Scalar) -> bool:
        """Certify [center-radius, center+radius] within the closed interval [a, b]."""
        av = a if not isinstance(a, Fraction) else gmpy2.mpq(a.numerator, a.denominator)
        bv = b if not isinstance(b, Fraction) else gmpy2.mpq(b.numerator, b.denominator)
        return av <= self.lo and self.hi <= bv

    def contained_in(self, other: "Enclosure") -> bool:
        """Certify that this interval is a subset of the other."""
        cs = _ctx(min(self.digits, other.digits))
        other_lo_up = cs.u.sub(other.center, other.radius)
        other_hi_dn = cs.d.add(other.center, other.radius)
        return other_lo_up <= self.lo and self.hi <= other_hi_dn

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return other
        return Enclosure.exact(other, self.digits)

    def __add__(self, other) -> "Enclosure":
        b = self._coerce(other)
        d = min(self.digits, b.digits)
        cs = _ctx(d)
        c = cs.n.add(self.center, b.center)
        r = cs.ru.add(cs.ru.add(self.radius, b.radius), _round_slack(c, cs))
        return Enclosure(c, r, d)

    __radd__ = __add__

    # gmpy2 evaluates bare operators (including unary minus and abs) under
    # the *thread's* context, whose default precision is 53 bits.  Silent
    # re-rounding there would wreck every radius below, so all mpfr math in
    # this module goes through the explicit per-precision contexts.

    def __neg__(self) -> "Enclosure":
        cs = _ctx(self.digits)
        return Enclosure(cs.n.minus(self.center), self.radius, self.digits)

    def __sub__(self, other) -> "Enclosure":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Enclosure":
        return (-self) + other

    def __abs__(self) -> "Enclosure":
        cs = _ctx(self.digits)
        return Enclosure(cs.n.abs(self.center), self.radius, self.digits)

    def __mul__(self, other) -> "Enclosure":
        b = self._coerce(other)
        d = min(self.digits, b.digits)
        cs = _ctx(d)
        c = cs.n.mul(self.center, b.center)
        # |xy - c| <= ra*(|cb|+rb) + |ca|*rb + rounding of c
        r = cs.ru.add(
            cs.ru.add(
                cs.ru.mul(self.radius, cs.ru.add(cs.ru.abs(b.center), b.radius)),
                cs.ru.mul(cs.ru.abs(self.center), b.radius),
            ),
            _round_slack(c, cs),
        )
        return Enclosure(c, r, d)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Enclosure":
        b = self._coerce(other)
        d = min(self.digits, b.digits)
        cs = _ctx(d)
        bc_low = cs.rd.abs(b.center)  # |center| rounded down
        if not bc_low > b.radius:
            raise DomainError(
                f"division by an interval containing zero: {b}"
            )
        c = cs.n.div(self.center, b.center)
        num = cs.ru.add(
            cs.ru.mul(cs.ru.abs(self.center), b.radius),
            cs.ru.mul(cs.ru.abs(b.center), self.radius),
        )
        den = cs.rd.mul(bc_low, cs.rd.sub(bc_low, b.radius))
        r = cs.ru.add(cs.ru.div(num, den), _round_slack(c, cs))
        return Enclosure(c, r, d)

    def __rtruediv__(self, other) -> "Enclosure":
        return self._coerce(other) / self

    def pow_int(self, k: int) -> "Enclosure":
        """Integer power by binary exponentiation; negative k via reciprocal."""
        if k < 0:
            return 1 / self.pow_int(-k)
        result = Enclosure.exact(1, self.digits)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def pow(self, expo: Union["Enclosure", Scalar]) -> "Enclosure":
        """x**e = exp(e * log x); requires a strictly positive base."""
        e = self._coerce(expo)
        return exp(e * log(self))

    def widened(self, extra: Scalar) -> "Enclosure":
        """Same center with the radius inflated by ``extra`` (>= 0)."""
        cs = _ctx(self.digits)
        pad, pad_hi = _to_mpfr_directed(extra, cs)
        if pad_hi < 0:
            raise DomainError("widening pad must be nonnegative")
        return Enclosure(self.center, cs.ru.add(self.radius, pad_hi), self.digits)

    def at_digits(self, digits: int) -> "Enclosure":
        """Re-round to another working precision (radius grows, never shrinks)."""
        cs = _ctx(digits)
        c = cs.n.add(self.center, mpfr(0))
        r = cs.ru.add(self.radius, _round_slack(c, cs))
        return Enclosure(c, r, digits)

    # -- decimal output ----------------------------------------------------

    def decimal(self, sig: int | None = None) -> str:
        """Render as ``center ± radius`` with outward-rounded radius digits.

        The printed radius is padded by the center's decimal rounding error,
        so the printed interval contains this one and a parse round-trip
        loses at most two digits of radius sharpness.
        """
        sig = self.digits if sig is None else max(2, sig)
        cs = _ctx(self.digits)
        dec_pad = cs.ru.mul(cs.ru.abs(self.center), mpfr(f"1e-{sig - 1}"))
        printed_radius = cs.ru.add(self.radius, dec_pad)
        return f"{_format_mpfr(self.center, sig)} ± {_format_radius_up(printed_radius)}"


def _round_slack(c: mpfr, cs: _CtxSet) -> mpfr:
    # Round-to-nearest error of the center op, <= 2^(1-prec)*|c|; exact zero
    # results of MPFR +,-,*,/ are exact, hence no slack.
    if gmpy2.is_zero(c):
        return mpfr(0)
    return cs.ru.div_2exp(cs.ru.abs(c), cs.prec - 1)


def _from_endpoints(lo: mpfr, hi: mpfr, digits: int) -> Enclosure:
    cs = _ctx(digits)
    c = cs.n.div_2exp(cs.n.add(lo, hi), 1)
    r = max(cs.ru.sub(hi, c), cs.ru.sub(c, lo), mpfr(0))
    return Enclosure(c, r, digits)


def _format_mpfr(x: mpfr, sig: int) -> str:
    if gmpy2.is_zero(x):
        return "0." + "0" * (sig - 1) + "e+0"
    mant, expo, _ = x.digits(10, sig)
    sign = "-" if mant.startswith("-") else ""
    m = mant.lstrip("-")
    return f"{sign}{m[0]}.{m[1:]}e{expo - 1:+d}"


def _format_radius_up(r: mpfr) -> str:
    if gmpy2.is_zero(r):
        return "0"
    # Pad by 2^-8 before rounding to 3 digits so the printed value is an
    # upper bound for the true radius (nearest-rounding error < 0.4% pad).
    ru = gmpy2.context(precision=_RADIUS_BITS, round=gmpy2.RoundUp)
    padded = ru.add(r, ru.div_2exp(r, 8))
    mant, expo, _ = padded.digits(10, 3)
    return f"{mant[0]}.{mant[1:]}e{expo - 1:+d}"


def parse_decimal(text: str, digits: int = DEFAULT_DIGITS) -> Enclosure:
    """Inverse of :meth:`Enclosure.decimal`: parse ``center ± radius``."""
    if "±" in text:
        center_part, radius_part = text.split("±")
    else:
        center_part, radius_part = text, "0"
    base = Enclosure.from_decimal(center_part.strip(), digits)
    rad = radius_part.strip()
    if rad and rad != "0":
        return base.widened(Enclosure.from_decimal(rad, digits).hi)
    return base


# -- monotone elementary functions ----------------------------------------


def _mono_increasing(name: str, a: Enclosure,
                     lo_ok: Callable[[mpfr], bool] | None = None,
                     hi_ok: Callable[[mpfr], bool] | None = None) -> Enclosure:
    cs = _ctx(a.digits)
    lo, hi = a.lo, a.hi
    if lo_ok is not None and not lo_ok(lo):
        raise DomainError(f"{name}: interval {a} leaves the domain from below")
    if hi_ok is not None and not hi_ok(hi):
        raise DomainError(f"{name}: interval {a} leaves the domain from above")
    f_lo = getattr(cs.d, name)(lo)
    f_hi = getattr(cs.u, name)(hi)
    if not (gmpy2.is_finite(f_lo) and gmpy2.is_finite(f_hi)):
        raise DomainError(f"{name}: overflow on {a}")
    return _from_endpoints(f_lo, f_hi, a.digits)


def exp(a: Enclosure) -> Enclosure:
    return _mono_increasing("exp", a)


def expm1(a: Enclosure) -> Enclosure:
    return _mono_increasing("expm1", a)


def log(a: Enclosure) -> Enclosure:
    return _mono_increasing("log", a, lo_ok=lambda lo: lo > 0)


def sqrt(a: Enclosure) -> Enclosure:
    return _mono_increasing("sqrt", a, lo_ok=lambda lo: lo > 0)


def atanh(a: Enclosure) -> Enclosure:
    return _mono_increasing("atanh", a,
                            lo_ok=lambda lo: lo > -1,
                            hi_ok=lambda hi: hi < 1)


def sinh(a: Enclosure) -> Enclosure:
    return _mono_increasing("sinh", a)


def cosh(a: Enclosure) -> Enclosure:
    cs = _ctx(a.digits)
    lo, hi = a.lo, a.hi
    if lo >= 0:
        return _from_endpoints(cs.d.cosh(lo), cs.u.cosh(hi), a.digits)
    if hi <= 0:
        return _from_endpoints(cs.d.cosh(hi), cs.u.cosh(lo), a.digits)
    # straddles 0: minimum cosh(0) = 1
    widest = cs.u.maxnum(cs.u.abs(lo), cs.u.abs(hi))
    return _from_endpoints(mpfr(1), cs.u.cosh(widest), a.digits)


_ENCLOSE_DISPATCH: dict[str, Callable[[Enclosure], Enclosure]] = {
    "exp": exp,
    "expm1": expm1,
    "log": log,
    "sqrt": sqrt,
    "atanh": atanh,
    "sinh": sinh,
    "cosh": cosh,
}


def enclose_fn(name: str, a: Enclosure) -> Enclosure:
    """Apply a named monotone elementary function to an enclosure."""
    try:
        fn = _ENCLOSE_DISPATCH[name]
    except KeyError:
        raise DomainError(
            f"no enclosure rule for {name!r}; have {sorted(_ENCLOSE_DISPATCH)}"
        ) from None
    return fn(a)


def pi(digits: int = DEFAULT_DIGITS) -> Enclosure:
    cs = _ctx(digits)
    return _from_endpoints(cs.d.const_pi(), cs.u.const_pi(), digits)


def log2_const(digits: int = DEFAULT_DIGITS) -> Enclosure:
    cs = _ctx(digits)
    return _from_endpoints(cs.d.const_log2(), cs.u.const_log2(), digits)


def sum_enclosures(terms: Iterable[Enclosure], digits: int = DEFAULT_DIGITS) -> Enclosure:
    """Fold addition in the order given (summation order is part of the API)."""
    total = Enclosure.exact(0, digits)
    for t in terms:
        total = total + t
    return total
