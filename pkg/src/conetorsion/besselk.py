"""Modified Bessel function K_nu by certified trapezoid quadrature.

Basis: the integral representation (DLMF 10.32.9)

    K_nu(x) = int_0^oo cosh(nu u) exp(-x cosh u) du,   x > 0,

extended evenly to the whole line and discretized with step h.  The
integrand is entire, and on the strip |Im u| <= delta < pi/2 it obeys

    |f(u + ib)| <= cosh(nu u) exp(-x cos(delta) cosh u),

so with M(delta) an upper bound for the strip-line integrals, the full
trapezoid error is at most 2 M(delta) / (exp(2 pi delta / h) - 1)
(Trefethen & Weideman, SIAM Review 56 (2014), Thm 5.1).  Using
cosh(nu u) <= e^(nu u), cosh u >= e^u / 2 and t^(nu-1) <= 1 for t >= 1,
|nu| <= 1 gives the computable bounds used below:

    M(delta) <= (4/c) exp(-c/2),             c = x cos(delta),
    int_U^oo f <= (2/x) e^(U(nu-1)) exp(-(x/2) e^U)   (truncation).

All bound arithmetic is done with directed rounding; node evaluation is
ball arithmetic.  A grid built for the smallest x of a family remains
valid for every larger x (its h only needs to shrink as x does), which
the lattice sums exploit: one grid, many (nu, x) evaluations, with early
loop exit once the certified remaining-tail bound is already small enough.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from .enclosure import (
    DEFAULT_DIGITS,
    DomainError,
    Enclosure,
    _ctx,
    exp,
    pi,
    sqrt,
)

_DELTA = 1  # strip half-width; exact, < pi/2


def _cos_delta_lo(digits: int) -> mpfr:
    return _ctx(digits).d.cos(mpfr(_DELTA))


def _strip_bound_up(x_lo: mpfr, digits: int) -> mpfr:
    """Upper bound for M(delta) = (4/c) exp(-c/2), c = x cos(delta)."""
    cs = _ctx(digits)
    c_lo = cs.rd.mul(x_lo, _cos_delta_lo(digits))
    if not c_lo > 0:
        raise DomainError("bessel_k requires x > 0")
    return cs.ru.mul(cs.ru.div(mpfr(4), c_lo),
                     cs.u.exp(cs.ru.div_2exp(cs.ru.minus(c_lo), 1)))


def _disc_bound_up(x_lo: mpfr, h: Fraction, digits: int) -> mpfr:
    """Upper bound for the full-line trapezoid error 2M/(e^(2 pi/h) - 1)."""
    cs = _ctx(digits)
    m_up = _strip_bound_up(x_lo, digits)
    expo_lo = cs.rd.div(cs.rd.mul(cs.d.const_pi(), 2 * _DELTA * h.denominator),
                        mpfr(h.numerator))
    den_lo = cs.rd.sub(cs.d.exp(expo_lo), 1)
    if not den_lo > 0:
        raise DomainError("trapezoid step too coarse for an error bound")
    return cs.ru.div(cs.ru.mul(mpfr(2), m_up), den_lo)


def _trunc_bound_up(x_lo: mpfr, u: Fraction, digits: int) -> mpfr:
    """Upper bound for int_u^oo f, valid for |nu| <= 1; needs (x/2)e^u >= 1."""
    cs = _ctx(digits)
    eu_lo = cs.d.exp(cs.rd.div(mpfr(u.numerator), mpfr(u.denominator)))
    half_x_eu = cs.rd.div_2exp(cs.rd.mul(x_lo, eu_lo), 1)
    if not half_x_eu >= 1:
        return mpfr("inf")   # integrand not yet certified decreasing
    return cs.ru.mul(cs.ru.div(mpfr(2), x_lo),
                     cs.u.exp(cs.ru.minus(half_x_eu)))


@dataclass(frozen=True)
class BesselGrid:
    """A trapezoid grid certified for every x with x.lo >= x_min_lo."""

    digits: int
    target: mpfr
    x_min_lo: mpfr
    h: Fraction
    k_max: int
    cosh_nodes: tuple[Enclosure, ...]


def build_bessel_grid(x_min_lo: mpfr | Fraction | int,
                      target: mpfr | Fraction | None = None,
                      digits: int = DEFAULT_DIGITS) -> BesselGrid:
    cs = _ctx(digits)
    if isinstance(x_min_lo, (Fraction, int)):
        x_lo = cs.rd.add(mpfr(0), gmpy2.mpq(Fraction(x_min_lo).numerator,
                                            Fraction(x_min_lo).denominator))
    else:
        x_lo = x_min_lo
    if not x_lo > 0:
        raise DomainError("bessel grid requires x > 0")
    if target is None:
        tgt = mpfr(f"1e-{digits + 5}")
    elif isinstance(target, Fraction):
        tgt = cs.rd.add(mpfr(0), gmpy2.mpq(target.numerator, target.denominator))
    else:
        tgt = target
    quarter = cs.rd.div_2exp(tgt, 2)

    # step size: h <= 2 pi delta / ln(2M/eps + 1)
    m_up = _strip_bound_up(x_lo, digits)
    ratio = cs.ru.add(cs.ru.div(cs.ru.mul(mpfr(2), m_up), quarter), 1)
    log_ratio = cs.u.log(ratio)
    h_cap = cs.rd.div(cs.rd.mul(cs.d.const_pi(), 2 * _DELTA), log_ratio)
    if not h_cap > 0:
        raise DomainError("cannot build a bessel grid for this target")
    den = 1 << max(6, int(math.ceil(-math.log2(float(h_cap)))) + 6)
    h = Fraction(int(cs.rd.mul(h_cap, den)), den)
    if h <= 0:
        raise DomainError("bessel grid step underflow")

    # truncation point: (x/2) e^U >= ln(2/(x eps)) and >= 1
    need = cs.ru.log(cs.ru.div(mpfr(2), cs.rd.mul(x_lo, quarter)))
    need = cs.ru.maxnum(need, mpfr(1))
    e_u = cs.ru.div(cs.ru.mul(mpfr(2), need), x_lo)
    u_min = cs.ru.maxnum(cs.u.log(e_u), mpfr(1))
    k_max = int(math.ceil(float(cs.ru.div(u_min, cs.rd.add(
        mpfr(0), gmpy2.mpq(h.numerator, h.denominator)))))) + 2

    from .enclosure import cosh as ball_cosh
    nodes = tuple(ball_cosh(Enclosure.exact(k * h, digits))
                  for k in range(k_max + 1))
    return BesselGrid(digits=digits, target=tgt, x_min_lo=x_lo, h=h,
                      k_max=k_max, cosh_nodes=nodes)


def _nu_magnitude(nu: Enclosure, digits: int) -> mpfr:
    cs = _ctx(digits)
    return cs.ru.maxnum(cs.ru.abs(nu.lo), cs.ru.abs(nu.hi))


def bessel_k_on_grid(grid: BesselGrid, nu: Enclosure, x: Enclosure,
                     exp_cache: list[Enclosure] | None = None) -> Enclosure:
    """K_nu(x) on a prebuilt grid; |nu| <= 1 and x.lo >= grid.x_min_lo.

    ``exp_cache`` may carry the exp(-x cosh u_k) balls of a previous call
    with the same x (they do not depend on nu).
    """
    digits = grid.digits
    cs = _ctx(digits)
    if not x.lo >= grid.x_min_lo:
        raise DomainError("x below the grid's certified range")
    if not _nu_magnitude(nu, digits) <= 1:
        raise DomainError(f"bessel_k supports |nu| <= 1, got {nu}")

    half = Fraction(1, 2)
    quarter_target = cs.rd.div_2exp(grid.target, 2)
    # e^(nu h) power chain for cosh(nu u_k); nu exactly 0 short-circuits
    nu_zero = gmpy2.is_zero(nu.center) and gmpy2.is_zero(nu.radius)
    if not nu_zero:
        t = exp(nu * Enclosure.exact(grid.h, digits))
        p = Enclosure.exact(1, digits)

    total = Enclosure.exact(0, digits)
    tail = None
    fill_cache = exp_cache is not None and not exp_cache
    for k in range(grid.k_max + 1):
        if exp_cache is not None and k < len(exp_cache) and not fill_cache:
            e_k = exp_cache[k]
        else:
            e_k = exp(-(x * grid.cosh_nodes[k]))
            if fill_cache:
                exp_cache.append(e_k)
        if k == 0:
            total = total + e_k * half
        else:
            ch = half * (p + 1 / p) if not nu_zero else None
            total = total + (e_k if nu_zero else ch * e_k)
        if not nu_zero:
            p = p * t
        if k % 16 == 15 and k < grid.k_max:
            t_here = _trunc_bound_up(x.lo, (k + 1) * grid.h, digits)
            if t_here <= quarter_target:
                tail = t_here
                break
    if tail is None:
        tail = _trunc_bound_up(x.lo, (grid.k_max + 1) * grid.h, digits)
        if not gmpy2.is_finite(tail):
            raise DomainError("bessel grid truncation bound unavailable")

    disc = _disc_bound_up(x.lo, grid.h, digits)
    pad = cs.ru.add(tail, cs.ru.div_2exp(disc, 1))
    return (Enclosure.exact(grid.h, digits) * total).widened(pad)


def bessel_k(nu: Enclosure, x: Enclosure,
             digits: int = DEFAULT_DIGITS,
             target_radius: mpfr | Fraction | None = None) -> Enclosure:
    """Certified K_nu(x) for |nu| <= 1, x > 0 (K is even in nu)."""
    if not x.is_strictly_positive():
        raise DomainError(f"bessel_k requires x > 0, got {x}")
    grid = build_bessel_grid(x.lo, target_radius, digits)
    return bessel_k_on_grid(grid, nu, x)


def bessel_k_half_closed(x: Enclosure, digits: int = DEFAULT_DIGITS) -> Enclosure:
    """K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}, the closed form used as an oracle."""
    if not x.is_strictly_positive():
        raise DomainError("x must be positive")
    return sqrt(pi(digits) / (x * 2)) * exp(-x)


def k_envelope_half(x: Enclosure, digits: int = DEFAULT_DIGITS) -> Enclosure:
    """Upper envelope sqrt(pi/(2x)) e^{-x}, valid for K_nu with |nu| <= 1/2.

    K is increasing in |nu| (clear from the integral representation), so
    K_nu(x) <= K_{1/2}(x), and K_{1/2} is the closed form above.
    """
    return bessel_k_half_closed(x, digits)
