"""Special functions with certified error terms.

The workhorse is Euler-Maclaurin summation for the Hurwitz zeta function

    zeta(s, a) = sum_{n=0}^{N-1} (n+a)^{-s} + (N+a)^{1-s}/(s-1)
                 + (1/2)(N+a)^{-s}
                 + sum_{k=1}^{K} B_{2k}/(2k)! (s)_{2k-1} (N+a)^{-s-2k+1} + R

with the remainder bounded through the periodic-Bernoulli integral
(Olver, Asymptotics and Special Functions, ch. 8; DLMF 25.11.7):

    |R| <= 2 zeta(2K+1)/(2 pi)^(2K+1) * |(s)_{2K+1}| * (N+a)^{-sigma-2K} / (sigma+2K)

valid for real s != 1 whenever sigma + 2K > 0, sigma = Re s.  We bound
zeta(2K+1) <= 5/4 for K >= 1.  This gives fully rigorous enclosures on
both sides of s = 1, which the lattice-zeta continuations depend on.

Evaluations that walk an arithmetic ladder s0, s0+step, s0+2*step, ...
(the binomial continuations do this heavily) share one (N, K) choice and
reuse each (n+a)^{-s0} across rungs, multiplying by exact rationals.
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
    PrecisionExhaustedError,
    _ctx,
    _from_endpoints,
    exp,
    log,
)

# -- exact integer/rational helpers ---------------------------------------

_BERNOULLI: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """B_n with the B_1 = -1/2 convention, computed once by recurrence."""
    if n < 0:
        raise DomainError("Bernoulli index must be nonnegative")
    while len(_BERNOULLI) <= n:
        m = len(_BERNOULLI)
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * _BERNOULLI[j]
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[n]


def harmonic(n: int) -> Fraction:
    """H_n = 1 + 1/2 + ... + 1/n (H_0 = 0)."""
    if n < 0:
        raise DomainError("harmonic index must be nonnegative")
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


def double_factorial(k: int) -> int:
    """k!! for odd k >= -1; the empty product (-1)!! is 1."""
    if k < -1 or k % 2 == 0:
        raise DomainError(f"double factorial is defined here for odd k >= -1, got {k}")
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def binom_half(j: int) -> Fraction:
    """C(-1/2, j) = (-1)^j C(2j, j) / 4^j, exactly."""
    if j < 0:
        raise DomainError("binomial index must be nonnegative")
    sign = -1 if j % 2 else 1
    return Fraction(sign * math.comb(2 * j, j), 4**j)


def binom_ball(s: Enclosure, j: int) -> Enclosure:
    """C(-s, j) = prod_{i=0}^{j-1} (-s - i) / j! in ball arithmetic."""
    if j < 0:
        raise DomainError("binomial index must be nonnegative")
    out = Enclosure.exact(1, s.digits)
    for i in range(j):
        out = out * (-s - i)
    return out / math.factorial(j)


@dataclass(frozen=True)
class BinomialTaylor:
    """First-order data of s -> C(-s, j) at s = 0, for j >= 1:
    C(-s, j) = linear*s + quadratic*s^2 + O(s^3)."""

    j: int
    linear: Fraction
    quadratic: Enclosure


def binomial_taylor(j: int, digits: int = DEFAULT_DIGITS) -> BinomialTaylor:
    """Taylor data of C(-s, j) at s = 0.

    linear = (-1)^j / j exactly; quadratic = (-1)^j (psi(j) + gamma) / j,
    assembled from the digamma and Euler-constant enclosures (the sum
    psi(j) + gamma telescopes to the exact rational H_{j-1}, which the
    tests use as an oracle).
    """
    if j < 1:
        raise DomainError("Taylor data is for j >= 1")
    sign = -1 if j % 2 else 1
    linear = Fraction(sign, j)
    quad = (digamma_int(j, digits) + euler_gamma(digits)) * Fraction(sign, j)
    return BinomialTaylor(j=j, linear=linear, quadratic=quad)


# -- Euler-Maclaurin Hurwitz/Riemann zeta ---------------------------------


def _em_remainder_bound(s: Enclosure, a: Fraction, big_n: int, big_k: int,
                        digits: int) -> mpfr:
    """Upper bound for |R| in the module formula; requires sigma + 2K > 0."""
    cs = _ctx(digits)
    sigma_lo = s.lo
    two_k = 2 * big_k
    if not cs.rd.add(sigma_lo, two_k) > 0:
        return mpfr("inf")
    # |(s)_{2K+1}| <= prod (|s| + i), rounded up
    s_abs = cs.ru.maxnum(cs.ru.abs(s.lo), cs.ru.abs(s.hi))
    poch = cs.ru.add(s_abs, mpfr(0))
    for i in range(1, two_k + 1):
        poch = cs.ru.mul(poch, cs.ru.add(s_abs, i))
    # (5/2) / (2 pi)^(2K+1), rounded up: use 2 pi > 6.28 from below
    two_pi_lo = mpfr("6.283185307")
    denom = cs.rd.add(mpfr(1), mpfr(0))
    for _ in range(two_k + 1):
        denom = cs.rd.mul(denom, two_pi_lo)
    front = cs.ru.div(mpfr("2.5"), denom)
    # (N+a)^{-sigma-2K}, exponent < 0: an upper bound needs the base's
    # lower endpoint and a downward-rounded log.
    na = Enclosure.exact(Fraction(big_n) + a, digits)
    expo = cs.ru.sub(cs.ru.minus(sigma_lo), two_k)   # -sigma - 2K  (< 0 here)
    na_pow = cs.u.exp(cs.ru.mul(cs.d.log(na.lo), expo))
    tail_int = cs.ru.div(na_pow, cs.rd.add(sigma_lo, two_k))
    return cs.ru.mul(cs.ru.mul(front, poch), tail_int)


def _em_parameters(s: Enclosure, a: Fraction, digits: int,
                   target: mpfr) -> tuple[int, int]:
    cs = _ctx(digits)
    s_mag = float(cs.ru.maxnum(cs.ru.abs(s.lo), cs.ru.abs(s.hi)))
    big_k = max(3, digits // 2 + 6, int(-float(s.lo) / 2) + 2)
    big_n = max(big_k, int(s_mag / 4) + 4)
    for _ in range(24):
        if _em_remainder_bound(s, a, big_n, big_k, digits) <= target:
            return big_n, big_k
        big_n = big_n + max(4, big_n // 2)
        if big_n > 8 * (big_k + digits):
            big_k += big_k // 3 + 2
    raise PrecisionExhaustedError(
        f"no Euler-Maclaurin parameters met target {target} for s={s}"
    )


def hurwitz_zeta_ladder(s0: Enclosure, a: Fraction, count: int,
                        step: int = 1,
                        digits: int = DEFAULT_DIGITS,
                        target_radius: Fraction | mpfr | None = None) -> list[Enclosure]:
    """Enclosures of zeta(s0 + i*step, a) for i = 0..count-1.

    One (N, K) choice serves every rung; each power (n+a)^{-s0-i*step}
    is obtained from the rung below by an exact-rational multiply, so the
    ladder costs little more than its first rung.  Rungs whose interval
    contains the pole s = 1 are rejected.
    """
    if count < 1:
        raise DomainError("ladder needs at least one rung")
    if step < 1:
        raise DomainError("ladder step must be a positive integer")
    if a <= 0:
        raise DomainError("Hurwitz parameter a must be positive")
    cs = _ctx(digits)
    if target_radius is None:
        target = cs.rd.add(mpfr(f"1e-{digits + 5}"), mpfr(0))
    elif isinstance(target_radius, Fraction):
        target = cs.rd.add(mpfr(0), gmpy2.mpq(target_radius.numerator, target_radius.denominator))
    else:
        target = target_radius
    # full-precision endpoints; the coarse .lo/.hi would flag rungs that
    # only pass within display granularity of the pole
    s0_lo = cs.d.sub(s0.center, s0.radius)
    s0_hi = cs.u.add(s0.center, s0.radius)
    for i in range(count):
        lo = cs.d.add(s0_lo, i * step)
        hi = cs.u.add(s0_hi, i * step)
        if lo <= 1 <= hi:
            raise DomainError(f"zeta pole: rung {i} interval [{lo}, {hi}] contains s = 1")

    big_n, big_k = _em_parameters(s0, a, digits, target)
    # worst rung for the remainder is the base; verify the top rung too
    if _em_remainder_bound(s0 + (count - 1) * step, a, big_n, big_k, digits) > target:
        big_n += big_n // 2 + 8

    one = Enclosure.exact(1, digits)
    # (n+a)^{-s0} for n = 0..N, then exact-rational descent across rungs
    bases = [Fraction(n) + a for n in range(big_n + 1)]
    base_pows = [exp(-s0 * log(Enclosure.exact(b, digits))) for b in bases]
    inv_step = [Fraction(1, 1) / b**step for b in bases]

    b2k_over_fact = [Fraction(bernoulli(2 * k), math.factorial(2 * k))
                     for k in range(1, big_k + 1)]

    out: list[Enclosure] = []
    for i in range(count):
        s = s0 + i * step
        partial = Enclosure.exact(0, digits)
        for n in range(big_n):
            partial = partial + base_pows[n]
        na_pow = base_pows[big_n]                      # (N+a)^{-s}
        na = bases[big_n]
        tail_main = (Enclosure.exact(na, digits).pow(one - s)) / (s - 1)
        correction = na_pow * Fraction(1, 2)
        bsum = Enclosure.exact(0, digits)
        poch = s                                       # (s)_1
        na_desc = na_pow * (1 / Fraction(na))          # (N+a)^{-s-1}
        inv_na2 = Fraction(1, na * na)
        for k in range(1, big_k + 1):
            bsum = bsum + na_desc * poch * b2k_over_fact[k - 1]
            if k < big_k:
                poch = poch * (s + (2 * k - 1)) * (s + 2 * k)
                na_desc = na_desc * inv_na2
        rem = _em_remainder_bound(s, a, big_n, big_k, digits)
        value = (partial + tail_main + correction + bsum).widened(rem)
        out.append(value)
        if i < count - 1:
            base_pows = [bp * iv for bp, iv in zip(base_pows, inv_step)]
    return out


_HURWITZ_CACHE: dict = {}


def hurwitz_zeta(s: Enclosure, a: Fraction = Fraction(1),
                 digits: int = DEFAULT_DIGITS,
                 target_radius: Fraction | mpfr | None = None) -> Enclosure:
    """zeta(s, a) for real s != 1, by Euler-Maclaurin with certified remainder."""
    key = (s.center, s.radius, a, digits)
    cached = _HURWITZ_CACHE.get(key)
    if cached is not None:
        return cached
    value = hurwitz_zeta_ladder(s, a, count=1, digits=digits,
                                target_radius=target_radius)[0]
    if len(_HURWITZ_CACHE) > 4096:
        _HURWITZ_CACHE.clear()
    _HURWITZ_CACHE[key] = value
    return value


def riemann_zeta(s: Enclosure, digits: int = DEFAULT_DIGITS) -> Enclosure:
    """zeta_R(s) on the Dirichlet-series domain: requires s > 1."""
    if not s.lo > 1:
        raise DomainError(f"riemann_zeta requires s > 1, got {s}")
    return hurwitz_zeta(s, Fraction(1), digits)


def riemann_zeta_any(s: Enclosure, digits: int = DEFAULT_DIGITS) -> Enclosure:
    """zeta_R(s) for any real s != 1 (Euler-Maclaurin continuation)."""
    return hurwitz_zeta(s, Fraction(1), digits)


def dirichlet_beta(s: Enclosure, digits: int = DEFAULT_DIGITS) -> Enclosure:
    """beta(s) = 4^{-s} (zeta(s, 1/4) - zeta(s, 3/4)), valid for all real s."""
    za = hurwitz_zeta(s, Fraction(1, 4), digits)
    zb = hurwitz_zeta(s, Fraction(3, 4), digits)
    four_pow = exp(-s * log(Enclosure.exact(4, digits)))
    return four_pow * (za - zb)


# -- Euler's constant ------------------------------------------------------

_EULER_CACHE: dict[int, Enclosure] = {}


def euler_gamma(digits: int = DEFAULT_DIGITS) -> Enclosure:
    """gamma as the finite part of zeta_R at s = 1, evaluated by the
    harmonic-number Euler-Maclaurin expansion

        gamma = H_N - ln N - 1/(2N) + sum_{k=1}^{K} B_{2k}/(2k) N^{-2k} + R.

    f(x) = 1/x is completely monotone, so the expansion is enveloping and
    |R| <= |B_{2K+2}| / ((2K+2) N^{2K+2}) (DLMF 2.10(i))."""
    cached = _EULER_CACHE.get(digits)
    if cached is not None:
        return cached
    cs = _ctx(digits)
    target = mpfr(f"1e-{digits + 5}")
    big_n = max(16, digits)
    big_k = max(4, digits // 2 + 4)
    while True:
        rem = Fraction(abs(bernoulli(2 * big_k + 2)), (2 * big_k + 2) * big_n ** (2 * big_k + 2))
        if cs.ru.add(mpfr(0), gmpy2.mpq(rem.numerator, rem.denominator)) <= target:
            break
        big_n += big_n // 2
    exact_part = harmonic(big_n) - Fraction(1, 2 * big_n) + sum(
        (Fraction(bernoulli(2 * k), 2 * k) / Fraction(big_n) ** (2 * k)
         for k in range(1, big_k + 1)), Fraction(0))
    value = (Enclosure.exact(exact_part, digits)
             - log(Enclosure.exact(big_n, digits))).widened(rem)
    _EULER_CACHE[digits] = value
    return value


# -- gamma and digamma -----------------------------------------------------


def _gamma_any(x: Enclosure, digits: int) -> Enclosure:
    """Gamma on any interval free of poles, by recurrence shift to [2, oo)
    where Gamma is strictly increasing, then directed endpoint evaluation."""
    cs = _ctx(digits)
    shift = 0
    lo = x.lo
    if lo < 2:
        shift = int(math.ceil(2 - float(lo))) + 1
    y = x + shift
    if not y.lo >= 2:
        shift += 2
        y = x + shift
    g_lo = cs.d.gamma(y.lo)
    g_hi = cs.u.gamma(y.hi)
    if not (gmpy2.is_finite(g_lo) and gmpy2.is_finite(g_hi)):
        raise DomainError(f"gamma overflow on {x}")
    value = _from_endpoints(g_lo, g_hi, digits)
    for i in range(shift):
        factor = x + i
        if not (factor.is_strictly_positive() or factor.is_strictly_negative()):
            raise DomainError(
                f"gamma: interval {x} cannot be separated from the pole at {-i}"
            )
        value = value / factor
    return value


def gamma_fn(x: Enclosure, digits: int = DEFAULT_DIGITS) -> Enclosure:
    """Gamma(x) for a strictly positive interval."""
    if not x.is_strictly_positive():
        raise DomainError(f"gamma_fn requires a strictly positive interval, got {x}")
    return _gamma_any(x, digits)


def digamma_int(j: int, digits: int = DEFAULT_DIGITS) -> Enclosure:
    """psi(j) = -gamma + H_{j-1} for integer j >= 1."""
    if j < 1:
        raise DomainError(f"digamma_int needs a positive integer, got {j}")
    return Enclosure.exact(harmonic(j - 1), digits) - euler_gamma(digits)


# -- the log-gamma Dirichlet-series identity ------------------------------


def log_gamma_series(z: Enclosure, digits: int = DEFAULT_DIGITS,
                     target_radius: Fraction | None = None) -> Enclosure:
    """sum_{k>=2} (-1)^(k-1) z^k zeta_R(k) / k, which equals
    -gamma z - ln Gamma(1+z) for |z| < 1.

    Returns the series side; the closed form is what the bound certifier
    compares it against.  Tail: |term_k| <= zeta_R(2) |z|^k / k, summed
    geometrically.
    """
    cs = _ctx(digits)
    z_mag = cs.ru.maxnum(cs.ru.abs(z.lo), cs.ru.abs(z.hi))
    if not z_mag < 1:
        raise DomainError(f"log_gamma_series needs |z| < 1, got {z}")
    if target_radius is None:
        target = mpfr(f"1e-{digits + 2}")
    else:
        target = cs.rd.add(mpfr(0), gmpy2.mpq(target_radius.numerator,
                                              target_radius.denominator))
    # number of terms: zeta(2) |z|^(K+1) / ((K+1)(1-|z|)) <= target
    zeta2_up = mpfr("1.6449340669")
    count = 8
    while True:
        k1 = count + 1
        tail = cs.ru.div(
            cs.ru.mul(zeta2_up, _ctx(digits).u.exp(
                cs.ru.mul(cs.u.log(z_mag), k1))),
            cs.rd.mul(cs.rd.add(mpfr(k1), 0), cs.rd.sub(mpfr(1), z_mag)),
        )
        if tail <= target or count > 40 * digits:
            break
        count += max(8, count // 2)
    if tail > target:
        raise PrecisionExhaustedError(
            f"log-gamma series tail {tail} above target {target}",
            Enclosure.exact(0, digits))
    zetas = hurwitz_zeta_ladder(Enclosure.exact(2, digits), Fraction(1),
                                count=count - 1, step=1, digits=digits)
    total = Enclosure.exact(0, digits)
    z_pow = z * z
    for idx, k in enumerate(range(2, count + 1)):
        sign = -1 if k % 2 == 0 else 1
        total = total + z_pow * zetas[idx] * Fraction(sign, k)
        z_pow = z_pow * z
    return total.widened(tail)
