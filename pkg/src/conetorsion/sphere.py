"""Anomaly terms for even-sphere cross sections.

Both sides of the anomaly are explicit logarithms of the sphere volume,
so their sum must enclose zero at working precision for every p; the
report records the enclosure that witnesses it.  The collapse of the
alternating coexact sum is kept in two readings, the stated one and the
sign-corrected one that the telescoping actually leaves; the brute
spectral oracle adjudicates between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any

from .enclosure import DEFAULT_DIGITS, DomainError, Enclosure, exp, log, pi
from .exactcomb import (
    SphereSpec,
    alpha_weighted_top_sum,
    multiplicity_sphere,
    reduction_vanishing_sums,
)
from .special import double_factorial, hurwitz_zeta, riemann_zeta_any

__all__ = [
    "SphereAnomalyReport",
    "analy_anomaly_sphere",
    "brute_zeta_cex_sphere",
    "cancellation_check",
    "comb_anomaly_sphere",
    "reduced_zeta_sphere",
    "sphere_volume",
]

HALF = Fraction(1, 2)

# rank-one coefficient system on an even sphere: one harmonic generator
# at the bottom, one at the top, nothing in between
_R_BOTTOM = 1
_R_TOP = 1
_EULER_CHAR = 2


@dataclass(frozen=True)
class SphereAnomalyReport:
    p: int
    comb_term: Enclosure
    analy_term: Enclosure
    total: Enclosure
    volume: Enclosure
    diagnostics: dict[str, Any] = field(default_factory=dict)


def _require_p(p: int) -> None:
    if not (isinstance(p, int) and p >= 1):
        raise DomainError(f"p must be an integer >= 1, got {p!r}")


def sphere_volume(p: int, digits: int = DEFAULT_DIGITS) -> Enclosure:
    """Vol(S^{2p}) = 2^{p+1} pi^p / (2p-1)!!."""
    _require_p(p)
    scale = Fraction(2 ** (p + 1), double_factorial(2 * p - 1))
    return pi(digits).pow_int(p) * scale


def comb_anomaly_sphere(p: int, digits: int = DEFAULT_DIGITS) -> Enclosure:
    """-(1/2) log Vol(S^{2p}).

    Each of the two harmonic cells has squared norm equal to the full
    volume, and only the bottom and top Betti numbers are nonzero.
    """
    _require_p(p)
    assert _EULER_CHAR == _R_BOTTOM + _R_TOP
    return log(sphere_volume(p, digits)) * Fraction(-1, 2)


def _int_pow_neg_s(base: int, s: Enclosure, digits: int) -> Enclosure:
    if base == 1:
        return Enclosure.exact(1, digits)
    return exp(-(s * log(Enclosure.exact(base, digits))))


def reduced_zeta_sphere(p: int, s: Enclosure, digits: int = DEFAULT_DIGITS,
                        *, corrected: bool = False) -> Enclosure:
    """2p zeta_R(s) - sum_{q=p}^{2p-1} (2q-2p+1)^{-s}.

    That is the stated collapse of the alternating coexact sum.  With
    corrected=True the zeta coefficient flips to -2p, which is what the
    telescoping actually leaves and what brute_zeta_cex_sphere matches;
    the subtracted odd bases 1, 3, ..., 2p-1 are the same either way.
    """
    _require_p(p)
    z = riemann_zeta_any(s, digits)
    total = z * (-2 * p if corrected else 2 * p)
    for q in range(p, 2 * p):
        total = total - _int_pow_neg_s(2 * q - 2 * p + 1, s, digits)
    return total


@lru_cache(maxsize=256)
def _multiplicity_poly(p: int, q: int) -> tuple[Fraction, ...]:
    """Exact monomial coefficients of n -> m_{q,n}, degree 2p-1."""
    spec = SphereSpec(p, q)
    deg = 2 * p - 1
    ys = [Fraction(multiplicity_sphere(spec, n)) for n in range(1, deg + 3)]
    diffs = []
    row = ys
    for _ in range(deg + 1):
        diffs.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    assert all(v == 0 for v in row), "multiplicity degree exceeds 2p-1"
    coeffs = [Fraction(0)] * (deg + 1)
    basis = [Fraction(1)]
    for k, top in enumerate(diffs):
        scale = top / math.factorial(k)
        for i, c in enumerate(basis):
            coeffs[i] += scale * c
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, c in enumerate(basis):  # multiply by (n - (k+1))
            nxt[i + 1] += c
            nxt[i] -= c * (k + 1)
        basis = nxt
    for n in (deg + 4, deg + 9):
        val = sum(c * n ** i for i, c in enumerate(coeffs))
        assert val == multiplicity_sphere(spec, n)
    return tuple(coeffs)


def multiplicity_envelope(p: int, q: int) -> Fraction:
    """K with m_{q,n} <= K (n+q)^{2p-1} for all n >= 1 (coefficient sum)."""
    return sum(abs(c) for c in _multiplicity_poly(p, q))


def brute_zeta_cex_sphere(p: int, q: int, s: Enclosure, big_n: int,
                          digits: int = DEFAULT_DIGITS) -> Enclosure:
    """sum_{n>=1} m_{q,n} (n+q)^{-s} by direct summation.

    Multiplicities grow like n^{2p-1}, so absolute convergence is only
    certified for s > 2p+1; the tail after N terms is below
    K (N+q)^{2p-s} / (s-2p) with K = multiplicity_envelope(p, q).
    """
    _require_p(p)
    if not 0 <= q <= 2 * p - 1:
        raise DomainError(f"q must lie in [0, 2p-1], got {q}")
    if not s.lo > 2 * p + 1:
        raise DomainError(
            f"brute summation needs s > 2p+1 = {2 * p + 1}, got {s}")
    if big_n < 1:
        raise DomainError(f"truncation must be >= 1, got {big_n}")
    spec = SphereSpec(p, q)
    neg_s = -s
    total = Enclosure.exact(0, digits)
    for n in range(1, big_n + 1):
        power = exp(neg_s * log(Enclosure.exact(n + q, digits)))
        total = total + power * Fraction(multiplicity_sphere(spec, n))
    k_env = multiplicity_envelope(p, q)
    edge = Enclosure.exact(big_n + q, digits)
    tail = (exp((s - 2 * p) * -log(edge)) * k_env) / (s - 2 * p)
    return total.widened(tail.hi)


def alternating_spectral_sum(p: int, s: int, digits: int = DEFAULT_DIGITS,
                             head: int = 24) -> Enclosure:
    """sum_q (-1)^{q+1} sum_{n>=1} m_{q,n} (n+q)^{-s}, tail resummed.

    Same orientation as the reduction: q = 0 enters negatively.  Rebasing
    m_{q,n} in powers of n+q turns the tail into a combination of Hurwitz
    zetas, so the radius is set by working precision rather than by a
    truncation envelope; integer s > 2p+1 keeps the head sum exactly
    rational.
    """
    _require_p(p)
    if s <= 2 * p + 1:
        raise DomainError(f"need integer s > 2p+1 = {2 * p + 1}, got {s}")
    if head < 1:
        raise DomainError(f"head must be >= 1, got {head}")
    head_total = Fraction(0)
    tail_total = Enclosure.exact(0, digits)
    s_ball = Enclosure.exact(s, digits)
    for q in range(2 * p):
        sign = 1 if q % 2 else -1
        mono = _multiplicity_poly(p, q)
        shifted = [Fraction(0)] * len(mono)
        for j, a in enumerate(mono):
            for k in range(j + 1):
                shifted[k] += a * math.comb(j, k) * Fraction(-q) ** (j - k)
        probe = head + 1
        assert (sum(c * (probe + q) ** k for k, c in enumerate(shifted))
                == sum(a * probe ** j for j, a in enumerate(mono)))
        for n in range(1, head + 1):
            m = sum(a * n ** j for j, a in enumerate(mono))
            head_total += sign * m * Fraction(1, (n + q) ** s)
        base = Fraction(head + 1 + q)
        for k, c in enumerate(shifted):
            if c == 0:
                continue
            tail = hurwitz_zeta(s_ball - k, base, digits)
            tail_total = tail_total + tail * (c * sign)
    return Enclosure.exact(head_total, digits) + tail_total


def analy_anomaly_sphere(p: int, digits: int = DEFAULT_DIGITS) -> Enclosure:
    """-log (2p-1)!! + (1/2) log 2 - p zeta_R'(0)
    + (1/2) sum_{q=p}^{2p-1} log(2q-2p+1), with zeta_R'(0) = -(1/2) log 2pi.

    Collapses to +(1/2) log Vol(S^{2p}); both expressions are evaluated
    and required to agree before the stated one is returned.
    """
    _require_p(p)
    zeta_prime_0 = log(pi(digits) * 2) * Fraction(-1, 2)
    odd_logs = Enclosure.exact(0, digits)
    for q in range(p, 2 * p):
        base = 2 * q - 2 * p + 1
        if base > 1:
            odd_logs = odd_logs + log(Enclosure.exact(base, digits))
    stated = (log(Enclosure.exact(2, digits)) * HALF
              - log(Enclosure.exact(double_factorial(2 * p - 1), digits))
              - zeta_prime_0 * p + odd_logs * HALF)
    closed = log(sphere_volume(p, digits)) * HALF
    assert stated.consistent_with(closed), "analytic term readings disagree"
    return stated


def _oracle_truncation(p: int, q: int, s_f: float) -> int:
    k_f = float(multiplicity_envelope(p, q))
    drop = s_f - 2 * p
    want = (k_f / (1e-8 * drop)) ** (1.0 / drop)
    return min(20000, max(600, int(want) + 1))


def cancellation_check(p: int, digits: int = DEFAULT_DIGITS, *,
                       identities: bool = False,
                       oracle_s: Fraction | None = None,
                       oracle_n: int | None = None) -> SphereAnomalyReport:
    """Report with total = comb + analy, which must enclose zero.

    identities=True adds the exact vanishing sums behind the reduction;
    oracle_s runs the brute alternating sum there and compares it with
    both readings of the reduced form.
    """
    comb = comb_anomaly_sphere(p, digits)
    analy = analy_anomaly_sphere(p, digits)
    diag: dict[str, Any] = {}
    if identities:
        sums = reduction_vanishing_sums(p)
        diag["plain_vanishing_sums"] = sums["plain"]
        diag["weighted_vanishing_sums"] = sums["weighted"]
        diag["alpha_weighted_top_sum"] = alpha_weighted_top_sum(p)
    if oracle_s is not None:
        s = Enclosure.exact(oracle_s, digits)
        if not s.lo > 2 * p + 1:
            raise DomainError(
                f"oracle comparison needs s > 2p+1 = {2 * p + 1}, got {s}")
        alternating = Enclosure.exact(0, digits)
        for q in range(0, 2 * p):
            n_q = oracle_n if oracle_n is not None else _oracle_truncation(
                p, q, float(oracle_s))
            term = brute_zeta_cex_sphere(p, q, s, n_q, digits)
            alternating = alternating + term * (-1 if q % 2 == 0 else 1)
        stated = reduced_zeta_sphere(p, s, digits)
        corrected = reduced_zeta_sphere(p, s, digits, corrected=True)
        diag["oracle_alternating_sum"] = alternating
        diag["reduced_stated"] = stated
        diag["reduced_corrected"] = corrected
        diag["oracle_matches_stated"] = alternating.consistent_with(stated)
        diag["oracle_matches_corrected"] = alternating.consistent_with(
            corrected)
    return SphereAnomalyReport(
        p=p,
        comb_term=comb,
        analy_term=analy,
        total=comb + analy,
        volume=sphere_volume(p, digits),
        diagnostics=diag,
    )
