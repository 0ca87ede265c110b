"""Anomaly terms for the flat two-torus cross section.

Unlike the sphere case nothing cancels in closed form here: the analytic
side is assembled from the finite parts of two lattice zeta functions
and two slowly converging odd-rung series, so every constituent carries
its own rigorous enclosure and the report keeps the printed interval
bounds alongside as diagnostics.  The computed total and the printed
expectations disagree; the report records both readings and lets the
verdict flags say so rather than reconciling them silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any

from .certify import (
    constants_c1_c5,
    double_lattice_half_odd_sum,
    lattice_half_odd_sum,
)
from .enclosure import (
    DEFAULT_DIGITS,
    DomainError,
    Enclosure,
    atanh,
    exp,
    expm1,
    log,
    pi,
    sinh,
    sqrt,
)
from .special import binom_ball, double_factorial, euler_gamma
from .zetalattice import (
    zeta_double_finite_part,
    zeta_nh,
    zeta_nh_finite_part,
    zeta_shifted_nh,
)

__all__ = [
    "TorusAnomalyReport",
    "analy_anomaly_torus",
    "coexact_decomposition_check",
    "comb_anomaly_torus",
    "paper_interval_bounds",
    "total_anomaly_torus",
    "z1_at_zero",
    "z2_at_zero",
    "z2_derivative_oracle",
]

HALF = Fraction(1, 2)

# product of two circles: Betti numbers 1, 2, 1 and vanishing Euler
# characteristic; the cross section sits at p = 1 with alpha_0 = -1/2
_TORUS_RANKS = (1, 2, 1)
_EULER_CHAR = 0


@dataclass(frozen=True)
class TorusAnomalyReport:
    comb_term: Enclosure
    z1: Enclosure
    z2: Enclosure
    analy_term: Enclosure
    total: Enclosure
    paper_bounds: dict[str, Enclosure]
    verdicts: dict[str, bool]
    diagnostics: dict[str, Any] = field(default_factory=dict)


def _series_target(digits: int) -> Fraction:
    return Fraction(1, 10 ** max(digits - 20, digits // 2))


def _certainly_between(x: Enclosure, lo: Enclosure, hi: Enclosure) -> bool:
    """x's whole interval sits inside [lo, hi] even at their worst ends."""
    return bool(x.lo >= lo.hi and x.hi <= hi.lo)


def comb_anomaly_torus(digits: int = DEFAULT_DIGITS) -> Enclosure:
    """-log(2 pi).

    Each harmonic cell has norm sqrt(Vol(T)) = 2 pi and each integral
    homology group has a single generator, so the metric correction is
    one factor of 2 pi per degree with alternating signs; the Euler-
    characteristic log 2 term and the (2p-2q-1)!! factors both drop out.
    """
    assert _EULER_CHAR == _TORUS_RANKS[0] - _TORUS_RANKS[1] + _TORUS_RANKS[2]
    assert double_factorial(1) == 1
    return -log(pi(digits) * 2)


@lru_cache(maxsize=8)
def _z2_bundle(digits: int) -> tuple[Enclosure, dict[str, Any]]:
    fp = zeta_nh_finite_part(digits)
    series = lattice_half_odd_sum(digits, _series_target(digits))
    value = -fp.rz - series
    cons = constants_c1_c5(digits)
    g = euler_gamma(digits)
    sandwiches = {
        "stated": (-cons["c2"] - cons["c4"] - g,
                   -cons["c1"] - cons["c3"] - g),
        "corrected": (-cons["c2"] * 2 - cons["c4"] * 2 - g,
                      -cons["c1"] * 2 - cons["c3"] * 2 - g),
    }
    details: dict[str, Any] = {
        "rz_single": fp.rz,
        "series": series,
        "sandwich_stated": sandwiches["stated"],
        "sandwich_corrected": sandwiches["corrected"],
        "inside_stated": _certainly_between(value, *sandwiches["stated"]),
        "inside_corrected": _certainly_between(value, *sandwiches["corrected"]),
    }
    return value, details


def z2_at_zero(digits: int = DEFAULT_DIGITS) -> Enclosure:
    """Z_2(0) = -Rz_{s=1/2} zeta(s; n^2+1/4)
    - sum_{j>=1} (2^{-2j}/(2j+1)) zeta((2j+1)/2; n^2+1/4).

    The residue term is the finite part of the single-index lattice zeta
    at its pole; the series is the same odd-rung sum the bound
    certificates measure.  Printed sandwich: [-c2-c4-gamma, -c1-c3-gamma];
    the report records containment under the stated constants and under
    the factor-corrected ones.
    """
    return _z2_bundle(digits)[0]


@lru_cache(maxsize=8)
def _z1_bundle(digits: int) -> tuple[Enclosure, dict[str, Any]]:
    fp = zeta_double_finite_part(digits)
    series = double_lattice_half_odd_sum(digits, _series_target(digits))
    value = -fp.rz - series
    cons = constants_c1_c5(digits)
    g = euler_gamma(digits)
    fp_diag = dict(fp.diagnostics or {})
    # e(1 - e^{2 pi}/(e^{2 pi}-1)) = -e/(e^{2 pi}-1)
    e_defect = -(exp(Enclosure.exact(1, digits)) / expm1(pi(digits) * 2))
    half_log_8sinh = log(sinh(pi(digits) * HALF) * 8) * HALF
    lo = e_defect + half_log_8sinh - g * HALF - cons["c2"] - cons["c5"]
    hi = half_log_8sinh - g * HALF - cons["c1"]
    bessel_sum = fp_diag["bessel_double_sum"]
    bessel_cap = -e_defect * HALF  # (e/2)(e^{2 pi}/(e^{2 pi}-1) - 1)
    stated_rz = fp_diag["stated_formula_rz"]
    stated_reading = -stated_rz - series
    details: dict[str, Any] = {
        "rz_double": fp.rz,
        "rz_double_stated_formula": stated_rz,
        "series": series,
        "bessel_sum": bessel_sum,
        "bessel_cap": bessel_cap,
        "bessel_sum_inside_cap": bool(bessel_sum.is_strictly_positive()
                                      and bessel_sum.strictly_less_than(bessel_cap)),
        "sandwich": (lo, hi),
        "inside_sandwich": _certainly_between(value, lo, hi),
        "stated_reading": stated_reading,
        "stated_reading_inside_sandwich": _certainly_between(
            stated_reading, lo, hi),
    }
    return value, details


def z1_at_zero(digits: int = DEFAULT_DIGITS) -> Enclosure:
    """Z_1(0) = -Rz_{s=1/2} zeta(s; n^2+m^2+1/4)
    - 2 sum_{j>=1} (2^{-2j-1}/(2j+1)) zeta((2j+1)/2; n^2+m^2+1/4).

    The residue term is the trusted finite part of the double lattice
    zeta; the series equals the double odd-rung certificate sum.  The
    report keeps the printed sandwich built from the Bessel-sum defect
    and c1, c2, c5 next to the computed value, together with the reading
    that uses the printed finite-part formula instead of the computed
    one (the two differ by exactly the single-index finite part).
    """
    return _z1_bundle(digits)[0]


def analy_anomaly_torus(digits: int = DEFAULT_DIGITS) -> Enclosure:
    """A_analy(T) = 2 (Z_1(0) + Z_2(0))."""
    return (z1_at_zero(digits) + z2_at_zero(digits)) * 2


def paper_interval_bounds(digits: int = DEFAULT_DIGITS) -> dict[str, Enclosure]:
    """The closed-form interval endpoints printed for 2(Z_1(0)+Z_2(0)):

    A = 4 - 8 (1/sqrt15 + 1/sqrt17) - 2 (1/sqrt5 - 1/sqrt3)
        + ln(2 sinh(pi/2)) - gamma - 2e/(e^{2 pi}-1)
        - 9 (2 sqrt2 atanh(1/(2 sqrt2)) - 1)/(2 sqrt2),
    B = -4 (1/sqrt15 + 1/sqrt17) - 3 (1/sqrt5 - 1/sqrt3)
        + ln(18 sinh(pi/2)) - gamma.
    """
    pair = 1 / sqrt(Enclosure.exact(15, digits)) \
        + 1 / sqrt(Enclosure.exact(17, digits))
    gap = 1 / sqrt(Enclosure.exact(5, digits)) \
        - 1 / sqrt(Enclosure.exact(3, digits))
    sh = sinh(pi(digits) * HALF)
    g = euler_gamma(digits)
    e_pair_defect = -(exp(Enclosure.exact(1, digits)) * 2) \
        / expm1(pi(digits) * 2)
    root2 = sqrt(Enclosure.exact(2, digits))
    odd_tail = (root2 * 2 * atanh(1 / (root2 * 2))
                - Enclosure.exact(1, digits)) * 9 / (root2 * 2)
    a = Enclosure.exact(4, digits) - pair * 8 - gap * 2 + log(sh * 2) - g \
        + e_pair_defect - odd_tail
    b = -(pair * 4) - gap * 3 + log(sh * 18) - g
    return {"A": a, "B": b}


def total_anomaly_torus(digits: int = DEFAULT_DIGITS) -> TorusAnomalyReport:
    """Full report: total = comb + 2(z1 + z2), with every verdict the
    printed account promises, evaluated against the computed enclosures.

    The "paper_reading" diagnostics entry rebuilds the same total from the
    printed finite-part formula so the two accounts can be compared side
    by side.
    """
    comb = comb_anomaly_torus(digits)
    z1, d1 = _z1_bundle(digits)
    z2, d2 = _z2_bundle(digits)
    analy = (z1 + z2) * 2
    total = comb + analy
    bounds = paper_interval_bounds(digits)
    log_2pi = -comb
    a_shift = bounds["A"] - log_2pi
    b_shift = bounds["B"] - log_2pi
    verdicts = {
        "total_strictly_negative": bool(total.is_strictly_negative()),
        "total_inside_paper_window": bool(
            total.inside_bounds(Fraction(-4, 5), Fraction(-1, 4))),
        "total_inside_shifted_paper_bounds": _certainly_between(
            total, a_shift, b_shift),
        "analy_inside_paper_bounds": _certainly_between(
            analy, bounds["A"], bounds["B"]),
        "analy_strictly_positive": bool(analy.is_strictly_positive()),
        "z1_inside_paper_sandwich": d1["inside_sandwich"],
        "z2_inside_sandwich_stated": d2["inside_stated"],
        "z2_inside_sandwich_corrected": d2["inside_corrected"],
        "bessel_sum_inside_paper_bound": d1["bessel_sum_inside_cap"],
    }
    paper_z1 = d1["stated_reading"]
    paper_analy = (paper_z1 + z2) * 2
    paper_total = comb + paper_analy
    diagnostics: dict[str, Any] = {
        "z1_details": d1,
        "z2_details": d2,
        "shifted_paper_bounds": (a_shift, b_shift),
        "paper_reading": {
            "z1": paper_z1,
            "analy": paper_analy,
            "total": paper_total,
            "total_strictly_negative": bool(paper_total.is_strictly_negative()),
            "total_inside_paper_window": bool(
                paper_total.inside_bounds(Fraction(-4, 5), Fraction(-1, 4))),
            "total_inside_shifted_paper_bounds": _certainly_between(
                paper_total, a_shift, b_shift),
        },
    }
    return TorusAnomalyReport(
        comb_term=comb,
        z1=z1,
        z2=z2,
        analy_term=analy,
        total=total,
        paper_bounds=bounds,
        verdicts=verdicts,
        diagnostics=diagnostics,
    )


def z2_derivative_oracle(digits: int = 40, h: Fraction = Fraction(1, 10**21),
                         j_max: int = 40) -> Enclosure:
    """Central difference oracle for Z_2(0), independent of the finite part.

    D(s) = sum_{k>=0} 2 C(-s, 2k+1) 2^{-2k-1} zeta((s+2k+1)/2; n^2+1/4)
    is the difference of the two shifted zeta functions; its derivative
    at 0 is Z_2(0), so (D(h) - D(-h))/(2h) must agree within radii plus
    the O(h^2) curvature term.  The k = 0 rung passes within h/2 of the
    lattice pole, where the continuation keeps relative precision, and
    every term carries a factor s, so D(+-h) = O(1).  Truncation tail:
    |C(-s, 2k+1)| <= 2|s|/(2k+1) for |s| <= 10^-6, giving a bound of
    h 4^{-j_max} after summing the geometric envelope.
    """
    if not Fraction(0) < h <= Fraction(1, 10**6):
        raise DomainError(f"step must lie in (0, 1e-6], got {h}")

    def difference_series(s_val: Fraction) -> Enclosure:
        s = Enclosure.exact(s_val, digits)
        total = Enclosure.exact(0, digits)
        for k in range(j_max + 1):
            rung_s = Enclosure.exact(Fraction(s_val + 2 * k + 1, 2), digits)
            rung = zeta_nh(rung_s, digits=digits)
            total = total + rung * (binom_ball(s, 2 * k + 1)
                                    * Fraction(1, 4 ** k))
        trunc = Enclosure.exact(abs(s_val) * Fraction(1, 4 ** j_max), digits)
        return total.widened(trunc.hi)

    d_plus = difference_series(h)
    d_minus = difference_series(-h)
    return (d_plus - d_minus) / (2 * h)


def _square_tail(s: int, cap: int, digits: int) -> Enclosure:
    """Over n >= 1, m >= 0 with max(n, m) > cap:
    sum (sqrt(n^2+m^2+1/4) - 1/2)^{-s} <= 3 (1 - 1/(2 cap))^{-s}
    cap^{2-s}/(s-2), by row/column integral comparison."""
    shrink = Enclosure.exact(Fraction(2 * cap - 1, 2 * cap), digits)
    edge = Enclosure.exact(cap, digits)
    return shrink.pow_int(-s) * edge.pow_int(2 - s) * Fraction(3, s - 2)


def coexact_decomposition_check(s: int, digits: int = 40,
                                cap: int = 200) -> dict[str, Any]:
    """Regroup the raw co-exact spectrum against the two lattice zetas.

    The co-exact eigenvalues are n^2+m^2 (n >= 1, m >= 0), each with
    multiplicity 4, and the claim under test is

        zeta_cex(s; +-1/2) = 4 zeta_{+-1/2}(s; sqrt(n^2+m^2+1/4))
                           + 4 zeta_{+-1/2}(s; sqrt(n^2+1/4)).

    The left side is summed over distinct eigenvalues with counted
    representation numbers, the right side from a plain double loop plus
    the library's single-index shifted series, so a bookkeeping slip in
    either organization would separate the enclosures.  Direct region
    only (integer s >= 3).
    """
    if not (isinstance(s, int) and s >= 3):
        raise DomainError(f"direct region needs integer s >= 3, got {s!r}")
    if cap < 8:
        raise DomainError(f"cap too small to be meaningful: {cap}")
    counts: dict[int, int] = {}
    for n in range(1, cap + 1):
        nn = n * n
        for m in range(0, cap + 1):
            lam = nn + m * m
            counts[lam] = counts.get(lam, 0) + 4
    mu_cache: dict[int, Enclosure] = {}
    for lam in counts:
        mu_cache[lam] = sqrt(Enclosure.exact(Fraction(4 * lam + 1, 4), digits))
    out: dict[str, Any] = {"s": s, "cap": cap}
    spectral_tail = _square_tail(s, cap, digits) * 4
    for sign in (1, -1):
        shift = Fraction(sign, 2)
        spectral = Enclosure.exact(0, digits)
        for lam, mult in counts.items():
            spectral = spectral + (mu_cache[lam] + shift).pow_int(-s) * mult
        spectral = spectral.widened(spectral_tail.hi)
        double_part = Enclosure.exact(0, digits)
        for n in range(1, cap + 1):
            for m in range(n, cap + 1):
                term = (mu_cache[n * n + m * m] + shift).pow_int(-s)
                double_part = double_part + (term if m == n else term * 2)
        double_part = double_part.widened(_square_tail(s, cap, digits).hi)
        single_lib = zeta_shifted_nh(sign, Enclosure.exact(s, digits), digits,
                                     target_radius=Fraction(1, 10**8))
        recombined = double_part * 4 + single_lib * 4
        key = "plus" if sign == 1 else "minus"
        out[key] = {
            "spectral": spectral,
            "double_direct": double_part,
            "single_library": single_lib,
            "recombined": recombined,
            "consistent": bool(spectral.consistent_with(recombined)),
        }
    return out
