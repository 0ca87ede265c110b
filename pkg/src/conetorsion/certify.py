"""Pass/fail certificates for the explicit constant sandwiches.

A certificate stores the stated interval, the computed enclosure, a
verdict, and prose notes.  Where the derivation behind a stated bound
carries a power-of-two factor that the statement drops, the corrected
reading is recorded next to the stated one instead of being silently
repaired; the verdict then names the reading that survives.  Interval
containment is decided on outer endpoints, never on centers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .enclosure import (
    DEFAULT_DIGITS,
    Enclosure,
    _ctx,
    atanh,
    log,
    pi,
    sqrt,
)
from .special import (
    binom_half,
    euler_gamma,
    gamma_fn,
    hurwitz_zeta_ladder,
    log_gamma_series,
    riemann_zeta,
)
from .zetalattice import (
    zeta_double,
    zeta_double_zeta_beta,
    zeta_nh,
    zeta_nh_finite_part,
)

__all__ = [
    "BoundCertificate",
    "binomial_odd_zeta_sum",
    "double_lattice_half_odd_sum",
    "lattice_half_odd_sum",
    "all_certificates",
    "certify_closed_sums",
    "certify_prop_3_1",
    "certify_prop_3_2",
    "certify_prop_3_3",
    "certify_residue_sandwich",
    "constants_c1_c5",
]

HALF = Fraction(1, 2)

_VERDICTS = ("holds_as_stated", "holds_factor_corrected", "fails")


@dataclass(frozen=True)
class BoundCertificate:
    """Pure record of one adjudicated claim.

    verdict is "holds_as_stated" exactly when computed's interval sits
    inside [lower.lo, upper.hi]; "holds_factor_corrected" when only the
    reading with the derivation's power-of-two factor restored does.
    """

    claim: str
    lower: Enclosure
    upper: Enclosure
    computed: Enclosure
    verdict: str
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.verdict not in _VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def holds(self) -> bool:
        return self.verdict != "fails"


def _certificate_target(digits: int) -> Fraction:
    # 1e-40 at the default 60 digits; never slacker than half the digits
    return Fraction(1, 10 ** max(digits - 20, digits // 2))


def _fmt(x) -> str:
    return "%.6e" % float(x)


def _margin_note(name: str, computed: Enclosure, lo, hi) -> str:
    cs = _ctx(computed.digits)
    below = cs.rd.sub(computed.lo, lo)
    above = cs.rd.sub(hi, computed.hi)
    return (f"{name}: clearance {_fmt(below)} above the lower endpoint, "
            f"{_fmt(above)} below the upper endpoint")


_ODD_ZETA_CACHE: dict = {}


def _odd_zeta_rungs(count: int, digits: int, target: Fraction) -> list[Enclosure]:
    """zeta_R(3), zeta_R(5), ..., zeta_R(2*count+1) from one ladder."""
    bucket = ((count + 15) // 16) * 16
    key = (bucket, digits, target)
    got = _ODD_ZETA_CACHE.get(key)
    if got is None:
        got = hurwitz_zeta_ladder(Enclosure.exact(3, digits), Fraction(1),
                                  count=bucket, step=2, digits=digits,
                                  target_radius=target)
        if len(_ODD_ZETA_CACHE) > 16:
            _ODD_ZETA_CACHE.clear()
        _ODD_ZETA_CACHE[key] = got
    return got[:count]


def binomial_odd_zeta_sum(digits: int, target: Fraction) -> Enclosure:
    """sum_{j>=1} C(-1/2,j) 2^(-2j-1) zeta_R(2j+1).

    |C(-1/2,j)| < 1 and zeta_R falls toward 1, so successive terms shrink
    by more than 4; the first dropped term times 4/3 bounds the tail.
    """
    big_j = 4
    while Fraction(4, 3) * Fraction(2, 4 ** (big_j + 1) * 2) > target * HALF:
        big_j += 4
    rungs = _odd_zeta_rungs(big_j + 1, digits, target / (8 * (big_j + 1)))
    total = Enclosure.exact(0, digits)
    for j in range(1, big_j + 1):
        coeff = binom_half(j) * Fraction(1, 2 ** (2 * j + 1))
        total = total + rungs[j - 1] * coeff
    tail = rungs[big_j] * Fraction(4, 3 * 2 ** (2 * big_j + 3))
    return total.widened(tail.hi)


def lattice_half_odd_sum(digits: int, target: Fraction) -> Enclosure:
    """sum_{j>=1} (2^(-2j)/(2j+1)) zeta(s; n^2+1/4) at s = (2j+1)/2.

    Every term is positive and the lattice zeta falls in s, so the term
    ratio stays under 1/4; the j = J+1 envelope times 4/3 bounds the tail.
    """
    big_j = 4
    while Fraction(4, 3) * Fraction(1, 4 ** (big_j + 1) * (2 * big_j + 3)) \
            > target * HALF:
        big_j += 4
    inner = target / (4 * (big_j + 1))
    total = Enclosure.exact(0, digits)
    head = None
    for j in range(1, big_j + 1):
        s = Enclosure.exact(Fraction(2 * j + 1, 2), digits)
        rung = zeta_nh(s, digits=digits, target_radius=inner)
        if head is None:
            head = rung
        total = total + rung * Fraction(1, 4 ** j * (2 * j + 1))
    assert head is not None
    tail = head * Fraction(4, 3 * 4 ** (big_j + 1) * (2 * big_j + 3))
    return total.widened(tail.hi)


def _direct_lattice_points(s_f: float, t_f: float) -> float:
    """Float estimate of the N needed by the direct double sum at target t."""
    c = 0.5 * math.sqrt(math.pi) * math.exp(math.lgamma(s_f - 0.5)
                                            - math.lgamma(s_f))
    return (2.0 * c / ((2.0 * s_f - 2.0) * t_f)) ** (1.0 / (2.0 * s_f - 2.0))


def double_lattice_half_odd_sum(digits: int, target: Fraction) -> Enclosure:
    """sum_{j>=1} (2^(-2j)/(2j+1)) zeta(s; n^2+m^2+1/4) at s = (2j+1)/2.

    Tail envelope: 2mn <= n^2+m^2+1/4 gives the valid per-term bound
    2^{-s} zeta_R(s)^2 (the stated derivation's zeta_R(2s)^2 understates,
    so it is not usable here), hence a geometric tail of ratio 1/8.
    """
    big_j = 4
    while Fraction(8, 7) * Fraction(1, 8 ** (big_j + 1) * (2 * big_j + 3)) * 8 \
            > target * HALF:
        big_j += 2
    inner = target / (4 * (big_j + 1))
    t_f = max(float(inner), 1e-300)
    total = Enclosure.exact(0, digits)
    for j in range(1, big_j + 1):
        sval = Fraction(2 * j + 1, 2)
        s = Enclosure.exact(sval, digits)
        if _direct_lattice_points(float(sval), t_f) <= 256.0:
            rung = zeta_double(s, digits, target_radius=inner, cap=300)
        else:
            rung = zeta_double_zeta_beta(s, digits, target_radius=inner)
        total = total + rung * Fraction(1, 4 ** j * (2 * j + 1))
    s_next = Enclosure.exact(Fraction(2 * big_j + 3, 2), digits)
    z_next = riemann_zeta(s_next, digits)
    env = z_next * z_next / sqrt(Enclosure.exact(2, digits))
    tail = env * Fraction(8, 7 * 8 ** (big_j + 1) * (2 * big_j + 3))
    return total.widened(tail.hi)


def constants_c1_c5(digits: int = DEFAULT_DIGITS) -> dict[str, Enclosure]:
    """The five sandwich constants.

    c1 and c2 come from fourth partial sums of the binomial series of
    (1+x)^(-1/2); c3 and c4 are the closed odd-zeta sums; c5 resums the
    arctanh series of the 2mn <= n^2+m^2 envelope.
    """
    g = euler_gamma(digits)
    pair = (1 / sqrt(Enclosure.exact(15, digits))
            + 1 / sqrt(Enclosure.exact(17, digits)))
    gap = (1 / sqrt(Enclosure.exact(5, digits))
           - 1 / sqrt(Enclosure.exact(3, digits)))
    root2 = sqrt(Enclosure.exact(2, digits))
    at = atanh(1 / (root2 * 2))
    return {
        "c1": pair + gap * Fraction(3, 4) - HALF,
        "c2": pair * 2 + gap * HALF - 1,
        "c3": (log(Enclosure.exact(Fraction(2, 3), digits)) - g + 1) * HALF,
        "c4": (log(Enclosure.exact(2, digits)) - g) * HALF,
        "c5": (root2 * 2 * at - 1) * 9 / (root2 * 4),
    }


def certify_prop_3_1(digits: int = DEFAULT_DIGITS) -> BoundCertificate:
    """Sandwich c1 <= sum_{j>=1} C(-1/2,j) 2^(-2j-1) zeta_R(2j+1) <= c2 < 0."""
    cc = constants_c1_c5(digits)
    c1, c2 = cc["c1"], cc["c2"]
    computed = binomial_odd_zeta_sum(digits, _certificate_target(digits))
    stated = computed.inside_bounds(c1.lo, c2.hi)
    cs = _ctx(digits)
    neg_margin = cs.rd.div(cs.rd.minus(c2.hi), c2.radius)
    notes = (
        _margin_note("stated interval", computed, c1.lo, c2.hi),
        f"upper constant is negative: c2.hi = {_fmt(c2.hi)}, "
        f"|c2| / radius = {_fmt(neg_margin)}",
    )
    return BoundCertificate(
        claim="binomial_odd_zeta_sum_sandwich",
        lower=c1, upper=c2, computed=computed,
        verdict="holds_as_stated" if stated else "fails",
        notes=notes,
    )


def certify_prop_3_2(digits: int = DEFAULT_DIGITS) -> BoundCertificate:
    """Sandwich for the n^2+1/4 lattice sum against [c3, c4], both readings.

    The stated interval uses term weight 2^(-2j); the bounding chain
    behind it carries 2^(-2j-1), half of that.  Both readings are
    recorded: the sum against [c3, c4] as stated, and against
    [2 c3, 2 c4] with the dropped factor restored.
    """
    cc = constants_c1_c5(digits)
    c3, c4 = cc["c3"], cc["c4"]
    computed = lattice_half_odd_sum(digits, _certificate_target(digits))
    lo2, hi2 = (c3 * 2).lo, (c4 * 2).hi
    if computed.inside_bounds(c3.lo, c4.hi):
        verdict = "holds_as_stated"
    elif computed.inside_bounds(lo2, hi2):
        verdict = "holds_factor_corrected"
    else:
        verdict = "fails"
    notes = (
        f"stated interval [{_fmt(c3.lo)}, {_fmt(c4.hi)}] against "
        f"computed {_fmt(computed.center)}",
        "the chain bounds the half-weight sum: " +
        _margin_note("halved sum in [c3, c4]", computed * HALF, c3.lo, c4.hi),
        _margin_note("factor-restored interval [2c3, 2c4]", computed, lo2, hi2),
        "computed sum is positive: lower outer endpoint "
        f"{_fmt(computed.lo)} > 0",
    )
    return BoundCertificate(
        claim="lattice_half_odd_sum_sandwich",
        lower=c3, upper=c4, computed=computed,
        verdict=verdict, notes=notes,
    )


def certify_prop_3_3(digits: int = DEFAULT_DIGITS) -> BoundCertificate:
    """Sandwich for the n^2+m^2+1/4 lattice sum against [0, c5], both readings."""
    cc = constants_c1_c5(digits)
    c5 = cc["c5"]
    zero = Enclosure.exact(0, digits)
    computed = double_lattice_half_odd_sum(digits, _certificate_target(digits))
    lo2, hi2 = zero.lo, (c5 * 2).hi
    if computed.inside_bounds(zero.lo, c5.hi):
        verdict = "holds_as_stated"
    elif computed.inside_bounds(lo2, hi2):
        verdict = "holds_factor_corrected"
    else:
        verdict = "fails"
    notes = (
        f"stated interval [0, {_fmt(c5.hi)}] against computed "
        f"{_fmt(computed.center)}",
        _margin_note("factor-restored interval [0, 2c5]", computed, lo2, hi2),
        "the stated chain's envelope zeta_R(2s)^2 understates the double "
        "sum (the 2mn bound yields zeta_R(s)^2, larger on s < 2), so the "
        "corrected interval is checked by direct evaluation, not by the "
        "chain",
        f"computed sum is positive: lower outer endpoint {_fmt(computed.lo)} > 0",
    )
    return BoundCertificate(
        claim="double_lattice_half_odd_sum_sandwich",
        lower=zero, upper=c5, computed=computed,
        verdict=verdict, notes=notes,
    )


def certify_residue_sandwich(digits: int = DEFAULT_DIGITS) -> BoundCertificate:
    """Sandwich for the finite part Rz of the n^2+1/4 zeta at s = 1/2.

    Stated interval [c1 + gamma, c2 + gamma]; since Rz = gamma + 2 S1 with
    S1 the binomial odd-zeta sum of the first sandwich, the bounding chain
    actually delivers [2 c1 + gamma, 2 c2 + gamma], and that is the reading
    the computed value lands in.
    """
    cc = constants_c1_c5(digits)
    g = euler_gamma(digits)
    lower, upper = cc["c1"] + g, cc["c2"] + g
    lo2, hi2 = (cc["c1"] * 2 + g).lo, (cc["c2"] * 2 + g).hi
    computed = zeta_nh_finite_part(digits).rz
    if computed.inside_bounds(lower.lo, upper.hi):
        verdict = "holds_as_stated"
    elif computed.inside_bounds(lo2, hi2):
        verdict = "holds_factor_corrected"
    else:
        verdict = "fails"
    doubled = binomial_odd_zeta_sum(digits, _certificate_target(digits)) * 2 + g
    tol = Enclosure.exact(_certificate_target(digits), digits)
    notes = (
        _margin_note("stated interval [c1+g, c2+g]", computed,
                     lower.lo, upper.hi),
        _margin_note("factor-restored interval [2c1+g, 2c2+g]", computed,
                     lo2, hi2),
        "cross-check Rz = gamma + 2 S1: " +
        _margin_note("difference", computed - doubled, (-tol).lo, tol.hi),
    )
    return BoundCertificate(
        claim="half_point_finite_part_sandwich",
        lower=lower, upper=upper, computed=computed,
        verdict=verdict, notes=notes,
    )


def _equality_certificate(claim: str, computed: Enclosure, rhs: Enclosure,
                          digits: int, extra: tuple[str, ...] = ()) -> BoundCertificate:
    tol = _certificate_target(digits)
    lower, upper = rhs - tol, rhs + tol
    consistent = computed.consistent_with(rhs)
    ok = consistent and computed.inside_bounds(lower.lo, upper.hi)
    cs = _ctx(digits)
    gap = cs.ru.add(computed.radius, rhs.radius)
    notes = (
        f"two-sided agreement within combined radii {_fmt(gap)}: {consistent}",
    ) + extra
    return BoundCertificate(
        claim=claim, lower=lower, upper=upper, computed=computed,
        verdict="holds_as_stated" if ok else "fails", notes=notes,
    )


def certify_closed_sums(digits: int = DEFAULT_DIGITS) -> list[BoundCertificate]:
    """The two closed odd-zeta sums and the log-gamma generating identity.

    The generating identity is checked at z = 1/2 against the closed
    right side ln 2 - (ln pi)/2 - gamma/2 and at z = 1/4 against
    -gamma/4 - ln Gamma(5/4) with Gamma evaluated by monotone endpoint
    recurrence, independent of any zeta series.
    """
    target = _certificate_target(digits)
    g = euler_gamma(digits)
    out: list[BoundCertificate] = []

    # sum_{k>=1} 2^(-2k-1)/(2k+1) zeta_R(2k+1) = (ln 2 - gamma)/2.
    # Positive terms with ratio < 1/4; the dropped-term envelope times
    # 4/3 closes the tail.
    big_j = 4
    while Fraction(4, 3) * Fraction(2, 4 ** (big_j + 1) * (2 * big_j + 3)) \
            > target * HALF:
        big_j += 4
    rungs = _odd_zeta_rungs(big_j + 1, digits, target / (8 * (big_j + 1)))
    even_odd = Enclosure.exact(0, digits)
    for k in range(1, big_j + 1):
        even_odd = even_odd + rungs[k - 1] * Fraction(1, 2 ** (2 * k + 1)
                                                      * (2 * k + 1))
    even_odd = even_odd.widened(
        (rungs[big_j] * Fraction(4, 3 * 2 ** (2 * big_j + 3)
                                 * (2 * big_j + 3))).hi)
    rhs_eo = (log(Enclosure.exact(2, digits)) - g) * HALF
    out.append(_equality_certificate(
        "half_binary_odd_zeta_closed_sum", even_odd, rhs_eo, digits,
        extra=(
            "summed from k = 1; the displayed lower index 2 drops the "
            "k = 1 term zeta_R(3)/24 and misses the right side by "
            f"{_fmt((rungs[0] * Fraction(1, 24)).center)}, while the "
            "k >= 1 reading matches and is the one the later derivation "
            "uses",
        ),
    ))

    # sum_{k>=1} 2^(-2k-1)/(2k+1) (zeta_R(2k+1) - 1) = (1 - gamma + ln(2/3))/2.
    # zeta_R(s) - 1 <= 2^(1-s), so the term ratio stays under 1/16.
    small_j = 4
    while Fraction(16, 15) * Fraction(2, 16 ** (small_j + 1) * (2 * small_j + 3)) \
            > target * HALF:
        small_j += 2
    zm1 = Enclosure.exact(0, digits)
    for k in range(1, small_j + 1):
        zm1 = zm1 + (rungs[k - 1] - 1) * Fraction(1, 2 ** (2 * k + 1)
                                                  * (2 * k + 1))
    zm1 = zm1.widened(Enclosure.exact(
        Fraction(16, 15 * 2 ** (4 * small_j + 5) * (2 * small_j + 3)),
        digits).hi)
    rhs_zm1 = (log(Enclosure.exact(Fraction(2, 3), digits)) - g + 1) * HALF
    out.append(_equality_certificate(
        "half_binary_odd_zeta_minus_one_closed_sum", zm1, rhs_zm1, digits))

    # generating identity sum_{k>=2} (-1)^(k-1) z^k zeta_R(k)/k
    #   = -gamma z - ln Gamma(1+z), |z| < 1, at z = 1/2 and z = 1/4
    zha = Enclosure.exact(HALF, digits)
    lhs_half = log_gamma_series(zha, digits, target_radius=target * HALF)
    rhs_half = (log(Enclosure.exact(2, digits))
                - log(pi(digits)) * HALF - g * HALF)
    out.append(_equality_certificate(
        "log_gamma_generating_identity_z_1_2", lhs_half, rhs_half, digits,
        extra=("right side closed: ln 2 - (ln pi)/2 - gamma/2",)))

    zqu = Enclosure.exact(Fraction(1, 4), digits)
    lhs_qu = log_gamma_series(zqu, digits, target_radius=target * HALF)
    rhs_qu = -(g * Fraction(1, 4)) - log(
        gamma_fn(Enclosure.exact(Fraction(5, 4), digits), digits))
    out.append(_equality_certificate(
        "log_gamma_generating_identity_z_1_4", lhs_qu, rhs_qu, digits,
        extra=("right side -gamma/4 - ln Gamma(5/4), Gamma by monotone "
               "endpoint recurrence",)))
    return out


def all_certificates(digits: int = DEFAULT_DIGITS) -> list[BoundCertificate]:
    """The four sandwiches followed by the closed-sum identities."""
    out = [certify_prop_3_1(digits), certify_prop_3_2(digits),
           certify_prop_3_3(digits), certify_residue_sandwich(digits)]
    out.extend(certify_closed_sums(digits))
    return out
