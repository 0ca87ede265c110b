"""Bound certificates: verdicts, sandwich constants, cross-checks."""

from fractions import Fraction

import mpmath
import pytest

from conetorsion.certify import (
    BoundCertificate,
    all_certificates,
    binomial_odd_zeta_sum,
    certify_prop_3_1,
    certify_prop_3_2,
    certify_residue_sandwich,
    constants_c1_c5,
    double_lattice_half_odd_sum,
    lattice_half_odd_sum,
)
from conetorsion.enclosure import Enclosure
from conetorsion.special import euler_gamma
from conetorsion.zetalattice import zeta_nh_finite_part
from test_enclosure import mpf_fraction

TARGET_40 = Fraction(1, 10**20)

VERDICTS = {
    "binomial_odd_zeta_sum_sandwich": "holds_as_stated",
    "lattice_half_odd_sum_sandwich": "holds_factor_corrected",
    "double_lattice_half_odd_sum_sandwich": "holds_factor_corrected",
    "half_point_finite_part_sandwich": "holds_factor_corrected",
    "half_binary_odd_zeta_closed_sum": "holds_as_stated",
    "half_binary_odd_zeta_minus_one_closed_sum": "holds_as_stated",
    "log_gamma_generating_identity_z_1_2": "holds_as_stated",
    "log_gamma_generating_identity_z_1_4": "holds_as_stated",
}

CONSTANTS = {
    "c1": Fraction("-0.09686799048375676972296138"),
    "c2": Fraction("-0.06359930727784571421860871"),
    "c3": Fraction("0.008659613495151378707737397"),
    "c4": Fraction("0.05796575782920622440536002"),
    "c5": Fraction("0.07175511599667998413162701"),
}


def gap_below(a: Enclosure, scalar: Fraction, bound: float) -> bool:
    return float(abs(a - Enclosure.exact(scalar, a.digits)).hi) < bound


def test_verdict_map_frozen():
    certs = all_certificates(30)
    assert [c.claim for c in certs] == list(VERDICTS)
    assert {c.claim: c.verdict for c in certs} == VERDICTS
    assert all(c.holds for c in certs)


def test_certificate_record_validation():
    one = Enclosure.exact(1, 30)
    with pytest.raises(ValueError):
        BoundCertificate(claim="x", lower=one, upper=one, computed=one,
                         verdict="plausible")
    ok = BoundCertificate(claim="x", lower=one, upper=one, computed=one,
                          verdict="fails")
    assert not ok.holds


def test_sandwich_constants_frozen():
    cc = constants_c1_c5(40)
    for name, lit in CONSTANTS.items():
        assert gap_below(cc[name], lit, 1e-24), name


def test_evaluators_frozen():
    s1 = binomial_odd_zeta_sum(40, TARGET_40)
    s2 = lattice_half_odd_sum(40, TARGET_40)
    s3 = double_lattice_half_odd_sum(40, TARGET_40)
    assert gap_below(s1, Fraction("-0.06500158138612694044591255"), 1e-18)
    assert gap_below(s2, Fraction("0.0841752781714775533707491366119"), 1e-18)
    assert gap_below(s3, Fraction("0.0839795208847971781540852359164"), 1e-18)
    # the lattice sums sit between the c3..c4 and 0..c5 windows only
    # after doubling, which is what the factor-corrected verdicts record
    cc = constants_c1_c5(40)
    assert s2.inside_bounds((cc["c3"] * 2).lo, (cc["c4"] * 2).hi)
    assert s3.inside_bounds(Enclosure.exact(0, 40).lo, (cc["c5"] * 2).hi)
    assert not s2.inside_bounds(cc["c3"].lo, cc["c4"].hi)


def test_binomial_sum_against_mpmath():
    mpmath.mp.dps = 50
    acc = mpmath.mpf(0)
    for j in range(1, 61):
        acc += (mpmath.binomial(mpmath.mpf(-1) / 2, j)
                * mpmath.zeta(2 * j + 1) / mpmath.power(2, 2 * j + 1))
    # truncation at j = 60 is below 4^-60
    assert gap_below(binomial_odd_zeta_sum(40, TARGET_40),
                     mpf_fraction(acc), 1e-18)


def test_finite_part_identity():
    # the residue sandwich leans on Rz = gamma + 2 S1
    s1 = binomial_odd_zeta_sum(40, TARGET_40)
    rz = zeta_nh_finite_part(40).rz
    recombined = euler_gamma(40) + s1 * 2
    assert rz.consistent_with(recombined)
    assert float(abs(rz - recombined).hi) < 1e-18


def test_prop_3_1_margins():
    cert = certify_prop_3_1(40)
    assert cert.verdict == "holds_as_stated"
    assert cert.upper.hi < 0
    assert cert.computed.inside_bounds(cert.lower.lo, cert.upper.hi)
    assert any("clearance" in n for n in cert.notes)


def test_prop_3_2_both_readings_recorded():
    cert = certify_prop_3_2(40)
    assert cert.verdict == "holds_factor_corrected"
    assert cert.computed.is_strictly_positive()
    assert not cert.computed.inside_bounds(cert.lower.lo, cert.upper.hi)
    assert any("factor-restored" in n for n in cert.notes)


def test_residue_sandwich_cross_check_note():
    cert = certify_residue_sandwich(40)
    assert cert.verdict == "holds_factor_corrected"
    assert any(n.startswith("cross-check") for n in cert.notes)
    assert gap_below(cert.computed,
                     Fraction("0.447212502129278979714686996041"), 1e-28)


def test_certificates_deterministic():
    a = certify_prop_3_1(30)
    b = certify_prop_3_1(30)
    assert a.notes == b.notes
    assert a.computed.decimal(25) == b.computed.decimal(25)
