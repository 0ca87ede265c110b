"""Certified enclosures for analytic-torsion anomaly terms on cones."""

from .certify import BoundCertificate, all_certificates
from .enclosure import (
    DEFAULT_DIGITS,
    DomainError,
    Enclosure,
    PrecisionExhaustedError,
    enclose_fn,
    parse_decimal,
    pi,
)
from .series import SeriesSpec, geometric_tail, sum_series
from .sphere import SphereAnomalyReport, cancellation_check, sphere_volume
from .torus import TorusAnomalyReport, total_anomaly_torus
from .zetalattice import ZetaNHContext, zeta_double, zeta_nh

__version__ = "0.1.0"

__all__ = [
    "BoundCertificate",
    "DEFAULT_DIGITS",
    "DomainError",
    "Enclosure",
    "PrecisionExhaustedError",
    "SeriesSpec",
    "SphereAnomalyReport",
    "TorusAnomalyReport",
    "ZetaNHContext",
    "all_certificates",
    "cancellation_check",
    "enclose_fn",
    "geometric_tail",
    "parse_decimal",
    "pi",
    "sphere_volume",
    "sum_series",
    "total_anomaly_torus",
    "zeta_double",
    "zeta_nh",
    "__version__",
]
