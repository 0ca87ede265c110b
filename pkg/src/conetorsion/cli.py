"""Command line front end.

Serializes reports with every numeric field as a ``{center, radius,
digits}`` object so a run doubles as an audit trail; constants whose
closed form was taken from the literature carry a ``paper_ref`` string
spelling that formula out.  JSON output is byte-identical across runs
for a fixed configuration, which the snapshot mode relies on.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .certify import all_certificates, constants_c1_c5
from .enclosure import (
    DEFAULT_DIGITS,
    DomainError,
    Enclosure,
    PrecisionExhaustedError,
    log,
    log2_const,
    pi,
    sinh,
)
from .special import euler_gamma
from .sphere import cancellation_check
from .torus import total_anomaly_torus
from .zetalattice import (
    ZetaNHContext,
    zeta_double_zeta_beta,
    zeta_nh_deriv_at_zero,
    zeta_nh_eval,
)

__all__ = ["RunConfig", "Sourced", "main", "render_report", "run"]

ENV_DIGITS = "CONETORSION_DIGITS"

_COMMANDS = ("sphere", "torus", "certify-bounds", "zeta", "constants")

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3


@dataclass(frozen=True)
class RunConfig:
    """Run-wide knobs; command-specific options ride on ``run`` keywords."""

    digits: int = DEFAULT_DIGITS
    j_cutoff: int | None = None
    n_cutoff: int | None = None
    m_cutoff: int | None = None
    format: str = "json"
    snapshot: str | None = None

    def __post_init__(self) -> None:
        if not 20 <= self.digits <= 500:
            raise DomainError(f"digits must lie in [20, 500], got {self.digits}")
        for name in ("j_cutoff", "n_cutoff", "m_cutoff"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise DomainError(f"{name} must be positive, got {v}")
        if self.format not in ("json", "text"):
            raise DomainError(f"format must be json or text, got {self.format!r}")


@dataclass(frozen=True)
class Sourced:
    """A value paired with the closed-form expression it was computed from."""

    value: Any
    paper_ref: str


_REFS = {
    "c1": "15^(-1/2) + 17^(-1/2) + (3/4)(5^(-1/2) - 3^(-1/2)) - 1/2",
    "c2": "2(15^(-1/2) + 17^(-1/2)) + (1/2)(5^(-1/2) - 3^(-1/2)) - 1",
    "c3": "(log(2/3) - gamma + 1)/2",
    "c4": "(log 2 - gamma)/2",
    "c5": "(9/(4 sqrt 2))(2 sqrt 2 atanh(1/(2 sqrt 2)) - 1)",
    "A": ("4 - 8(15^(-1/2) + 17^(-1/2)) - 2(5^(-1/2) - 3^(-1/2))"
          " + log(2 sinh(pi/2)) - gamma - 2e/(e^(2 pi) - 1)"
          " - (9/(2 sqrt 2))(2 sqrt 2 atanh(1/(2 sqrt 2)) - 1)"),
    "B": ("-4(15^(-1/2) + 17^(-1/2)) - 3(5^(-1/2) - 3^(-1/2))"
          " + log(18 sinh(pi/2)) - gamma"),
    "bessel_cap": "(e/2)(e^(2 pi)/(e^(2 pi) - 1) - 1)",
    "window_lo": "-4/5, lower edge of the strict window for the total",
    "window_hi": "-1/4, upper edge of the strict window for the total",
    "gamma": "Euler-Mascheroni constant, lim harmonic(n) - log n",
    "deriv0": "-2 log 2 - log sinh(pi/2)",
}


# --- serialization ---------------------------------------------------------

def _payload(obj: Any) -> Any:
    if isinstance(obj, Sourced):
        base = _payload(obj.value)
        if isinstance(base, dict):
            return {**base, "paper_ref": obj.paper_ref}
        return {"value": base, "paper_ref": obj.paper_ref}
    if isinstance(obj, Enclosure):
        center, radius = obj.decimal(obj.digits).split(" ± ")
        return {"center": center, "radius": radius, "digits": obj.digits}
    if isinstance(obj, Fraction):
        return str(obj)
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, dict):
        return {str(k): _payload(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_payload(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: _payload(getattr(obj, f.name))
                for f in dataclasses.fields(obj)}
    raise TypeError(f"unserializable report entry of type {type(obj).__name__}")


def _text_lines(obj: Any, prefix: str, out: list[str]) -> None:
    if isinstance(obj, Sourced):
        obj = obj.value
    if isinstance(obj, Enclosure):
        out.append(f"{prefix} = {obj.decimal(12)}")
    elif isinstance(obj, dict):
        for k, v in obj.items():
            _text_lines(v, f"{prefix}.{k}" if prefix else str(k), out)
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _text_lines(v, f"{prefix}[{i}]", out)
    elif dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        for f in dataclasses.fields(obj):
            _text_lines(getattr(obj, f.name), f"{prefix}.{f.name}", out)
    else:
        out.append(f"{prefix} = {obj}")


def render_report(tree: dict[str, Any], format: str = "json") -> str:
    if format == "json":
        return json.dumps(_payload(tree), sort_keys=True,
                          separators=(",", ":")) + "\n"
    lines: list[str] = []
    _text_lines(tree, "", lines)
    return "\n".join(lines) + "\n"


# --- command bodies --------------------------------------------------------

def _sphere_tree(cfg: RunConfig, *, p: int, identities: bool,
                 oracle_s: Fraction | None) -> tuple[dict[str, Any], list[str]]:
    rep = cancellation_check(p, cfg.digits, identities=identities,
                             oracle_s=oracle_s, oracle_n=cfg.n_cutoff)
    cancels = rep.total.contains_scalar(0)
    tree = {
        "command": "sphere",
        "digits": cfg.digits,
        "p": rep.p,
        "comb_term": rep.comb_term,
        "analy_term": rep.analy_term,
        "total": rep.total,
        "volume": rep.volume,
        "verdicts": {"cancellation": cancels},
        "diagnostics": rep.diagnostics,
    }
    return tree, [] if cancels else ["cancellation"]


def _torus_tree(cfg: RunConfig) -> tuple[dict[str, Any], list[str]]:
    rep = total_anomaly_torus(cfg.digits)
    diag = dict(rep.diagnostics)
    z1_details = dict(diag["z1_details"])
    z1_details["bessel_cap"] = Sourced(z1_details["bessel_cap"],
                                       _REFS["bessel_cap"])
    diag["z1_details"] = z1_details
    diag["paper_window"] = {
        "lo": Sourced(Enclosure.exact(Fraction(-4, 5), cfg.digits),
                      _REFS["window_lo"]),
        "hi": Sourced(Enclosure.exact(Fraction(-1, 4), cfg.digits),
                      _REFS["window_hi"]),
    }
    tree = {
        "command": "torus",
        "digits": cfg.digits,
        "comb_term": rep.comb_term,
        "z1": rep.z1,
        "z2": rep.z2,
        "analy_term": rep.analy_term,
        "total": rep.total,
        "paper_bounds": {
            "A": Sourced(rep.paper_bounds["A"], _REFS["A"]),
            "B": Sourced(rep.paper_bounds["B"], _REFS["B"]),
        },
        "verdicts": rep.verdicts,
        "diagnostics": diag,
    }
    # The run gates on negativity alone; the remaining verdicts record how
    # the computed value sits against the printed claims.
    negate = rep.verdicts["total_strictly_negative"]
    return tree, [] if negate else ["total_strictly_negative"]


def _certify_tree(cfg: RunConfig) -> tuple[dict[str, Any], list[str]]:
    certs = all_certificates(cfg.digits)
    failures = [c.claim for c in certs if not c.holds]
    tree = {
        "command": "certify-bounds",
        "digits": cfg.digits,
        "certificates": certs,
        "verdicts": {c.claim: c.holds for c in certs},
    }
    return tree, failures


def _zeta_tree(cfg: RunConfig, *, family: str, s: Fraction,
               deriv: bool) -> tuple[dict[str, Any], list[str]]:
    d = cfg.digits
    if deriv:
        if family != "nh" or s != 0:
            raise DomainError("--deriv applies to the nh family at s = 0 only")
        value = zeta_nh_deriv_at_zero(d)
        closed = -(log2_const(d) * 2 + log(sinh(pi(d) * Fraction(1, 2))))
        tree = {
            "command": "zeta",
            "family": "nh",
            "s": "0",
            "derivative": value,
            "closed_form": Sourced(closed, _REFS["deriv0"]),
            "consistent": value.consistent_with(closed),
        }
        return tree, []
    point = Enclosure.exact(s, d)
    if family == "nh":
        ctx = ZetaNHContext(j_cutoff=cfg.j_cutoff or 200,
                            lattice_cutoff=cfg.n_cutoff or 10**6,
                            bessel_cutoff=cfg.m_cutoff or 256,
                            digits=d)
        ev = zeta_nh_eval(point, ctx)
        value, method, terms = ev.value, ev.method, ev.terms
    else:
        value = zeta_double_zeta_beta(point, d)
        method, terms = "zeta_beta", 0
    tree = {
        "command": "zeta",
        "family": family,
        "s": str(s),
        "method": method,
        "terms": terms,
        "value": value,
    }
    return tree, []


def _constants_tree(cfg: RunConfig) -> tuple[dict[str, Any], list[str]]:
    cc = constants_c1_c5(cfg.digits)
    tree = {
        "command": "constants",
        "digits": cfg.digits,
        "constants": {
            **{k: Sourced(v, _REFS[k]) for k, v in sorted(cc.items())},
            "gamma": Sourced(euler_gamma(cfg.digits), _REFS["gamma"]),
        },
    }
    return tree, []


def run(command: str, config: RunConfig, *, p: int = 1,
        identities: bool = False, oracle_s: Fraction | None = None,
        family: str = "nh", s: Fraction | None = None,
        deriv: bool = False) -> tuple[str, int]:
    """Execute one command and return (serialized report, exit code).

    Precision exhaustion is reported, not raised: the caller gets a
    best-effort error report and exit code 3.  Invalid inputs raise
    DomainError for the front end to turn into a usage error.
    """
    if command not in _COMMANDS:
        raise DomainError(f"unknown command {command!r}")
    try:
        if command == "sphere":
            tree, failures = _sphere_tree(config, p=p, identities=identities,
                                          oracle_s=oracle_s)
        elif command == "torus":
            tree, failures = _torus_tree(config)
        elif command == "certify-bounds":
            tree, failures = _certify_tree(config)
        elif command == "zeta":
            if s is None:
                raise DomainError("zeta requires --s")
            tree, failures = _zeta_tree(config, family=family, s=s, deriv=deriv)
        else:
            tree, failures = _constants_tree(config)
    except PrecisionExhaustedError as exc:
        tree = {"command": command, "digits": config.digits,
                "error": "precision-exhausted", "detail": str(exc)}
        return render_report(tree, config.format), EXIT_PRECISION
    if failures:
        tree["failures"] = sorted(failures)
    text = render_report(tree, config.format)
    code = EXIT_OK if not failures else EXIT_VERDICT
    if config.snapshot is not None:
        code = max(code, _check_snapshot(Path(config.snapshot), text))
    return text, code


def _check_snapshot(path: Path, text: str) -> int:
    data = text.encode("utf-8")
    if not path.exists():
        path.write_bytes(data)
        print(f"snapshot written: {path}", file=sys.stderr)
        return EXIT_OK
    if path.read_bytes() == data:
        print(f"snapshot match: {path}", file=sys.stderr)
        return EXIT_OK
    print(f"snapshot mismatch: {path}", file=sys.stderr)
    return EXIT_VERDICT


# --- argument handling -----------------------------------------------------

def _add_common(parser: argparse.ArgumentParser, *, suppress: bool) -> None:
    # Attached to the top-level parser and to every subparser so the shared
    # flags are accepted on either side of the command word; the subparser
    # copies SUPPRESS their defaults so they never clobber a value parsed
    # before the command.
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--digits", type=int, default=d,
                        help=f"working precision in decimal digits, 20..500 "
                             f"(default: ${ENV_DIGITS} or {DEFAULT_DIGITS})")
    parser.add_argument("--format", choices=("json", "text"),
                        default=argparse.SUPPRESS if suppress else "json")
    parser.add_argument("--snapshot", metavar="PATH", default=d,
                        help="write the report here on first run, compare "
                             "bytes on later runs")
    parser.add_argument("--j-cutoff", type=int, default=d,
                        help="series truncation override (J)")
    parser.add_argument("--n-cutoff", type=int, default=d,
                        help="lattice / brute truncation override (N)")
    parser.add_argument("--m-cutoff", type=int, default=d,
                        help="Bessel frequency truncation override (M)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conetorsion",
        description="Certified anomaly-term computations on cones.")
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        _add_common(p, suppress=True)
        return p

    p_sphere = command("sphere", "even-sphere cancellation report")
    p_sphere.add_argument("--p", type=int, default=1,
                          help="half-dimension of the cross section S^{2p}")
    p_sphere.add_argument("--identities", action="store_true",
                          help="include the exact vanishing-sum identities")
    p_sphere.add_argument("--oracle-s", metavar="S", default=None,
                          help="rational s > 2p+1: run the brute spectral "
                               "oracle there and compare both readings")

    command("torus", "flat-torus anomaly report")
    command("certify-bounds", "verify the printed sandwich bounds")
    command("constants", "the sandwich constants c1..c5")

    p_zeta = command("zeta", "evaluate one lattice zeta function")
    p_zeta.add_argument("family", choices=("nh", "double"),
                        help="single-index or double-index lattice")
    p_zeta.add_argument("--s", metavar="S", default=None,
                        help="evaluation point, as an exact rational")
    p_zeta.add_argument("--deriv", action="store_true",
                        help="s-derivative at 0 (nh family only)")
    return parser


def _parse_fraction(parser: argparse.ArgumentParser, text: str | None,
                    flag: str) -> Fraction | None:
    if text is None:
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        parser.error(f"{flag} expects a rational like 3/2 or 0.75, got {text!r}")


def _default_digits(parser: argparse.ArgumentParser) -> int:
    raw = os.environ.get(ENV_DIGITS)
    if raw is None:
        return DEFAULT_DIGITS
    try:
        return int(raw)
    except ValueError:
        parser.error(f"${ENV_DIGITS} must be an integer, got {raw!r}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    digits = args.digits if args.digits is not None else _default_digits(parser)
    try:
        cfg = RunConfig(digits=digits, j_cutoff=args.j_cutoff,
                        n_cutoff=args.n_cutoff, m_cutoff=args.m_cutoff,
                        format=args.format, snapshot=args.snapshot)
        text, code = run(
            args.command, cfg,
            p=getattr(args, "p", 1),
            identities=getattr(args, "identities", False),
            oracle_s=_parse_fraction(parser, getattr(args, "oracle_s", None),
                                     "--oracle-s"),
            family=getattr(args, "family", "nh"),
            s=_parse_fraction(parser, getattr(args, "s", None), "--s"),
            deriv=getattr(args, "deriv", False),
        )
    except DomainError as exc:
        parser.error(str(exc))
    except OSError as exc:
        print(f"conetorsion: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
