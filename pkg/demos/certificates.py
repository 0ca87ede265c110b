#!/usr/bin/env python3
"""Print every bound certificate with its verdict and margin notes."""

import argparse
import textwrap

from conetorsion.certify import all_certificates


def show(cert) -> None:
    print(f"{cert.claim}  [{cert.verdict}]")
    print(f"  window   [{cert.lower.decimal(18)}, {cert.upper.decimal(18)}]")
    print(f"  computed {cert.computed.decimal(24)}")
    for note in cert.notes:
        for line in textwrap.wrap(note, width=74):
            print(f"  {line}")
    print()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--digits", type=int, default=30)
    args = ap.parse_args()

    for cert in all_certificates(args.digits):
        show(cert)


if __name__ == "__main__":
    main()
