#!/usr/bin/env python3
"""Walk the even-sphere anomaly term by term and watch it vanish.

For each p the combinatorial term is -1/2 log(2 pi^p / (p-1)!...) in
disguise and the analytic term is built from the exact multiplicity
polynomials; the two are negatives of each other, so the certified
total encloses zero at the working precision.  The second half of the
output shows the exact identities that force the cancellation and an
independent brute-force spectral check at one (p, s) point.
"""

import argparse

from conetorsion.sphere import alternating_spectral_sum, cancellation_check


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--digits", type=int, default=40)
    ap.add_argument("--pmax", type=int, default=8)
    args = ap.parse_args()

    print(f"anomaly terms for cones over S^2p at {args.digits} digits")
    print(f"{'p':>2}  {'comb term':<42} {'analy term':<42} total radius")
    for p in range(1, args.pmax + 1):
        chk = cancellation_check(p, args.digits)
        print(f"{p:>2}  {chk.comb_term.decimal(24):<42}"
              f" {chk.analy_term.decimal(24):<42}"
              f" {float(chk.total.radius):.1e}"
              f"  encloses 0: {chk.total.contains_scalar(0)}")

    print()
    print("exact identities behind the cancellation (p = 3):")
    chk = cancellation_check(3, args.digits, identities=True,
                             oracle_s=8, oracle_n=400)
    diag = chk.diagnostics
    print("  alternating multiplicity moments all zero:",
          diag["plain_vanishing_sums"])
    print("  alpha-weighted top sum (claimed 2p, computed):",
          diag["alpha_weighted_top_sum"])
    print("  brute alternating spectral sum at s = 8, n <= 400:")
    print("    matches reduced form with -2p zeta coefficient:",
          diag["oracle_matches_corrected"])
    print("    matches the stated +2p version:",
          diag["oracle_matches_stated"])
    print("  certified resummed value:",
          alternating_spectral_sum(3, 8, args.digits).decimal(20))


if __name__ == "__main__":
    main()
