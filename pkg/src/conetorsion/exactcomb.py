"""Exact spectral combinatorics of the even sphere S^{2p}.

Everything here is big-integer/rational arithmetic (`fractions.Fraction`
is the exact rational type throughout); no floats enter.  The objects are
the ones the form-valued heat trace on S^{2p} is built from: co-exact
multiplicities m_{q,n}, the shift parameters alpha_q = 1/2 + q - p, and
the elementary symmetric functions of the integer sequence

    N^q = (j - q : 0 <= j <= 2p-1, j != q, j != 2p-1-q),

whose associated polynomial S(x; N^q) = prod_{a in N^q} (x + a) carries
the multiplicity structure.  The alternating q-sums over these data
collapse by the classical identity sum_q (-1)^q C(m,q) q^k = 0 for k < m
(Gradshteyn & Ryzhik 0.154.6), which is what makes the sphere anomaly
computation exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .enclosure import DomainError


@dataclass(frozen=True)
class SphereSpec:
    """One co-exact degree q on S^{2p}; spectral data only for q <= p-1,
    but the reduction runs q over all of [0, 2p-1]."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 1:
            raise DomainError(f"p must be >= 1, got {self.p}")
        if not 0 <= self.q <= 2 * self.p - 1:
            raise DomainError(f"q must lie in [0, {2*self.p - 1}], got {self.q}")

    @property
    def alpha(self) -> Fraction:
        return Fraction(1, 2) + self.q - self.p

    @cached_property
    def sequence(self) -> tuple[int, ...]:
        p, q = self.p, self.q
        return tuple(j - q for j in range(2 * p) if j != q and j != 2 * p - 1 - q)

    @property
    def dual(self) -> "SphereSpec":
        return SphereSpec(self.p, 2 * self.p - 1 - self.q)

    def coexact_eigenvalue(self, n: int) -> int:
        """(n+q)(n+2p-1-q); completing the square gives
        eigenvalue + alpha^2 = (n + p - 1/2)^2."""
        if n < 1:
            raise DomainError("n must be >= 1")
        return (n + self.q) * (n + 2 * self.p - 1 - self.q)


def binom_exact(n: int, k: int) -> Fraction:
    if n < 0:
        raise DomainError(f"binom_exact needs n >= 0, got {n}")
    if k < 0 or k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


@lru_cache(maxsize=None)
def _elem_all(sequence: tuple[int, ...]) -> tuple[int, ...]:
    # coefficients of prod (x + a), lowest degree of elementary symmetry first
    e = [1] + [0] * len(sequence)
    for m, a in enumerate(sequence, start=1):
        for k in range(m, 0, -1):
            e[k] = e[k] + a * e[k - 1]
    return tuple(e)


def elem_symmetric(spec: SphereSpec, k: int) -> Fraction:
    """e_k of the sequence N^q; e_0 = 1 (empty product at p = 1)."""
    top = 2 * spec.p - 2
    if not 0 <= k <= top:
        raise DomainError(f"k must lie in [0, {top}], got {k}")
    return Fraction(_elem_all(spec.sequence)[k])


def s_poly_value(spec: SphereSpec, x: Fraction | int) -> Fraction:
    """S(x; N^q) = prod_{a in N^q} (x + a), cross-checked against its
    expansion sum_l e_{2p-2-l} x^l."""
    x = Fraction(x)
    product = Fraction(1)
    for a in spec.sequence:
        product *= x + a
    e = _elem_all(spec.sequence)
    top = len(spec.sequence)
    expanded = sum((Fraction(e[top - l]) * x**l for l in range(top + 1)),
                   Fraction(0))
    assert product == expanded, (spec, x, product, expanded)
    return product


def multiplicity_sphere(spec: SphereSpec, n: int) -> Fraction:
    """m_{q,n}, by the binomial closed form, cross-checked against the
    factored form (2n-1+2p) C(2p-1,q) S(n; N^q)-free variant."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    p, q = spec.p, spec.q
    binomial_form = (Fraction(2 * n - 1 + 2 * p, n + 2 * p - 1 - q)
                     * binom_exact(n - 1 + 2 * p, n + q)
                     * binom_exact(q + n - 1, n - 1))
    prod = Fraction(1)
    for j in range(2 * p):
        if j != q and j != 2 * p - 1 - q:
            prod *= n + j
    factored_form = (binom_exact(2 * p - 1, q) * (2 * n - 1 + 2 * p) * prod
                     / Fraction(math.factorial(2 * p - 1)))
    assert binomial_form == factored_form, (spec, n, binomial_form, factored_form)
    return binomial_form


def multiplicity_shifted(spec: SphereSpec, n: int) -> Fraction:
    """m_{q,n-q} through S(n; N^q); defined for n >= q+1 and equal to
    multiplicity_sphere at n-q."""
    if n <= spec.q:
        raise DomainError(f"n must exceed q = {spec.q}, got {n}")
    p, q = spec.p, spec.q
    value = (binom_exact(2 * p - 1, q) * (2 * n - 1 - 2 * q + 2 * p)
             * s_poly_value(spec, n) / Fraction(math.factorial(2 * p - 1)))
    assert value == multiplicity_sphere(spec, n - q), (spec, n)
    return value


def alternating_moment(p: int, k: int) -> Fraction:
    """sum_q (-1)^q C(2p-1,q) q^k, computed honestly; vanishes for
    k <= 2p-2 (GR 0.154.6, with 0^0 = 1)."""
    if p < 1:
        raise DomainError("p must be >= 1")
    if not 0 <= k <= 2 * p - 2:
        raise DomainError(f"k must lie in [0, {2*p - 2}], got {k}")
    total = Fraction(0)
    for q in range(2 * p):
        total += Fraction((-1) ** q * math.comb(2 * p - 1, q) * q**k)
    return total


def alpha_weighted_top_sum(p: int) -> Fraction:
    """(2p-1)!^{-1} sum_q (-1)^{q+1} C(2p-1,q) alpha_q e_{2p-2}(N^q)."""
    if p < 1:
        raise DomainError("p must be >= 1")
    total = Fraction(0)
    for q in range(2 * p):
        spec = SphereSpec(p, q)
        total += ((-1) ** (q + 1) * binom_exact(2 * p - 1, q) * spec.alpha
                  * elem_symmetric(spec, 2 * p - 2))
    return total / Fraction(math.factorial(2 * p - 1))


def reduction_vanishing_sums(p: int) -> dict[str, dict[int, Fraction]]:
    """The two alternating e-sum families behind the heat-trace collapse.

    'plain'[l]    = sum_q (-1)^{q+1} C(2p-1,q) e_{2p-2-l}(N^q)
    'weighted'[l] = sum_q (-1)^{q+1} C(2p-1,q) alpha_q e_{2p-2-l}(N^q)

    The plain family vanishes for every l in [0, 2p-2], the weighted one
    for l >= 1; at l = 0 the weighted sum is (2p-1)! times the top sum.
    """
    if p < 1:
        raise DomainError("p must be >= 1")
    plain: dict[int, Fraction] = {}
    weighted: dict[int, Fraction] = {}
    specs = [SphereSpec(p, q) for q in range(2 * p)]
    for l in range(2 * p - 1):
        s_plain = Fraction(0)
        s_weighted = Fraction(0)
        for spec in specs:
            term = ((-1) ** (spec.q + 1) * binom_exact(2 * p - 1, spec.q)
                    * elem_symmetric(spec, 2 * p - 2 - l))
            s_plain += term
            s_weighted += spec.alpha * term
        plain[l] = s_plain
        weighted[l] = s_weighted
    return {"plain": plain, "weighted": weighted}
