"""Symmetric-function utilities: partitions, symmetric-group characters,
and the Schur <-> power-sum change of basis.

Used by the high-order route of the series engine: expanding the
bialternant determinant over Schur polynomials keeps the computation in
partition space (a few hundred basis elements) instead of monomial space
(hundreds of millions of monomials at order 16+).  Characters come from
the Murnaghan-Nakayama border-strip recursion in its beta-set (abacus)
form: removing a border strip of size k means lowering one bead by k to an
empty slot, with sign (-1)^(number of beads jumped over).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

Partition = Tuple[int, ...]


def partitions(n: int, max_part: int | None = None):
    """All partitions of n as descending tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def z_order(mu: Partition) -> int:
    """|centralizer| of the class mu: prod m^{a_m} a_m!."""
    out = 1
    counts: Dict[int, int] = {}
    for part in mu:
        counts[part] = counts.get(part, 0) + 1
    for m, a in counts.items():
        f = 1
        for i in range(1, a + 1):
            f *= i
        out *= m ** a * f
    return out


def _beta_set(lam: Partition) -> Tuple[int, ...]:
    n = len(lam)
    return tuple(lam[i] + (n - 1 - i) for i in range(n))


def _beta_to_partition(beta) -> Partition:
    beta = sorted(beta, reverse=True)
    n = len(beta)
    lam = [beta[i] - (n - 1 - i) for i in range(n)]
    return tuple(x for x in lam if x > 0)


@lru_cache(maxsize=None)
def character(lam: Partition, mu: Partition) -> int:
    """chi^lam_mu, exact, by Murnaghan-Nakayama on beta-sets."""
    if sum(lam) != sum(mu):
        raise ValueError("partition weights differ")
    return _mn(tuple(lam), tuple(sorted(mu, reverse=True)))


@lru_cache(maxsize=None)
def _mn(lam: Partition, mu: Partition) -> int:
    if not mu:
        return 1 if not lam else 0
    k = mu[0]
    rest = mu[1:]
    beta = _beta_set(lam)
    present = set(beta)
    total = 0
    for i, b in enumerate(beta):
        target = b - k
        if target < 0 or target in present:
            continue
        height = sum(1 for c in beta if target < c < b)
        new_beta = beta[:i] + (target,) + beta[i + 1:]
        total += (-1) ** height * _mn(_beta_to_partition(new_beta), rest)
    return total


def schur_to_power_sums(lam: Partition) -> Dict[Partition, Fraction]:
    """s_lam = sum_mu chi^lam_mu / z_mu * p_mu."""
    n = sum(lam)
    out: Dict[Partition, Fraction] = {}
    for mu in partitions(n):
        chi = character(tuple(lam), tuple(mu))
        if chi:
            out[tuple(mu)] = Fraction(chi, z_order(tuple(mu)))
    return out


# ---------------------------------------------------------------------------
# the free power-sum ring (p_1, p_2, ... as free commutative generators)
# ---------------------------------------------------------------------------

PSeries = Dict[Partition, Fraction]


def p_mul(a: PSeries, b: PSeries, max_weight: int) -> PSeries:
    out: PSeries = {}
    for mu, ca in a.items():
        wa = sum(mu)
        for nu, cb in b.items():
            if wa + sum(nu) > max_weight:
                continue
            key = tuple(sorted(mu + nu, reverse=True))
            v = out.get(key, Fraction(0)) + ca * cb
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def p_log(series: PSeries, max_weight: int) -> PSeries:
    """log of a power-sum series with constant term exactly 1."""
    if series.get((), Fraction(0)) != 1:
        raise ValueError("log requires constant term 1")
    eps = {mu: c for mu, c in series.items() if mu}
    out: PSeries = {}
    power = dict(eps)
    m = 1
    while power and m <= max_weight:
        sign = Fraction((-1) ** (m + 1), m)
        for mu, c in power.items():
            v = out.get(mu, Fraction(0)) + sign * c
            if v:
                out[mu] = v
            else:
                out.pop(mu, None)
        power = p_mul(power, eps, max_weight)
        m += 1
    return out
