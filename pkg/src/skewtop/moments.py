"""Gaussian trace moments of antisymmetric matrices, exact in the dimension.

For a d x d real antisymmetric Gaussian matrix with density proportional to
exp(gamma tr X^2), the entry covariance is

    <X_ab X_cd> = (delta_ac delta_bd - delta_ad delta_bc) / (4 gamma),

derived by rewriting gamma tr X^2 = -2 gamma sum_{a<b} X_ab^2 (independent
upper-triangle entries of variance 1/(4 gamma)).  Wick's theorem then turns
any product of traces into a sum over pairings; each pairing contributes a
signed power of the dimension d counted from the delta-contraction loops.
The result is therefore an exact polynomial in d, which is what makes the
zero-dimension (replica) continuation well defined.

Dictionaries ``{power: Fraction}`` double as Laurent polynomials in d when
intermediate steps divide by d.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from .series import MultiSeries
from .rationals import fact

DPoly = Dict[int, Fraction]


def dp_add(a: DPoly, b: DPoly) -> DPoly:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, Fraction(0)) + v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def dp_scale(a: DPoly, c: Fraction) -> DPoly:
    c = Fraction(c)
    return {k: v * c for k, v in a.items()} if c else {}


def dp_mul(a: DPoly, b: DPoly) -> DPoly:
    out: DPoly = {}
    for i, x in a.items():
        for j, y in b.items():
            w = out.get(i + j, Fraction(0)) + x * y
            if w:
                out[i + j] = w
            else:
                out.pop(i + j, None)
    return out


def dp_shift(a: DPoly, k: int) -> DPoly:
    """Multiply by d^k (k may be negative)."""
    return {i + k: v for i, v in a.items()}


def dp_eval(a: DPoly, d) -> Fraction:
    return sum((v * Fraction(d) ** k for k, v in a.items()), Fraction(0))


def _pairings(items: List[int]):
    if not items:
        yield []
        return
    first = items[0]
    rest = items[1:]
    for i, second in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for tail in _pairings(remaining):
            yield [(first, second)] + tail


@lru_cache(maxsize=None)
def trace_moment_poly(powers: Tuple[int, ...], gamma: Fraction) -> Tuple[Tuple[int, Fraction], ...]:
    """<prod_r tr X^{m_r}> as a polynomial in the dimension d.

    ``powers`` lists the trace exponents m_r; the total must be even or the
    moment vanishes identically.  Returned as a tuple of (d-power, coeff)
    items (hashable for caching); use :func:`trace_moment` for a dict.
    """
    total = sum(powers)
    if total % 2:
        return ()
    if total == 0:
        return ((0, Fraction(1)),)
    kappa = Fraction(1) / (4 * Fraction(gamma))
    # nodes: one index variable per factor position, cyclic per trace
    legs = []  # leg -> (node_a, node_b)
    node_count = 0
    for m in powers:
        base = node_count
        for t in range(m):
            legs.append((base + t, base + (t + 1) % m))
        node_count += m
    npairs = total // 2
    acc: DPoly = {}
    for pairing in _pairings(list(range(total))):
        for mask in range(1 << npairs):
            parent = list(range(node_count))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            def union(x, y):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry

            sign = 1
            for idx, (l1, l2) in enumerate(pairing):
                a, b = legs[l1]
                c, dd = legs[l2]
                if mask >> idx & 1:
                    # -delta_ad delta_bc
                    sign = -sign
                    union(a, dd)
                    union(b, c)
                else:
                    # +delta_ac delta_bd
                    union(a, c)
                    union(b, dd)
            loops = len({find(x) for x in range(node_count)})
            coeff = Fraction(sign) * kappa ** npairs
            acc[loops] = acc.get(loops, Fraction(0)) + coeff
    return tuple(sorted((k, v) for k, v in acc.items() if v))


def trace_moment(powers, gamma) -> DPoly:
    return dict(trace_moment_poly(tuple(sorted(powers, reverse=True)), Fraction(gamma)))


def trace_moment_at(powers, gamma, d: int) -> Fraction:
    """<prod tr X^{m_r}> at a concrete dimension d."""
    return dp_eval(trace_moment(powers, gamma), d)


# ---------------------------------------------------------------------------
# block-eigenvalue power sums
# ---------------------------------------------------------------------------
#
# An even-dimensional antisymmetric X is orthogonally equivalent to blocks
# x_j * [[0,1],[-1,0]]; then tr X^{2t} = 2 (-1)^t sum_j x_j^{2t}.  Writing
# P_t = sum_j x_j^{2t} gives P_t = (-1)^t tr X^{2t} / 2.

def power_sum_moment(ts, gamma) -> DPoly:
    """<prod_r P_{t_r}> as a polynomial in d (P_t = sum of block angles^(2t))."""
    sign = 1
    for t in ts:
        if t % 2:
            sign = -sign
    base = trace_moment([2 * t for t in ts], gamma)
    return dp_scale(base, Fraction(sign, 2 ** len(list(ts))))


def single_angle_moment(p: int, gamma) -> DPoly:
    """<x_1^{2p}> for one block angle: 2 <P_p> / d (Laurent in d)."""
    return dp_shift(dp_scale(power_sum_moment([p], gamma), Fraction(2)), -1)


def _set_partitions(n: int):
    if n == 0:
        yield []
        return
    for rest in _set_partitions(n - 1):
        # element n-1 joins an existing block or starts a new one
        for i in range(len(rest)):
            yield rest[:i] + [rest[i] + [n - 1]] + rest[i + 1:]
        yield rest + [[n - 1]]


def distinct_angle_moment(cs, gamma) -> DPoly:
    """sum over pairwise-distinct blocks of <prod_i x_{alpha_i}^{2 c_i}>.

    Moebius inversion over the partition lattice rewrites the distinct sum
    in terms of joint power-sum moments.
    """
    cs = list(cs)
    n = len(cs)
    acc: DPoly = {}
    for rho in _set_partitions(n):
        mu = Fraction(1)
        for block in rho:
            b = len(block)
            mu *= Fraction((-1) ** (b - 1) * fact(b - 1))
        ts = [sum(cs[i] for i in block) for block in rho]
        acc = dp_add(acc, dp_scale(power_sum_moment(ts, gamma), mu))
    return acc


# ---------------------------------------------------------------------------
# replica (zero-dimension) limits of the evolution correlators
# ---------------------------------------------------------------------------

GAMMA_HALF = Fraction(1, 2)


def _cos_coeff(p: int) -> Fraction:
    return Fraction((-1) ** p, fact(2 * p))


def _limit_over_d(bracket: DPoly) -> Fraction:
    """lim_{d->0} bracket/d; requires the bracket to vanish at d=0."""
    if any(k <= 0 and v for k, v in bracket.items()):
        raise ValueError(f"replica bracket has non-vanishing d^(<=0) part: {bracket}")
    return bracket.get(1, Fraction(0))


def replica_one_point(order: int) -> List[Fraction]:
    """Zero-replica limit of (1/d)<tr exp(sX)> as s-series coefficients.

    Density convention gamma = 1/2.  tr exp(sX) = 2 sum_j cos(s x_j), so the
    s^{2p} coefficient is 2 (-1)^p <P_p> / ((2p)! d), continued to d -> 0.
    """
    out = [Fraction(0)] * (order + 1)
    out[0] = Fraction(1)
    for p in range(1, order // 2 + 1):
        bracket = dp_scale(power_sum_moment([p], GAMMA_HALF), 2 * _cos_coeff(p))
        out[2 * p] = _limit_over_d(bracket)
    return out


def replica_two_point(order: int) -> MultiSeries:
    """Ground-truth replica limit of the distinct-block connected 2-point.

    The object is (1/d) * 4 * sum_{alpha != beta} of
    <cos(s1 x_alpha) cos(s2 x_beta)> minus the product of the separate
    averages, continued to d -> 0.  This is the independent reference for
    the contour evaluations.
    """
    out = MultiSeries(2, order)
    for p in range(1, order // 2 + 1):
        for q in range(1, (order - 2 * p) // 2 + 1):
            m2 = dp_add(power_sum_moment([p, q], GAMMA_HALF),
                        dp_scale(power_sum_moment([p + q], GAMMA_HALF), Fraction(-1)))
            # sum_{alpha != beta} <c1><c2> = (d/2)(d/2 - 1) <x^2p><x^2q>
            prod = dp_mul(single_angle_moment(p, GAMMA_HALF),
                          single_angle_moment(q, GAMMA_HALF))
            count = {2: Fraction(1, 4), 1: Fraction(-1, 2)}
            bracket = dp_add(m2, dp_scale(dp_mul(count, prod), Fraction(-1)))
            coeff = 4 * _cos_coeff(p) * _cos_coeff(q) * _limit_over_d(bracket)
            if coeff:
                out.coeffs[(2 * p, 2 * q)] = coeff
    return out


def replica_three_point(order: int) -> MultiSeries:
    """Ground-truth replica limit of the distinct-block connected 3-point.

    (1/d) * 8 * sum over pairwise-distinct blocks of the third cumulant of
    cos(s_i x_{alpha_i}), continued to d -> 0.
    """
    out = MultiSeries(3, order)
    g = GAMMA_HALF
    for p in range(1, order // 2 + 1):
        for q in range(1, (order - 2 * p) // 2 + 1):
            for r in range(1, (order - 2 * p - 2 * q) // 2 + 1):
                m3 = distinct_angle_moment([p, q, r], g)
                # - sum over <x^{2a}> (m-2) M2_distinct(b, c)
                half = Fraction(1, 2)
                cross: DPoly = {}
                for a, b, c in ((p, q, r), (q, p, r), (r, p, q)):
                    m2 = distinct_angle_moment([b, c], g)
                    term = dp_mul(single_angle_moment(a, g), m2)
                    mminus2 = {1: half, 0: Fraction(-2)}
                    cross = dp_add(cross, dp_mul(mminus2, term))
                # + 2 m(m-1)(m-2) <x^{2p}><x^{2q}><x^{2r}>
                count3 = dp_mul({1: half}, dp_mul({1: half, 0: Fraction(-1)},
                                                  {1: half, 0: Fraction(-2)}))
                triple = dp_mul(single_angle_moment(p, g),
                                dp_mul(single_angle_moment(q, g),
                                       single_angle_moment(r, g)))
                bracket = dp_add(m3, dp_scale(cross, Fraction(-1)))
                bracket = dp_add(bracket, dp_scale(dp_mul(count3, triple), Fraction(2)))
                coeff = (8 * _cos_coeff(p) * _cos_coeff(q) * _cos_coeff(r)
                         * _limit_over_d(bracket))
                if coeff:
                    out.coeffs[(2 * p, 2 * q, 2 * r)] = coeff
    return out


def finite_u_series(d: int, order: int, gamma=GAMMA_HALF) -> List[Fraction]:
    """(1/d)<tr exp(sX)> for concrete even or odd dimension d, no source."""
    out = [Fraction(0)] * (order + 1)
    out[0] = Fraction(1)
    for m in range(2, order + 1, 2):
        out[m] = trace_moment_at([m], gamma, d) / (fact(m) * d)
    return out
