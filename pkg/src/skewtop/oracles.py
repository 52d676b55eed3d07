"""Brute-force reference oracles, deliberately independent of the engines.

Nothing here shares evaluation code with the production paths it checks:
the determinant is expanded by raw permutation sums, expectations are taken
entry by entry with the one-dimensional Gaussian moment formula, and the
Monte Carlo reference uses median-of-means with its own estimator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .rationals import double_factorial


@dataclass
class OracleResult:
    value: object                # Fraction, or float estimate
    method: str                  # pairing-enumeration | 1d-quadrature-exact |
                                 # direct-determinant | mc
    stderr: float | None = None
    inconclusive: bool = False
    samples: int = 0


def gaussian_moment_1d(power: int, variance: Fraction) -> Fraction:
    """(2m-1)!! variance^m for power = 2m; exact 0 for odd powers."""
    if power % 2:
        return Fraction(0)
    m = power // 2
    return Fraction(double_factorial(2 * m - 1)) * Fraction(variance) ** m


def direct_det_expect(dim: int, source_values: Sequence, lambdas: Sequence,
                      gamma=Fraction(1, 2)) -> Fraction:
    """<prod_a det(lambda_a I - X)> by raw Leibniz sums, dim <= 4 only.

    X_ij (i<j) are independent Gaussians with mean -A_ij/(2 gamma) and
    variance 1/(4 gamma); A is the canonical block source.  Every
    determinant is expanded over permutations and integrated monomial by
    monomial with :func:`gaussian_moment_1d`.
    """
    if dim > 4:
        raise ValueError("direct determinant oracle limited to dim <= 4")
    if dim % 2:
        raise ValueError("dimension must be even")
    gamma = Fraction(gamma)
    var = Fraction(1, 4) / gamma
    mean = {}
    for n, a in enumerate(source_values or ()):
        mean[(2 * n, 2 * n + 1)] = -Fraction(a) / (2 * gamma)

    def entry(i, j, lam):
        """(lambda I - X)_ij as {exponent-dict-key: coeff} over x_{ij} vars."""
        if i == j:
            return {(): Fraction(lam)}
        if i < j:
            poly = {((i, j),): Fraction(-1)}
            mu = mean.get((i, j), Fraction(0))
            if mu:
                poly[()] = -mu
        else:
            poly = {((j, i),): Fraction(1)}
            mu = mean.get((j, i), Fraction(0))
            if mu:
                poly[()] = mu
        return poly

    total = Fraction(0)
    # iterate over one permutation per determinant factor
    perms = list(itertools.permutations(range(dim)))

    def perm_sign(p):
        s = 1
        for i in range(len(p)):
            for j in range(i + 1, len(p)):
                if p[i] > p[j]:
                    s = -s
        return s

    for combo in itertools.product(perms, repeat=len(list(lambdas))):
        sign = 1
        polys = []
        for lam, p in zip(lambdas, combo):
            sign *= perm_sign(p)
            polys.extend(entry(i, p[i], lam) for i in range(dim))
        # multiply all linear factors, tracking variable exponents
        acc = {(): Fraction(sign)}
        for poly in polys:
            nxt = {}
            for k1, c1 in acc.items():
                for k2, c2 in poly.items():
                    key = tuple(sorted(k1 + k2))
                    nxt[key] = nxt.get(key, Fraction(0)) + c1 * c2
            acc = nxt
        # integrate: variables independent, centered
        for key, c in acc.items():
            if not c:
                continue
            term = c
            for var_name in set(key):
                e = key.count(var_name)
                term *= gaussian_moment_1d(e, var)
                if not term:
                    break
            total += term
    return total


def median_of_means(values: np.ndarray, blocks: int = 16):
    """Robust estimate for heavy-tailed samples.

    Returns (estimate, stderr, inconclusive): the median of block means,
    the spread of the block means as a standard error, and a flag raised
    when the relative error exceeds 1/2 (the heavy-tail bailout rule).
    """
    values = np.asarray(values, dtype=float).ravel()
    n = len(values)
    blocks = min(blocks, n)
    usable = n - (n % blocks)
    bm = values[:usable].reshape(blocks, -1).mean(axis=1)
    est = float(np.median(bm))
    se = float(np.std(bm, ddof=1) / np.sqrt(blocks)) if blocks > 1 else float("inf")
    inconclusive = se > 0.5 * abs(est) if est != 0 else se > 0.5
    return est, se, inconclusive


def mc_reference(func: Callable[[np.ndarray], np.ndarray], sampler,
                 samples: int, seed: int, workers: int = 1,
                 chunk: int = 100_000) -> OracleResult:
    """Generic MC reference: mean of func over draws from sampler.

    ``sampler(n, seed, workers)`` must return an (n, ...) array and be
    deterministic in (seed, workers); func maps it to per-sample scalars.
    """
    values = []
    done = 0
    piece = 0
    while done < samples:
        take = min(chunk, samples - done)
        xs = sampler(take, (seed, piece), workers)
        values.append(np.asarray(func(xs), dtype=float))
        done += take
        piece += 1
    allv = np.concatenate(values)
    est, se, flag = median_of_means(allv)
    return OracleResult(value=est, method="mc", stderr=se,
                        inconclusive=flag, samples=samples)
