"""The N <-> k duality of characteristic-polynomial averages.

The statement under test: over 2N x 2N antisymmetric Gaussian matrices X
with canonical source A = diag-blocks(a_1..a_N),

    < prod_{a=1}^k det(lambda_a I - X) >_A
        = < prod_{n=1}^N det(a_n I - Y) >_Lambda

with Y a 2k x 2k antisymmetric Gaussian and Lambda the canonical source
built from (lambda_1..lambda_k).  Both sides use the gamma = 1/2 weight
exp(tr X^2 / 2 + tr X A).

Exact verification delegates to the entry-level Wick engine; statistical
verification samples both sides and compares median-of-means estimates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from .oracles import median_of_means
from .rationals import gaussian_moment
from .skew import GaussianEnsemble, SourceSpec, char_poly_avg_exact, sample_batch

GAMMA = Fraction(1, 2)


@dataclass(frozen=True)
class DualityInstance:
    a: Tuple[Fraction, ...]
    lam: Tuple[Fraction, ...]

    def __init__(self, a: Sequence, lam: Sequence):
        object.__setattr__(self, "a", tuple(Fraction(x) for x in a))
        object.__setattr__(self, "lam", tuple(Fraction(x) for x in lam))
        if not self.a or not self.lam:
            raise ValueError("need at least one source and one spectral value")

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def k(self) -> int:
        return len(self.lam)


@dataclass
class DualityReport:
    instance: dict
    lhs: object
    rhs: object
    method: str
    verdict: str                       # pass | fail | inconclusive
    discrepancy: float
    stderr: float | None = None
    details: List[dict] = field(default_factory=list)


def lhs_exact(inst: DualityInstance) -> Fraction:
    """< prod det(lambda_a - X) > over the 2N x 2N ensemble, exact."""
    ens = GaussianEnsemble(2 * inst.n, SourceSpec(inst.a), GAMMA)
    return char_poly_avg_exact(ens, inst.lam)


def rhs_exact(inst: DualityInstance) -> Fraction:
    """Same average with the roles of sources and spectral values swapped."""
    ens = GaussianEnsemble(2 * inst.k, SourceSpec(inst.lam), GAMMA)
    return char_poly_avg_exact(ens, inst.a)


def k1_quadrature(a: Sequence, lam, convention: str = "calibrated") -> Fraction:
    """Single-real-integral fast path for k = 1, any N, exact.

    calibrated:  E_y[ prod_j (a_j^2 + (y - lambda)^2) ],  y ~ N(0, 1/2).
        This is the convention fixed against the Wick oracle on the
        (N=1, k=1) case (both give lambda^2 + a^2 + 1/2).
    literal:     E_y[ prod_j ((lambda + i y)^2 - a_j^2) ], the integrand one
        gets before rotating the contour; kept to document that reading it
        at face value gives lambda^2 - 1/2 at N=1, a=0, i.e. a wrong sign
        that the calibrated form repairs.
    """
    lam = Fraction(lam)
    avals = [Fraction(x) for x in a]
    if convention == "calibrated":
        # product over j of (a_j^2 + (y-lam)^2): expand in y and integrate
        poly = {0: Fraction(1)}
        for aj in avals:
            factor = {0: aj * aj + lam * lam, 1: -2 * lam, 2: Fraction(1)}
            nxt = {}
            for e1, c1 in poly.items():
                for e2, c2 in factor.items():
                    nxt[e1 + e2] = nxt.get(e1 + e2, Fraction(0)) + c1 * c2
            poly = nxt
        return sum((c * gaussian_moment(e, Fraction(1, 2))
                    for e, c in poly.items()), Fraction(0))
    if convention == "literal":
        # (lam + i y)^2 - a^2 = (lam^2 - y^2 - a^2) + 2 i lam y; odd powers
        # of y drop, so only the real even part survives integration.
        poly = {(0, 0): Fraction(1)}   # key: (y-power, i-power mod 2)
        for aj in avals:
            factor = {(0, 0): lam * lam - aj * aj, (2, 0): Fraction(-1),
                      (1, 1): 2 * lam}
            nxt = {}
            for (e1, p1), c1 in poly.items():
                for (e2, p2), c2 in factor.items():
                    sign = Fraction(-1) if (p1 and p2) else Fraction(1)
                    key = (e1 + e2, (p1 + p2) % 2)
                    nxt[key] = nxt.get(key, Fraction(0)) + sign * c1 * c2
            poly = nxt
        return sum((c * gaussian_moment(e, Fraction(1, 2))
                    for (e, p), c in poly.items() if p == 0), Fraction(0))
    raise ValueError(f"unknown convention {convention!r}")


def random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    num = rng.randint(-5, 5)
    while nonzero and num == 0:
        num = rng.randint(-5, 5)
    den = rng.randint(1, 5)
    return Fraction(num, den)


def _det_product_samples(nblocks: int, source: Sequence[Fraction],
                         spectral: Sequence[Fraction], nsamples: int,
                         seed, workers: int) -> np.ndarray:
    ens = GaussianEnsemble(2 * nblocks, SourceSpec(source), GAMMA)
    if isinstance(seed, tuple):
        seed = hash(seed) & 0x7FFFFFFF
    xs = sample_batch(ens, nsamples, seed, workers)
    d = 2 * nblocks
    eye = np.eye(d)
    out = np.ones(nsamples)
    for lam in spectral:
        out = out * np.linalg.det(float(lam) * eye[None, :, :] - xs)
    return out


def verify_duality(n: int, k: int, trials: int = 20, seed: int = 42,
                   mode: str = "exact", samples: int = 100_000,
                   workers: int = 1) -> DualityReport:
    """Check the duality exactly (small sizes) or statistically.

    Exact mode draws ``trials`` random rational parameter sets with
    numerators and denominators in [-5, 5] \\ {0} (kept small so the exact
    arithmetic stays cheap) and asserts exact Fraction equality of both
    sides.  MC mode compares median-of-means estimates of the two
    determinant products within 3 pooled standard errors; heavy-tailed
    runs (stderr > half the mean) report "inconclusive" rather than fail.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    if mode == "exact":
        if 2 * n > 8 or k > 2 or 2 * k > 8 or n > 2:
            raise ValueError("exact mode limited to n <= 2 and k <= 2")
        rng = random.Random(seed)
        details = []
        ok = True
        worst = Fraction(0)
        for _ in range(trials):
            inst = DualityInstance(
                [random_rational(rng, nonzero=True) for _ in range(n)],
                [random_rational(rng, nonzero=True) for _ in range(k)])
            left = lhs_exact(inst)
            right = rhs_exact(inst)
            if left != right:
                ok = False
                worst = max(worst, abs(left - right))
            details.append({"a": [str(x) for x in inst.a],
                            "lam": [str(x) for x in inst.lam],
                            "lhs": str(left), "rhs": str(right),
                            "equal": left == right})
        return DualityReport(
            instance={"n": n, "k": k, "trials": trials, "seed": seed},
            lhs="exact", rhs="exact", method="exact-wick",
            verdict="pass" if ok else "fail",
            discrepancy=float(worst), details=details)

    if mode == "mc":
        if 2 * n > 40 or 2 * k > 40:
            raise ValueError("MC mode limited to matrix dimension 40")
        rng = random.Random(seed)
        a = [random_rational(rng, nonzero=True) for _ in range(n)]
        lam = [random_rational(rng, nonzero=True) for _ in range(k)]
        left = _det_product_samples(n, a, lam, samples, seed + 1, workers)
        right = _det_product_samples(k, lam, a, samples, seed + 2, workers)
        le, lse, lflag = median_of_means(left)
        re_, rse, rflag = median_of_means(right)
        pooled = float(np.hypot(lse, rse))
        diff = abs(le - re_)
        if lflag or rflag:
            verdict = "inconclusive"
        else:
            verdict = "pass" if diff <= 3 * pooled else "fail"
        return DualityReport(
            instance={"n": n, "k": k, "seed": seed, "samples": samples,
                      "a": [str(x) for x in a], "lam": [str(x) for x in lam]},
            lhs=le, rhs=re_, method="mc-median-of-means",
            verdict=verdict, discrepancy=diff, stderr=pooled)

    raise ValueError(f"unknown mode {mode!r}")
