"""Antisymmetric matrix core: canonical forms, Pfaffians, Gaussian sampling,
and the exact entry-level Wick machinery used by every verification.

Conventions
-----------
The ensemble density is proportional to exp(gamma tr X^2 + tr X A) on d x d
real antisymmetric matrices.  Since tr X^2 = -2 sum_{i<j} X_ij^2 and
tr X A = -2 sum_{i<j} X_ij A_ij, the strict upper-triangle entries are
independent Gaussians with

    mean(X_ij) = -A_ij / (2 gamma),      var(X_ij) = 1 / (4 gamma),

equivalently <X_ab X_cd> = +(delta_ac delta_bd - delta_ad delta_bc)/(4 gamma)
for centered entries (the opposite overall sign sometimes quoted would make
<X_ij^2> negative); this is the convention that reproduces the trace-moment
formulas checked in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .rationals import gaussian_moment


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SourceSpec:
    """Block values (a_1 .. a_N) of a canonical antisymmetric source."""

    values: Tuple[Fraction, ...]

    def __init__(self, values: Sequence):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in values))
        if not self.values:
            raise ValueError("source needs at least one block value")

    @property
    def nblocks(self) -> int:
        return len(self.values)

    @property
    def dim(self) -> int:
        return 2 * len(self.values)


class SkewMatrix:
    """Even-dimensional real antisymmetric matrix with exact or float entries.

    The constructor enforces antisymmetry: exactly for Fraction/int entries,
    to 1e-12 absolute for floats.
    """

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        d = len(rows)
        if d % 2:
            raise ValueError("dimension must be even")
        if any(len(r) != d for r in rows):
            raise ValueError("matrix must be square")
        exact = all(isinstance(x, (int, Fraction)) for r in rows for x in r)
        for i in range(d):
            for j in range(d):
                if exact:
                    if rows[i][j] != -rows[j][i]:
                        raise ValueError(f"not antisymmetric at ({i},{j})")
                else:
                    if abs(rows[i][j] + rows[j][i]) > 1e-12:
                        raise ValueError(f"not antisymmetric at ({i},{j})")
        self.rows = rows
        self.dim = d
        self.exact = exact

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.rows])

    def __repr__(self):
        return f"SkewMatrix(dim={self.dim})"


def build_canonical(spec: SourceSpec) -> SkewMatrix:
    """Block matrix a_1*v (+) ... (+) a_N*v with v = [[0,1],[-1,0]]."""
    d = spec.dim
    rows = [[Fraction(0)] * d for _ in range(d)]
    for n, a in enumerate(spec.values):
        rows[2 * n][2 * n + 1] = Fraction(a)
        rows[2 * n + 1][2 * n] = -Fraction(a)
    return SkewMatrix(rows)


@dataclass(frozen=True)
class GaussianEnsemble:
    """Antisymmetric Gaussian ensemble exp(gamma tr X^2 + tr X A)."""

    dim: int
    source: SourceSpec | None = None
    gamma: Fraction = Fraction(1, 2)

    def __post_init__(self):
        if self.dim <= 0 or self.dim % 2:
            raise ValueError("dimension must be a positive even integer")
        if Fraction(self.gamma) <= 0:
            raise ValueError("gamma must be positive for a normalizable density")
        if self.source is not None and self.source.dim != self.dim:
            raise ValueError("source dimension does not match ensemble dimension")
        object.__setattr__(self, "gamma", Fraction(self.gamma))

    @property
    def entry_variance(self) -> Fraction:
        return 1 / (4 * self.gamma)

    def mean_matrix(self) -> List[List[Fraction]]:
        """Entry means -A_ij/(2 gamma) in full d x d layout."""
        d = self.dim
        mu = [[Fraction(0)] * d for _ in range(d)]
        if self.source is not None:
            a = build_canonical(self.source)
            c = -1 / (2 * self.gamma)
            for i in range(d):
                for j in range(d):
                    mu[i][j] = c * a[i, j]
        return mu


# ---------------------------------------------------------------------------
# Pfaffian
# ---------------------------------------------------------------------------

def pfaffian(m) -> Fraction | float:
    """Pfaffian with the convention Pf([[0,a],[-a,0]]) = a.

    Exact recursive expansion for rational entries, Householder
    skew-tridiagonalization for floats; the two agree on overlap.
    """
    if isinstance(m, SkewMatrix):
        rows, exact = m.rows, m.exact
    elif isinstance(m, np.ndarray):
        rows, exact = m.tolist(), False
    else:
        rows = [list(r) for r in m]
        exact = all(isinstance(x, (int, Fraction)) for r in rows for x in r)
    d = len(rows)
    if d % 2:
        raise ValueError("Pfaffian needs even dimension")
    if exact:
        return _pfaffian_exact(rows, tuple(range(d)))
    return _pfaffian_float(np.array(rows, dtype=float))


def _pfaffian_exact(rows, idx: Tuple[int, ...], _cache=None) -> Fraction:
    if _cache is None:
        _cache = {}
    if not idx:
        return Fraction(1)
    if idx in _cache:
        return _cache[idx]
    i0 = idx[0]
    total = Fraction(0)
    for pos in range(1, len(idx)):
        j = idx[pos]
        a = rows[i0][j]
        if a:
            rest = idx[1:pos] + idx[pos + 1:]
            sign = -1 if pos % 2 == 0 else 1
            total += sign * Fraction(a) * _pfaffian_exact(rows, rest, _cache)
    _cache[idx] = total
    return total


def det_exact(rows) -> Fraction:
    """Exact determinant of a rational matrix by fraction-free elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                for cc in range(c, n):
                    m[r][cc] -= f * m[c][cc]
    return det


def _pfaffian_float(a: np.ndarray) -> float:
    """Householder reduction to skew-tridiagonal form; Pf = prod superdiag."""
    a = a.copy()
    d = a.shape[0]
    det_q = 1.0
    for col in range(d - 2):
        x = a[col + 1:, col].copy()
        norm = np.linalg.norm(x)
        if norm < 1e-300:
            continue
        v = x.copy()
        v[0] += np.copysign(norm, x[0]) if x[0] != 0 else norm
        vnorm = np.linalg.norm(v)
        if vnorm < 1e-300:
            continue
        v /= vnorm
        # apply H = I - 2 v v^T to the trailing block, both sides
        block = a[col + 1:, col:]
        block -= 2.0 * np.outer(v, v @ block)
        block2 = a[col:, col + 1:]
        block2 -= 2.0 * np.outer(block2 @ v, v)
        det_q = -det_q
        # restore exact antisymmetry against roundoff drift
        a = 0.5 * (a - a.T)
    pf = 1.0
    for i in range(0, d, 2):
        pf *= a[i, i + 1]
    return det_q * pf


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def sample(ens: GaussianEnsemble, seed: int) -> SkewMatrix:
    """One draw; identical seed reproduces the identical matrix."""
    x = sample_batch(ens, 1, seed)[0]
    return SkewMatrix(0.5 * (x - x.T))


def sample_batch(ens: GaussianEnsemble, n: int, seed: int, workers: int = 1) -> np.ndarray:
    """n draws as an (n, d, d) array.

    The work is split into ``workers`` deterministic RNG streams derived
    from (seed, worker-index); fixed (seed, workers) reproduces the array
    bit for bit regardless of how the chunks are actually scheduled.
    """
    d = ens.dim
    sigma = float(np.sqrt(float(ens.entry_variance)))
    mu = np.array([[float(x) for x in r] for r in ens.mean_matrix()])
    iu, ju = np.triu_indices(d, k=1)
    chunks = []
    base, extra = divmod(n, workers)
    for w in range(workers):
        size = base + (1 if w < extra else 0)
        if size == 0:
            continue
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, w))))
        upper = rng.normal(loc=0.0, scale=sigma, size=(size, len(iu)))
        x = np.zeros((size, d, d))
        x[:, iu, ju] = upper
        x -= np.transpose(x, (0, 2, 1))
        x += mu[None, :, :]
        chunks.append(x)
    return np.concatenate(chunks, axis=0)


# ---------------------------------------------------------------------------
# entry polynomials and exact expectations
# ---------------------------------------------------------------------------
#
# A monomial in the independent upper-triangle entries is a sorted tuple of
# ((i, j), exponent) pairs with i < j; polynomials are {monomial: Fraction}
# dictionaries.  Expectations factor over entries by independence.

Monomial = Tuple[Tuple[Tuple[int, int], int], ...]
EntryPoly = Dict[Monomial, Fraction]

ONE_MONO: Monomial = ()


def ep_scale(p: EntryPoly, c: Fraction) -> EntryPoly:
    c = Fraction(c)
    return {m: v * c for m, v in p.items()} if c else {}


def ep_add_inplace(p: EntryPoly, q: EntryPoly, c: Fraction = Fraction(1)):
    for m, v in q.items():
        w = p.get(m, Fraction(0)) + v * c
        if w:
            p[m] = w
        else:
            p.pop(m, None)


def ep_mul(p: EntryPoly, q: EntryPoly) -> EntryPoly:
    out: EntryPoly = {}
    for m1, v1 in p.items():
        for m2, v2 in q.items():
            merged: Dict[Tuple[int, int], int] = dict(m1)
            for key, e in m2:
                merged[key] = merged.get(key, 0) + e
            mono = tuple(sorted(merged.items()))
            w = out.get(mono, Fraction(0)) + v1 * v2
            if w:
                out[mono] = w
            else:
                out.pop(mono, None)
    return out


def ep_entry(i: int, j: int, mean: Fraction) -> EntryPoly:
    """X_ij as mean + fluctuation, reduced to upper-triangle variables."""
    if i == j:
        return {}
    sign = Fraction(1)
    if i > j:
        i, j = j, i
        sign = Fraction(-1)
    out: EntryPoly = {(((i, j), 1),): sign}
    if mean:
        out[ONE_MONO] = Fraction(mean)
    return out


def ep_expect(p: EntryPoly, variance: Fraction) -> Fraction:
    """Expectation over independent centered Gaussian fluctuations."""
    total = Fraction(0)
    for mono, c in p.items():
        term = c
        for _, e in mono:
            if e % 2:
                term = Fraction(0)
                break
            term *= gaussian_moment(e, variance)
        total += term
    return total


def wick_moment(ens: GaussianEnsemble, entry_indices: Sequence[Tuple[int, int]]) -> Fraction:
    """Exact <prod_t X_{i_t j_t}> by explicit pairing enumeration.

    This is the pairing oracle: the covariance
    <F_ab F_cd> = (delta_ac delta_bd - delta_ad delta_bc)/(4 gamma) is
    applied over all pairings of the centered factors, with the source
    mean shift handled by summing over which factors take their mean.
    Odd leftover degree gives exact 0.
    """
    mu = ens.mean_matrix()
    kappa = ens.entry_variance
    pairs = [(int(i), int(j)) for i, j in entry_indices]
    for i, j in pairs:
        if not (0 <= i < ens.dim and 0 <= j < ens.dim):
            raise ValueError("entry index out of range")

    def cov(p, q):
        (a, b), (c, d) = p, q
        val = Fraction(0)
        if a == c and b == d:
            val += kappa
        if a == d and b == c:
            val -= kappa
        return val

    def pair_sum(positions: Tuple[int, ...]) -> Fraction:
        if not positions:
            return Fraction(1)
        first, rest = positions[0], positions[1:]
        total = Fraction(0)
        for t in range(len(rest)):
            c = cov(pairs[first], pairs[rest[t]])
            if c:
                total += c * pair_sum(rest[:t] + rest[t + 1:])
        return total

    n = len(pairs)
    total = Fraction(0)
    for mean_mask in range(1 << n):
        fluct = tuple(t for t in range(n) if not (mean_mask >> t) & 1)
        if len(fluct) % 2:
            continue
        coeff = Fraction(1)
        for t in range(n):
            if (mean_mask >> t) & 1:
                i, j = pairs[t]
                coeff *= mu[i][j]
                if not coeff:
                    break
        if coeff:
            total += coeff * pair_sum(fluct)
    return total


def trace_polynomial(ens: GaussianEnsemble, power: int) -> EntryPoly:
    """tr X^power as an entry polynomial (means folded in)."""
    d = ens.dim
    mu = ens.mean_matrix()
    entries = [[ep_entry(i, j, mu[i][j]) for j in range(d)] for i in range(d)]
    # row vector of polynomials, propagated through the index chain
    out: EntryPoly = {}
    for start in range(d):
        current = {start: {ONE_MONO: Fraction(1)}}
        for _ in range(power - 1):
            nxt: Dict[int, EntryPoly] = {}
            for i, poly in current.items():
                for j in range(d):
                    e = entries[i][j]
                    if not e:
                        continue
                    prod = ep_mul(poly, e)
                    if j in nxt:
                        ep_add_inplace(nxt[j], prod)
                    else:
                        nxt[j] = prod
            current = nxt
        for j, poly in current.items():
            e = entries[j][start]
            if e:
                ep_add_inplace(out, ep_mul(poly, e))
    return out


def trace_moment_exact(ens: GaussianEnsemble, powers: Sequence[int]) -> Fraction:
    """<prod_r tr X^{m_r}> exactly, via entry polynomials + independence."""
    poly: EntryPoly = {ONE_MONO: Fraction(1)}
    for m in powers:
        poly = ep_mul(poly, trace_polynomial(ens, m))
    return ep_expect(poly, ens.entry_variance)


# ---------------------------------------------------------------------------
# characteristic polynomial averages
# ---------------------------------------------------------------------------

def _det_entry_poly(mat: List[List[EntryPoly]]) -> EntryPoly:
    """Determinant of a matrix of entry polynomials by column-subset DP."""
    d = len(mat)
    prev: Dict[int, EntryPoly] = {0: {ONE_MONO: Fraction(1)}}
    for row in range(d):
        nxt: Dict[int, EntryPoly] = {}
        for subset, poly in prev.items():
            used = bin(subset).count("1")
            below = 0
            for col in range(d):
                bit = 1 << col
                if subset & bit:
                    below += 1
                    continue
                e = mat[row][col]
                if e:
                    # appending col to the permutation adds (used - below)
                    # inversions: the used columns above col
                    sign = Fraction(-1) if (used - below) % 2 else Fraction(1)
                    term = ep_scale(ep_mul(poly, e), sign)
                    key = subset | bit
                    if key in nxt:
                        ep_add_inplace(nxt[key], term)
                    else:
                        nxt[key] = term
        prev = nxt
    return prev.get((1 << d) - 1, {})


def char_poly_avg_exact(ens: GaussianEnsemble, lambdas: Sequence) -> Fraction:
    """Exact <prod_alpha det(lambda_alpha I - X)> over the ensemble.

    Size guard: dim <= 8 and at most two characteristic-polynomial factors
    (the exact expansion cost explodes beyond that).
    """
    lambdas = [Fraction(x) for x in lambdas]
    if ens.dim > 8 or len(lambdas) > 2:
        raise ValueError("too large for exact oracle (need dim <= 8, k <= 2)")
    mu = ens.mean_matrix()
    d = ens.dim
    total: EntryPoly = {ONE_MONO: Fraction(1)}
    for lam in lambdas:
        mat: List[List[EntryPoly]] = []
        for i in range(d):
            row = []
            for j in range(d):
                e = ep_scale(ep_entry(i, j, mu[i][j]), Fraction(-1))
                if i == j and lam:
                    e = dict(e)
                    ep_add_inplace(e, {ONE_MONO: lam})
                row.append(e)
            mat.append(row)
        total = ep_mul(total, _det_entry_poly(mat))
    return ep_expect(total, ens.entry_variance)
