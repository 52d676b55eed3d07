"""Exact expansion of the quartic eigenvalue integral in inverse powers of
the spectral parameters, and extraction of intersection numbers.

The object computed is

    Z = int prod_i dy_i  [prod_{i<j}(y_i^2 - y_j^2) / prod(lam_i^2 - lam_j^2)]
        * exp(-1/2 sum y_i^4 - 2 sum y_i lam_i),

normalized so that Z = 1 + O(u^2) in the variables u_i = 1/lam_i after the
cubing substitution lam_i -> lam_i^3.  Shifting y_i -> y_i - lam_i turns the
exponent into -3 lam_i^2 y_i^2 + 2 lam_i y_i^3 - y_i^4/2 (plus a constant),
i.e. independent Gaussians of variance 1/(6 lam_i^2) with cubic and quartic
vertices.  Writing the shifted Vandermonde as a determinant in
z_i = (y_i - lam_i)^2 reduces everything to one-dimensional Gaussian
moments: with y_i = u_i r and x = u_i^2,

    G_m(x) = < (1 - x r)^{2m} exp(2 x r^3 - x^2 r^4 / 2) >,  r ~ N(0, 1/6),

and Z equals det[v_i^{k-1-j} G_j(v_i)] / prod_{i<j}(v_i - v_j) in v_i = u_i^2.
The quotient is an exact symmetric power series; its log in power sums
carries the intersection numbers.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .rationals import binomial, fact, gaussian_moment, ser_rat
from .series import MultiSeries, div_exact_linear

MAX_ORDER = 16
SPIN_P = 3


# ---------------------------------------------------------------------------
# one-dimensional building block
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def vertex_series(m: int, xorder: int) -> Tuple[Fraction, ...]:
    """Coefficients of G_m(x) through x^xorder.

    Triple sum over binomial power p, cubic vertex count c and quartic
    vertex count q; the Gaussian moment <r^(p+3c+4q)> vanishes for odd
    total degree, which forces every surviving x-power to be even.
    """
    out = [Fraction(0)] * (xorder + 1)
    for p in range(0, 2 * m + 1):
        base = Fraction((-1) ** p * binomial(2 * m, p))
        for c in range(0, xorder + 1):
            if p + c > xorder:
                break
            cc = base * Fraction(2 ** c, fact(c))
            for q in range(0, (xorder - p - c) // 2 + 1):
                deg = p + c + 2 * q
                mom = gaussian_moment(p + 3 * c + 4 * q, Fraction(1, 6))
                if not mom:
                    continue
                coeff = cc * Fraction((-1) ** q, 2 ** q * fact(q)) * mom
                out[deg] += coeff
    return tuple(out)


# ---------------------------------------------------------------------------
# the normalized partition-function series
# ---------------------------------------------------------------------------

def partition_series(k: int, order: int = 8) -> MultiSeries:
    """Z as an exact series in u_1..u_k, truncated at total degree ``order``.

    Every monomial is even in each u_i separately, the constant term is 1,
    and coefficients of shared monomials are independent of k.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if order > MAX_ORDER:
        raise ValueError(f"order {order} exceeds the cost guard {MAX_ORDER}")
    if order > 8 or k > 5:
        warnings.warn("large partition-series request; expect a long exact "
                      "computation", stacklevel=2)
    v_order = order // 2
    v_tot = v_order + k * (k - 1) // 2
    if k * v_tot > 160:
        raise ValueError("k*order blowup guard tripped; reduce k or order")
    gs = [vertex_series(m, v_tot) for m in range(k)]

    det: Dict[Tuple[int, ...], Fraction] = {}
    for perm in itertools.permutations(range(k)):
        sign = 1
        for i in range(k):
            for j in range(i + 1, k):
                if perm[i] > perm[j]:
                    sign = -sign
        # product over rows i of v_i^(k-1-perm[i]) * G_{perm[i]}(v_i)
        def descend(i: int, expo: List[int], coeff: Fraction, budget: int):
            if i == k:
                key = tuple(expo)
                val = det.get(key, Fraction(0)) + coeff
                if val:
                    det[key] = val
                else:
                    det.pop(key, None)
                return
            shift = k - 1 - perm[i]
            g = gs[perm[i]]
            for e in range(0, budget - shift + 1):
                c = g[e]
                if c:
                    expo.append(e + shift)
                    descend(i + 1, expo, coeff * c, budget - shift - e)
                    expo.pop()

        descend(0, [], Fraction(sign), v_tot)

    ms = MultiSeries(k, v_tot, det)
    for i in range(k):
        for j in range(i + 1, k):
            ms = div_exact_linear(ms, i, MultiSeries.variable(j, k, ms.order))
    assert ms.order == v_order
    if ms.constant_term() != 1:
        raise AssertionError("normalization failed: constant term "
                             f"{ms.constant_term()}")
    out = MultiSeries(k, order)
    out.coeffs = {tuple(2 * e for e in expo): c for expo, c in ms.coeffs.items()}
    return out


def log_series(z: MultiSeries) -> MultiSeries:
    """Truncated log of a series with constant term 1, exact coefficients."""
    return z.log()


def _schur_coefficients(k: int, v_order: int) -> Dict[Tuple[int, ...], Fraction]:
    """The normalized partition function as a Schur expansion in v = u^2.

    The bialternant det[v_i^{k-1-j} G_j(v_i)] / det[v_i^{k-1-j}] equals
    sum_lambda q_lambda s_lambda(v): each choice of one term from every
    G_j column either collides (vanishing determinant) or sorts into a
    staircase-plus-partition exponent set with a permutation sign.  This
    stays in partition space, so high orders remain cheap.
    """
    gs = [vertex_series(m, v_order) for m in range(k)]
    acc: Dict[Tuple[int, ...], Fraction] = {}
    staircase = [k - 1 - j for j in range(k)]

    def descend(j: int, expo: List[int], coeff: Fraction, budget: int):
        if j == k:
            if len(set(expo)) != k:
                return
            order_idx = sorted(range(k), key=lambda t: -expo[t])
            sign = 1
            seen = []
            for t in order_idx:
                # parity of the sorting permutation via inversion count
                seen.append(t)
            inv = sum(1 for a in range(k) for b in range(a + 1, k)
                      if order_idx[a] > order_idx[b])
            sign = -1 if inv % 2 else 1
            b = sorted(expo, reverse=True)
            lam = tuple(b[i] - (k - 1 - i) for i in range(k))
            lam = tuple(x for x in lam if x)
            v = acc.get(lam, Fraction(0)) + sign * coeff
            if v:
                acc[lam] = v
            else:
                acc.pop(lam, None)
            return
        g = gs[j]
        for e in range(0, budget + 1, 2):
            if e < len(g) and g[e]:
                expo.append(staircase[j] + e)
                descend(j + 1, expo, coeff * g[e], budget - e)
                expo.pop()

    descend(0, [], Fraction(1), v_order)
    return acc


def partition_power_sums(order: int, check_stability: bool = True
                         ) -> Dict[Tuple[int, ...], Fraction]:
    """Z directly as a power-sum expansion {partition of u-powers: coeff}.

    Works in partition space through Schur polynomials and
    symmetric-group characters, so orders well past the monomial route's
    reach stay exact and fast.  ``check_stability`` recomputes the Schur
    coefficients with one more variable and asserts they agree — the
    k-independence that makes the power-sum expansion well defined.
    """
    from .symfunc import schur_to_power_sums

    if order % 2:
        raise ValueError("order must be even")
    v_order = order // 2
    k = v_order
    q = _schur_coefficients(k, v_order)
    if check_stability:
        q2 = _schur_coefficients(k + 1, v_order)
        if q != q2:
            raise AssertionError("Schur coefficients not stable in k")
    out: Dict[Tuple[int, ...], Fraction] = {}
    for lam, c in q.items():
        for mu, x in schur_to_power_sums(lam).items():
            key = tuple(2 * m for m in mu)
            v = out.get(key, Fraction(0)) + c * x
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    if out.get((), Fraction(0)) != 1:
        raise AssertionError("normalization failed in the partition-space "
                             f"route: constant term {out.get(())}")
    return out


def free_energy_power_sums(order: int, check_stability: bool = True
                           ) -> Dict[Tuple[int, ...], Fraction]:
    """log Z in power sums via the partition-space route.

    Equivalent to ``to_power_sums(log_series(partition_series(k, order)), k)``
    on the orders where both run; this route reaches order 16 and beyond.
    """
    from .symfunc import p_log

    z_u = partition_power_sums(order, check_stability)
    # log in the free power-sum ring, graded by u-weight
    z_v = {tuple(m // 2 for m in mu): c for mu, c in z_u.items()}
    f_v = p_log(z_v, order // 2)
    return {tuple(2 * m for m in mu): c for mu, c in f_v.items()}


def exp_series(f: MultiSeries) -> MultiSeries:
    """Truncated exp of a series with zero constant term (log's inverse)."""
    return f.exp()


# ---------------------------------------------------------------------------
# rewriting in power sums
# ---------------------------------------------------------------------------

def _even_partitions(degree: int) -> List[Tuple[int, ...]]:
    """Partitions of ``degree`` into even parts >= 2, descending tuples."""
    result = []

    def rec(remaining, maxpart, acc):
        if remaining == 0:
            result.append(tuple(acc))
            return
        for part in range(min(maxpart, remaining), 1, -1):
            if part % 2 == 0:
                rec(remaining - part, part, acc + [part])

    rec(degree, degree, [])
    return result


def _power_sum_monomials(partition: Tuple[int, ...], k: int,
                         degree: int) -> MultiSeries:
    prod = MultiSeries.constant(1, k, degree)
    for m in partition:
        pm = MultiSeries(k, degree,
                         {tuple(m if i == j else 0 for j in range(k)): Fraction(1)
                          for i in range(k)})
        prod = prod * pm
    return prod


def to_power_sums(s: MultiSeries, k: int) -> Dict[Tuple[int, ...], Fraction]:
    """Rewrite a symmetric even series uniquely in power sums p_m = sum u_i^m.

    Returns {partition (m_1 >= m_2 >= ...): coefficient}; the input must be
    symmetric and k must be at least half the highest occurring degree so
    the rewriting is unambiguous.
    """
    if not s.is_symmetric():
        raise ValueError("input series is not symmetric")
    out: Dict[Tuple[int, ...], Fraction] = {}
    degrees = sorted({sum(e) for e in s.coeffs if sum(e) > 0})
    for degree in degrees:
        if degree % 2:
            raise ValueError(f"odd total degree {degree} cannot come from "
                             "even power sums")
        parts = _even_partitions(degree)
        if any(len(p) > k for p in parts):
            raise ValueError(f"k = {k} is too small to disambiguate degree "
                             f"{degree} (need k >= {degree // 2})")
        target = s.graded_part(degree)
        expansions = [_power_sum_monomials(p, k, degree) for p in parts]
        keys = sorted(set().union(*(e.coeffs.keys() for e in expansions),
                                  target.coeffs.keys()))
        # exact dense solve of the small linear system
        rows = [[exp_ms[key] for exp_ms in expansions] for key in keys]
        rhs = [target[key] for key in keys]
        coeffs = _solve_exact(rows, rhs)
        for p, c in zip(parts, coeffs):
            if c:
                out[p] = c
    return out


def _solve_exact(rows: List[List[Fraction]], rhs: List[Fraction]) -> List[Fraction]:
    """Solve an overdetermined consistent rational system by elimination."""
    ncols = len(rows[0]) if rows else 0
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if piv is None:
            raise ValueError("power-sum system is degenerate")
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][ncols]:
            raise ValueError("series is not expressible in power sums "
                             "(inconsistent system)")
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][ncols]
    return sol


# ---------------------------------------------------------------------------
# intersection numbers
# ---------------------------------------------------------------------------

def spin_label(m: int) -> Tuple[int, int]:
    """Map an (even) inverse power m to the (n, j) pair with m = 3n + j + 1."""
    if m < 2 or m % 2:
        raise ValueError(f"no spin label for power {m}")
    j = (m - 1) % SPIN_P
    n = (m - 1 - j) // SPIN_P
    return n, j


def tau_genus(taus: Sequence[Tuple[int, int, int]]) -> Fraction:
    """Genus from the dimension rule sum d(n + j/p - 1) = (2 + 2/p)(g - 1)."""
    total = sum(Fraction(d) * (n + Fraction(j, SPIN_P) - 1) for n, j, d in taus)
    return 1 + total * Fraction(SPIN_P, 2 * (SPIN_P + 1))


def t_prefactor_integer(n: int, j: int) -> Fraction | None:
    """Integer-genus normalization prefactor of t_{n,j}, or None if the
    power of 3 is irrational (exponent (j - 3 - 5n)/8 not an integer)."""
    num = j - SPIN_P - n * (SPIN_P + 2)
    den = 2 * (SPIN_P + 1)
    if num % den:
        return None
    prod = Fraction(1)
    for l in range(n):
        prod *= SPIN_P * l + j + 1
    return Fraction(3) ** (num // den) * prod


def t_prefactor_half(n: int, j: int) -> Fraction:
    """Half-integer-genus normalization prefactor of t_{n,j}."""
    prod = Fraction(1)
    for l in range(n):
        prod *= SPIN_P * l + j + 1
    return prod


# the published table lists this correlator with genus label 0; the
# dimension rule above gives 1, which is what the table stores.
_PUBLISHED_GENUS_LABELS = {((1, 0, 2),): "0"}


@dataclass
class IntersectionEntry:
    genus: Fraction
    taus: Tuple[Tuple[int, int, int], ...]      # (n, j, multiplicity)
    value: Fraction
    convention: str                              # integer-genus | half-integer
                                                 # | raw-coefficient
    raw: Fraction
    candidates: Dict[str, Fraction] = field(default_factory=dict)
    note: str | None = None

    def to_dict(self) -> dict:
        d = {"genus": ser_rat(self.genus),
             "taus": [{"n": n, "j": j, "d": mult} for n, j, mult in self.taus],
             "value": ser_rat(self.value),
             "convention": self.convention}
        if self.candidates:
            d["candidates"] = {k: ser_rat(v) for k, v in self.candidates.items()}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class IntersectionTable:
    entries: List[IntersectionEntry]
    p: int = SPIN_P

    def to_dict(self) -> dict:
        return {"p": self.p, "entries": [e.to_dict() for e in self.entries]}

    def lookup(self, taus) -> IntersectionEntry | None:
        key = tuple(sorted(tuple(t) for t in taus))
        for e in self.entries:
            if tuple(sorted(e.taus)) == key:
                return e
        return None


def extract_intersections(psums: Dict[Tuple[int, ...], Fraction]) -> IntersectionTable:
    """Turn the power-sum form of log Z into an intersection-number table.

    Each power-sum monomial prod_r p_{m_r} maps through m = 3n + j + 1 to a
    tau correlator; the coefficient is divided by the multiplicities'
    factorials and by the t-normalization prefactors chosen by the genus:
    integer genus uses the 3-power normalization where it is rational,
    half-integer genus the plain product normalization.  Terms mixing both
    kinds are emitted untransformed (convention "raw-coefficient") together
    with the candidate normalized values.
    """
    entries: List[IntersectionEntry] = []
    for partition in sorted(psums, key=lambda p: (sum(p), p)):
        coeff = psums[partition]
        labels: Dict[Tuple[int, int], int] = {}
        for m in partition:
            n, j = spin_label(m)
            labels[(n, j)] = labels.get((n, j), 0) + 1
        taus = tuple(sorted((n, j, d) for (n, j), d in labels.items()))
        g = tau_genus(taus)
        if (2 * g).denominator != 1:
            raise ValueError(f"monomial {partition} has genus {g} outside "
                             "the half-integer lattice")
        dfact = Fraction(1)
        for _, _, d in taus:
            dfact *= fact(d)
        value_from = lambda prefs: coeff * dfact / prefs

        int_prefs = Fraction(1)
        int_ok = True
        any_int = False
        half_prefs = Fraction(1)
        for n, j, d in taus:
            tp = t_prefactor_integer(n, j)
            if tp is None:
                int_ok = False
            else:
                any_int = True
                int_prefs *= tp ** d
            half_prefs *= t_prefactor_half(n, j) ** d

        is_integer_genus = g.denominator == 1
        mixed = len(taus) > 1
        if mixed and any_int and not int_ok:
            # normalization genuinely ambiguous: some factors admit the
            # integer-genus prefactor, others only the plain one
            mixed_prefs = Fraction(1)
            for n, j, d in taus:
                tp = t_prefactor_integer(n, j)
                mixed_prefs *= (tp if tp is not None else
                                t_prefactor_half(n, j)) ** d
            entries.append(IntersectionEntry(
                genus=g, taus=taus, value=coeff, convention="raw-coefficient",
                raw=coeff,
                candidates={"all-half-integer": value_from(half_prefs),
                            "per-variable": value_from(mixed_prefs)}))
            continue
        if is_integer_genus and int_ok:
            conv, prefs = "integer-genus", int_prefs
        elif not is_integer_genus:
            conv, prefs = "half-integer", half_prefs
        else:
            # integer genus but the 3-power prefactor is irrational for
            # every factor: report raw with the plain-normalized candidate
            entries.append(IntersectionEntry(
                genus=g, taus=taus, value=coeff, convention="raw-coefficient",
                raw=coeff,
                candidates={"all-half-integer": value_from(half_prefs)}))
            continue
        entries.append(IntersectionEntry(
            genus=g, taus=taus, value=value_from(prefs), convention=conv,
            raw=coeff, note=_PUBLISHED_GENUS_LABELS.get(taus)
            and "published tables label this entry with genus "
            + _PUBLISHED_GENUS_LABELS[taus]))
    return IntersectionTable(entries)


def intersection_table(k: int = 4, order: int = 8) -> IntersectionTable:
    """Full pipeline: partition series -> log -> power sums -> table."""
    z = partition_series(k, order)
    f = log_series(z)
    psums = to_power_sums(f, k)
    if any(6 in p for p in psums):
        warnings.warn("a p_6 power sum appeared (spin j = 2 sector); "
                      "expected absent at low order", stacklevel=2)
    return extract_intersections(psums)
