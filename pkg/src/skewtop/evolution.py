"""Evolution operators U(s_1..s_n): finite-size series, replica limits,
the closed multi-point limit formula, and the two-point contour evaluation.

All series are exact.  Residue extraction happens on formal Laurent data
(coefficient extraction from geometric/exponential expansions), never by
numerical quadrature.  The finite-size one-point operator is

    U(s) = -(1/(N s)) oint (dv/2 pi i) prod_n [(v^2+a_n^2)/((v+s/2)^2+a_n^2)]
           * (v+s/2)/(v+s/4) * e^{s v + s^2/4}

with the contour around the source poles v = -s/2 +- i a_n, normalized so
U(0) = 1; the weight convention is gamma = 1/2.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .moments import (replica_one_point, replica_three_point,
                      replica_two_point)
from .rationals import QI, binomial, fact
from .series import MultiSeries, div_exact_linear

__all__ = [
    "u1_series", "u_replica_series", "u_replica_series_formal",
    "theorem3_series", "u2_contour_series", "two_point_sh_form",
    "cauchy_identity_check", "replica_one_point", "replica_two_point",
    "replica_three_point",
]


# ---------------------------------------------------------------------------
# finite-size one-point series
# ---------------------------------------------------------------------------

def _qi_series_mul(a: List[QI], b: List[QI], order: int) -> List[QI]:
    out = [QI() for _ in range(order + 1)]
    for i, x in enumerate(a):
        if i > order or x.is_zero():
            continue
        for j, y in enumerate(b):
            if i + j > order:
                break
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def _qi_exp_linear(c: QI, order: int) -> List[QI]:
    """Series of exp(c*s)."""
    out = [QI() for _ in range(order + 1)]
    term = QI.of(1)
    for m in range(order + 1):
        out[m] = term
        term = term * c / (m + 1)
    return out


def _gauss_damp(order: int) -> List[QI]:
    """Series of exp(-s^2/4)."""
    out = [QI() for _ in range(order + 1)]
    for m in range(0, order + 1, 2):
        out[m] = QI.of(Fraction(-1, 4) ** (m // 2) / fact(m // 2))
    return out


def u1_series(sources: Sequence, order: int = 10) -> List[Fraction]:
    """U(s) for the 2N x 2N ensemble with canonical source (a_1..a_N).

    Supported source patterns: all zero, all equal and nonzero, or all
    distinct in magnitude and nonzero.  Partial degeneracy (some but not
    all magnitudes coinciding, or zeros mixed with nonzeros) is not
    implemented and raises.
    """
    if order > 20:
        raise ValueError("order guard: <= 20")
    a = [Fraction(x) for x in sources]
    if not a:
        raise ValueError("need at least one source block")
    mags = [abs(x) for x in a]
    if all(x == 0 for x in a):
        coeffs = _u1_zero_source(len(a), order)
    elif len(set(mags)) == 1:
        coeffs = _u1_equal_source(len(a), a[0], order)
    elif len(set(mags)) == len(mags) and all(m != 0 for m in mags):
        coeffs = _u1_distinct_sources(a, order)
    else:
        raise ValueError("partially degenerate sources are unsupported; "
                         "use all-equal, all-distinct, or all-zero")
    for m, c in enumerate(coeffs):
        if m % 2 and c:
            raise AssertionError("odd power survived in U(s)")
    if coeffs[0] != 1:
        raise AssertionError(f"normalization U(0) = {coeffs[0]} != 1")
    return coeffs


def _u1_zero_source(nblocks: int, order: int) -> List[Fraction]:
    """Residue at the merged pole v = -s/2 (order 2N-1): analytic in s."""
    n2 = 2 * nblocks
    pre = [Fraction(0)] * (order + 1)
    # [w^{2N-2}] (w - s/2)^{2N} e^{s w} / (w - s/4), with the geometric
    # expansion of the last factor; surviving powers are automatically
    # non-negative and even.
    for j in range(n2 + 1):
        for m in range(n2 - 1 - j + 1):
            l = n2 - 2 - j - m
            if l < 0:
                continue
            spow = n2 - j + l - m - 1
            c = (Fraction(binomial(n2, j)) * Fraction(-1, 2) ** (n2 - j)
                 * Fraction(1, fact(l)) * Fraction(-(4 ** (m + 1))))
            # times -(1/(N s)) : total power spow - 1
            p = spow - 1
            if 0 <= p <= order:
                pre[p] += -c / nblocks
    damp = _gauss_damp(order)
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(pre):
        if not x:
            continue
        for j in range(0, order - i + 1, 2):
            out[i + j] += x * damp[j].re
    return out


def _u1_distinct_sources(a: List[Fraction], order: int) -> List[Fraction]:
    """Sum of simple-pole residues: (1/2N) sum_n Phi_n(s) + Phi_n(-s)."""
    n = len(a)
    total = [QI() for _ in range(order + 1)]
    for alpha in range(n):
        aa = a[alpha]
        # polynomial prod_{g != alpha} [(a_a^2 - a_g^2) + i a_a s - s^2/4]
        #                              / (a_a^2 - a_g^2)
        poly = [QI.of(1)] + [QI() for _ in range(order)]
        for g in range(n):
            if g == alpha:
                continue
            dend = aa * aa - a[g] * a[g]
            factor = [QI() for _ in range(order + 1)]
            factor[0] = QI.of(1)
            if order >= 1:
                factor[1] = QI(Fraction(0), aa) / dend
            if order >= 2:
                factor[2] = QI.of(Fraction(-1, 4)) / dend
            poly = _qi_series_mul(poly, factor, order)
        phase = _qi_exp_linear(QI(Fraction(0), aa), order)
        term = _qi_series_mul(poly, phase, order)
        term = _qi_series_mul(term, _gauss_damp(order), order)
        for m in range(order + 1):
            # Phi(s) + Phi(-s): doubles even powers, kills odd ones
            if m % 2 == 0:
                total[m] = total[m] + term[m] * 2
    out = []
    for m, c in enumerate(total):
        c = c / (2 * n)
        if not c.is_real():
            raise AssertionError(f"imaginary residue leakage at s^{m}: {c}")
        out.append(c.re)
    return out


def _u1_equal_source(nblocks: int, a: Fraction, order: int) -> List[Fraction]:
    """Order-N pole pair at v = -s/2 +- i a; returns 2 Re of one residue."""
    n = nblocks
    ia = QI(Fraction(0), a)
    order = order + 1  # final division by s consumes one order

    # w-polynomials with s-series coefficients; represent as list over
    # w-power of s-series (lists of QI).
    def wconst(c: QI) -> List[List[QI]]:
        s0 = [QI() for _ in range(order + 1)]
        s0[0] = c
        return [s0]

    def wmul(p: List[List[QI]], q: List[List[QI]], wcap: int) -> List[List[QI]]:
        out = [[QI() for _ in range(order + 1)] for _ in range(wcap + 1)]
        for i, si in enumerate(p):
            if i > wcap:
                break
            for j, sj in enumerate(q):
                if i + j > wcap:
                    break
                prod = _qi_series_mul(si, sj, order)
                tgt = out[i + j]
                for t, c in enumerate(prod):
                    tgt[t] = tgt[t] + c
        return out

    wcap = n - 1

    # quadratic factor (w^2 + 2(ia - s/2) w + (s^2/4 - i s a))^n
    lin = [QI() for _ in range(order + 1)]
    lin[0] = 2 * ia
    if order >= 1:
        lin[1] = QI.of(-1)
    const = [QI() for _ in range(order + 1)]
    if order >= 1:
        const[1] = QI(Fraction(0), -a)
    if order >= 2:
        const[2] = QI.of(Fraction(1, 4))
    w2 = [QI() for _ in range(order + 1)]
    w2[0] = QI.of(1)
    quad = [const, lin, w2]
    apoly = wconst(QI.of(1))
    for _ in range(n):
        apoly = wmul(apoly, quad, wcap)

    # (w + ia)
    bpoly = [[QI() for _ in range(order + 1)] for _ in range(2)]
    bpoly[0][0] = ia
    bpoly[1][0] = QI.of(1)

    # 1/(w + 2ia)^n: coefficients ((-1)^m C(n+m-1,m) / (2ia)^(n+m)) w^m
    cpoly = []
    for m in range(wcap + 1):
        c = QI.of((-1) ** m * binomial(n + m - 1, m)) / (2 * ia) ** (n + m)
        cpoly.append([c if t == 0 else QI() for t in range(order + 1)])

    # 1/(w + ia - s/4): geometric in w; with beta = ia - s/4,
    # 1/beta = (1/ia) sum_k (s/(4 ia))^k as an s-series
    inv_beta = [QI.of(1) / (ia * (4 * ia) ** t) for t in range(order + 1)]
    dpoly = []
    power = inv_beta
    for m in range(wcap + 1):
        dpoly.append([QI.of((-1) ** m) * c for c in power])
        power = _qi_series_mul(power, inv_beta, order)

    # e^{s w}: w^l coefficient s^l / l!
    epoly = []
    for l in range(wcap + 1):
        s_l = [QI() for _ in range(order + 1)]
        if l <= order:
            s_l[l] = QI.of(Fraction(1, fact(l)))
        epoly.append(s_l)

    prod = wmul(wmul(apoly, bpoly, wcap), wmul(cpoly, wmul(dpoly, epoly, wcap), wcap), wcap)
    res = prod[wcap]
    # times e^{i s a - s^2/4}
    res = _qi_series_mul(res, _qi_exp_linear(ia, order), order)
    res = _qi_series_mul(res, _gauss_damp(order), order)
    # U = -(1/(N s)) * (res + conj(res)) = -(2/(N s)) Re(res)
    out = [Fraction(0)] * order
    if res[0].re:
        raise AssertionError("residue sum not divisible by s")
    for m in range(1, order + 1):
        out[m - 1] = -2 * res[m].re / n
    return out


# ---------------------------------------------------------------------------
# replica (zero-size) limit, one point
# ---------------------------------------------------------------------------

def u_replica_series(order: int = 10) -> List[Fraction]:
    """Closed form (4/s^2) sinh(s^2/4) + int_0^{s^2/4} dx sinh(x)/x, exact.

    Series: 1 + s^2/4 + s^4/96 + s^6/1152 + ...
    """
    if order > 30:
        raise ValueError("order guard: <= 30")
    out = [Fraction(0)] * (order + 1)
    m = 0
    while 4 * m <= order:
        out[4 * m] += Fraction(1, 16 ** m * fact(2 * m + 1))
        m += 1
    m = 0
    while 4 * m + 2 <= order:
        out[4 * m + 2] += Fraction(1, 4 ** (2 * m + 1) * (2 * m + 1)
                                   * fact(2 * m + 1))
        m += 1
    return out


def u_replica_series_formal(order: int = 10) -> List[Fraction]:
    """Replica limit by formal contour extraction.

    Treating the size as a formal variable, the source-pole product becomes
    exp(M log(...)); the coefficient of M^1 leaves
    (2/s) [v^-1] log(1 + s/2v) (v+s/2)/(v+s/4) e^{s v + s^2/4},
    which is extracted coefficientwise from the 1/v expansions.
    """
    pre = [Fraction(0)] * (order + 2)
    for m in range(1, order + 2):
        sign = Fraction((-1) ** (m + 1), m)
        # plain part: l = m - 1, total power 2m - 1
        p = 2 * m - 1
        if p <= order + 1:
            pre[p] += sign * Fraction(1, 2 ** m * fact(m - 1))
        # tail: (s/4)(-s/4)^j, l = m + j, total power 2m + 2j + 1
        for j in range(0, (order + 1 - 2 * m) // 2 + 1):
            p = 2 * m + 2 * j + 1
            if p <= order + 1:
                pre[p] += (sign * Fraction(1, 2 ** m)
                           * Fraction((-1) ** j, 4 ** (j + 1))
                           * Fraction(1, fact(m + j)))
    # multiply by e^{s^2/4}, then by 2/s
    out = [Fraction(0)] * (order + 1)
    for i, c in enumerate(pre):
        if not c:
            continue
        for j in range(0, order + 2 - i, 2):
            power = i + j - 1
            if 0 <= power <= order:
                out[power] += 2 * c * Fraction(1, 4 ** (j // 2) * fact(j // 2))
    return out


# ---------------------------------------------------------------------------
# multi-point replica limit (closed form)
# ---------------------------------------------------------------------------

def theorem3_series(n: int, order: int = 10) -> MultiSeries:
    """Closed-form replica limit of U(s_1..s_n): sum over sign patterns of

        W = (1/sigma^2) prod_i 2 sinh(s_i sigma / 4)
            + (1/4) int_0^sigma (dy/y) prod_i 2 sinh(s_i y / 4),

    sigma = s_1 + ... + s_n.  A variant normalization with prefactors
    (1/(2 sigma^2)) prod 4 sinh and (1/2) int prod sinh is sometimes quoted,
    but it contradicts the two-point factor-4 relation to the contour
    evaluation; the normalization used here is the unique one consistent
    with both the one-point limit and that relation (see tests).  The
    sign-pattern sum equals 2^n times the all-even projection of W.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if order > 16:
        raise ValueError("order guard: <= 16")
    work = order + 2
    sigma = MultiSeries.linear_form([Fraction(1)] * n, work)
    sigpow = {0: MultiSeries.constant(1, n, work)}
    for t in range(1, work + 1):
        sigpow[t] = sigpow[t - 1] * sigma

    prod_term = MultiSeries(n, work)
    int_term = MultiSeries(n, order)

    def tuples(i, acc, budget):
        if i == n:
            yield tuple(acc)
            return
        a = 1
        while a <= budget:
            acc.append(a)
            yield from tuples(i + 1, acc, budget - a)
            acc.pop()
            a += 2

    for tup in tuples(0, [], work):
        tot = sum(tup)
        coeff = Fraction(1)
        for a in tup:
            coeff *= Fraction(1, 4 ** a * fact(a))
        key = tuple(tup)
        if 2 * tot <= work:
            prod_term = prod_term + (MultiSeries(n, work, {key: coeff})
                                     * sigpow[tot])
        if 2 * tot <= order:
            int_term = int_term + (MultiSeries(n, order, {key: coeff / tot})
                                   * sigpow[tot].truncate(order))

    for _ in range(2):
        shift = MultiSeries.linear_form([Fraction(0)] + [Fraction(-1)] * (n - 1),
                                        prod_term.order)
        prod_term = div_exact_linear(prod_term, 0, shift if n > 1 else None)
    w = (prod_term.truncate(order).scale(Fraction(2 ** n))
         + int_term.scale(Fraction(2 ** n, 4)))
    return w.even_projection().scale(2 ** n).truncate(order)


# ---------------------------------------------------------------------------
# two-point contour evaluation
# ---------------------------------------------------------------------------

def _ext0(alpha: MultiSeries, beta: MultiSeries, p: MultiSeries,
          q: MultiSeries, order: int) -> MultiSeries:
    """[u^-1] of log(1 + alpha/2u) (u+p)/(u+q) e^{beta u}.

    All arguments are linear forms; the extraction is a finite double sum
    once truncated at total degree ``order``.
    """
    nv = alpha.nvars
    out = MultiSeries(nv, order)

    def pows(ms, top):
        d = {0: MultiSeries.constant(1, nv, order)}
        for t in range(1, top + 1):
            d[t] = d[t - 1] * ms
        return d

    ap = pows(alpha.scale(Fraction(1, 2)), order + 1)
    bp = pows(beta, order + 1)
    qp = pows(q.scale(-1), order + 1)
    pmq = p - q
    for m in range(1, order + 2):
        sign = Fraction((-1) ** (m + 1), m)
        if 2 * m - 1 <= order:
            out = out + (ap[m] * bp[m - 1]).scale(sign * Fraction(1, fact(m - 1)))
        for j in range(0, order):
            if 2 * m + 2 * j + 1 > order:
                break
            term = ap[m] * pmq * qp[j] * bp[m + j]
            out = out + term.scale(sign * Fraction(1, fact(m + j)))
    return out


def u2_contour_series(order: int = 8) -> MultiSeries:
    """Replica-limit two-point function from the double contour integral.

    The inner contour is collapsed onto the four cross poles
    u_2 in {u_1 + s_1/2, -u_1 - s_1/2, -u_1 - s_2/2, u_1 - s_2/2}; each
    residue leaves a one-dimensional log-cut extraction handled by _ext0.
    Pole pairs sharing the 1/(s_1+s_2) resp. 1/(s_1-s_2) prefactor are
    combined before the exact division, so every step stays polynomial.
    The result reproduces the published three-term sinh form exactly (see
    :func:`two_point_sh_form`).
    """
    if order > 12:
        raise ValueError("order guard: <= 12")
    work = order + 1
    s1 = MultiSeries.linear_form([Fraction(1), Fraction(0)], work)
    s2 = MultiSeries.linear_form([Fraction(0), Fraction(1)], work)
    sigma = s1 + s2
    tau = s1 - s2
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    e_sig2 = (sigma * sigma).scale(quarter).exp()
    e_tau2 = (tau * tau).scale(quarter).exp()
    e_sigtau = (sigma * tau).scale(quarter).exp()

    ext_i = _ext0(s1, sigma, sigma.scale(half), sigma.scale(quarter), work)
    ext_iv = _ext0(s1, sigma, s1.scale(half), tau.scale(quarter), work)
    ext_ii = _ext0(s1, tau, tau.scale(half), tau.scale(quarter), work)
    ext_iii = _ext0(s1, tau, s1.scale(half), sigma.scale(quarter), work)

    n_sigma = e_sig2 * ext_i - e_sigtau * ext_iv
    n_tau = e_tau2 * ext_ii - e_sigtau * ext_iii
    j_sigma = div_exact_linear(n_sigma, 0,
                               MultiSeries.linear_form([0, Fraction(-1)], work))
    j_tau = div_exact_linear(n_tau, 0,
                             MultiSeries.linear_form([0, Fraction(1)], work))
    return (j_sigma + j_tau).scale(half).truncate(order)


def two_point_sh_form(order: int = 8) -> MultiSeries:
    """The published closed three-term sinh form of the two-point limit:

        (2/sigma^2) sh(s1 sigma/4) sh(s2 sigma/4)
      - (2/tau^2)   sh(s1 tau/4)   sh(s2 tau/4)
      + (1/2) int_tau^sigma (dy/y) sh(s1 y/4) sh(s2 y/4),

    sigma = s1 + s2, tau = s1 - s2.  Agrees with u2_contour_series term by
    term.
    """
    out = MultiSeries(2, order)
    sigma = MultiSeries.linear_form([Fraction(1), Fraction(1)], order)
    tau = MultiSeries.linear_form([Fraction(1), Fraction(-1)], order)
    spow = {0: MultiSeries.constant(1, 2, order)}
    tpow = {0: MultiSeries.constant(1, 2, order)}
    for t in range(1, order + 1):
        spow[t] = spow[t - 1] * sigma
        tpow[t] = tpow[t - 1] * tau
    for a in range(1, order, 2):
        for b in range(1, order - a + 1, 2):
            c = Fraction(1, 4 ** (a + b) * fact(a) * fact(b))
            key = (a, b)
            if 2 * (a + b) - 2 <= order:
                out = out + (MultiSeries(2, order, {key: 2 * c})
                             * spow[a + b - 2])
                out = out + (MultiSeries(2, order, {key: -2 * c})
                             * tpow[a + b - 2])
            if 2 * (a + b) <= order:
                ic = c * Fraction(1, 2 * (a + b))
                out = out + (MultiSeries(2, order, {key: ic})
                             * (spow[a + b] - tpow[a + b]))
    return out


# ---------------------------------------------------------------------------
# Cauchy determinant identity
# ---------------------------------------------------------------------------

def cauchy_identity_check(xs: Sequence, ys: Sequence) -> bool:
    """det[1/(x_i^2 - y_j^2)] == (-1)^{n(n-1)/2}
       prod_{i<j}(x_i^2-x_j^2)(y_i^2-y_j^2) / prod_{i,j}(x_i^2-y_j^2),
    checked with exact rationals."""
    xs = [Fraction(x) for x in xs]
    ys = [Fraction(y) for y in ys]
    n = len(xs)
    if len(ys) != n:
        raise ValueError("need equally many x and y values")
    x2 = [x * x for x in xs]
    y2 = [y * y for y in ys]
    if len(set(x2)) != n or len(set(y2)) != n or set(x2) & set(y2):
        raise ValueError("degenerate input: squared values must be distinct")
    mat = [[1 / (x2[i] - y2[j]) for j in range(n)] for i in range(n)]
    det = _det_fraction(mat)
    num = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            num *= (x2[i] - x2[j]) * (y2[i] - y2[j])
    den = Fraction(1)
    for i in range(n):
        for j in range(n):
            den *= x2[i] - y2[j]
    rhs = Fraction((-1) ** (n * (n - 1) // 2)) * num / den
    return det == rhs


def _det_fraction(mat: List[List[Fraction]]) -> Fraction:
    m = [row[:] for row in mat]
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
