"""Sparse multivariate power series truncated at a total degree, with exact
Fraction coefficients, plus exact division by linear forms.

Every coefficient operation is rational arithmetic; no floating point
enters anywhere.  Univariate series elsewhere in the package are plain
coefficient lists handled locally.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple

Expo = Tuple[int, ...]

class MultiSeries:
    """Sparse multivariate power series truncated at a total degree.

    Coefficients are exact Fractions keyed by exponent tuples.  All
    arithmetic stays inside the truncation order of the left operand
    (or the smaller of the two orders for binary operations).
    """

    __slots__ = ("nvars", "order", "coeffs")

    def __init__(self, nvars: int, order: int, coeffs: Dict[Expo, Fraction] | None = None):
        self.nvars = nvars
        self.order = order
        self.coeffs: Dict[Expo, Fraction] = {}
        if coeffs:
            for e, c in coeffs.items():
                if c and sum(e) <= order:
                    self.coeffs[tuple(e)] = Fraction(c)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(c, nvars: int, order: int) -> "MultiSeries":
        z = (0,) * nvars
        return MultiSeries(nvars, order, {z: Fraction(c)})

    @staticmethod
    def variable(i: int, nvars: int, order: int) -> "MultiSeries":
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return MultiSeries(nvars, order, {e: Fraction(1)})

    @staticmethod
    def linear_form(coeffs, order: int) -> "MultiSeries":
        """c_0*x_0 + c_1*x_1 + ... from a coefficient sequence."""
        nvars = len(coeffs)
        d = {}
        for i, c in enumerate(coeffs):
            if c:
                e = tuple(1 if j == i else 0 for j in range(nvars))
                d[e] = Fraction(c)
        return MultiSeries(nvars, order, d)

    def copy(self) -> "MultiSeries":
        out = MultiSeries(self.nvars, self.order)
        out.coeffs = dict(self.coeffs)
        return out

    # -- inspection --------------------------------------------------------

    def __getitem__(self, e: Expo) -> Fraction:
        return self.coeffs.get(tuple(e), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coeffs.get((0,) * self.nvars, Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def min_degree(self) -> int:
        if not self.coeffs:
            return self.order + 1
        return min(sum(e) for e in self.coeffs)

    def graded_part(self, degree: int) -> "MultiSeries":
        return MultiSeries(self.nvars, self.order,
                           {e: c for e, c in self.coeffs.items() if sum(e) == degree})

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __repr__(self):
        items = sorted(self.coeffs.items())[:8]
        body = " + ".join(f"{c}*x^{e}" for e, c in items)
        more = " + ..." if len(self.coeffs) > 8 else ""
        return f"MultiSeries({body or '0'}{more}; order={self.order})"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, MultiSeries):
            out = self.copy()
            for e, c in other.coeffs.items():
                if sum(e) <= out.order:
                    v = out.coeffs.get(e, Fraction(0)) + c
                    if v:
                        out.coeffs[e] = v
                    else:
                        out.coeffs.pop(e, None)
            return out
        return self + MultiSeries.constant(other, self.nvars, self.order)

    __radd__ = __add__

    def __neg__(self):
        out = MultiSeries(self.nvars, self.order)
        out.coeffs = {e: -c for e, c in self.coeffs.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, MultiSeries):
            return self + (-other)
        return self + (-Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiSeries":
        c = Fraction(c)
        out = MultiSeries(self.nvars, self.order)
        if c:
            out.coeffs = {e: v * c for e, v in self.coeffs.items()}
        return out

    def __mul__(self, other):
        if not isinstance(other, MultiSeries):
            return self.scale(other)
        order = min(self.order, other.order)
        out = MultiSeries(self.nvars, order)
        if not self.coeffs or not other.coeffs:
            return out
        # iterate over the smaller operand outside
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        acc: Dict[Expo, Fraction] = {}
        bitems = sorted(b.items(), key=lambda x: sum(x[0]))
        bdegs = [sum(e) for e, _ in bitems]
        for ea, ca in a.items():
            da = sum(ea)
            for (eb, cb), db in zip(bitems, bdegs):
                if da + db > order:
                    break
                e = tuple(x + y for x, y in zip(ea, eb))
                v = acc.get(e, Fraction(0)) + ca * cb
                if v:
                    acc[e] = v
                else:
                    acc.pop(e, None)
        out.coeffs = acc
        return out

    __rmul__ = __mul__

    def pow(self, n: int) -> "MultiSeries":
        if n < 0:
            raise ValueError("negative power")
        result = MultiSeries.constant(1, self.nvars, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def truncate(self, order: int) -> "MultiSeries":
        return MultiSeries(self.nvars, order, self.coeffs)

    # -- transcendental ----------------------------------------------------

    def log(self) -> "MultiSeries":
        """Truncated log; requires constant term exactly 1."""
        if self.constant_term() != 1:
            raise ValueError("log requires constant term 1")
        eps = self - 1
        out = MultiSeries(self.nvars, self.order)
        power = eps
        m = 1
        while not power.is_zero() and m <= self.order:
            out = out + power.scale(Fraction((-1) ** (m + 1), m))
            power = power * eps
            m += 1
        return out

    def exp(self) -> "MultiSeries":
        """Truncated exp; requires zero constant term."""
        if self.constant_term() != 0:
            raise ValueError("exp requires zero constant term")
        out = MultiSeries.constant(1, self.nvars, self.order)
        term = MultiSeries.constant(1, self.nvars, self.order)
        m = 1
        while True:
            term = (term * self).scale(Fraction(1, m))
            if term.is_zero() or m > self.order:
                break
            out = out + term
            m += 1
        return out

    # -- structure ---------------------------------------------------------

    def even_projection(self) -> "MultiSeries":
        """Keep only monomials that are even in every variable."""
        out = MultiSeries(self.nvars, self.order)
        out.coeffs = {e: c for e, c in self.coeffs.items()
                      if all(x % 2 == 0 for x in e)}
        return out

    def substitute_signs(self, signs) -> "MultiSeries":
        """x_i -> signs[i]*x_i with signs in {+1, -1}."""
        out = MultiSeries(self.nvars, self.order)
        for e, c in self.coeffs.items():
            s = 1
            for x, sg in zip(e, signs):
                if sg < 0 and x % 2:
                    s = -s
            out.coeffs[e] = c if s > 0 else -c
        return out

    def permute_vars(self, perm) -> "MultiSeries":
        """Relabel variables: new exponent of var perm[i] is old exponent of i."""
        out = MultiSeries(self.nvars, self.order)
        for e, c in self.coeffs.items():
            ne = [0] * self.nvars
            for i, x in enumerate(e):
                ne[perm[i]] = x
            out.coeffs[tuple(ne)] = c
        return out

    def is_symmetric(self) -> bool:
        n = self.nvars
        for i in range(n - 1):
            perm = list(range(n))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            if self.permute_vars(perm) != self:
                return False
        return True


def div_exact_linear(a: MultiSeries, var: int, shift: MultiSeries | None) -> MultiSeries:
    """Exact division of ``a`` by the linear form ``x_var - shift``.

    ``shift`` is a polynomial not involving ``x_var`` (pass None for 0).
    The division must be exact on all retained degrees; the quotient is
    valid one total degree below the input's truncation order.  A nonzero
    remainder raises ValueError.
    """
    order = a.order
    # organize as polynomial in x_var
    strata: Dict[int, Dict[Expo, Fraction]] = {}
    for e, c in a.coeffs.items():
        p = e[var]
        re = e[:var] + (0,) + e[var + 1:]
        strata.setdefault(p, {})[re] = c
    if not strata:
        return MultiSeries(a.nvars, order - 1)
    top = max(strata)

    def mul_shift(d: Dict[Expo, Fraction]) -> Dict[Expo, Fraction]:
        if shift is None or not d:
            return {}
        acc: Dict[Expo, Fraction] = {}
        for es, cs in shift.coeffs.items():
            for e, c in d.items():
                ne = tuple(x + y for x, y in zip(e, es))
                v = acc.get(ne, Fraction(0)) + c * cs
                if v:
                    acc[ne] = v
                else:
                    acc.pop(ne, None)
        return acc

    qstrata: Dict[int, Dict[Expo, Fraction]] = {}
    carry: Dict[Expo, Fraction] = {}
    for p in range(top, 0, -1):
        cur = dict(strata.get(p, {}))
        for e, c in carry.items():
            v = cur.get(e, Fraction(0)) + c
            if v:
                cur[e] = v
            else:
                cur.pop(e, None)
        qstrata[p - 1] = cur
        carry = mul_shift(cur)
    # remainder = stratum 0 + carry must vanish on retained degrees
    rem = dict(strata.get(0, {}))
    for e, c in carry.items():
        v = rem.get(e, Fraction(0)) + c
        if v:
            rem[e] = v
        else:
            rem.pop(e, None)
    bad = {e: c for e, c in rem.items() if sum(e) <= order - 1}
    if bad:
        raise ValueError(f"division by linear form is not exact: remainder {bad}")
    out = MultiSeries(a.nvars, order - 1)
    for p, d in qstrata.items():
        for e, c in d.items():
            ne = e[:var] + (p,) + e[var + 1:]
            if sum(ne) <= out.order and c:
                out.coeffs[ne] = c
    return out
