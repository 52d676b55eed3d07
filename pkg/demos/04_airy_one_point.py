#!/usr/bin/env python3
"""One marked point at the critical source: Airy streams and closed forms.

At source blocks a^2 = (matrix size), the spectral gap closes and the
one-point evolution operator collapses onto the Airy function and its
antiderivative.  The two expansion branches of Ai(x) generate the spin
j=1 and j=0 integer-genus streams; the antiderivative's branches generate
the half-integer genera of non-orientable surfaces.
"""

from fractions import Fraction as F

from skewtop import (critical_u_series, half_genus_calibration,
                     one_point_half_genus, one_point_integer_from_stream,
                     one_point_integer_genus)

# --- the coefficient streams --------------------------------------------------
cs = critical_u_series(order=10)
print("Ai(0)-branch coefficients (1, 1/3!, 1*4/6!, 1*4*7/9!):")
print("  ", cs.stream("airy", "ai")[:4])
print("Ai'(0)-branch coefficients (1, 2/4!, 2*5/7!, 2*5*8/10!):")
print("  ", cs.stream("airy", "aiprime")[:4])

# --- integer genus: closed Gamma-ratio form -------------------------------------
print("\ninteger genus, closed form 1/(24^g g!) * Gamma((g+1)/3)/Gamma((2-j)/3):")
for g in range(1, 8):
    r = one_point_integer_genus(g)
    print(f"  g={g}: <tau({r.n},{r.j})> = {r.value}   [{r.provenance}]")

# genus 2 mod 3 forces spin 2, a Gamma pole in the denominator: exact zero
print("  (the zeros are the forced-spin-2 slots)")

# --- the same numbers re-derived from the streams -------------------------------
# one anchor per spin stream; everything else is parameter-free propagation
print("\nstream propagation reproduces the closed form:")
for g in (3, 4, 6, 7):
    a = one_point_integer_genus(g).value
    b = one_point_integer_from_stream(g).value
    print(f"  g={g}: {a == b}")

# --- half-integer genus ----------------------------------------------------------
# the stream law: anchor constant 1/864 at g=3/2, one factor 1/2 between
# the two branches and one factor -1/8 per step, all fixed or confirmed by
# the expansion engine (orders 16, 24, 32, 40)
print(f"\nhalf-integer genus (anchor constant {half_genus_calibration()}):")
for g in (F(3, 2), F(5, 2), F(7, 2), F(9, 2), F(11, 2)):
    r = one_point_half_genus(g)
    print(f"  g={g}: <tau({r.n},{r.j})> = {r.value}   [{r.provenance}]")

# the anchor is consistent with the series engine: 1/864 times the
# normalization 10 is the p_8 coefficient 5/432 of log Z
print("\nanchor consistency: 1/864 * 10 =", one_point_half_genus(F(3, 2)).value * 10)

# --- the definition-level pipeline -------------------------------------------------
# log Z computed in partition space reads off one-point values directly;
# it agrees with the streams at every half-integer genus and flags the
# closed integer-genus formula beyond its g=1 anchor
from skewtop import one_point_engine

print("\nexpansion-engine pipeline:")
for g in (F(1), F(3, 2), F(5, 2)):
    e = one_point_engine(g)
    print(f"  g={g}: engine value {e.value}")
e3 = one_point_engine(3)
print(f"  g=3: engine value {e3.value} vs closed form "
      f"{one_point_integer_genus(3).value} (ratio -1/4: the per-step "
      "factor, pinned in tests)")
