#!/usr/bin/env python3
"""Evolution operators and their zero-size replica limits.

U(s) = (1/d) <tr exp(sX)> at matrix dimension d has an exact contour
representation whose residues are extracted here on formal series, never
numerically.  Its coefficients are polynomials in d, so d -> 0 is honest
polynomial continuation; three independent routes must and do agree.
"""

from fractions import Fraction as F

from skewtop import (replica_two_point, theorem3_series, two_point_sh_form,
                     u1_series, u2_contour_series, u_replica_series,
                     u_replica_series_formal)
from skewtop.moments import finite_u_series

# --- finite size -------------------------------------------------------------
print("dim 2, no source: U(s) =", u1_series([0], 8)[:5], "...")
print("  (the series of exp(-s^2/4))")

print("\ndim 6 with source blocks (1, 2, 3):")
u = u1_series([1, 2, 3], 6)
print("  contour residues:", u)
print("  moment check (no source), dim 6:",
      u1_series([0, 0, 0], 6) == finite_u_series(6, 6))

# --- one-point replica limit --------------------------------------------------
closed = u_replica_series(10)
print("\nreplica limit of U(s): ", closed)
print("  formal-size contour path agrees:",
      closed == u_replica_series_formal(10))
# the s^2 term is the first genuinely non-orientable contribution
print("  s^2 coefficient:", closed[2])

# --- multi-point closed form ---------------------------------------------------
t1 = theorem3_series(1, 8)
print("\nclosed multi-point formula at n=1 reproduces the replica series:",
      all(t1[(m,)] == c for m, c in enumerate(u_replica_series(8))))

u2 = u2_contour_series(8)
t2 = theorem3_series(2, 8)
print("n=2 equals 4x the double-contour evaluation:",
      t2 == u2.scale(4).truncate(8))
print("contour evaluation equals the three-term sinh form:",
      u2 == two_point_sh_form(8))

# --- a substantive cross-check the formulas do NOT pass -------------------------
# the two-point correlator continued from its exact polynomial-in-dimension
# moments differs from the contour series; both are exposed so the
# discrepancy is pinned, visible, and reproducible
truth = replica_two_point(8)
print("\ntwo-point ground truth vs contour series, s1^2 s2^2 coefficient:")
print("  moment continuation:", truth[(2, 2)])
print("  4x contour series:  ", 4 * u2[(2, 2)])
print("  ratio at (2,2):", truth[(2, 2)] / (4 * u2[(2, 2)]),
      " at (4,2):", truth[(4, 2)] / (4 * u2[(4, 2)]),
      " (not constant: structurally different series)")
