#!/usr/bin/env python3
"""From the quartic eigenvalue integral to intersection numbers.

Pipeline: expand the normalized partition function Z in the inverse
spectral variables u_i = 1/lambda_i (exact rational coefficients), take
log, rewrite the symmetric series in power sums p_m = sum u_i^m, and read
off the correlators of 3-spin classes on surfaces of integer and
half-integer genus.
"""

import json

from skewtop import (intersection_table, log_series, partition_series,
                     to_power_sums)

# --- the k=2 window where everything fits on one line ----------------------
z2 = partition_series(2, order=8)
print("Z at k=2 through total degree 4:")
print("  constant:", z2[(0, 0)])
print("  u1^4 coefficient:", z2[(4, 0)], "  (= 1/72 + 1/12)")
print("  u1^2 u2^2 coefficient:", z2[(2, 2)], "  (= 2 * 1/12)")

# the same monomials keep their coefficients at every k (universality)
z3 = partition_series(3, order=8)
print("  same coefficient at k=3:", z3[(4, 0, 0)] == z2[(4, 0)])

# --- free energy in power sums ---------------------------------------------
f = log_series(partition_series(4, order=8))
psums = to_power_sums(f, k=4)
print("\nlog Z in power sums (k=4, order 8):")
for part in sorted(psums, key=lambda p: (sum(p), p)):
    mono = " ".join(f"p{m}" for m in part)
    print(f"  {mono:<14} {psums[part]}")

# --- intersection numbers ----------------------------------------------------
# each p_m maps to a class via m = 3n + j + 1; the coefficient, times the
# multiplicity factorials and divided by the normalization prefactors,
# is the correlator
table = intersection_table(k=4, order=8)
print("\nintersection table:")
for e in table.entries:
    taus = " ".join(f"tau({n},{j})^{d}" if d > 1 else f"tau({n},{j})"
                    for n, j, d in e.taus)
    print(f"  g={str(e.genus):<4} {taus:<22} {str(e.value):<8}"
          f" [{e.convention}]"
          + (f"  candidates={ {k: str(v) for k, v in e.candidates.items()} }"
             if e.candidates else "")
          + (f"  note: {e.note}" if e.note else ""))

print("\nJSON document:")
print(json.dumps(table.to_dict(), indent=1)[:400], "...")

# --- the partition-space route ------------------------------------------------
# expanding the same determinant over Schur polynomials with symmetric-group
# characters keeps everything in partition space, which reaches far higher
# order; it agrees with the route above term by term
from skewtop import free_energy_power_sums

f16 = free_energy_power_sums(16)
print("\norder-16 free energy, single-power-sum part (partition-space route):")
print("  p16 coefficient:", f16[(16,)])
print("  p8^2 coefficient:", f16[(8, 8)])
print("  spin-2 slots empty:", all(all(m % 6 for m in p) for p in f16))
