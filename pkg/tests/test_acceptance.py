"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass/fail
line per criterion.  Exact checks are Fraction equalities with no
tolerance; statistical checks state their sample sizes and use 3-sigma
bands (1% relative for the group-integral ratio constancy).
"""

import math
import time
from fractions import Fraction as F

import numpy as np
import pytest

from skewtop.duality import verify_duality
from skewtop.engine import (intersection_table, log_series, partition_series,
                            to_power_sums)
from skewtop.evolution import (cauchy_identity_check, theorem3_series,
                               u1_series, u2_contour_series, u_replica_series,
                               u_replica_series_formal)
from skewtop.harish import (hc_determinant_form, hc_weyl_sum,
                            random_agreement_input, verify_hc)
from skewtop.moments import replica_one_point, trace_moment_at
from skewtop.airy import (half_genus_calibration, one_point_half_genus,
                          one_point_integer_from_stream,
                          one_point_integer_genus)
from skewtop.skew import (GaussianEnsemble, SkewMatrix, SourceSpec, pfaffian,
                          sample_batch)

MC_SAMPLES_MOMENTS = 100_000
MC_SAMPLES_DUALITY = 1_000_000
MC_SAMPLES_HC = 1_000_000


def report(num: int, ok: bool, text: str):
    print(f"[criterion {num:2d}] {'PASS' if ok else 'FAIL'}: {text}")
    assert ok, f"criterion {num} failed: {text}"


PUBLISHED_LOGZ = {(4,): F(1, 72), (2, 2): F(1, 12), (8,): F(5, 432),
                  (4, 4): F(1, 432), (4, 2, 2): F(1, 36),
                  (2, 2, 2, 2): F(-1, 108)}


def test_criterion_01_free_energy_six_coefficients():
    t0 = time.time()
    psums = to_power_sums(log_series(partition_series(4, 8)), 4)
    elapsed = time.time() - t0
    ok = psums == PUBLISHED_LOGZ and elapsed < 120
    report(1, ok, "log Z at k=4, order 8 equals (1/72)p4 + (1/12)p2^2 "
                  "+ (5/432)p8 + (1/432)p4^2 + (1/36)p4 p2^2 - (1/108)p2^4 "
                  f"exactly ({elapsed:.1f}s)")


def test_criterion_02_intersection_numbers():
    tab = intersection_table(4, 8)
    e_tau10 = tab.lookup([(1, 0, 1)])
    e_tau01sq = tab.lookup([(0, 1, 2)])
    e_tau21 = tab.lookup([(2, 1, 1)])
    e_tau10sq = tab.lookup([(1, 0, 2)])
    ok = (e_tau10.value == F(1, 24)
          and e_tau01sq.value == F(1, 6) and e_tau01sq.genus == F(1, 2)
          and e_tau21.value == F(1, 864) and e_tau21.genus == F(3, 2)
          and e_tau10sq.value == F(1, 24) and e_tau10sq.genus == 1
          and e_tau10sq.note is not None and "genus 0" in e_tau10sq.note)
    report(2, ok, "extraction gives <tau_{1,0}> = 1/24 (g=1), "
                  "<tau_{0,1}^2> = 1/6 (g=1/2), <tau_{2,1}> = 1/864 (g=3/2), "
                  "<tau_{1,0}^2> = 1/24 (rule genus 1, published label noted)")


def test_criterion_03_universality():
    z2 = partition_series(2, 8)
    ok = (z2[(4, 0)] - F(1, 12) == F(1, 72)) and z2[(2, 2)] == 2 * F(1, 12)
    z3 = partition_series(3, 8)
    z4 = partition_series(4, 8)
    ok = ok and all(z3[e + (0,)] == c for e, c in z2.coeffs.items())
    ok = ok and all(z4[e + (0,)] == c for e, c in z3.coeffs.items())
    report(3, ok, "k=2 coefficients 1/72 and 1/12 exact; shared monomial "
                  "coefficients identical for k in {2,3,4}")


def test_criterion_04_displayed_moments():
    ok = True
    for d in range(2, 7):
        for g in (F(1, 2), F(1)):
            ok = ok and trace_moment_at([2], g, d) == -F(d * (d - 1)) / (4 * g)
            ok = ok and trace_moment_at([4], g, d) == \
                F(d * (d - 1) * (2 * d - 1)) / (16 * g ** 2)
            ok = ok and trace_moment_at([2, 2], g, d) == \
                F(d * (d - 1) * (d * d - d + 4)) / (16 * g ** 2)
    # entry covariance from the density, both index patterns
    from skewtop.skew import wick_moment
    ens = GaussianEnsemble(4, gamma=F(1))
    ok = ok and wick_moment(ens, [(0, 1), (0, 1)]) == F(1, 4)
    ok = ok and wick_moment(ens, [(0, 1), (1, 0)]) == F(-1, 4)
    # MC agreement at 1e5 samples, 3 sigma
    ens = GaussianEnsemble(4, gamma=F(1))
    xs = sample_batch(ens, MC_SAMPLES_MOMENTS, seed=404)
    tr2 = np.einsum("nij,nji->n", xs, xs)
    tr4 = np.einsum("nij,njk,nkl,nli->n", xs, xs, xs, xs)
    for vals, target in ((tr2, -3.0), (tr4, 21 / 4), (tr2 ** 2, 12.0)):
        se = vals.std() / math.sqrt(len(vals))
        ok = ok and abs(vals.mean() - target) < 3 * se
    report(4, ok, "all four displayed moment formulas exact for dims 2..6 "
                  "and both weights; MC agrees within 3 sigma at 1e5 samples")


def test_criterion_05_dim2_evolution():
    u = u1_series([0], 10)
    expect = [F(-1, 4) ** (m // 2) / math.factorial(m // 2) if m % 2 == 0
              else F(0) for m in range(11)]
    report(5, u == expect, "dim-2 one-point operator equals the series of "
                           "exp(-s^2/4) through s^10, exact")


def test_criterion_06_replica_series():
    closed = u_replica_series(10)
    ok = closed[:7] == [F(1), 0, F(1, 4), 0, F(1, 96), 0, F(1, 1152)]
    formal = u_replica_series_formal(10)
    ok = ok and closed == formal
    ok = ok and closed == replica_one_point(10)
    report(6, ok, "replica series 1 + s^2/4 + s^4/96 + s^6/1152 exact; "
                  "formal-size path and moment-continuation path agree "
                  "term by term")


def test_criterion_07_theorem3_consistency():
    t1 = theorem3_series(1, 10)
    ur = u_replica_series(10)
    ok = all(t1[(m,)] == ur[m] for m in range(11))
    t2 = theorem3_series(2, 8)
    u2 = u2_contour_series(8)
    ok = ok and t2 == u2.scale(4).truncate(8)
    report(7, ok, "closed multi-point formula: n=1 equals the replica "
                  "series (order 10); n=2 equals 4x the contour evaluation "
                  "(order 8), exact")


def test_criterion_08_duality():
    t0 = time.time()
    ok = True
    for n, k in ((1, 1), (1, 2), (2, 1), (2, 2)):
        rep = verify_duality(n, k, trials=20, seed=100 * n + k, mode="exact")
        ok = ok and rep.verdict == "pass"
    mc = verify_duality(5, 2, seed=42, mode="mc", samples=MC_SAMPLES_DUALITY)
    ok = ok and mc.verdict == "pass"
    elapsed = time.time() - t0
    ok = ok and elapsed < 300
    report(8, ok, "duality exact for (N,k) in {(1,1),(1,2),(2,1),(2,2)} "
                  "over 20 rational draws each; MC pass within 3 sigma at "
                  f"(5,2), 1e6 samples ({elapsed:.0f}s)")


def test_criterion_09_group_integral():
    ok = verify_hc(1, seed=7).verdict == "pass"
    rep = verify_hc(2, samples=MC_SAMPLES_HC, seed=42)
    ok = ok and rep.verdict == "pass" and rep.spread <= 0.01
    rng = np.random.default_rng(909)
    worst = 0.0
    for n in range(1, 6):
        for _ in range(100):
            y, lam = random_agreement_input(rng, n)
            a = hc_weyl_sum(y, lam)
            b = hc_determinant_form(y, lam)
            worst = max(worst, abs(a - b) / max(abs(a), abs(b)))
    ok = ok and worst <= 1e-10
    report(9, ok, "SO(2) exact after pairing calibration; SO(4) MC ratios "
                  f"constant to {rep.spread:.2%} over 5 pairs at 1e6 "
                  f"samples; det form == Weyl sum to {worst:.1e} "
                  "(100 inputs each, N <= 5)")


def test_criterion_10_one_point_closed_forms():
    from skewtop.airy import one_point_engine
    ok = one_point_integer_genus(1).value == F(1, 24)
    g3 = one_point_integer_genus(3)
    ok = ok and g3.value == F(1, 24 ** 3 * math.factorial(3)) * F(1, 3)
    # independent high-precision confirmation of the recurrence path
    numeric = (1 / (24 ** 3 * math.factorial(3))
               * math.gamma(4 / 3) / math.gamma(1 / 3))
    ok = ok and abs(float(g3.value) - numeric) <= 1e-15
    half = one_point_half_genus(F(3, 2))
    ok = ok and half.value == F(1, 864)
    ok = ok and half.value * 10 == F(5, 432)
    tab = intersection_table(4, 8)
    ok = ok and tab.lookup([(2, 1, 1)]).raw == F(5, 432)
    ok = ok and half_genus_calibration() == F(1, 4)
    # cross-pipeline agreement, both directions: the Airy-stream closed
    # forms propagate the g=1/g=3 anchors consistently with the
    # Gamma-ratio formula, and the expansion engine reproduces the stream
    # values directly at half-integer genus and at the g=1 anchor
    ok = ok and all(one_point_integer_from_stream(g).value
                    == one_point_integer_genus(g).value
                    for g in (1, 3, 4, 6, 7))
    ok = ok and one_point_engine(1).value == F(1, 24)
    ok = ok and one_point_engine(F(3, 2)).value == F(1, 864)
    ok = ok and one_point_engine(F(5, 2)).value == \
        one_point_half_genus(F(5, 2)).value
    report(10, ok, "one-point closed forms: g=1 -> 1/24, g=3 -> 1/248832 "
                   "(recurrence == high-precision Gamma), g=3/2 -> 1/864 "
                   "consistent with the 5/432 engine coefficient; stream, "
                   "closed-form and expansion-engine pipelines cross-agree")


def test_criterion_11_property_suites():
    import random as _random

    from skewtop.skew import det_exact
    ok = True
    # pfaffian squared equals determinant up to dim 10: exact equality for
    # rational entries, 1e-9 relative for the floating path
    for d in (2, 4, 6, 8, 10):
        rng = _random.Random(d)
        rows = [[F(0)] * d for _ in range(d)]
        for i in range(d):
            for j in range(i + 1, d):
                rows[i][j] = F(rng.randint(-9, 9), rng.randint(1, 5))
                rows[j][i] = -rows[i][j]
        sk = SkewMatrix(rows)
        ok = ok and pfaffian(sk) ** 2 == det_exact(sk.rows)
        det = np.linalg.det(sk.to_numpy())
        a = np.asarray(sk.to_numpy())
        ok = ok and abs(pfaffian(a) ** 2 - det) <= 1e-9 * max(1.0, abs(det))
    # parity/evenness of U- and Z-series
    u = u1_series([F(1), F(2)], 8)
    ok = ok and all(u[m] == 0 for m in range(1, 9, 2)) and u[0] == 1
    z = partition_series(3, 8)
    ok = ok and all(all(x % 2 == 0 for x in e) for e in z.coeffs)
    u2 = u2_contour_series(6)
    ok = ok and all(all(x % 2 == 0 for x in e) for e in u2.coeffs)
    # Cauchy identity, n <= 4, exact
    ok = ok and cauchy_identity_check([F(1, 2)], [F(1, 3)])
    ok = ok and cauchy_identity_check([F(1, 2), 3], [F(2, 3), F(5, 4)])
    ok = ok and cauchy_identity_check([1, 2, F(7, 2)], [F(1, 3), F(5, 7), 4])
    ok = ok and cauchy_identity_check([1, 2, 3, F(9, 2)],
                                      [F(1, 3), F(5, 7), F(11, 6), F(13, 5)])
    # log/exp round trip
    from skewtop.engine import exp_series
    ok = ok and exp_series(log_series(z)) == z
    # deterministic MC aggregates under fixed (seed, worker-count)
    ens = GaussianEnsemble(6, SourceSpec([1, 2, 3]), F(1, 2))
    a1 = sample_batch(ens, 1000, seed=5, workers=4)
    a2 = sample_batch(ens, 1000, seed=5, workers=4)
    ok = ok and np.array_equal(a1, a2)
    r1 = verify_duality(2, 2, seed=6, mode="mc", samples=20_000)
    r2 = verify_duality(2, 2, seed=6, mode="mc", samples=20_000)
    ok = ok and r1.lhs == r2.lhs and r1.rhs == r2.rhs
    report(11, ok, "pf^2 = det (dims <= 10, exact and float); parity of all "
                   "U- and Z-series; Cauchy identity n <= 4 exact; log/exp "
                   "round trip; bit-identical MC aggregates under fixed "
                   "(seed, workers)")
