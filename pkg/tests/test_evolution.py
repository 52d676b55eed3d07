"""Evolution operators: finite-size series, replica limits, the closed
multi-point formula and the two-point contour evaluation."""

import math
from fractions import Fraction as F

import pytest

from skewtop.evolution import (cauchy_identity_check, replica_one_point,
                               replica_three_point, replica_two_point,
                               theorem3_series, two_point_sh_form, u1_series,
                               u2_contour_series, u_replica_series,
                               u_replica_series_formal)
from skewtop.moments import dp_eval, finite_u_series, trace_moment
from skewtop.skew import GaussianEnsemble, SourceSpec, trace_moment_exact


def exp_minus_s2_over_4(order):
    out = [F(0)] * (order + 1)
    for m in range(0, order + 1, 2):
        out[m] = F(-1, 4) ** (m // 2) / math.factorial(m // 2)
    return out


class TestFiniteOnePoint:
    def test_dim2_gaussian_closed_form(self):
        # through s^10: the dim-2 operator is exactly exp(-s^2/4)
        assert u1_series([0], 10) == exp_minus_s2_over_4(10)

    @pytest.mark.parametrize("nblocks", [1, 2, 3])
    def test_zero_source_matches_trace_moments(self, nblocks):
        assert u1_series([0] * nblocks, 8) == finite_u_series(2 * nblocks, 8)

    def test_coefficient_dictionary(self):
        # s^{2m} coefficient * (2m)! * d == <tr X^{2m}>, d in {2,4,6}, m <= 4
        for nblocks in (1, 2, 3):
            d = 2 * nblocks
            u = u1_series([0] * nblocks, 8)
            for m in range(1, 5):
                lhs = u[2 * m] * math.factorial(2 * m) * d
                assert lhs == dp_eval(trace_moment([2 * m], F(1, 2)), d)

    def test_distinct_sources_match_entry_wick(self):
        ens = GaussianEnsemble(4, SourceSpec([1, 2]), F(1, 2))
        u = u1_series([1, 2], 6)
        for m in (2, 4, 6):
            assert u[m] == trace_moment_exact(ens, [m]) / (math.factorial(m) * 4)

    def test_equal_sources_match_entry_wick(self):
        a = F(3, 2)
        ens = GaussianEnsemble(4, SourceSpec([a, a]), F(1, 2))
        u = u1_series([a, a], 6)
        for m in (2, 4, 6):
            assert u[m] == trace_moment_exact(ens, [m]) / (math.factorial(m) * 4)

    def test_symbolic_source_quadratic_coefficient(self):
        # s^2 coefficient of the one-block operator is -(a^2/2 + 1/4):
        # reconstruct the polynomial in a by sampling and compare with the
        # shifted-source Wick value
        pts = [F(0), F(1), F(2), F(1, 2)]
        vals = [u1_series([a], 2)[2] if a else u1_series([0], 2)[2]
                for a in pts]
        for a, v in zip(pts, vals):
            assert v == -(a * a / 2 + F(1, 4))
            ens = GaussianEnsemble(2, SourceSpec([a]), F(1, 2))
            assert v == trace_moment_exact(ens, [2]) / (2 * 2)

    def test_normalization_and_parity(self):
        u = u1_series([F(1), F(3)], 8)
        assert u[0] == 1
        assert all(u[m] == 0 for m in range(1, 9, 2))

    def test_mc_agreement_with_sources(self):
        # evaluate the truncated series at s = 1/2 and compare with a
        # sampled trace of the matrix exponential (eigenangle route)
        import numpy as np

        from skewtop.skew import GaussianEnsemble, SourceSpec, sample_batch

        sources = [F(1), F(2)]
        u = u1_series(sources, 14)
        s = 0.5
        series_val = float(sum(c * F(1, 2) ** m for m, c in enumerate(u)))
        ens = GaussianEnsemble(4, SourceSpec(sources), F(1, 2))
        xs = sample_batch(ens, 50_000, seed=77)
        h = 1j * xs
        angles = np.linalg.eigvalsh(h)
        vals = np.cos(s * angles).sum(axis=1) / 4.0
        se = vals.std() / math.sqrt(len(vals))
        assert abs(vals.mean() - series_val) < 3 * se

    def test_partial_degeneracy_rejected(self):
        with pytest.raises(ValueError, match="degenerate"):
            u1_series([1, 1, 2], 4)
        with pytest.raises(ValueError, match="degenerate"):
            u1_series([0, 1], 4)

    def test_block_sign_irrelevant(self):
        # flipping one block value is an orthogonal change of basis
        assert u1_series([1, -1], 6) == u1_series([1, 1], 6)


class TestReplicaOnePoint:
    def test_published_series(self):
        assert u_replica_series(6) == [F(1), 0, F(1, 4), 0, F(1, 96), 0,
                                       F(1, 1152)]

    def test_formal_size_path_agrees(self):
        assert u_replica_series(12) == u_replica_series_formal(12)

    def test_moment_continuation_agrees(self):
        assert u_replica_series(10) == replica_one_point(10)

    def test_quadratic_coefficient_from_moment_formula(self):
        # (1/d)<tr X^2>/2 = -(d-1)/4 at gamma = 1/2 continues to +1/4
        poly = trace_moment([2], F(1, 2))
        vals = [dp_eval(poly, d) / (2 * d) for d in (2, 4, 6)]
        assert vals == [F(-1, 4) * (d - 1) for d in (2, 4, 6)]
        assert u_replica_series(2)[2] == F(1, 4)


class TestTheorem3:
    def test_n1_equals_replica_limit(self):
        t1 = theorem3_series(1, 10)
        ur = u_replica_series(10)
        assert all(t1[(m,)] == ur[m] for m in range(11))

    def test_n2_equals_four_times_contour(self):
        t2 = theorem3_series(2, 8)
        u2 = u2_contour_series(8)
        assert t2 == u2.scale(4).truncate(8)

    def test_symmetry_general_n(self):
        t3 = theorem3_series(3, 6)
        assert t3.is_symmetric()
        assert all(all(x % 2 == 0 for x in e) for e in t3.coeffs)

    def test_every_argument_present(self):
        # each sinh factor contributes at least one power of its argument,
        # so after the even projection every monomial carries every s_i
        # with exponent >= 2; setting any argument to zero kills the series
        t3 = theorem3_series(3, 8)
        assert t3.coeffs
        assert all(min(e) >= 2 for e in t3.coeffs)


class TestTwoPointContour:
    def test_matches_published_sh_form(self):
        assert u2_contour_series(8) == two_point_sh_form(8)

    def test_symmetric_and_even(self):
        u2 = u2_contour_series(8)
        assert u2.is_symmetric()
        assert u2 == u2.even_projection()

    def test_leading_coefficient(self):
        assert u2_contour_series(4)[(2, 2)] == F(1, 16)


class TestReplicaGroundTruthDiscrepancy:
    """The distinct-block connected two-point correlator, continued to zero
    size from its exact polynomial-in-dimension Wick moments, is NOT the
    series produced by the contour representation: already the s1^2 s2^2
    coefficient is -1/4 against +1/4, and the higher coefficients are not
    related by any constant.  The contour evaluation itself is internally
    consistent (it reproduces the three-term sinh closed form exactly), so
    the mismatch sits upstream, in how that integrand represents the
    correlator.  Both objects are exposed; these tests pin each one."""

    def test_truth_series_pinned(self):
        truth = replica_two_point(8)
        assert truth[(2, 2)] == F(-1, 4)
        assert truth[(4, 2)] == F(-1, 24)
        assert truth[(4, 4)] == F(-11, 1152)
        assert truth[(6, 2)] == F(-23, 5760)

    def test_contour_differs_from_truth(self):
        truth = replica_two_point(8)
        u2 = u2_contour_series(8)
        assert 4 * u2[(2, 2)] == F(1, 4) != truth[(2, 2)]
        # not even proportional
        r1 = truth[(2, 2)] / (4 * u2[(2, 2)])
        r2 = truth[(4, 2)] / (4 * u2[(4, 2)])
        assert r1 != r2

    def test_three_point_truth_sample(self):
        truth = replica_three_point(8)
        assert truth.is_symmetric()
        assert truth[(2, 2, 2)] == 1
        assert truth[(4, 2, 2)] == F(7, 24)

    def test_three_point_same_pattern_of_discrepancy(self):
        # the closed multi-point formula differs from the exact moment
        # continuation at n=3 as well, again by no overall constant
        t3 = theorem3_series(3, 8)
        truth = replica_three_point(8)
        assert t3[(2, 2, 2)] == F(1, 2)
        r1 = t3[(2, 2, 2)] / truth[(2, 2, 2)]
        r2 = t3[(4, 2, 2)] / truth[(4, 2, 2)]
        assert (r1, r2) == (F(1, 2), F(3, 14))


class TestCauchyIdentity:
    def test_n1(self):
        assert cauchy_identity_check([F(1, 2)], [F(1, 3)])

    def test_n2_exact(self):
        assert cauchy_identity_check([F(1, 2), 3], [F(2, 3), F(5, 4)])

    def test_n4_exact(self):
        assert cauchy_identity_check([1, 2, 3, F(9, 2)],
                                     [F(1, 3), F(5, 7), F(11, 6), F(13, 5)])

    def test_degenerate_rejected(self):
        with pytest.raises(ValueError):
            cauchy_identity_check([1, -1], [2, 3])
        with pytest.raises(ValueError):
            cauchy_identity_check([1, 2], [2, 3])
