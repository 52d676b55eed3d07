"""Oracle harness: the independent brute-force references."""

import math
from fractions import Fraction as F

import numpy as np
import pytest

from skewtop.duality import DualityInstance, lhs_exact
from skewtop.oracles import (direct_det_expect, gaussian_moment_1d,
                             mc_reference, median_of_means)
from skewtop.skew import GaussianEnsemble, sample_batch


class TestGaussianMoment1D:
    def test_values(self):
        assert gaussian_moment_1d(2, F(1, 2)) == F(1, 2)
        assert gaussian_moment_1d(4, F(1, 2)) == F(3, 4)
        assert gaussian_moment_1d(6, F(1)) == 15

    def test_odd_zero(self):
        assert gaussian_moment_1d(3, F(1, 2)) == 0


class TestDirectDetExpect:
    def test_dim2(self):
        for lam in (F(0), F(1), F(3, 2)):
            assert direct_det_expect(2, [], [lam]) == lam ** 2 + F(1, 2)

    def test_dim2_source(self):
        a, lam = F(1, 3), F(2)
        assert direct_det_expect(2, [a], [lam]) == lam ** 2 + a ** 2 + F(1, 2)

    def test_dim4_cross_check(self):
        # independent oracle must agree with the production exact path
        inst = DualityInstance([F(1), F(2)], [F(0)])
        assert direct_det_expect(4, [F(1), F(2)], [F(0)]) == lhs_exact(inst)
        inst = DualityInstance([F(1, 2), F(5, 3)], [F(2, 7)])
        assert direct_det_expect(4, [F(1, 2), F(5, 3)], [F(2, 7)]) == \
            lhs_exact(inst)

    def test_two_factors(self):
        inst = DualityInstance([F(1, 2)], [F(1), F(2)])
        assert direct_det_expect(2, [F(1, 2)], [F(1), F(2)]) == lhs_exact(inst)

    def test_size_guard(self):
        with pytest.raises(ValueError):
            direct_det_expect(6, [], [F(1)])


class TestMedianOfMeans:
    def test_clean_data(self):
        rng = np.random.default_rng(0)
        est, se, flag = median_of_means(rng.normal(3.0, 0.1, size=16000))
        assert abs(est - 3.0) < 0.01 and not flag

    def test_heavy_tail_flag(self):
        rng = np.random.default_rng(1)
        # center 0 with enormous spread: relative error blows past 1/2
        est, se, flag = median_of_means(rng.standard_cauchy(2000))
        assert flag


class TestMCReference:
    def sampler(self, ens):
        def draw(n, seed, workers):
            if isinstance(seed, tuple):
                seed = hash(seed) & 0x7FFFFFFF
            return sample_batch(ens, n, seed, workers)
        return draw

    def test_tr_x2_dim4(self):
        ens = GaussianEnsemble(4, gamma=F(1))
        res = mc_reference(lambda xs: np.einsum("nij,nji->n", xs, xs),
                           self.sampler(ens), 100_000, seed=5)
        assert abs(res.value - (-3.0)) < 3 * res.stderr

    def test_tr_x4_dim2(self):
        ens = GaussianEnsemble(2, gamma=F(1, 2))
        res = mc_reference(
            lambda xs: np.einsum("nij,njk,nkl,nli->n", xs, xs, xs, xs),
            self.sampler(ens), 100_000, seed=6)
        assert abs(res.value - 1.5) < 3 * res.stderr

    def test_evolution_point(self):
        # U(1) at dim 2 equals exp(-1/4)
        ens = GaussianEnsemble(2, gamma=F(1, 2))
        res = mc_reference(
            lambda xs: 0.5 * np.trace(_expm_skew2(xs), axis1=1, axis2=2),
            self.sampler(ens), 100_000, seed=7)
        assert abs(res.value - math.exp(-0.25)) < 3 * res.stderr


def _expm_skew2(xs):
    """exp(sX) for stacked 2x2 antisymmetric matrices at s = 1."""
    x = xs[:, 0, 1]
    c, s = np.cos(x), np.sin(x)
    out = np.empty_like(xs)
    out[:, 0, 0] = c
    out[:, 1, 1] = c
    out[:, 0, 1] = s
    out[:, 1, 0] = -s
    return out
