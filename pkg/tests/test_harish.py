"""SO(2N) group integral: closed forms, Haar sampling, MC ratio tests."""

import math

import numpy as np
import pytest

from skewtop.harish import (haar_sample_batch, hc_determinant_form,
                            hc_identity_exact, hc_ratio, hc_weyl_sum,
                            random_agreement_input, verify_hc)


class TestClosedForms:
    def test_n1_exponential(self):
        y, lam = 0.7, 0.3
        assert hc_weyl_sum([y], [lam]) == pytest.approx(math.exp(2 * y * lam),
                                                        rel=1e-14)
        assert hc_determinant_form([y], [lam]) == pytest.approx(
            math.exp(2 * y * lam), rel=1e-14)

    def test_n2_explicit_two_determinants(self):
        y, lam = [1.0, 0.5], [0.3, 0.1]
        direct = (math.exp(2 * (y[0] * lam[0] + y[1] * lam[1]))
                  - math.exp(2 * (y[0] * lam[1] + y[1] * lam[0]))
                  + math.exp(-2 * (y[0] * lam[0] + y[1] * lam[1]))
                  - math.exp(-2 * (y[0] * lam[1] + y[1] * lam[0])))
        assert hc_weyl_sum(y, lam) == pytest.approx(direct, rel=1e-13)
        assert hc_determinant_form(y, lam) == pytest.approx(direct, rel=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_cross_form_agreement(self, n):
        rng = np.random.default_rng(300 + n)
        for _ in range(25):
            y, lam = random_agreement_input(rng, n)
            a = hc_weyl_sum(y, lam)
            b = hc_determinant_form(y, lam)
            assert abs(a - b) <= 1e-10 * max(abs(a), abs(b))

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_exact_algebraic_identity(self, n):
        assert hc_identity_exact(n, seed=n, trials=6)

    def test_degenerate_rejected(self):
        with pytest.raises(ValueError):
            hc_weyl_sum([1.0, 1.0], [0.3, 0.5])
        with pytest.raises(ValueError):
            hc_weyl_sum([1.0, -1.0], [0.3, 0.5])  # coinciding squares

    def test_guard(self):
        with pytest.raises(ValueError):
            hc_weyl_sum(list(range(1, 8)), list(range(1, 8)))


class TestRatioSymmetries:
    def test_ratio_permutation_invariance(self):
        y, lam = [1.1, 0.4, 0.8], [0.5, 1.2, 0.25]
        base = hc_ratio(y, lam)
        assert hc_ratio([y[2], y[0], y[1]], lam) == pytest.approx(base, rel=1e-10)
        assert hc_ratio(y, [lam[1], lam[2], lam[0]]) == pytest.approx(base,
                                                                      rel=1e-10)

    def test_even_sign_flip_invariance(self):
        y, lam = [1.1, 0.4, 0.8], [0.5, 1.2, 0.25]
        base = hc_weyl_sum(y, lam)
        assert hc_weyl_sum([-y[0], -y[1], y[2]], lam) == pytest.approx(
            base, rel=1e-12)
        assert hc_ratio([-y[0], y[1], -y[2]], lam) == pytest.approx(
            hc_ratio(y, lam), rel=1e-10)


class TestHaar:
    def test_orthogonality_and_det(self):
        g = haar_sample_batch(6, 500, seed=4)
        eye = np.einsum("nij,nkj->nik", g, g)
        assert np.max(np.abs(eye - np.eye(6))) < 1e-10
        assert np.allclose(np.linalg.det(g), 1.0, atol=1e-10)

    def test_first_entry_statistics(self):
        g = haar_sample_batch(4, 100_000, seed=8)
        x = g[:, 0, 0]
        se = x.std() / math.sqrt(len(x))
        assert abs(x.mean()) < 3 * se
        x2 = x ** 2
        se2 = x2.std() / math.sqrt(len(x2))
        assert abs(x2.mean() - 1 / 4) < 3 * se2  # 1/dim

    def test_determinism(self):
        assert np.array_equal(haar_sample_batch(4, 100, seed=9, workers=3),
                              haar_sample_batch(4, 100, seed=9, workers=3))


class TestVerifyHC:
    def test_so2_exact_after_calibration(self):
        rep = verify_hc(1, seed=3)
        assert rep.verdict == "pass"
        assert rep.spread < 1e-12
        assert "so(2)" in rep.pairing.lower() or "SO(2)" in rep.pairing

    def test_so4_ratio_constancy(self):
        rep = verify_hc(2, samples=150_000, seed=42)
        assert rep.verdict == "pass"
        assert rep.spread <= 0.02

    def test_guard(self):
        with pytest.raises(ValueError):
            verify_hc(4)
