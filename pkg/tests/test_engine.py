"""Series engine: the quartic eigenvalue integral, its log in power sums,
and intersection-number extraction."""

from fractions import Fraction as F

import pytest

from skewtop.engine import (IntersectionTable, extract_intersections,
                            free_energy_power_sums, intersection_table,
                            log_series, exp_series, partition_power_sums,
                            partition_series, spin_label, t_prefactor_half,
                            t_prefactor_integer, tau_genus, to_power_sums)
from skewtop.series import MultiSeries

PUBLISHED_LOGZ = {(4,): F(1, 72), (2, 2): F(1, 12), (8,): F(5, 432),
                  (4, 4): F(1, 432), (4, 2, 2): F(1, 36),
                  (2, 2, 2, 2): F(-1, 108)}


class TestPartitionSeries:
    def test_k2_displayed_coefficients(self):
        z = partition_series(2, 8)
        # 1 + (1/72)(u1^4 + u2^4) + (1/12)(u1^2 + u2^2)^2 + higher
        assert z.constant_term() == 1
        assert z[(4, 0)] == F(1, 72) + F(1, 12)
        assert z[(0, 4)] == F(1, 72) + F(1, 12)
        assert z[(2, 2)] == F(1, 6)

    def test_k1_normalization(self):
        z = partition_series(1, 0)
        assert z.constant_term() == 1
        assert len(z.coeffs) == 1

    def test_universality_k_independence(self):
        z2 = partition_series(2, 8)
        z3 = partition_series(3, 8)
        z4 = partition_series(4, 8)
        for e, c in z2.coeffs.items():
            assert z3[e + (0,)] == c
        for e, c in z3.coeffs.items():
            assert z4[e + (0,)] == c
        assert z3[(4, 0, 0)] == F(1, 72) + F(1, 12)

    def test_even_in_each_variable(self):
        z = partition_series(3, 8)
        assert all(all(x % 2 == 0 for x in e) for e in z.coeffs)

    def test_symmetric(self):
        assert partition_series(3, 8).is_symmetric()

    def test_guards(self):
        with pytest.raises(ValueError):
            partition_series(2, 18)
        with pytest.raises(ValueError):
            partition_series(0, 4)


class TestLogExp:
    def test_scalar_log(self):
        one_plus = MultiSeries(1, 8, {(0,): F(1), (2,): F(1)})
        lg = log_series(one_plus)
        assert lg[(2,)] == 1 and lg[(4,)] == F(-1, 2) and lg[(6,)] == F(1, 3)

    def test_log_requires_unit_constant(self):
        with pytest.raises(ValueError):
            log_series(MultiSeries(1, 4, {(2,): F(1)}))

    def test_roundtrip(self):
        z = partition_series(3, 8)
        assert exp_series(log_series(z)) == z

    def test_logz_published_terms(self):
        ps = to_power_sums(log_series(partition_series(4, 8)), 4)
        assert ps == PUBLISHED_LOGZ

    def test_logz_k2_matches_published_expression(self):
        # at k=2 the power-sum rewriting is ambiguous, but the log series
        # itself must agree with the published six-term expression
        # evaluated in two variables
        f2 = log_series(partition_series(2, 8))
        expect = MultiSeries(2, 8)
        for part, c in PUBLISHED_LOGZ.items():
            term = MultiSeries.constant(c, 2, 8)
            for m in part:
                pm = MultiSeries(2, 8, {(m, 0): F(1), (0, m): F(1)})
                term = term * pm
            expect = expect + term
        assert f2 == expect


class TestToPowerSums:
    def test_direct_square(self):
        # (u1^2 + u2^2)^2 -> p_2^2
        s = MultiSeries(2, 4, {(4, 0): F(1), (0, 4): F(1), (2, 2): F(2)})
        assert to_power_sums(s, 2) == {(2, 2): F(1)}

    def test_pure_power_sum(self):
        s = MultiSeries(3, 4, {(4, 0, 0): F(1), (0, 4, 0): F(1),
                               (0, 0, 4): F(1)})
        assert to_power_sums(s, 3) == {(4,): F(1)}

    def test_insufficient_k(self):
        f = log_series(partition_series(3, 8))
        with pytest.raises(ValueError, match="too small"):
            to_power_sums(f, 3)

    def test_non_symmetric_rejected(self):
        s = MultiSeries(2, 4, {(2, 0): F(1)})
        with pytest.raises(ValueError, match="symmetric"):
            to_power_sums(s, 2)


class TestSpinDictionary:
    def test_labels(self):
        assert spin_label(2) == (0, 1)
        assert spin_label(4) == (1, 0)
        assert spin_label(8) == (2, 1)
        assert spin_label(6) == (1, 2)

    def test_genus_rule(self):
        assert tau_genus([(1, 0, 1)]) == 1
        assert tau_genus([(0, 1, 2)]) == F(1, 2)
        assert tau_genus([(2, 1, 1)]) == F(3, 2)
        assert tau_genus([(1, 0, 2)]) == 1
        assert tau_genus([(0, 1, 4)]) == 0

    def test_prefactors(self):
        assert t_prefactor_integer(1, 0) == F(1, 3)
        assert t_prefactor_integer(0, 1) is None      # irrational 3-power
        assert t_prefactor_integer(2, 1) is None
        assert t_prefactor_half(2, 1) == 10
        assert t_prefactor_half(0, 1) == 1


@pytest.fixture(scope="module")
def table() -> IntersectionTable:
    return intersection_table(4, 8)


class TestExtraction:

    def test_published_values(self, table):
        assert table.lookup([(1, 0, 1)]).value == F(1, 24)
        assert table.lookup([(0, 1, 2)]).value == F(1, 6)
        assert table.lookup([(2, 1, 1)]).value == F(1, 864)

    def test_conventions(self, table):
        assert table.lookup([(1, 0, 1)]).convention == "integer-genus"
        assert table.lookup([(0, 1, 2)]).convention == "half-integer"
        assert table.lookup([(2, 1, 1)]).convention == "half-integer"

    def test_tau10_squared(self, table):
        e = table.lookup([(1, 0, 2)])
        assert e.value == F(1, 24)
        assert e.genus == 1            # dimension-rule genus
        assert e.note and "genus 0" in e.note   # published label recorded

    def test_mixed_term_raw(self, table):
        e = table.lookup([(0, 1, 2), (1, 0, 1)])
        assert e.convention == "raw-coefficient"
        assert e.value == F(1, 36)
        assert e.candidates == {"all-half-integer": F(1, 18),
                                "per-variable": F(1, 6)}

    def test_pure_irrational_prefactor_raw(self, table):
        e = table.lookup([(0, 1, 4)])
        assert e.convention == "raw-coefficient"
        assert e.genus == 0
        assert e.candidates == {"all-half-integer": F(-2, 9)}

    def test_all_genera_half_integral(self, table):
        assert all((2 * e.genus).denominator == 1 for e in table.entries)

    def test_no_p6_power_sum_at_order8(self):
        ps = to_power_sums(log_series(partition_series(4, 8)), 4)
        assert all(6 not in part for part in ps)

    def test_json_shape(self, table):
        doc = table.to_dict()
        assert doc["p"] == 3
        entry = next(e for e in doc["entries"]
                     if e["taus"] == [{"n": 2, "j": 1, "d": 1}])
        assert entry == {"genus": "3/2", "taus": [{"n": 2, "j": 1, "d": 1}],
                         "value": "1/864", "convention": "half-integer"}

    def test_direct_extraction_example(self):
        tab = extract_intersections({(4,): F(1, 72)})
        assert tab.entries[0].value == F(1, 24)
        assert tab.entries[0].genus == 1


@pytest.fixture(scope="module")
def psums12():
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        z = partition_series(6, 12)
    return to_power_sums(log_series(z), 6)


class TestOrderTwelve:
    """The next expansion tranche (takes a few seconds, exact).

    Everything here is engine-derived: the degree-12 free-energy
    coefficients, the complete absence of the spin j = 2 sector
    (no p_6 or p_12 in any combination), and the vanishing of
    negative-genus candidates such as p_2^6.
    """

    def test_degree12_coefficients(self, psums12):
        deg12 = {p: c for p, c in psums12.items() if sum(p) == 12}
        assert deg12 == {(4, 2, 2, 2, 2): F(-1, 162),
                         (4, 4, 2, 2): F(1, 108),
                         (4, 4, 4): F(1, 1944),
                         (8, 2, 2): F(-5, 648),
                         (8, 4): F(5, 648),
                         (10, 2): F(7, 648)}

    def test_lower_orders_unchanged(self, psums12):
        assert {p: c for p, c in psums12.items() if sum(p) <= 8} == \
            PUBLISHED_LOGZ

    def test_spin2_sector_absent(self, psums12):
        assert all(6 not in p and 12 not in p for p in psums12)

    def test_negative_genus_terms_vanish(self, psums12):
        # p_2^6 would sit at genus -1/2; p_10 alone at genus 7/4
        assert (2,) * 6 not in psums12
        assert (10,) not in psums12

    def test_total_degree_grading(self, psums12):
        assert all(sum(p) % 4 == 0 for p in psums12)

    def test_extraction(self, psums12):
        tab = extract_intersections(psums12)
        e = tab.lookup([(1, 0, 3)])
        assert e.value == F(1, 12) and e.genus == 1 \
            and e.convention == "integer-genus"
        e = tab.lookup([(0, 1, 1), (3, 0, 1)])
        assert e.value == F(1, 2592) and e.genus == F(3, 2) \
            and e.convention == "half-integer"
        e = tab.lookup([(1, 0, 1), (2, 1, 1)])
        assert e.convention == "raw-coefficient"
        assert e.candidates == {"all-half-integer": F(1, 1296),
                                "per-variable": F(1, 432)}


class TestPartitionSpaceRoute:
    """The Schur/character route: identical to the monomial route where
    both run, and exact far beyond it."""

    def test_matches_monomial_route_order8(self):
        f8 = free_energy_power_sums(8)
        assert f8 == to_power_sums(log_series(partition_series(4, 8)), 4)

    def test_matches_monomial_route_order12(self, psums12):
        assert free_energy_power_sums(12) == psums12

    def test_partition_function_normalized(self):
        z = partition_power_sums(8)
        assert z[()] == 1
        assert z[(4,)] == F(1, 72)

    def test_order16_expansion_validates_against_monomials(self):
        # expand the power-sum form in four variables and compare with the
        # independent monomial-route computation, every monomial exact
        import warnings
        f16 = free_energy_power_sums(16)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            mono = log_series(partition_series(4, 16))
        expand = MultiSeries(4, 16)
        for part, c in f16.items():
            term = MultiSeries.constant(c, 4, 16)
            for m in part:
                pm = MultiSeries(4, 16,
                                 {tuple(m if i == j else 0 for j in range(4)):
                                  F(1) for i in range(4)})
                term = term * pm
            expand = expand + term
        assert expand == mono

    def test_order16_values(self):
        f16 = free_energy_power_sums(16)
        assert f16[(16,)] == F(455, 93312)
        assert f16[(8, 8)] == F(-85, 93312)
        assert f16[(14, 2)] == F(-55, 11664)
        assert f16[(4, 4, 4, 4)] == F(1, 7776)
        # spin-2 slots stay empty
        assert all(all(m % 6 for m in p) for p in f16)

    def test_order24_spin2_zero(self):
        f24 = free_energy_power_sums(24)
        assert (24,) not in f24
        assert all(all(m % 6 for m in p) for p in f24)
        assert all(sum(p) % 4 == 0 for p in f24)
