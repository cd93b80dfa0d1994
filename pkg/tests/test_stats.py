import math
from fractions import Fraction

import pytest

from hooklab import (
    BinaryFamily,
    Census,
    CensusEntry,
    DepthBranching,
    FamilyConfigError,
    OrderedFamily,
    TbarFamily,
    category_masses,
    census_csv,
    chi2_sf,
    chi_squared_gof,
    min_samples,
    regularized_gamma_q,
    run_census,
)
from hooklab.stats import LowExpectedCountWarning, chi_squared_statistic

BINARY = BinaryFamily()


class TestCategoryMasses:
    def test_binary_small(self):
        masses = category_masses(BINARY, 2)
        assert masses == {
            "(:1(:2.,.),.)": Fraction(1, 2),
            "(:1.,(:2.,.))": Fraction(1, 2),
        }

    def test_binary_n5_has_120_categories(self):
        masses = category_masses(BINARY, 5)
        assert len(masses) == 120
        assert sum(masses.values()) == 1

    def test_symbolic_m_is_rejected(self):
        with pytest.raises(FamilyConfigError):
            category_masses(OrderedFamily(), 3)

    def test_category_limit(self):
        with pytest.raises(Exception, match="census"):
            category_masses(BINARY, 4, limit=10)


class TestMinSamples:
    def test_binary_n5(self):
        # rarest shape is the path: probability 2^-10
        assert min_samples(BINARY, 5) == 5 * 1024

    def test_ordered_n4_m10(self):
        # rarest labeled tree has probability 1/1000
        assert min_samples(OrderedFamily(10), 4) == 5000


class TestRunCensus:
    def test_single_category(self):
        census = run_census(BINARY, 1, 50, seed=0)
        assert len(census.entries) == 1
        assert census.entries[0].observed == 50
        assert census.entries[0].expected == 50

    def test_two_fair_categories(self):
        census = run_census(BINARY, 2, 10_000, seed=3)
        assert len(census.entries) == 2
        assert all(e.expected == 5000 for e in census.entries)
        assert sum(e.observed for e in census.entries) == 10_000

    def test_expected_sums_to_n_exactly(self):
        census = run_census(BINARY, 4, 777, seed=9)
        assert sum(e.expected for e in census.entries) == 777

    def test_bit_reproducible(self):
        a = run_census(BINARY, 4, 5_000, seed=11)
        b = run_census(BINARY, 4, 5_000, seed=11)
        assert a == b

    def test_thread_count_does_not_change_the_tally(self, monkeypatch):
        monkeypatch.setenv("HOOKLAB_THREADS", "1")
        a = run_census(BINARY, 3, 25_000, seed=5)
        monkeypatch.setenv("HOOKLAB_THREADS", "4")
        b = run_census(BINARY, 3, 25_000, seed=5)
        assert a == b

    def test_categories_are_sorted(self):
        census = run_census(BINARY, 4, 1_000, seed=2)
        cats = [e.category for e in census.entries]
        assert cats == sorted(cats)


class TestChiSquared:
    def test_perfect_fit(self):
        census = Census(
            "binary",
            2,
            100,
            0,
            (
                CensusEntry("a", 50, Fraction(50)),
                CensusEntry("b", 50, Fraction(50)),
            ),
        )
        report = chi_squared_gof(census)
        assert report.statistic == 0.0
        assert report.p_value == 1.0
        assert report.passed

    def test_hand_computed_statistic(self):
        census = Census(
            "binary",
            2,
            100,
            0,
            (
                CensusEntry("a", 60, Fraction(50)),
                CensusEntry("b", 40, Fraction(50)),
            ),
        )
        assert chi_squared_statistic(census) == pytest.approx(4.0)
        report = chi_squared_gof(census)
        assert report.dof == 1

    def test_zero_expected_rejected(self):
        census = Census(
            "binary",
            2,
            10,
            0,
            (
                CensusEntry("a", 10, Fraction(10)),
                CensusEntry("b", 0, Fraction(0)),
            ),
        )
        with pytest.raises(ValueError):
            chi_squared_statistic(census)

    def test_low_expected_warns(self):
        census = Census(
            "binary",
            2,
            6,
            0,
            (
                CensusEntry("a", 3, Fraction(3)),
                CensusEntry("b", 3, Fraction(3)),
            ),
        )
        with pytest.warns(LowExpectedCountWarning):
            chi_squared_gof(census)

    def test_report_json_keys(self):
        census = run_census(BINARY, 2, 1_000, seed=1)
        report = chi_squared_gof(census)
        doc = report.to_json_dict()
        for key in ("family", "n", "N", "categories", "statistic", "dof", "p_value", "pass"):
            assert key in doc


class TestIncompleteGamma:
    def test_erfc_relation(self):
        for x in (0.1, 1.0, 4.0, 10.0):
            q = regularized_gamma_q(0.5, x / 2)
            assert abs(q - math.erfc(math.sqrt(x / 2))) < 1e-8

    def test_classic_quantile(self):
        assert chi2_sf(3.841, 1) == pytest.approx(0.05, abs=1e-3)

    def test_boundaries(self):
        assert regularized_gamma_q(2.0, 0.0) == 1.0
        assert chi2_sf(-1.0, 3) == 1.0
        assert 0.0 <= chi2_sf(1000.0, 3) < 1e-100

    def test_monotone_in_x(self):
        values = [regularized_gamma_q(2.5, x) for x in (0.1, 0.5, 1.0, 2.0, 5.0, 20.0)]
        assert values == sorted(values, reverse=True)

    def test_exponential_special_case(self):
        # Q(1, x) = exp(-x)
        for x in (0.2, 1.0, 3.0, 8.0):
            assert regularized_gamma_q(1.0, x) == pytest.approx(math.exp(-x), rel=1e-12)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            regularized_gamma_q(0.0, 1.0)
        with pytest.raises(ValueError):
            regularized_gamma_q(1.0, -1.0)
        with pytest.raises(ValueError):
            chi2_sf(1.0, 0)


class TestCsv:
    def test_format(self):
        census = run_census(BINARY, 2, 9, seed=4)
        text = census_csv(census)
        lines = text.strip().split("\n")
        assert lines[0] == "category,observed,expected"
        assert len(lines) == 3
        assert lines[1].startswith('"(:1(:2.,.),.)"')
        assert lines[1].endswith("9/2")


class TestSamplerDistribution:
    def test_tbar_census_masses(self):
        fam = TbarFamily(DepthBranching((2, 3)))
        masses = category_masses(fam, 3)
        assert sum(masses.values()) == 1
        census = run_census(fam, 3, 2_000, seed=8)
        assert {e.category for e in census.entries} == set(masses)
