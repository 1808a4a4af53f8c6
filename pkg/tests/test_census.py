import random
from fractions import Fraction

import pytest

from gstrata.census import (_count_tuples_by_sum_dim, CountPolynomial,
                            enumerate_grassmannian, fit_count_polynomial,
                            grassmannian_count, next_prime, partition_check,
                            rank_locus_count, stratum_count)
from gstrata.errors import (BudgetExceeded, InsufficientPoints,
                            NonPolynomialFit, RankTooLarge)
from gstrata.grassmann import canonicalize
from gstrata.linalg import FieldSpec, Matrix, rank
from gstrata.strata import StratumDescriptor, dimension, is_nonempty

from oracles import all_matrices


def brute_force_subspace_count(k, n, q):
    """Distinct canonical forms over all full-rank n x k matrices."""
    seen = set()
    for m in all_matrices(n, k, q):
        if rank(m) == k:
            seen.add(canonicalize(m))
    return len(seen)


class TestGrassmannianCount:
    def test_lines_in_a_plane(self):
        assert grassmannian_count(1, 2, 2) == 3

    def test_fano_lines(self):
        assert grassmannian_count(1, 3, 2) == 7 == brute_force_subspace_count(1, 3, 2)

    def test_planes_in_four_space_over_f3(self):
        assert grassmannian_count(2, 4, 3) == 130 == brute_force_subspace_count(2, 4, 3)

    def test_duality_symmetry(self):
        for q in (2, 3):
            for n in range(1, 6):
                for k in range(n + 1):
                    assert grassmannian_count(k, n, q) == grassmannian_count(n - k, n, q)

    def test_lines_are_q_plus_one_geometric_series(self):
        for q in (2, 3, 5, 7):
            assert grassmannian_count(1, 3, q) == q * q + q + 1


class TestEnumeration:
    def test_three_lines(self):
        assert len(list(enumerate_grassmannian(1, 2, 2))) == 3

    def test_seven_lines_pairwise_distinct(self):
        subs = list(enumerate_grassmannian(1, 3, 2))
        assert len(subs) == 7 == len(set(subs))

    def test_planes_match_lines_by_duality(self):
        assert len(list(enumerate_grassmannian(2, 3, 2))) == \
            grassmannian_count(1, 3, 2)

    def test_count_matches_formula_on_grid(self):
        for q in (2, 3):
            for n in range(1, 5):
                for k in range(n + 1):
                    subs = list(enumerate_grassmannian(k, n, q))
                    assert len(subs) == grassmannian_count(k, n, q)
                    assert len(set(subs)) == len(subs)

    def test_larger_spot_checks(self):
        for k, n, q in ((2, 4, 5), (2, 5, 3)):
            subs = list(enumerate_grassmannian(k, n, q))
            assert len(subs) == grassmannian_count(k, n, q) == len(set(subs))

    def test_canonical_order_is_stable(self):
        a = [s.basis.entries for s in enumerate_grassmannian(2, 4, 2)]
        b = [s.basis.entries for s in enumerate_grassmannian(2, 4, 2)]
        assert a == b

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            list(enumerate_grassmannian(2, 4, 3, budget=10))


class TestStratumCount:
    def test_pairs_of_lines_span_planes(self):
        # every ordered pair of distinct lines in F_2^3 spans a plane: 7*6
        row = stratum_count(StratumDescriptor(2, 1, 3, 2), 2)
        assert row.count == 42

    def test_collinear_triples(self):
        # 7 planes, each containing 3 lines: 7 * 3! ordered triples
        assert stratum_count(StratumDescriptor(3, 1, 3, 2), 2).count == 42

    def test_spanning_triples_are_the_rest(self):
        assert stratum_count(StratumDescriptor(3, 1, 3, 3), 2).count == 168 == 7 * 6 * 5 - 42

    def test_collinear_closed_form_other_primes(self):
        for q in (2, 3, 5):
            expected = (q * q + q + 1) * (q + 1) * q * (q - 1)
            assert stratum_count(StratumDescriptor(3, 1, 3, 2), q).count == expected

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            stratum_count(StratumDescriptor(3, 1, 3, 2), 5, budget=100)

    def test_pruned_equals_unpruned(self):
        for k, n, q, h in ((1, 3, 3, 3), (2, 4, 2, 2), (1, 4, 2, 3)):
            full = _count_tuples_by_sum_dim(k, n, q, h, None, 10**8)
            for i in range(n + 1):
                pruned = _count_tuples_by_sum_dim(k, n, q, h, i, 10**8)
                assert pruned[i] == full[i]


class TestRankLocus:
    def test_rank_zero_is_only_the_zero_matrix(self):
        assert rank_locus_count(0, 3, 3, 5) == 1

    def test_two_by_two_over_f2(self):
        assert rank_locus_count(1, 2, 2, 2) == 9     # 16 total - 1 zero - 6 invertible
        assert rank_locus_count(2, 2, 2, 2) == 6     # |GL_2(F_2)|

    def test_matches_brute_force(self):
        for q in (2, 3):
            for m in (1, 2, 3):
                for mp in (1, 2, 3):
                    tallies = [0] * (min(m, mp) + 1)
                    for mat in all_matrices(m, mp, q):
                        tallies[rank(mat)] += 1
                    for r, t in enumerate(tallies):
                        assert rank_locus_count(r, m, mp, q) == t

    def test_total_is_all_matrices(self):
        for q in (2, 3, 5):
            for m in (1, 2, 3):
                for mp in (1, 2, 3):
                    total = sum(rank_locus_count(r, m, mp, q)
                                for r in range(min(m, mp) + 1))
                    assert total == q ** (m * mp)

    def test_rank_too_large(self):
        with pytest.raises(RankTooLarge):
            rank_locus_count(3, 2, 4, 2)


class TestPartition:
    def test_two_lines(self):
        rep = partition_check(2, 1, 3, 2)
        assert rep.total == 42 == rep.expected and rep.passed
        nonzero = [r for r in rep.rows if r.count]
        assert [(r.i, r.count) for r in nonzero] == [(2, 42)]

    def test_three_lines(self):
        rep = partition_check(3, 1, 3, 2)
        assert rep.total == 210 == 7 * 6 * 5 and rep.passed
        assert [(r.i, r.count) for r in rep.rows if r.count] == [(2, 42), (3, 168)]

    def test_two_planes_span_everything(self):
        rep = partition_check(2, 2, 3, 2)
        assert rep.passed
        assert [(r.i, r.count) for r in rep.rows if r.count] == [(3, 42)]

    def test_nonzero_counts_hit_nonempty_strata_only(self):
        for (h, k, n, q) in ((2, 1, 3, 2), (3, 1, 3, 2), (2, 2, 4, 2),
                             (3, 1, 2, 3), (2, 1, 4, 2)):
            rep = partition_check(h, k, n, q)
            assert rep.passed
            for r in rep.rows:
                if r.count:
                    assert is_nonempty(StratumDescriptor(h, k, n, r.i))


class TestFit:
    def test_projective_line_pairs(self):
        poly = fit_count_polynomial(StratumDescriptor(2, 1, 2, 2), [2, 3, 5])
        assert poly.degree == 2 == dimension(StratumDescriptor(2, 1, 2, 2))
        assert poly.coefficients == (Fraction(0), Fraction(1), Fraction(1))

    def test_grassmannian_itself(self):
        poly = fit_count_polynomial(StratumDescriptor(1, 1, 2, 1), [2, 3])
        assert poly.degree == 1
        assert poly.evaluate(11) == 12

    def test_default_prime_list(self):
        poly = fit_count_polynomial(StratumDescriptor(2, 1, 2, 2))
        assert poly.degree == 2

    def test_insufficient_points(self):
        with pytest.raises(InsufficientPoints):
            fit_count_polynomial(StratumDescriptor(2, 1, 2, 2), [2, 3])

    def test_non_polynomial_fit_detected(self, monkeypatch):
        import gstrata.census as census

        real = census.stratum_count

        def corrupted(desc, q, budget=census.DEFAULT_BUDGET):
            row = real(desc, q, budget)
            if q == 7:   # the held-out prime for samples [2, 3, 5]
                return census.CensusRow(row.h, row.k, row.n, row.i, row.q,
                                        row.count + 1)
            return row

        monkeypatch.setattr(census, "stratum_count", corrupted)
        with pytest.raises(NonPolynomialFit):
            census.fit_count_polynomial(StratumDescriptor(2, 1, 2, 2), [2, 3, 5])

    def test_count_polynomial_evaluate(self):
        poly = CountPolynomial((Fraction(1), Fraction(0), Fraction(2)))
        assert poly.evaluate(3) == 19
        assert poly.degree == 2
        assert poly.coefficient_strings() == ["1", "0", "2"]


def test_next_prime():
    assert next_prime(13) == 17
    assert next_prime(17) == 19
    assert next_prime(1) == 2
