import pytest

from gstrata.errors import (EmptyStratum, MaxAttemptsExceeded,
                            NotEnoughSubspaces)
from gstrata.grassmann import canonicalize
from gstrata.linalg import QQ, FieldSpec, Matrix
from gstrata.sampler import SampleSpec, sample_in_stratum, sample_uniform
from gstrata.strata import StratumDescriptor, stratum_of

F2 = FieldSpec.prime(2)
F5 = FieldSpec.prime(5)


class TestSampleUniform:
    def test_single_line_deterministic(self):
        a = sample_uniform(1, 1, 2, F2, seed=0)
        b = sample_uniform(1, 1, 2, F2, seed=0)
        assert a == b and a.h == 1 and a.subspaces[0].dim_k == 1

    def test_three_lines_of_f2_squared_forced(self):
        config = sample_uniform(3, 1, 2, F2, seed=4)
        # only 3 lines exist, so the sample must be all of them in some order
        assert len(set(config.subspaces)) == 3
        assert stratum_of(config) == 2

    def test_pigeonhole_all_seven_lines(self):
        config = sample_uniform(7, 1, 3, F2, seed=1)
        assert len(set(config.subspaces)) == 7

    def test_not_enough_subspaces(self):
        with pytest.raises(NotEnoughSubspaces):
            sample_uniform(4, 1, 2, F2, seed=0)

    def test_rational_sampling(self):
        config = sample_uniform(3, 2, 4, QQ, seed=11)
        assert config.h == 3 and config.field.is_rational

    def test_distinct_seeds_usually_differ(self):
        assert sample_uniform(2, 1, 3, F5, seed=0) != \
            sample_uniform(2, 1, 3, F5, seed=1)


class TestSampleInStratum:
    def test_two_lines_spanning_a_plane(self):
        spec = SampleSpec(StratumDescriptor(2, 1, 3, 2), F5, seed=0)
        config = sample_in_stratum(spec)
        assert stratum_of(config) == 2

    def test_three_lines_spanning_three_space(self):
        spec = SampleSpec(StratumDescriptor(3, 1, 4, 3), F5, seed=2)
        config = sample_in_stratum(spec)
        assert stratum_of(config) == 3

    def test_determinism(self):
        spec = SampleSpec(StratumDescriptor(3, 1, 4, 3), F5, seed=9)
        assert sample_in_stratum(spec) == sample_in_stratum(spec)

    def test_empty_stratum(self):
        with pytest.raises(EmptyStratum):
            sample_in_stratum(SampleSpec(StratumDescriptor(2, 1, 3, 1), F5))

    def test_rational_stratum(self):
        spec = SampleSpec(StratumDescriptor(3, 1, 3, 2), QQ, seed=5)
        config = sample_in_stratum(spec)
        assert stratum_of(config) == 2

    def test_max_attempts_validation(self):
        with pytest.raises(ValueError):
            SampleSpec(StratumDescriptor(2, 1, 3, 2), F5, max_attempts=0)

    def test_every_sample_lands_in_its_stratum(self):
        cases = [(2, 1, 3, 2), (3, 1, 3, 3), (2, 2, 4, 3), (2, 2, 4, 4),
                 (3, 2, 5, 4)]
        for seed, (h, k, n, i) in enumerate(cases):
            for field in (F5, QQ):
                spec = SampleSpec(StratumDescriptor(h, k, n, i), field,
                                  seed=seed)
                config = sample_in_stratum(spec)
                assert stratum_of(config) == i
                assert config.h == h and config.dim_k == k

    def test_direct_sum_when_i_equals_hk(self):
        # i = hk <= n: the members span a direct sum, dims add up on the nose
        for seed in range(6):
            spec = SampleSpec(StratumDescriptor(2, 2, 5, 4), F5, seed=seed)
            config = sample_in_stratum(spec)
            assert stratum_of(config) == sum(s.dim_k for s in config.subspaces)

    def test_fixed_span_outcomes_over_f2(self):
        # pairs of distinct lines spanning the plane {x3 = 0}: exactly 3*2
        # ordered outcomes, and a seed sweep reaches every one of them
        plane_lines = {canonicalize(Matrix.from_rows(rows, F2))
                       for rows in ([[1], [0], [0]], [[0], [1], [0]],
                                    [[1], [1], [0]])}
        seen = set()
        for seed in range(400):
            config = sample_in_stratum(
                SampleSpec(StratumDescriptor(2, 1, 3, 2), F2, seed=seed))
            assert stratum_of(config) == 2
            if set(config.subspaces) <= plane_lines:
                seen.add(config.subspaces)
        assert len(seen) == 6
