import random

import pytest

from gstrata.census import enumerate_grassmannian, grassmannian_count
from gstrata.errors import (MixedField, NoCommonComplement, NotInChart,
                            RankDeficient)
from gstrata.grassmann import (Chart, Configuration, Subspace, canonicalize,
                               chart_coordinates, chart_from_complement,
                               configuration_from_dict, configuration_to_dict,
                               find_common_complement, from_chart,
                               is_complement_of_all)
from gstrata.linalg import QQ, FieldSpec, Matrix, hstack, rank

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)
F5 = FieldSpec.prime(5)


def mat(rows, field=QQ):
    return Matrix.from_rows(rows, field)


class TestCanonicalize:
    def test_already_canonical(self):
        m = mat([[1, 0], [0, 1], [0, 0]])
        assert canonicalize(m).basis == m

    def test_scaling(self):
        assert canonicalize(mat([[2], [0], [0]])) == canonicalize(mat([[1], [0], [0]]))

    def test_same_span_same_subspace(self):
        a = canonicalize(mat([[1], [1], [0]]))
        b = canonicalize(mat([[2], [2], [0]]))
        assert a == b and hash(a) == hash(b)

    def test_rank_deficient(self):
        with pytest.raises(RankDeficient):
            canonicalize(mat([[1, 2], [2, 4], [0, 0]]))

    def test_non_canonical_constructor_rejected(self):
        with pytest.raises(ValueError):
            Subspace(mat([[2], [0], [0]]))


class TestConfiguration:
    def test_distinctness_enforced(self):
        s = canonicalize(mat([[1], [0]]))
        with pytest.raises(ValueError):
            Configuration.of([s, s])

    def test_mixed_fields_rejected(self):
        a = canonicalize(mat([[1], [0]]))
        b = canonicalize(Matrix.from_rows([[0], [1]], F5))
        with pytest.raises(MixedField):
            Configuration.of([a, b])

    def test_order_sensitive(self):
        a = canonicalize(mat([[1], [0]]))
        b = canonicalize(mat([[0], [1]]))
        assert Configuration.of([a, b]) != Configuration.of([b, a])

    def test_h_one_allowed(self):
        assert Configuration.of([canonicalize(mat([[1], [0]]))]).h == 1


def axes_config(field=QQ):
    e1 = canonicalize(Matrix.from_rows([[1], [0], [0]], field))
    e2 = canonicalize(Matrix.from_rows([[0], [1], [0]], field))
    return Configuration.of([e1, e2])


class TestCommonComplement:
    def test_single_subspace_in_q2(self):
        config = Configuration.of([canonicalize(mat([[1], [0]]))])
        chart = find_common_complement(config, seed=0)
        assert is_complement_of_all(chart.complement_v0, config)

    def test_two_axes_of_q2(self):
        e1 = canonicalize(mat([[1], [0]]))
        e2 = canonicalize(mat([[0], [1]]))
        config = Configuration.of([e1, e2])
        chart = find_common_complement(config, seed=3)
        v0 = chart.complement_v0
        for h in config.subspaces:
            assert rank(hstack([v0.basis, h.basis])) == 2

    def test_all_lines_of_f2_squared_have_no_complement(self):
        lines = list(enumerate_grassmannian(1, 2, 2))
        assert len(lines) == 3
        config = Configuration.of(lines)
        with pytest.raises(NoCommonComplement):
            find_common_complement(config, seed=0)

    def test_seed_determinism(self):
        config = axes_config()
        assert find_common_complement(config, 5) == find_common_complement(config, 5)


def standard_chart(n, k, field):
    """Chart whose complement is the span of the last n-k coordinate vectors."""
    rows = [[field.one if j == i - k else field.zero for j in range(n - k)]
            for i in range(n)]
    v0 = canonicalize(Matrix.from_rows(rows, field, cols=n - k))
    return chart_from_complement(v0)


class TestChartCoordinates:
    def test_reference_subspace_maps_to_zero(self):
        chart = standard_chart(4, 2, QQ)
        h = canonicalize(mat([[1, 0], [0, 1], [0, 0], [0, 0]]))
        a = chart_coordinates(h, chart)
        assert a.is_zero() and (a.rows, a.cols) == (2, 2)

    def test_slope_readoff(self):
        chart = standard_chart(2, 1, QQ)
        h = canonicalize(mat([[1], [3]]))
        assert chart_coordinates(h, chart).entries == ((3,),)

    def test_round_trip_random_f5(self):
        rng = random.Random(9)
        chart = standard_chart(4, 2, F5)
        for _ in range(25):
            a = Matrix.from_rows([[rng.randrange(5) for _ in range(2)]
                                  for _ in range(2)], F5)
            h = from_chart(a, chart)
            assert chart_coordinates(h, chart) == a
            assert from_chart(chart_coordinates(h, chart), chart) == h

    def test_not_in_chart(self):
        chart = standard_chart(2, 1, QQ)
        vertical = canonicalize(mat([[0], [1]]))   # equals V0 itself
        with pytest.raises(NotInChart):
            chart_coordinates(vertical, chart)

    def test_random_common_complement_round_trip(self):
        rng = random.Random(13)
        for seed in range(8):
            subs = []
            while len(subs) < 3:
                raw = Matrix.from_rows([[rng.randrange(5) for _ in range(2)]
                                        for _ in range(4)], F5)
                try:
                    s = canonicalize(raw)
                except RankDeficient:
                    continue
                if s not in subs:
                    subs.append(s)
            config = Configuration.of(subs)
            chart = find_common_complement(config, seed=seed)
            for h in config.subspaces:
                assert from_chart(chart_coordinates(h, chart), chart) == h


@pytest.mark.parametrize("q,n,k", [(2, 3, 1), (2, 4, 2), (3, 3, 1), (3, 4, 2)])
def test_chart_is_a_bijection_off_v0(q, n, k):
    field = FieldSpec.prime(q)
    chart = standard_chart(n, k, field)
    v0 = chart.complement_v0
    in_chart = []
    for h in enumerate_grassmannian(k, n, q):
        if rank(hstack([v0.basis, h.basis])) == n:
            in_chart.append(h)
        else:
            with pytest.raises(NotInChart):
                chart_coordinates(h, chart)
    # complement misses exactly |Gr| - q^{k(n-k)} subspaces
    assert len(in_chart) == q ** (k * (n - k))
    coords = {chart_coordinates(h, chart).entries for h in in_chart}
    assert len(coords) == len(in_chart)


def test_from_chart_injective_exhaustive_f2():
    chart = standard_chart(3, 1, F2)
    images = {}
    for a0 in range(2):
        for a1 in range(2):
            a = Matrix.from_rows([[a0], [a1]], F2)
            h = from_chart(a, chart)
            assert h not in images.values()
            images[(a0, a1)] = h
    assert len(images) == 4


class TestJsonFormat:
    def test_round_trip_prime(self):
        lines = list(enumerate_grassmannian(1, 3, 5))
        config = Configuration.of(lines[:3])
        doc = configuration_to_dict(config)
        assert doc["field"] == {"kind": "prime", "p": 5}
        assert doc["n"] == 3 and doc["k"] == 1
        assert configuration_from_dict(doc) == config

    def test_round_trip_rational_fractions(self):
        doc = {"field": {"kind": "rational"}, "n": 2, "k": 1,
               "subspaces": [["1", "3/7"], ["0", "1"]]}
        config = configuration_from_dict(doc)
        assert config.h == 2
        back = configuration_to_dict(config)
        assert back["subspaces"][0] == ["1", "3/7"]

    def test_non_canonical_input_is_canonicalized(self):
        doc = {"field": {"kind": "rational"}, "n": 2, "k": 1,
               "subspaces": [["2", "6"]]}
        config = configuration_from_dict(doc)
        assert configuration_to_dict(config)["subspaces"] == [["1", "3"]]

    def test_wrong_entry_count(self):
        doc = {"field": {"kind": "rational"}, "n": 2, "k": 1,
               "subspaces": [["1"]]}
        with pytest.raises(ValueError):
            configuration_from_dict(doc)

    def test_duplicate_subspaces_rejected(self):
        doc = {"field": {"kind": "rational"}, "n": 2, "k": 1,
               "subspaces": [["1", "2"], ["2", "4"]]}
        with pytest.raises(ValueError):
            configuration_from_dict(doc)
