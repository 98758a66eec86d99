import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubedist import cube
from cubedist.cube import (
    HammingPoint,
    PointSet,
    affinely_independent,
    derive,
    distance,
    format_point_set,
    linear_independent,
    normalize,
    parse_point_set,
)
from cubedist.errors import DegenerateMetricError, DimensionError, ParseError
from oracle import distance_matrix_from_coords, gram_of_differences


def ps(*coords):
    return PointSet.from_coords(coords)


def random_point_set(rng, n, size):
    bits = rng.sample(range(1 << n), size)
    return PointSet.from_bits(n, bits)


class TestHammingPoint:
    def test_string_round_trip(self):
        p = HammingPoint.from_string("1011")
        assert p.to_string() == "1011"
        assert p.coords() == (1, 0, 1, 1)
        assert p.weight() == 3

    def test_dimension_floor_and_cap(self):
        with pytest.raises(DimensionError):
            HammingPoint(1, 0)
        with pytest.raises(DimensionError):
            HammingPoint(65, 0)
        HammingPoint(64, (1 << 64) - 1)  # max size accepted

    def test_bits_must_fit(self):
        with pytest.raises(DimensionError):
            HammingPoint(2, 4)

    def test_bad_coords(self):
        with pytest.raises(ValueError):
            HammingPoint.from_coords((0, 2, 1))


class TestDistance:
    def test_examples(self):
        assert distance(HammingPoint.from_coords((1, 0, 1)), HammingPoint.from_coords((1, 1, 0))) == 2
        p = HammingPoint.from_coords((1, 1, 1))
        assert distance(p, p) == 0
        assert distance(p, HammingPoint.from_coords((0, 0, 0))) == 3

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            distance(HammingPoint(2, 1), HammingPoint(3, 1))

    @settings(max_examples=100, deadline=None, derandomize=True)
    @given(st.integers(0, 63), st.integers(0, 63))
    def test_symmetric_and_zero_iff_equal(self, a, b):
        x, y = HammingPoint(6, a), HammingPoint(6, b)
        assert distance(x, y) == distance(y, x)
        assert (distance(x, y) == 0) == (a == b)


class TestPointSet:
    def test_rejects_duplicates(self):
        with pytest.raises(DegenerateMetricError):
            ps((1, 0), (0, 1), (1, 0))

    def test_rejects_single_point(self):
        with pytest.raises(ValueError):
            PointSet.from_bits(2, [0])

    def test_rejects_mixed_dimensions(self):
        with pytest.raises(DimensionError):
            PointSet(2, (HammingPoint(2, 1), HammingPoint(3, 1)))

    def test_m_and_normalized_flags(self):
        s = ps((0, 0), (1, 1))
        assert s.m == 1 and s.normalized
        assert not ps((1, 0), (0, 1)).normalized


class TestNormalize:
    def test_simple_xor(self):
        s = normalize(ps((1, 1, 0), (1, 0, 1)))
        assert s.to_strings() == ["000", "011"]

    def test_already_normalized_unchanged(self):
        s = ps((0, 0, 0), (0, 1, 1))
        assert normalize(s) is s

    def test_distances_preserved(self):
        s = ps((1, 0, 0), (0, 1, 0), (1, 1, 1))
        sn = normalize(s)
        assert sn.to_strings() == ["000", "110", "011"]
        before = distance_matrix_from_coords([p.coords() for p in s.points])
        after = distance_matrix_from_coords([p.coords() for p in sn.points])
        assert before == after

    @settings(max_examples=100, deadline=None, derandomize=True)
    @given(st.sets(st.integers(0, 31), min_size=2, max_size=8))
    def test_normalize_is_isometry(self, bits):
        s = PointSet.from_bits(5, sorted(bits))
        sn = normalize(s)
        assert sn.normalized
        assert cube.distance_rows(s.bits()) == cube.distance_rows(sn.bits())


class TestDerive:
    def test_first_example(self):
        d = derive(ps((0, 0, 0), (1, 1, 1), (1, 1, 0)))
        assert d.G.to_strings() == [["3", "2"], ["2", "2"]]
        assert list(d.u) == [3, 2]
        assert d.D.to_strings() == [["0", "3", "2"], ["3", "0", "1"], ["2", "1", "0"]]

    def test_second_example(self):
        d = derive(ps((0, 0, 0), (1, 0, 1), (1, 1, 0)))
        assert d.G.to_strings() == [["2", "1"], ["1", "2"]]
        assert list(d.u) == [2, 2]
        assert d.D.to_strings() == [["0", "2", "2"], ["2", "0", "2"], ["2", "2", "0"]]

    def test_minimal_pair(self):
        d = derive(ps((0, 0), (1, 0)))
        assert d.G.to_strings() == [["1"]]
        assert list(d.u) == [1]
        assert d.D.to_strings() == [["0", "1"], ["1", "0"]]

    def test_matches_bruteforce_distances(self):
        rng = random.Random(23)
        for _ in range(50):
            n = rng.randint(2, 6)
            s = random_point_set(rng, n, rng.randint(2, min(8, 1 << n)))
            d = derive(s)
            coords = [p.coords() for p in s.points]
            assert [[int(e) for e in row] for row in d.D.entries] == distance_matrix_from_coords(coords)

    def test_polarization_identity(self):
        rng = random.Random(29)
        for _ in range(50):
            n = rng.randint(2, 6)
            s = random_point_set(rng, n, rng.randint(2, min(9, 1 << n)))
            d = derive(s)
            m = s.m
            for i in range(m):
                for j in range(m):
                    assert d.D.entry(i + 1, j + 1) == d.u[i] + d.u[j] - 2 * d.G.entry(i, j)

    def test_gram_matches_real_differences(self):
        rng = random.Random(31)
        for _ in range(50):
            n = rng.randint(2, 6)
            s = random_point_set(rng, n, rng.randint(2, min(8, 1 << n)))
            d = derive(s)
            coords = [p.coords() for p in s.points]
            assert [[int(e) for e in row] for row in d.G.entries] == gram_of_differences(coords)


class TestIndependence:
    def test_examples(self):
        assert linear_independent(ps((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)))
        full_h2 = ps((0, 0), (1, 0), (0, 1), (1, 1))
        assert not linear_independent(full_h2)
        assert not affinely_independent(full_h2)

    def test_more_points_than_dimension(self):
        s = PointSet.from_bits(2, [0, 1, 2, 3])
        assert not linear_independent(s)

    def test_requires_normalized(self):
        with pytest.raises(ValueError):
            linear_independent(ps((1, 0), (0, 1)))

    def test_affine_examples(self):
        assert affinely_independent(ps((1, 0, 0), (0, 1, 0), (1, 1, 1), (0, 0, 0)))
        assert affinely_independent(ps((1, 1, 0), (0, 1, 1)))

    def test_gf2_dependent_rationally_independent(self):
        # (1,1,0), (0,1,1), (1,0,1) sum to zero mod 2 yet have rank 3 over Q
        s = ps((0, 0, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1))
        assert linear_independent(s)

    @settings(max_examples=60, deadline=None, derandomize=True)
    @given(st.sets(st.integers(0, 15), min_size=2, max_size=6), st.integers(0, 15), st.randoms())
    def test_affine_invariance(self, bits, shift, pyrand):
        base = sorted(bits)
        s = PointSet.from_bits(4, base)
        value = affinely_independent(s)
        shifted = PointSet.from_bits(4, [b ^ shift for b in base])
        assert affinely_independent(shifted) == value
        shuffled = list(base)
        pyrand.shuffle(shuffled)
        assert affinely_independent(PointSet.from_bits(4, shuffled)) == value


class TestParsing:
    def test_round_trip(self):
        s = ps((1, 0, 1), (0, 1, 1), (0, 0, 0))
        assert parse_point_set(format_point_set(s)) == s

    def test_header_errors(self):
        with pytest.raises(ParseError):
            parse_point_set("")
        with pytest.raises(ParseError):
            parse_point_set("3\n101\n")
        with pytest.raises(ParseError):
            parse_point_set("x 2\n101\n011\n")
        with pytest.raises(ParseError):
            parse_point_set("1 2\n1\n0\n")

    def test_wrong_length_line_number(self):
        with pytest.raises(ParseError) as err:
            parse_point_set("3 2\n101\n01\n")
        assert "line 3" in str(err.value)

    def test_bad_character(self):
        with pytest.raises(ParseError):
            parse_point_set("3 2\n102\n011\n")

    def test_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_point_set("3 3\n101\n011\n")

    def test_duplicate_is_degenerate(self):
        with pytest.raises(DegenerateMetricError):
            parse_point_set("3 2\n101\n101\n")

    def test_too_few_points_rejected(self):
        with pytest.raises(ParseError):
            parse_point_set("3 1\n101\n")
