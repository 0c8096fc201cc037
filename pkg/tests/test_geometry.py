"""
Tests for polyhedral pairs and distance-to-A queries.
"""

import json
import math

import numpy as np
import pytest

from src.errors import DimensionMismatchError, OutsideDomainError, PairValidationError
from src.geometry import (
    contains,
    distance_to_A,
    load_pair,
    pair_from_dict,
    sample_points,
    signed_barcode_pair,
    validate_pair,
)


class TestValidatePair:

    def test_plane(self, plane):
        assert plane.dimension == 2
        assert plane.relation_indices == ((0, 1),)
        assert plane.essential_indices == ((0, 1),)

    @pytest.mark.parametrize(
        "dimension,relations,essential",
        [
            (2, [(2, 1)], [(2, 1)]),
            (2, [(1, 3)], [(1, 3)]),
            (2, [(1, 2)], []),
            (3, [(1, 2)], [(2, 3)]),
            (0, [], []),
        ],
    )
    def test_rejects_malformed(self, dimension, relations, essential):
        with pytest.raises(PairValidationError):
            validate_pair(dimension, relations, essential)

    def test_equal_pairs_compare_equal(self, plane):
        assert plane == validate_pair(2, [(1, 2)], [(1, 2)])
        assert plane == signed_barcode_pair(1)

    def test_barcode_relations(self, barcode2):
        assert barcode2.dimension == 4
        assert barcode2.relation_indices == ((0, 2), (1, 3))

    def test_barcode_needs_positive_count(self):
        with pytest.raises(PairValidationError):
            signed_barcode_pair(0)


class TestQueries:

    def test_contains(self, plane):
        assert contains(plane, [0.0, 1.0])
        assert contains(plane, [1.0, 1.0])
        assert not contains(plane, [1.0, 0.0])

    def test_in_A(self, plane):
        assert plane.in_A([1.0, 1.0])
        assert not plane.in_A([0.0, 1.0])

    def test_distance_plane(self, plane):
        assert distance_to_A(plane, [0.0, 2.0]) == pytest.approx(math.sqrt(2.0))

    def test_distance_mixup_uses_essential_only(self, mixup):
        # essential relation is x2 = x3; the gap x2 - x1 does not count
        assert distance_to_A(mixup, [0.0, 1.0, 3.0]) == pytest.approx(2.0 / math.sqrt(2.0))
        assert distance_to_A(mixup, [0.0, 2.0, 2.0]) == 0.0

    def test_distance_outside_raises(self, plane):
        with pytest.raises(OutsideDomainError):
            distance_to_A(plane, [2.0, 0.0])

    def test_dimension_mismatch(self, plane):
        with pytest.raises(DimensionMismatchError):
            contains(plane, [0.0, 1.0, 2.0])

    def test_non_finite(self, plane):
        with pytest.raises(OutsideDomainError):
            contains(plane, [0.0, float("inf")])

    def test_distances_rows(self, plane):
        d = plane.distances_to_A(np.array([[0.0, 2.0], [1.0, 1.0], [0.0, 1.0]]))
        assert d == pytest.approx([math.sqrt(2.0), 0.0, 1.0 / math.sqrt(2.0)])

    def test_project_to_A(self, plane):
        assert plane.project_to_A([0.0, 2.0]).tolist() == [1.0, 1.0]
        assert plane.in_A(plane.project_to_A([0.3, 5.1]))

    @pytest.mark.parametrize("pair_name", ["plane", "mixup"])
    def test_distance_matches_projection(self, request, rng, pair_name):
        pair = request.getfixturevalue(pair_name)
        anchors = np.array([pair.project_to_A(y) for y in sample_points(pair, rng, -4.0, 4.0, 2000)])
        assert pair.in_A_rows(anchors).all()
        for x in sample_points(pair, rng, -3.0, 3.0, 1000):
            d = pair.distance_to_A(x)
            y = pair.project_to_A(x)
            assert pair.contains(y) and pair.in_A(y)
            assert np.linalg.norm(x - y) == pytest.approx(d, abs=1e-12)
            assert np.linalg.norm(anchors - x, axis=1).min() >= d - 1e-12

    @pytest.mark.parametrize("pair_name", ["plane", "mixup"])
    def test_distance_is_1_lipschitz(self, request, rng, pair_name):
        pair = request.getfixturevalue(pair_name)
        xs = sample_points(pair, rng, -3.0, 3.0, 1000)
        ys = sample_points(pair, rng, -3.0, 3.0, 1000)
        for x, y in zip(xs, ys):
            assert abs(pair.distance_to_A(x) - pair.distance_to_A(y)) <= np.linalg.norm(x - y) + 1e-12


class TestPairDocuments:

    def test_round_trip(self, mixup):
        assert pair_from_dict(mixup.to_dict()) == mixup

    def test_missing_field(self):
        with pytest.raises(PairValidationError):
            pair_from_dict({"dimension": 2, "relations": [[1, 2]]})

    def test_load_pair(self, write_text, barcode2):
        path = write_text("pair.json", json.dumps(barcode2.to_dict()))
        assert load_pair(path) == barcode2

    def test_load_pair_bad_json(self, write_text):
        path = write_text("pair.json", "{not json")
        with pytest.raises(PairValidationError):
            load_pair(path)


class TestSampling:

    def test_points_in_X(self, mixup, rng):
        pts = sample_points(mixup, rng, -2.0, 2.0, 50)
        assert pts.shape == (50, 3)
        assert mixup.contains_rows(pts).all()
        assert (pts >= -2.0).all() and (pts <= 2.0).all()

    def test_min_distance(self, plane, rng):
        pts = sample_points(plane, rng, 0.0, 6.0, 30, min_distance_to_A=1.0)
        assert (plane.distances_to_A(pts) >= 1.0).all()

    def test_zero_count(self, plane, rng):
        assert sample_points(plane, rng, 0.0, 1.0, 0).shape == (0, 2)
