"""
Tests for schedules, basis configuration, kernels, coefficients and witnesses.
"""

import math

import numpy as np
import pytest

from src.basis import (
    BasisConfig,
    BasisKind,
    GeometricSchedule,
    SplitSchedule,
    distance_functional,
    eval_kernel,
    eval_stacked,
    hat_functional,
    incident_simplex_peak_oracle,
    kernel_peak,
    lipschitz_budget,
    minimality_witness,
    parse_schedule,
    partition_tail,
    reconstruction_bound,
    schauder_coefficients,
    stacked_coefficients,
    stacked_peak,
    stacked_lipschitz,
    stacked_error_bound,
    stacked_scale,
    sum_functional,
    support_counts,
    unit_peak,
)
from src.basis.coefficients import LipschitzFunctional
from src.diagrams import SignedDiagram
from src.errors import BasisConfigError, FunctionalError, LayerError, VertexError
from src.featurize import vectorize
from src.geometry import sample_points
from src.triangulation import (
    LatticeVertex,
    barycentric,
    enumerate_box,
    enumerate_vertices,
    locate_simplex,
    mesh_diameter,
)


class TestSchedules:

    def test_geometric(self):
        s = GeometricSchedule(1.0, 0.5)
        assert s.total == 2.0
        assert s.value(3) == 0.125
        assert s.tail(0) == pytest.approx(1.0)
        assert s.partial(2) == pytest.approx(1.75)
        assert s.is_unit_geometric(2)
        assert not s.is_unit_geometric(3)

    def test_split(self):
        s = SplitSchedule(1.999, 1e-3, 0.5)
        assert s.value(0) == 1.999
        assert s.value(1) == pytest.approx(5e-4)
        assert s.total == pytest.approx(2.0)

    def test_parse(self):
        assert parse_schedule("geometric:1,1/2") == GeometricSchedule(1.0, 0.5)
        assert parse_schedule("split:1.999,0.001,0.5") == SplitSchedule(1.999, 0.001, 0.5)
        assert parse_schedule(None, 3) == GeometricSchedule(1.0, 1.0 / 3.0)

    @pytest.mark.parametrize("text", ["geometric:1", "geometric:1,2", "split:1", "cubic:1,2", "geometric:a,b"])
    def test_parse_rejects(self, text):
        with pytest.raises(BasisConfigError):
            parse_schedule(text)

    def test_spec_string_round_trip(self):
        s = SplitSchedule(0.75, 0.25, 0.5)
        assert parse_schedule(s.spec_string()) == s


class TestBasisConfig:

    def test_constants(self, plain_config):
        assert plain_config.total_lipschitz == 2.0
        assert plain_config.llf_constant == pytest.approx(6.0)
        assert plain_config.cfk_constant == pytest.approx(4.0)
        assert plain_config.tail_coefficient == pytest.approx(2.0 * 2.0 ** -3)

    def test_kind_from_string(self, plane):
        assert BasisConfig.build(plane, kind="Stacked").kind is BasisKind.STACKED

    def test_rejects_unknown_kind(self, plane):
        with pytest.raises(BasisConfigError):
            BasisConfig.build(plane, kind="fancy")

    def test_stacked_needs_unit_schedule(self, plane):
        with pytest.raises(BasisConfigError):
            BasisConfig.build(plane, 2, "geometric:2,0.5", kind="stacked")

    def test_rejects_negative_layers(self, plane):
        with pytest.raises(BasisConfigError):
            BasisConfig.build(plane, max_layer=-1)

    def test_with_layers(self, plain_config):
        wider = plain_config.with_layers(1, 2)
        assert (wider.max_layer, wider.rafter_radius) == (1, 2)
        assert wider.schedule == plain_config.schedule

    def test_smallest_basis_size(self, plane):
        assert BasisConfig.build(plane, 2, None, 0, 1).size == 3


class TestKernels:

    @pytest.mark.parametrize("n", range(7))
    def test_peak_closed_form(self, plane, n):
        config = BasisConfig.build(plane, 2, None, 6, 1)
        assert abs(kernel_peak(config, n) - 1.0 / (math.sqrt(2.0) * 4 ** n)) <= 1e-15

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_incident_simplex_oracle(self, d):
        assert incident_simplex_peak_oracle(d) == pytest.approx(1.0 / math.sqrt(2.0))

    def test_unit_peak(self, stacked_config):
        assert unit_peak(stacked_config, 2) == pytest.approx(1.0 / (16.0 * math.sqrt(2.0)))

    def test_eval_kernel_at_vertex(self, plain_config):
        v = LatticeVertex(1, (1, 4))
        assert eval_kernel(plain_config, v, 1, v.point(2)) == pytest.approx(kernel_peak(plain_config, 1))
        assert eval_kernel(plain_config, v, 1, [1.0, 2.5]) == 0.0

    def test_eval_kernel_coarse_layer(self, plain_config):
        with pytest.raises(LayerError):
            eval_kernel(plain_config, LatticeVertex(2, (1, 4)), 1, [0.25, 1.0])

    def test_rejects_non_canonical_vertex(self, plain_config, stacked_config):
        with pytest.raises(VertexError):
            eval_kernel(plain_config, LatticeVertex(1, (2, 4)), 1, [1.0, 2.0])
        with pytest.raises(VertexError):
            eval_stacked(stacked_config, LatticeVertex(1, (2, 4)), [1.0, 2.0])

    def test_rejects_vertex_in_A(self, plain_config):
        with pytest.raises(VertexError):
            eval_kernel(plain_config, LatticeVertex(0, (1, 1)), 0, [1.0, 2.0])

    @pytest.mark.parametrize("n", [1, 2])
    def test_lipschitz(self, plain_config, rng, n):
        v = LatticeVertex(1, (1, 5))
        center = v.point(2)
        bound = plain_config.schedule.value(n)
        checked = 0
        for _ in range(1000):
            x = center + rng.uniform(-0.75, 0.75, size=2)
            y = x + rng.uniform(-0.3, 0.3, size=2)
            if not (plain_config.pair.contains(x) and plain_config.pair.contains(y)):
                continue
            gap = abs(eval_kernel(plain_config, v, n, x) - eval_kernel(plain_config, v, n, y))
            assert gap <= bound * np.linalg.norm(x - y) + 1e-12
            checked += 1
        assert checked > 500

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_n_linear(self, plain_config, rng, m):
        # layer-0 kernels are affine on every simplex of the finer T^m
        v = LatticeVertex(0, (0, 2))
        tri = plain_config.triangulation
        for x in sample_points(plain_config.pair, rng, -1.5, 3.5, 300):
            ref = locate_simplex(tri, m, x)
            lam = barycentric(tri, ref, x)
            corners = [eval_kernel(plain_config, v, 0, p) for p in ref.points(2)]
            assert eval_kernel(plain_config, v, 0, x) == pytest.approx(float(np.dot(lam, corners)), abs=1e-12)

    def test_negative_layer(self, plain_config):
        with pytest.raises(LayerError):
            kernel_peak(plain_config, -1)

    def test_stacked_scale_and_peak(self, stacked_config):
        v = LatticeVertex(0, (0, 1))
        assert stacked_scale(stacked_config, v) == pytest.approx(0.75)
        expected = (1.0 / math.sqrt(2.0)) * (1.0 - 4.0 ** -5)
        assert stacked_peak(stacked_config, v) == pytest.approx(expected)
        assert eval_stacked(stacked_config, v, v.point(2)) == pytest.approx(expected)
        assert stacked_lipschitz(stacked_config, v) == pytest.approx(0.75 * 1.9375)

    def test_partition_identity_at_a_point(self, stacked_config):
        x = np.array([0.3, 1.9])
        total = 0.0
        for n in range(stacked_config.max_layer + 1):
            for v in enumerate_box(stacked_config.triangulation, n, x - 1.5, x + 1.5):
                total += eval_stacked(stacked_config, v, x)
        d = stacked_config.pair.distance_to_A(x)
        assert total == pytest.approx(d - partition_tail(stacked_config, x), abs=1e-12)


class TestBudget:

    def test_counts_and_budget(self, plain_config, rng):
        d = plain_config.dimension
        cap = (d + 1) * plain_config.schedule.partial(plain_config.max_layer)
        for x in sample_points(plain_config.pair, rng, -3.5, 3.5, 200):
            assert all(c <= d + 1 for c in support_counts(plain_config, x))
            assert lipschitz_budget(plain_config, x) <= cap + 1e-12

    def test_interior_point_touches_every_vertex(self, plain_config):
        # far from A all d + 1 vertices of the layer-0 simplex are basis vertices
        assert support_counts(plain_config, [0.3, 3.6])[0] == 3

    def test_stacked_budget_positive(self, stacked_config):
        assert lipschitz_budget(stacked_config, [0.3, 1.9]) > 0


class TestCoefficients:

    @pytest.fixture
    def hat(self):
        return hat_functional([0.5, 2.5], 0.75, 2.0)

    def test_plain_interpolates(self, plain_config, hat):
        coeffs = schauder_coefficients(plain_config, hat)
        assert len(coeffs) > 0
        tri = plain_config.triangulation
        for n in range(plain_config.max_layer + 1):
            for v in enumerate_box(tri, n, [-0.5, 1.5], [1.5, 3.5]):
                x = v.point(2)
                sums = coeffs.partial_sums(x)
                for m in range(n, plain_config.max_layer + 1):
                    assert sums[m] == pytest.approx(hat(x), abs=1e-12)

    def test_plain_reconstruction_bound(self, plain_config, hat, rng):
        coeffs = schauder_coefficients(plain_config, hat)
        tri = plain_config.triangulation
        for x in sample_points(plain_config.pair, rng, -0.5, 1.5, 100) + np.array([0.0, 2.0]):
            if not plain_config.pair.contains(x):
                continue
            sums = coeffs.partial_sums(x)
            for n in range(plain_config.max_layer + 1):
                assert abs(hat(x) - sums[n]) <= hat.lipschitz * mesh_diameter(tri, n) + 1e-9
                assert reconstruction_bound(plain_config, hat, n) == pytest.approx(
                    hat.lipschitz * mesh_diameter(tri, n)
                )

    def test_evaluate_and_export(self, plain_config, hat):
        coeffs = schauder_coefficients(plain_config, hat)
        assert coeffs.evaluate([0.5, 2.5]) == pytest.approx(hat([0.5, 2.5]))
        doc = coeffs.to_dict()
        assert doc["functional"] == "hat"
        assert len(doc["entries"]) == len(coeffs)
        assert coeffs.max_abs() > 0

    def test_stacked_matches_on_vertices(self, stacked_config):
        f = distance_functional(stacked_config.with_layers(2))
        config = stacked_config.with_layers(2)
        coeffs = stacked_coefficients(config, f)
        for v in enumerate_vertices(config.triangulation, 2, 2):
            x = v.point(2)
            assert coeffs.partial_sums(x)[2] == pytest.approx(f(x), abs=1e-12)

    def test_stacked_error_bound(self, stacked_config, rng):
        f = hat_functional([1.0, 3.5], 0.8, 1.5)
        sup_f = 1.5 * 0.8
        points = sample_points(stacked_config.pair, rng, 0.0, 4.5, 300)
        for n in range(4):
            config = stacked_config.with_layers(n, 6)
            coeffs = stacked_coefficients(config, f)
            bound = stacked_error_bound(config, f, n, sup_f)
            for x in points:
                assert abs(f(x) - coeffs.evaluate(x)) <= bound + 1e-12

    def test_stacked_error_bound_closed_form(self, stacked_config):
        f = hat_functional([1.0, 3.5], 0.8, 1.5)
        assert stacked_error_bound(stacked_config, f, 0, 1.2) == pytest.approx(1.5 + 1.2 / 4.0)
        assert stacked_error_bound(stacked_config, f, 2, 1.2) == pytest.approx(7.0 / 16.0 * 1.5 + 1.2 / 64.0)

    def test_linear_in_functional(self, plain_config, hat):
        other = hat_functional([-1.0, 1.5], 0.5, 1.0, name="other")
        combined = sum_functional([hat, other])
        assert combined.lipschitz == pytest.approx(3.0)
        assert combined([0.5, 2.5]) == pytest.approx(hat([0.5, 2.5]))
        both = schauder_coefficients(plain_config, combined)
        first = schauder_coefficients(plain_config, hat)
        second = schauder_coefficients(plain_config, other)
        vertices = {v for v, _ in both} | {v for v, _ in first} | {v for v, _ in second}
        for v in vertices:
            expected = first.coefficient(v) + second.coefficient(v)
            assert both.coefficient(v) == pytest.approx(expected, abs=1e-11)

    def test_kind_guards(self, plain_config, stacked_config, hat):
        with pytest.raises(BasisConfigError):
            stacked_coefficients(plain_config, hat)
        with pytest.raises(BasisConfigError):
            schauder_coefficients(stacked_config, hat)

    def test_nonzero_on_A_rejected(self, plain_config):
        f = LipschitzFunctional(lambda x: 1.0 + float(x[0]) * 0.0, 0.0, None, "constant")
        with pytest.raises(FunctionalError):
            schauder_coefficients(plain_config, f)


class TestWitness:

    @pytest.mark.parametrize("vertex", [LatticeVertex(1, (1, 4)), LatticeVertex(2, (-3, 1)), LatticeVertex(0, (0, 2))])
    def test_matches_dirac_except_at_v(self, plain_config, vertex):
        beta = minimality_witness(plain_config, vertex)
        fv = vectorize(plain_config, SignedDiagram.dirac(plain_config.pair, vertex.point(2))).values
        fb = vectorize(plain_config, beta).values
        for u in set(fv) | set(fb):
            gap = abs(fv.get(u, 0.0) - fb.get(u, 0.0))
            if u == vertex:
                assert gap > 1e-6
            else:
                assert gap <= 1e-12

    def test_layer_zero_witness_is_empty(self, plain_config):
        assert minimality_witness(plain_config, LatticeVertex(0, (0, 2))).is_empty()

    def test_rejects_vertex_in_A(self, plain_config):
        with pytest.raises(VertexError):
            minimality_witness(plain_config, LatticeVertex(0, (1, 1)))

    def test_rejects_vertex_past_truncation(self, plain_config):
        with pytest.raises(LayerError):
            minimality_witness(plain_config, LatticeVertex(4, (1, 16)))

    def test_plain_only(self, stacked_config):
        with pytest.raises(BasisConfigError):
            minimality_witness(stacked_config, LatticeVertex(1, (1, 4)))
