import numpy as np
import pytest
from pydantic import ValidationError

from geometry import PointPattern, TorusWindow
from raster import pixel_indices, rasterize
from reconstruct import (
    ReconstructionConfig,
    ValidationItem,
    iteration_cap_curve,
    objective,
    read_reconstruction_report,
    reconstruct_marks,
    reconstruction_record,
    tune_iteration_cap,
    write_reconstruction_report,
)
from scattering import build_filter_bank, first_order_moments
from utils.errors import CollisionError, GeomarkConfigError, ShapeError

from conftest import random_pattern


@pytest.fixture
def truth(ten_points, rng, bank32):
    marks = rng.uniform(1.0, 3.0, size=10)
    target = first_order_moments(rasterize(ten_points.with_marks(marks), 32), bank32)
    return marks, target


class TestObjective:
    def test_vanishes_at_the_true_marks(self, ten_points, truth, bank32):
        marks, target = truth
        value, gradient = objective(marks, pixel_indices(ten_points, 32), bank32, target)
        assert value <= 1e-18
        assert np.linalg.norm(gradient) <= 1e-9

    def test_zero_marks_give_target_norm(self, ten_points, truth, bank32):
        _, target = truth
        value, _ = objective(np.zeros(10), pixel_indices(ten_points, 32), bank32, target)
        assert value == pytest.approx(float(target @ target), rel=1e-9)

    def test_gradient_matches_central_differences(self, ten_points, truth, bank32, rng):
        _, target = truth
        pixels = pixel_indices(ten_points, 32)
        marks = rng.uniform(1.0, 3.0, size=10)
        _, gradient = objective(marks, pixels, bank32, target)
        h = 1e-6
        numeric = np.empty(10)
        for i in range(10):
            step = np.zeros(10)
            step[i] = h
            plus, _ = objective(marks + step, pixels, bank32, target)
            minus, _ = objective(marks - step, pixels, bank32, target)
            numeric[i] = (plus - minus) / (2 * h)
        np.testing.assert_allclose(gradient, numeric, rtol=1e-4, atol=1e-8)

    def test_target_length_checked(self, ten_points, bank32):
        with pytest.raises(ShapeError):
            objective(np.ones(10), pixel_indices(ten_points, 32), bank32, np.zeros(57))


class TestConfig:
    def test_zero_iterations_rejected(self):
        with pytest.raises(ValidationError):
            ReconstructionConfig(max_iterations=0)

    def test_eps_must_be_positive(self):
        with pytest.raises(ValidationError):
            ReconstructionConfig(eps=0.0)


class TestReconstructMarks:
    def test_descends_and_respects_bounds(self, ten_points, truth, bank32):
        marks, target = truth
        cfg = ReconstructionConfig(max_iterations=100, init_value=float(marks.mean()))
        result = reconstruct_marks(ten_points, target, bank32, cfg)
        assert np.all(result.marks >= 0)
        assert result.iterations <= 100
        assert np.all(np.diff(result.objectives) <= 0)
        assert result.objective < result.objectives[0]

    def test_single_iteration(self, ten_points, truth, bank32):
        _, target = truth
        result = reconstruct_marks(
            ten_points, target, bank32, ReconstructionConfig(max_iterations=1)
        )
        assert result.iterations <= 1
        assert result.objective <= result.objectives[0]

    def test_fixed_point_at_the_truth(self, ten_points, truth, bank32):
        marks, target = truth
        cfg = ReconstructionConfig(max_iterations=20, gradient_tolerance=1e-6)
        result = reconstruct_marks(ten_points, target, bank32, cfg, initial=marks)
        np.testing.assert_allclose(result.marks, marks, atol=1e-8)
        assert result.objective <= 1e-18

    def test_homogeneous_target(self, ten_points, truth, bank32):
        marks, target = truth
        cfg = ReconstructionConfig(max_iterations=20, gradient_tolerance=1e-6)
        result = reconstruct_marks(ten_points, 2.0 * target, bank32, cfg, initial=2.0 * marks)
        np.testing.assert_allclose(result.marks, 2.0 * marks, atol=1e-8)

    def test_deterministic(self, ten_points, truth, bank32):
        _, target = truth
        cfg = ReconstructionConfig(max_iterations=15)
        a = reconstruct_marks(ten_points, target, bank32, cfg)
        b = reconstruct_marks(ten_points, target, bank32, cfg)
        np.testing.assert_array_equal(a.marks, b.marks)
        assert a.objectives == b.objectives

    def test_iterates_stand_for_smaller_caps(self, ten_points, truth, bank32):
        _, target = truth
        full = reconstruct_marks(ten_points, target, bank32, ReconstructionConfig(max_iterations=6))
        capped = reconstruct_marks(
            ten_points, target, bank32, ReconstructionConfig(max_iterations=3)
        )
        np.testing.assert_allclose(full.at_cap(3), capped.marks, rtol=1e-10, atol=1e-12)

    def test_collision_rejected(self, bank32):
        p = PointPattern(TorusWindow(), np.array([[0.500, 0.5], [0.501, 0.5]]))
        with pytest.raises(CollisionError):
            reconstruct_marks(p, np.zeros(33), bank32, ReconstructionConfig())


@pytest.mark.slow
class TestRecovery:
    def test_recovers_marks_of_small_patterns(self, rng):
        bank = build_filter_bank()
        recovered, total = 0, 0
        for _ in range(5):
            p = random_pattern(rng, 10, n=bank.n)
            marks = rng.uniform(1.0, 3.0, size=10)
            target = first_order_moments(rasterize(p.with_marks(marks), bank.n), bank)
            cfg = ReconstructionConfig(max_iterations=500, init_value=float(marks.mean()))
            result = reconstruct_marks(p, target, bank, cfg)
            recovered += int(np.sum(np.abs(result.marks - marks) <= 0.05 * marks))
            total += len(marks)
        assert recovered >= 0.8 * total


class TestIterationCap:
    def _items(self, ten_points, truth):
        marks, target = truth
        return [ValidationItem(ten_points, marks, target)]

    def test_single_candidate_is_returned(self, ten_points, truth, bank32):
        cfg = ReconstructionConfig(init_value=2.0)
        assert tune_iteration_cap(self._items(ten_points, truth), bank32, cfg, [7]) == 7

    def test_curve_is_sorted_by_cap(self, ten_points, truth, bank32):
        cfg = ReconstructionConfig(init_value=2.0)
        caps, rmse = iteration_cap_curve(self._items(ten_points, truth), bank32, cfg, [5, 1, 3])
        np.testing.assert_array_equal(caps, [1, 3, 5])
        assert np.all(rmse >= 0)

    def test_best_cap_has_smallest_rmse(self, ten_points, truth, bank32):
        cfg = ReconstructionConfig(init_value=2.0)
        items = self._items(ten_points, truth)
        caps, rmse = iteration_cap_curve(items, bank32, cfg, [1, 2, 4, 8])
        assert tune_iteration_cap(items, bank32, cfg, [1, 2, 4, 8]) == caps[np.argmin(rmse)]

    def test_empty_inputs_rejected(self, ten_points, truth, bank32):
        cfg = ReconstructionConfig()
        with pytest.raises(GeomarkConfigError):
            tune_iteration_cap([], bank32, cfg, [1])
        with pytest.raises(GeomarkConfigError):
            tune_iteration_cap(self._items(ten_points, truth), bank32, cfg, [])


class TestReport:
    def test_records_read_back(self, tmp_path, ten_points, truth, bank32):
        marks, target = truth
        cfg = ReconstructionConfig(max_iterations=2)
        result = reconstruct_marks(ten_points, target, bank32, cfg)
        record = reconstruction_record(0, result, "exact", marks)
        path = tmp_path / "report.ndjson"
        assert write_reconstruction_report(path, [record, record]) == 2
        loaded = read_reconstruction_report(path)
        assert loaded[0] == record
        assert [pt.true for pt in loaded[1].points] == marks.tolist()
