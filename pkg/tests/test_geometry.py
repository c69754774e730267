import math

import numpy as np
import pytest
from scipy import stats

from geometry import (
    MarkedPattern,
    PointPattern,
    TorusWindow,
    pairwise_torus_distances,
    read_patterns,
    sample_poisson,
    spawn_seeds,
    torus_distance,
    translate,
    write_patterns,
)
from utils.errors import DomainError, ShapeError


class TestTorusWindow:
    def test_wrap_maps_into_window(self):
        w = TorusWindow(2.0)
        wrapped = w.wrap(np.array([[-1e-18, 2.0], [4.5, -0.5]]))
        assert w.contains(wrapped)
        np.testing.assert_allclose(wrapped[1], [0.5, 1.5])

    def test_nonpositive_side_rejected(self):
        with pytest.raises(DomainError):
            TorusWindow(0.0)


class TestPointPattern:
    def test_duplicate_points_rejected(self):
        with pytest.raises(DomainError):
            PointPattern(TorusWindow(), np.array([[0.2, 0.3], [0.2, 0.3]]))

    def test_points_outside_window_rejected(self):
        with pytest.raises(DomainError):
            PointPattern(TorusWindow(), np.array([[0.2, 1.0]]))

    def test_points_are_read_only(self, ten_points):
        with pytest.raises(ValueError):
            ten_points.points[0, 0] = 0.5

    def test_marks_must_align(self, ten_points):
        with pytest.raises(ShapeError):
            MarkedPattern(ten_points, np.ones(9))

    def test_non_finite_marks_rejected(self, ten_points):
        marks = np.ones(10)
        marks[3] = np.nan
        with pytest.raises(DomainError):
            ten_points.with_marks(marks)


class TestTorusDistance:
    def test_wraps_across_corner(self):
        d = torus_distance([0.1, 0.1], [0.9, 0.9], TorusWindow())
        assert d == pytest.approx(math.sqrt(0.08), abs=1e-15)

    def test_bounded_by_half_diagonal(self, rng):
        w = TorusWindow()
        for _ in range(200):
            a, b = rng.uniform(0, 1, size=(2, 2))
            assert torus_distance(a, b, w) <= math.sqrt(2) / 2 + 1e-15

    def test_triangle_inequality(self, rng):
        w = TorusWindow(2.0)
        for a, b, c in rng.uniform(0, 2.0, size=(300, 3, 2)):
            detour = torus_distance(a, b, w) + torus_distance(b, c, w)
            assert torus_distance(a, c, w) <= detour + 1e-12

    def test_outside_point_rejected(self):
        with pytest.raises(DomainError):
            torus_distance([0.1, 1.2], [0.5, 0.5], TorusWindow())

    def test_pairwise_matrix_symmetric_with_zero_diagonal(self, ten_points):
        d = pairwise_torus_distances(ten_points)
        np.testing.assert_array_equal(d, d.T)
        np.testing.assert_array_equal(np.diag(d), 0.0)
        assert d[0, 1] == pytest.approx(
            torus_distance(ten_points.points[0], ten_points.points[1], ten_points.window)
        )

    def test_translation_preserves_distances(self, ten_points):
        moved = translate(ten_points, [0.37, 0.81])
        assert len(moved) == len(ten_points)
        np.testing.assert_allclose(
            pairwise_torus_distances(moved), pairwise_torus_distances(ten_points), atol=1e-12
        )


class TestTranslate:
    def test_translations_compose(self, ten_points, rng):
        u, v = rng.uniform(-1.5, 1.5, size=(2, 2))
        twice = translate(translate(ten_points, u), v)
        once = translate(ten_points, u + v)
        gaps = [torus_distance(a, b, ten_points.window) for a, b in zip(twice.points, once.points)]
        np.testing.assert_allclose(gaps, 0.0, atol=1e-12)

    def test_zero_shift_is_identity(self, ten_points):
        np.testing.assert_array_equal(translate(ten_points, [0.0, 0.0]).points, ten_points.points)


class TestPoisson:
    def test_same_seed_same_pattern(self):
        a = sample_poisson(30, TorusWindow(), 7)
        b = sample_poisson(30, TorusWindow(), 7)
        assert a == b

    def test_mean_count_matches_intensity(self):
        counts = [len(sample_poisson(30, TorusWindow(), s)) for s in range(1000)]
        assert abs(np.mean(counts) - 30) < 1.0

    def test_quadrant_counts_are_uniform_and_independent(self):
        table = np.zeros((2, 2))
        for seed in range(200):
            points = sample_poisson(50, TorusWindow(), seed).points
            quadrant = (points >= 0.5).astype(int)
            np.add.at(table, (quadrant[:, 0], quadrant[:, 1]), 1)
        assert stats.chisquare(table.ravel()).pvalue > 1e-3
        assert stats.chi2_contingency(table, correction=False).pvalue > 1e-3

    def test_nonpositive_intensity_rejected(self):
        with pytest.raises(DomainError):
            sample_poisson(0.0, TorusWindow(), 0)

    def test_streams_are_independent_and_reproducible(self):
        train = [s.generate_state(2).tolist() for s in spawn_seeds(3, 4, stream=0)]
        again = [s.generate_state(2).tolist() for s in spawn_seeds(3, 4, stream=0)]
        test = [s.generate_state(2).tolist() for s in spawn_seeds(3, 4, stream=1)]
        assert train == again
        assert not set(map(tuple, train)) & set(map(tuple, test))


class TestPatternFiles:
    def test_written_patterns_read_back_exactly(self, tmp_path, ten_points, rng):
        marked = ten_points.with_marks(rng.uniform(0, 5, size=10))
        empty = PointPattern(TorusWindow(), np.zeros((0, 2)))
        path = tmp_path / "patterns.ndjson"
        assert write_patterns(path, [marked, ten_points, empty]) == 3
        assert read_patterns(path) == [marked, ten_points, empty]

    def test_invalid_line_reports_position(self, tmp_path):
        path = tmp_path / "bad.ndjson"
        path.write_text('{"side":1,"points":[[0.5,0.5]]}\n{"side":1,"points":[[1.5,0.5]]}\n')
        with pytest.raises(DomainError) as info:
            read_patterns(path)
        assert info.value.context["line"] == 2
