import numpy as np
import pytest

from raster import pixel_indices, rasterize
from scattering import (
    build_filter_bank,
    first_order_gradient,
    first_order_moments,
    read_feature_matrix,
    scattering_features,
    second_order_moments,
    smoothed_first_order,
    wavelet_transform,
    write_feature_matrix,
)
from scattering.transform import first_order_fields
from utils.errors import GeomarkConfigError, ShapeError


def _sparse_image(rng, n=32, count=12):
    img = np.zeros((n, n))
    flat = rng.choice(n * n, size=count, replace=False)
    img.flat[flat] = rng.uniform(0.5, 2.0, size=count)
    return img


class TestFilterBank:
    def test_default_dimensions(self):
        bank = build_filter_bank()
        assert bank.filters.shape == (8, 8, 128, 128)
        assert bank.first_order_size == 57
        assert bank.second_order_size == 1344
        assert len(bank.first_order_labels) + len(bank.second_order_labels) == 1401

    def test_filters_are_zero_mean_with_unit_l1_norm(self, bank32):
        np.testing.assert_allclose(np.abs(bank32.filters[..., 0, 0]), 0.0, atol=1e-12)
        for j in bank32.scales:
            spatial = bank32.spatial(j, 3)
            assert np.sum(np.abs(spatial)) == pytest.approx(1.0, rel=1e-12)

    @pytest.mark.parametrize(
        "kwargs", [{"n": 24}, {"j_min": 3, "j_max": 2}, {"n": 32, "j_max": 6}, {"omega": 0.0}]
    )
    def test_invalid_parameters_rejected(self, kwargs):
        with pytest.raises(GeomarkConfigError):
            build_filter_bank(**kwargs)


class TestFirstOrder:
    def test_vector_length(self, bank32, rng):
        assert first_order_moments(_sparse_image(rng), bank32).shape == (33,)

    def test_zero_image_has_zero_moments(self, bank32):
        np.testing.assert_array_equal(first_order_moments(np.zeros((32, 32)), bank32), 0.0)

    def test_wavelet_transform_matches_field(self, bank32, rng):
        img = _sparse_image(rng)
        np.testing.assert_allclose(
            wavelet_transform(img, bank32, 2, 5), first_order_fields(img, bank32)[2, 5]
        )

    def test_circular_shift_invariance(self, bank32, rng):
        for _ in range(10):
            img = _sparse_image(rng)
            shifted = np.roll(img, (rng.integers(32), rng.integers(32)), axis=(0, 1))
            np.testing.assert_allclose(
                scattering_features(shifted, bank32).values,
                scattering_features(img, bank32).values,
                rtol=1e-10,
            )

    def test_quarter_turn_permutes_angles(self, bank32, rng):
        img = _sparse_image(rng)
        moduli = np.abs(first_order_fields(img, bank32)).mean(axis=(-2, -1))
        turned = np.abs(first_order_fields(np.rot90(img), bank32)).mean(axis=(-2, -1))
        np.testing.assert_allclose(turned, np.roll(moduli, 4, axis=1), rtol=1e-10)

    def test_degree_one_homogeneity(self, bank32, rng):
        img = _sparse_image(rng)
        np.testing.assert_allclose(
            scattering_features(3.5 * img, bank32).values,
            3.5 * scattering_features(img, bank32).values,
            rtol=1e-12,
        )

    def test_coefficients_nonnegative(self, bank32, rng):
        assert np.all(scattering_features(_sparse_image(rng), bank32).values >= 0)

    def test_image_size_must_match(self, bank32):
        with pytest.raises(ShapeError):
            first_order_moments(np.zeros((16, 16)), bank32)


class TestSecondOrder:
    def test_vector_length_and_order(self, bank32, rng):
        img = _sparse_image(rng)
        features = scattering_features(img, bank32, order=2)
        assert len(features) == 33 + 6 * 64
        assert features.labels[33] == "s2:j1=1,t1=0,j2=2,t2=0"
        np.testing.assert_allclose(features.second_order, second_order_moments(img, bank32))

    def test_first_order_only(self, bank32, rng):
        features = scattering_features(_sparse_image(rng), bank32, order=1)
        assert features.second_order is None
        assert len(features) == 33

    def test_unknown_order_rejected(self, bank32, rng):
        with pytest.raises(GeomarkConfigError):
            scattering_features(_sparse_image(rng), bank32, order=3)


class TestGradient:
    def test_smoothed_moments_match_exact(self, bank32, ten_points, rng):
        marks = rng.uniform(1, 2, size=10)
        pixels = pixel_indices(ten_points, 32)
        moments, _ = smoothed_first_order(marks, pixels, bank32, 1e-12)
        exact = first_order_moments(rasterize(ten_points.with_marks(marks), 32), bank32)
        np.testing.assert_allclose(moments, exact, rtol=1e-12, atol=1e-11)

    def test_matches_central_differences(self, bank32, ten_points, rng):
        marks = rng.uniform(1, 2, size=10)
        pixels = pixel_indices(ten_points, 32)
        jacobian = first_order_gradient(marks, pixels, bank32)
        assert jacobian.shape == (33, 10)
        h = 1e-6
        numeric = np.empty_like(jacobian)
        for i in range(10):
            step = np.zeros(10)
            step[i] = h
            plus, _ = smoothed_first_order(marks + step, pixels, bank32, 1e-12)
            minus, _ = smoothed_first_order(marks - step, pixels, bank32, 1e-12)
            numeric[:, i] = (plus - minus) / (2 * h)
        np.testing.assert_allclose(jacobian, numeric, rtol=1e-4, atol=1e-9)

    def test_zero_marks_give_zero_gradient(self, bank32, ten_points):
        jacobian = first_order_gradient(np.zeros(10), pixel_indices(ten_points, 32), bank32)
        assert np.all(np.isfinite(jacobian))
        np.testing.assert_array_equal(jacobian, 0.0)

    @pytest.mark.parametrize("mark", [0.3, 1.0, 4.5])
    def test_single_point_gradient_is_moments_over_mark(self, bank32, mark):
        pixels = np.array([[5, 17]])
        moments, jacobian = smoothed_first_order(np.array([mark]), pixels, bank32, 1e-12)
        assert jacobian.shape == (33, 1)
        np.testing.assert_allclose(jacobian[:, 0], moments / mark, rtol=1e-9, atol=1e-10)

    def test_eps_must_be_positive(self, bank32, ten_points):
        with pytest.raises(GeomarkConfigError):
            smoothed_first_order(np.ones(10), pixel_indices(ten_points, 32), bank32, 0.0)


class TestFeatureFiles:
    def test_matrix_read_back_exactly(self, tmp_path, bank32, rng):
        matrix = np.stack([first_order_moments(_sparse_image(rng), bank32) for _ in range(3)])
        path = write_feature_matrix(tmp_path / "y.csv", matrix, bank32.first_order_labels)
        values, labels = read_feature_matrix(path)
        np.testing.assert_array_equal(values, matrix)
        assert labels == bank32.first_order_labels

    def test_label_count_must_match(self, tmp_path):
        with pytest.raises(ShapeError):
            write_feature_matrix(tmp_path / "x.csv", np.zeros((2, 3)), ["a", "b"])
