"""
Sketching Service Tests
Tests for JL sizing, sketch materialization and application
"""

import math

import numpy as np
from django.test import SimpleTestCase
from scipy.fft import dctn, idctn

from apps.sketching.application.services import apply, jl_min_dim, materialize
from apps.sketching.domain.entities import GENERATOR_NAME, SketchKind, SketchSpec
from apps.sketching.domain.exceptions import (
    ChannelLayoutError,
    InvalidSketchSpec,
    SketchLengthMismatch,
)


def rademacher_spec(ell, n_f, seed=0):
    return SketchSpec(kind=SketchKind.RADEMACHER, ell=ell, seed=seed, n_f=n_f)


class JLBoundTestCase(SimpleTestCase):
    """Test cases for jl_min_dim"""

    def test_two_points_unit_epsilon(self):
        self.assertEqual(jl_min_dim(2, 1.0), 6)

    def test_strictly_greater_than_bound(self):
        for n_r, eps in ((8, 0.5), (100, 0.3), (3, 0.9)):
            ell = jl_min_dim(n_r, eps)
            bound = 8 * math.log(n_r) / eps ** 2
            self.assertGreater(ell, bound)
            self.assertLessEqual(ell - 1, bound)

    def test_halving_epsilon_quadruples(self):
        coarse = jl_min_dim(50, 0.4)
        fine = jl_min_dim(50, 0.2)
        self.assertLessEqual(abs(fine - 4 * coarse), 4)

    def test_domain_violations(self):
        for n_r, eps in ((1, 0.5), (8, 0.0), (8, 1.0), (8, -0.1)):
            with self.assertRaises(InvalidSketchSpec):
                jl_min_dim(n_r, eps)


class SketchSpecTestCase(SimpleTestCase):
    """Test cases for SketchSpec validation"""

    def test_ell_range(self):
        with self.assertRaises(InvalidSketchSpec):
            rademacher_spec(0, 10)
        with self.assertRaises(InvalidSketchSpec):
            rademacher_spec(11, 10)

    def test_describe_records_generator(self):
        meta = rademacher_spec(4, 10, seed=7).describe()
        self.assertEqual(meta, {'sketch': 'rademacher', 'ell': '4', 'seed': '7', 'generator': GENERATOR_NAME})


class MaterializeTestCase(SimpleTestCase):
    """Test cases for materialize"""

    def test_rademacher_one_by_one(self):
        sketch = materialize(rademacher_spec(1, 1))
        self.assertEqual(sketch.matrix.shape, (1, 1))
        self.assertIn(float(sketch.matrix[0, 0]), (-1.0, 1.0))

    def test_rademacher_entries(self):
        sketch = materialize(rademacher_spec(16, 300, seed=3))
        np.testing.assert_allclose(np.abs(sketch.matrix), 0.25)
        share = np.mean(sketch.matrix > 0)
        self.assertGreater(share, 0.45)
        self.assertLess(share, 0.55)

    def test_gaussian_determinism(self):
        spec = SketchSpec(kind=SketchKind.GAUSSIAN, ell=8, seed=99, n_f=200)
        a = materialize(spec)
        b = materialize(spec)
        self.assertEqual(a.matrix.tobytes(), b.matrix.tobytes())
        other = materialize(SketchSpec(kind=SketchKind.GAUSSIAN, ell=8, seed=100, n_f=200))
        self.assertFalse(np.array_equal(a.matrix, other.matrix))

    def test_gaussian_variance(self):
        sketch = materialize(SketchSpec(kind=SketchKind.GAUSSIAN, ell=4, seed=1, n_f=20000))
        self.assertAlmostEqual(float(np.var(sketch.matrix)), 0.25, delta=0.01)

    def test_matrix_is_read_only(self):
        sketch = materialize(rademacher_spec(2, 4))
        with self.assertRaises(ValueError):
            sketch.matrix[0, 0] = 3.0

    def test_norm_preserved_on_average(self):
        sketch = materialize(rademacher_spec(64, 4096, seed=5))
        z = np.random.default_rng(5).normal(size=(4096, 1000))
        ratios = np.sum(apply(sketch, z) ** 2, axis=0) / np.sum(z ** 2, axis=0)
        self.assertGreaterEqual(float(np.mean(ratios)), 0.95)
        self.assertLessEqual(float(np.mean(ratios)), 1.05)

    def test_variance_decreases_as_one_over_ell(self):
        z = np.random.default_rng(6).normal(size=256)
        norm = float(z @ z)

        def ratio_variance(ell):
            ratios = [
                float(np.sum(apply(materialize(rademacher_spec(ell, 256, seed)), z) ** 2)) / norm
                for seed in range(2000)
            ]
            return np.var(ratios)

        ratio = ratio_variance(16) / ratio_variance(64)
        self.assertGreaterEqual(ratio, 3.0)
        self.assertLessEqual(ratio, 5.5)

    def test_pairwise_distance_preservation(self):
        eps = 0.5
        points = np.random.default_rng(7).normal(size=(8, 256))
        ell = jl_min_dim(8, eps)
        violations = 0
        pairs = 0
        for seed in range(200):
            projected = apply(materialize(rademacher_spec(ell, 256, seed)), points.T).T
            for a in range(8):
                for b in range(a + 1, 8):
                    original = np.sum((points[a] - points[b]) ** 2)
                    sketched = np.sum((projected[a] - projected[b]) ** 2)
                    pairs += 1
                    if not (1 - eps) * original <= sketched <= (1 + eps) * original:
                        violations += 1
        self.assertLessEqual(violations / pairs, 0.05)


class DctTop16TestCase(SimpleTestCase):
    """Test cases for the channel-wise DCT sketch"""

    def setUp(self):
        self.shape = (3, 8, 8)
        self.features = np.random.default_rng(8).normal(size=192)
        self.spec = SketchSpec(kind=SketchKind.DCT_TOP16, ell=12, seed=4, n_f=192)

    def basis_image(self, channel, ky, kx):
        coeffs = np.zeros(self.shape)
        coeffs[channel, ky, kx] = 1.0
        return idctn(coeffs, axes=(1, 2), norm='ortho').reshape(-1)

    def test_selected_basis_maps_to_rademacher_column(self):
        sketch = materialize(self.spec, self.features, self.shape)
        self.assertEqual(sketch.selection.shape, (3, 16))
        for channel in range(3):
            for index in sketch.selection[channel][:4]:
                ky, kx = divmod(int(index), 8)
                column = apply(sketch, self.basis_image(channel, ky, kx))
                np.testing.assert_allclose(np.abs(column), 1 / math.sqrt(12), rtol=1e-12)

    def test_unselected_basis_is_annihilated(self):
        sketch = materialize(self.spec, self.features, self.shape)
        selected = set(int(i) for i in sketch.selection[0])
        unselected = next(i for i in range(64) if i not in selected)
        column = apply(sketch, self.basis_image(0, *divmod(unselected, 8)))
        np.testing.assert_allclose(column, 0.0, atol=1e-12)

    def test_selection_holds_largest_coefficients(self):
        sketch = materialize(self.spec, self.features, self.shape)
        magnitude = np.abs(dctn(self.features.reshape(self.shape), axes=(1, 2), norm='ortho'))
        for channel in range(3):
            kept = magnitude[channel].reshape(-1)[sketch.selection[channel]]
            dropped = np.delete(magnitude[channel].reshape(-1), sketch.selection[channel])
            self.assertGreaterEqual(kept.min(), dropped.max())

    def test_deterministic(self):
        a = materialize(self.spec, self.features, self.shape)
        b = materialize(self.spec, self.features, self.shape)
        self.assertEqual(a.matrix.tobytes(), b.matrix.tobytes())

    def test_channel_layout_required(self):
        with self.assertRaises(ChannelLayoutError):
            materialize(self.spec, self.features, (5, 8, 8))
        with self.assertRaises(ChannelLayoutError):
            materialize(self.spec, self.features)

    def test_features_required(self):
        with self.assertRaises(InvalidSketchSpec):
            materialize(self.spec, None, self.shape)


class ApplyTestCase(SimpleTestCase):
    """Test cases for apply"""

    def test_zero_vector(self):
        sketch = materialize(rademacher_spec(4, 10))
        np.testing.assert_array_equal(apply(sketch, np.zeros(10)), np.zeros(4))

    def test_single_row_of_ones(self):
        z = np.arange(7, dtype=np.float64)
        self.assertEqual(float(apply(np.ones((1, 7)), z)[0]), 21.0)

    def test_matches_dense_oracle(self):
        sketch = materialize(SketchSpec(kind=SketchKind.GAUSSIAN, ell=5, seed=2, n_f=40))
        z = np.random.default_rng(2).normal(size=40)
        expected = [sum(sketch.matrix[r, c] * z[c] for c in range(40)) for r in range(5)]
        np.testing.assert_allclose(apply(sketch, z), expected, rtol=1e-12, atol=1e-12)

    def test_length_mismatch(self):
        with self.assertRaises(SketchLengthMismatch):
            apply(materialize(rademacher_spec(2, 10)), np.zeros(9))
