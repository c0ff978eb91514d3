"""
RDO Domain Tests
Tests for the lambda rule, the RDO configuration and the SSE/IDSE distortion measures
"""

import numpy as np
from django.test import SimpleTestCase

from apps.coding.domain.entities import ModeId
from apps.coding.domain.exceptions import InvalidQP
from apps.coding.domain.transforms import dct_forward
from apps.jacobian.application.services import to_transform_domain
from apps.rdo.domain.distortion import distortion_idse, distortion_sse, residual_idse
from apps.rdo.domain.entities import LambdaNorm, Metric, RDOConfig, lambda_from_qp
from apps.rdo.domain.exceptions import DistortionShapeMismatch, InvalidRDOConfig


class LambdaRuleTestCase(SimpleTestCase):
    """Test cases for lambda_from_qp"""

    def test_zero_exponent(self):
        self.assertEqual(lambda_from_qp(12, 0.7), 0.7)

    def test_unit_exponent(self):
        self.assertEqual(lambda_from_qp(15, 1.0), 2.0)

    def test_default_constant_at_qp30(self):
        self.assertAlmostEqual(lambda_from_qp(30, 0.85), 54.4, places=12)

    def test_non_positive_constant(self):
        for c in (0.0, -1.0):
            with self.assertRaises(InvalidRDOConfig):
                lambda_from_qp(30, c)


class RDOConfigTestCase(SimpleTestCase):
    """Test cases for RDOConfig validation"""

    def test_defaults(self):
        config = RDOConfig(metric=Metric.SSE, qp=30)
        self.assertEqual(config.c, 0.85)
        self.assertIs(config.lambda_norm, LambdaNorm.TRACE)
        self.assertAlmostEqual(config.lambda_base, 54.4, places=12)
        self.assertEqual(config.quant.step, 2.0 ** (26 / 6))

    def test_metric_tags(self):
        self.assertEqual([m.tag for m in (Metric.SSE, Metric.IDSE, Metric.FD)], [0, 1, 2])

    def test_with_qp_keeps_other_fields(self):
        config = RDOConfig(metric=Metric.FD, qp=30, c=0.5, fd_blend=0.25, threads=2)
        moved = config.with_qp(36)
        self.assertEqual(moved.qp, 36)
        self.assertEqual((moved.metric, moved.c, moved.fd_blend, moved.threads), (Metric.FD, 0.5, 0.25, 2))

    def test_invalid_qp(self):
        with self.assertRaises(InvalidQP):
            RDOConfig(metric=Metric.SSE, qp=52)

    def test_invalid_fields(self):
        for kwargs in ({'c': 0}, {'tau': -1.0}, {'fd_blend': -0.5}, {'threads': 0}):
            with self.assertRaises(InvalidRDOConfig):
                RDOConfig(metric=Metric.IDSE, qp=30, **kwargs)


class DistortionSSETestCase(SimpleTestCase):
    """Test cases for distortion_sse"""

    def test_identical(self):
        y = np.random.default_rng(0).normal(size=256)
        self.assertEqual(distortion_sse(y, y.copy()), 0.0)

    def test_unit_difference(self):
        y = np.zeros(256)
        y_hat = y.copy()
        y_hat[17] = 1.0
        self.assertEqual(distortion_sse(y, y_hat), 1.0)

    def test_matches_loop(self):
        rng = np.random.default_rng(1)
        y, y_hat = rng.normal(scale=50, size=(2, 256))
        expected = 0.0
        for a, b in zip(y, y_hat):
            expected += (a - b) ** 2
        self.assertAlmostEqual(distortion_sse(y, y_hat), expected, delta=1e-12 * expected)

    def test_batched(self):
        rng = np.random.default_rng(2)
        y, y_hat = rng.normal(size=(2, 5, 256))
        values = distortion_sse(y, y_hat)
        self.assertEqual(values.shape, (5,))
        self.assertAlmostEqual(values[3], distortion_sse(y[3], y_hat[3]), places=10)

    def test_length_mismatch(self):
        with self.assertRaises(DistortionShapeMismatch):
            distortion_sse(np.zeros(256), np.zeros(255))


class DistortionIDSETestCase(SimpleTestCase):
    """Test cases for distortion_idse"""

    def setUp(self):
        self.rng = np.random.default_rng(3)

    def test_identical(self):
        btr = self.rng.normal(size=(4, 256))
        y = self.rng.normal(size=256)
        self.assertEqual(distortion_idse(btr, y, y, 0.5), 0.0)

    def test_zero_matrix_without_tau(self):
        y, y_hat = self.rng.normal(size=(2, 256))
        self.assertEqual(distortion_idse(np.zeros((4, 256)), y, y_hat, 0.0), 0.0)

    def test_tau_adds_sse(self):
        btr = self.rng.normal(size=(3, 256))
        y, y_hat = self.rng.normal(size=(2, 256))
        difference = distortion_idse(btr, y, y_hat, 2.5) - distortion_idse(btr, y, y_hat, 0.0)
        self.assertAlmostEqual(difference, 2.5 * distortion_sse(y, y_hat), places=8)

    def test_matches_pixel_quadratic_form(self):
        for mode in ModeId:
            for _ in range(50):
                bpix = self.rng.normal(scale=0.05, size=(8, 256))
                pixel_residual = self.rng.normal(scale=10, size=256)
                tau = float(self.rng.uniform(0, 1))
                btr = to_transform_domain(bpix, mode)
                transform_value = residual_idse(btr, dct_forward(pixel_residual, mode), tau)
                gram = bpix.T @ bpix + tau * np.eye(256)
                pixel_value = pixel_residual @ gram @ pixel_residual
                self.assertLessEqual(abs(transform_value - pixel_value) / pixel_value, 1e-9)

    def test_positive_definite_with_tau(self):
        btr = np.zeros((2, 256))
        residual = np.zeros(256)
        self.assertEqual(residual_idse(btr, residual, 0.1), 0.0)
        residual[200] = 1e-3
        self.assertGreater(residual_idse(btr, residual, 0.1), 0.0)

    def test_batched_rows(self):
        btr = self.rng.normal(size=(6, 4, 256))
        residual = self.rng.normal(size=(6, 256))
        values = residual_idse(btr, residual, 0.3)
        self.assertEqual(values.shape, (6,))
        self.assertAlmostEqual(values[2], residual_idse(btr[2], residual[2], 0.3), places=8)

    def test_shape_mismatch(self):
        with self.assertRaises(DistortionShapeMismatch):
            residual_idse(np.zeros((4, 256)), np.zeros(16))
        with self.assertRaises(DistortionShapeMismatch):
            residual_idse(np.zeros((3, 4, 256)), np.zeros((2, 256)))
