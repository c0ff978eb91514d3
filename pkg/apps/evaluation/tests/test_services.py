"""
Evaluation Service Tests
Tests for QP sweeps, FLOP accounting and the localization/aggregation experiments
"""

import math

import numpy as np
from django.test import SimpleTestCase

from apps.evaluation.application.bdrate import bd_rate
from apps.evaluation.application.services import (
    SweepService,
    aggregation_correlation,
    fd_monotonicity,
    flop_estimate,
    forward_macs,
    macs_per_pixel,
    pool_curves,
    sweep,
    taylor_regime,
    validate_qps,
)
from apps.evaluation.domain.entities import (
    REFERENCE_CORRELATION,
    CorrelationReport,
    MonotonicityReport,
    QualityAxis,
    RDCurve,
    RDPoint,
)
from apps.evaluation.domain.exceptions import (
    DegenerateCorrelation,
    InsufficientRegions,
    InvalidSweep,
    MismatchedCurves,
)
from apps.featnet.application.services import FeatNetService, PassCounters, default_net, init_random, zero_weights
from apps.featnet.domain.entities import FeatNet, FeatNetSpec, FeatNetWeights, default_spec
from apps.featnet.domain.layers import Dense, LayerParams
from apps.imaging.tests.factories import ImagePlaneFactory
from apps.jacobian.application.services import sketch_spec_for
from apps.rdo.domain.entities import Metric, RDOConfig
from shared.domain.exceptions import ValidationException

NET = init_random(default_spec(), seed=11)
DEFAULT_NET = default_net(0)
SWEEP_QPS = [26, 28, 30, 32, 34, 36]


def idse_config(plane, qp=30, ell=4, seed=2, net=NET):
    return RDOConfig(metric=Metric.IDSE, qp=qp, sketch=sketch_spec_for(net, plane, 'rademacher', ell, seed))


def curve_of(label, rows, **metadata):
    points = tuple(
        RDPoint(qp=qp, bits=bits, bpp=bpp, psnr=psnr, idse=idse, feature_distance=fd, encode_flops=flops)
        for qp, bits, bpp, psnr, idse, fd, flops in rows
    )
    return RDCurve(label=label, points=points, metadata=metadata)


class FlopEstimateTestCase(SimpleTestCase):
    """Test cases for flop_estimate"""

    def test_reference_configuration(self):
        estimate = flop_estimate(768, 768, 224, 224, 2, 2, 1.0)
        self.assertAlmostEqual(estimate.ratio, 1769472 / 250880, places=9)
        self.assertAlmostEqual(estimate.ratio, 7.06, delta=0.01)

    def test_ratio_does_not_depend_on_per_pixel_cost(self):
        cheap = flop_estimate(768, 768, 224, 224, 2, 2, 1.0)
        costly = flop_estimate(768, 768, 224, 224, 2, 2, 5000.0)
        self.assertAlmostEqual(cheap.ratio, costly.ratio, places=12)

    def test_no_regions_and_no_sketch(self):
        estimate = flop_estimate(64, 32, 16, 16, 0, 0, 3.0)
        self.assertEqual(estimate.fd_flops, 64 * 32 * 3.0)
        self.assertEqual(estimate.idse_flops, 16 * 16 * 3.0)

    def test_idse_cost_grows_with_ell(self):
        two = flop_estimate(256, 256, 128, 128, 4, 2, 1.0)
        four = flop_estimate(256, 256, 128, 128, 4, 4, 1.0)
        self.assertAlmostEqual(four.idse_flops / two.idse_flops, 9.0 / 5.0, places=12)
        self.assertEqual(four.fd_flops, two.fd_flops)

    def test_invalid_dimensions(self):
        with self.assertRaises(ValidationException):
            flop_estimate(0, 768, 224, 224, 2, 2, 1.0)
        with self.assertRaises(ValidationException):
            flop_estimate(768, 768, 224, 224, -1, 2, 1.0)
        with self.assertRaises(ValidationException):
            flop_estimate(768, 768, 224, 224, 2, 2, 0.0)

    def test_forward_macs_match_counters(self):
        counters = PassCounters()
        FeatNetService(NET, counters).forward(ImagePlaneFactory(width=64, height=48).pixels)
        self.assertEqual(counters.macs, forward_macs(NET.spec, 48, 64))
        self.assertAlmostEqual(macs_per_pixel(NET.spec), forward_macs(NET.spec, 64, 64) / 4096.0, places=9)


class SweepTestCase(SimpleTestCase):
    """Test cases for QP sweeps"""

    def setUp(self):
        self.plane = ImagePlaneFactory(width=64, height=64, seed=6)

    def test_validate_qps(self):
        self.assertEqual(validate_qps(['26', 30]), [26, 30])
        for qps in ([], [30, 30], [32, 28]):
            with self.assertRaises(InvalidSweep):
                validate_qps(qps)
        with self.assertRaises(ValidationException):
            validate_qps([30, 60])

    def test_single_point_without_net(self):
        curve = sweep(self.plane, RDOConfig(metric=Metric.SSE, qp=30), [30])
        self.assertEqual(len(curve), 1)
        point = curve.points[0]
        self.assertEqual(point.qp, 30)
        self.assertEqual(point.bpp, point.bits / 4096.0)
        self.assertTrue(math.isfinite(point.psnr))
        self.assertTrue(math.isnan(point.idse))
        self.assertTrue(math.isnan(point.feature_distance))
        self.assertEqual(point.encode_flops, 0)
        self.assertEqual(curve.label, 'sse')
        self.assertEqual(curve.metadata['metric'], 'sse')

    def test_rejects_duplicate_qps(self):
        with self.assertRaises(InvalidSweep):
            sweep(self.plane, RDOConfig(metric=Metric.SSE, qp=30), [28, 28, 30])

    def test_idse_curve_is_monotone(self):
        curve = sweep(self.plane, idse_config(self.plane, net=DEFAULT_NET), SWEEP_QPS, net=DEFAULT_NET)
        self.assertEqual(curve.qps, SWEEP_QPS)
        bits = [p.bits for p in curve.points]
        for previous, current in zip(bits, bits[1:]):
            self.assertLessEqual(current, previous * 1.01)
        self.assertLess(bits[-1], bits[0])
        self.assertGreater(curve.points[-1].idse, curve.points[0].idse)
        self.assertEqual(curve.metadata['sketch'], 'rademacher')
        self.assertEqual(curve.metadata['generator'], 'numpy.random.Philox')

    def test_jacobian_computed_once(self):
        service = SweepService(NET)
        curve = service.sweep(self.plane, idse_config(self.plane), [28, 32, 36])
        self.assertEqual(service.counters.backward_passes, 0)
        flops = {p.encode_flops for p in curve.points}
        self.assertEqual(len(flops), 1)
        self.assertGreater(flops.pop(), 0)

    def test_sse_sweep_measures_without_paying(self):
        config = RDOConfig(metric=Metric.SSE, qp=30, sketch=sketch_spec_for(NET, self.plane, 'rademacher', 4, 2))
        curve = SweepService(NET).sweep(self.plane, config, [28, 34], label='anchor')
        self.assertEqual(curve.label, 'anchor')
        for point in curve.points:
            self.assertEqual(point.encode_flops, 0)
            self.assertTrue(math.isfinite(point.idse))
            self.assertTrue(math.isfinite(point.feature_distance))
        self.assertIn('tau', curve.metadata)

    def test_decisions_kept_per_qp(self):
        service = SweepService(NET)
        service.sweep(self.plane, idse_config(self.plane), [28, 34])
        self.assertEqual(sorted(service.decisions), [28, 34])
        for decisions in service.decisions.values():
            self.assertEqual([d.index for d in decisions], list(range(16)))
        service.sweep(self.plane, RDOConfig(metric=Metric.SSE, qp=30), [30])
        self.assertEqual(list(service.decisions), [30])


class PoolCurvesTestCase(SimpleTestCase):
    """Test cases for corpus-level curve pooling"""

    def setUp(self):
        self.first = curve_of(
            'idse',
            [(28, 400, 0.25, 36.0, 10.0, 4.0, 100), (32, 200, 0.125, 32.0, 30.0, 9.0, 100)],
            metric='idse', seed='0',
        )
        self.second = curve_of(
            'idse',
            [(28, 600, 0.75, 34.0, 20.0, 6.0, 50), (32, 300, 0.375, 30.0, 50.0, 11.0, 50)],
            metric='idse', seed='1',
        )

    def test_sums_and_means(self):
        pooled = pool_curves([self.first, self.second], 'corpus')
        self.assertEqual(pooled.label, 'corpus')
        self.assertEqual(pooled.qps, [28, 32])
        first, second = pooled.points
        self.assertEqual(first.bits, 1000)
        self.assertAlmostEqual(first.bpp, 1000 / 2400.0, places=12)
        self.assertAlmostEqual(first.psnr, 35.0, places=12)
        self.assertAlmostEqual(first.idse, 30.0, places=12)
        self.assertAlmostEqual(second.feature_distance, 20.0, places=12)
        self.assertEqual(second.encode_flops, 150)

    def test_keeps_shared_metadata(self):
        pooled = pool_curves([self.first, self.second], 'corpus')
        self.assertEqual(pooled.metadata, {'metric': 'idse', 'images': '2'})

    def test_mismatched_qps(self):
        other = curve_of('sse', [(28, 500, 0.5, 35.0, 1.0, 1.0, 0), (36, 100, 0.1, 28.0, 9.0, 9.0, 0)])
        with self.assertRaises(MismatchedCurves):
            pool_curves([self.first, other], 'corpus')
        with self.assertRaises(ValidationException):
            pool_curves([], 'corpus')


class TaylorRegimeTestCase(SimpleTestCase):
    """Test cases for the first-order accuracy experiment"""

    def test_linear_net_has_no_gap(self):
        kernel = np.random.default_rng(3).normal(size=(6, 256)).astype(np.float32)
        spec = FeatNetSpec(layers=(Dense(256, 6),))
        params = LayerParams(kernel=kernel, bias=np.zeros(6, dtype=np.float32))
        net = FeatNet(spec=spec, weights=FeatNetWeights(params=(params,)))
        gaps = taylor_regime(ImagePlaneFactory(width=16, height=16, seed=1), net, [20, 36])
        self.assertEqual(sorted(gaps), [20, 36])
        for gap in gaps.values():
            self.assertLess(gap, 1e-6)

    def test_gap_shrinks_at_fine_quantization(self):
        net = init_random(default_spec(activation='softplus'), seed=5)
        gaps = taylor_regime(ImagePlaneFactory(width=128, height=128, seed=2), net, [36, 28, 20, 12])
        self.assertEqual(sorted(gaps), [12, 20, 28, 36])
        self.assertLess(gaps[12], gaps[20])
        self.assertLess(gaps[20], gaps[28])
        self.assertLess(gaps[28], gaps[36])


class MonotonicityTestCase(SimpleTestCase):
    """Test cases for per-block feature distance across a sweep"""

    def test_report_shape(self):
        plane = ImagePlaneFactory(width=32, height=32, seed=8)
        report = fd_monotonicity(plane, RDOConfig(metric=Metric.SSE, qp=30), [24, 30, 36], NET)
        self.assertEqual(report.qps, (24, 30, 36))
        self.assertEqual(report.distances.shape, (3, 4))
        self.assertTrue(np.all(report.distances >= 0))

    def test_non_monotone_blocks(self):
        report = MonotonicityReport(qps=(26, 30, 34), distances=np.array([[1.0, 2.0], [2.0, 1.0], [3.0, 3.0]]))
        self.assertEqual(report.non_monotone_blocks, [1])


class AggregationTestCase(SimpleTestCase):
    """Test cases for the region versus block-sum correlation"""

    QPS = [24, 27, 30, 33, 36]

    def test_correlation_is_finite(self):
        plane = ImagePlaneFactory(width=256, height=256, seed=4)
        report = aggregation_correlation(plane, NET, self.QPS)
        self.assertEqual(report.samples, 20)
        self.assertEqual(report.block_sums.shape, (20,))
        self.assertTrue(math.isfinite(report.r))
        self.assertLessEqual(abs(report.r), 1.0 + 1e-12)

    def test_describe_carries_reference(self):
        report = CorrelationReport(r=0.9912, region_distances=np.ones(20), block_sums=np.ones(20))
        self.assertEqual(report.describe(), f"r=0.9912 referencia={REFERENCE_CORRELATION} muestras=20")
        self.assertEqual(REFERENCE_CORRELATION, 0.997)

    def test_too_few_regions(self):
        with self.assertRaises(InsufficientRegions):
            aggregation_correlation(ImagePlaneFactory(width=128, height=128), NET, self.QPS)

    def test_constant_features(self):
        plane = ImagePlaneFactory(width=256, height=256, seed=4)
        with self.assertRaises(DegenerateCorrelation):
            aggregation_correlation(plane, zero_weights(default_spec()), self.QPS)


class CorpusSweepTestCase(SimpleTestCase):
    """Test cases for IDSE against SSE over a ten-image corpus with the default extractor"""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.planes = [ImagePlaneFactory(width=128, height=128, seed=k) for k in range(10)]
        cls.sse_curves, cls.idse_curves = [], []
        service = SweepService(DEFAULT_NET)
        for k, plane in enumerate(cls.planes):
            spec = sketch_spec_for(DEFAULT_NET, plane, 'rademacher', 8, k)
            sse = RDOConfig(metric=Metric.SSE, qp=30, sketch=spec)
            idse = RDOConfig(metric=Metric.IDSE, qp=30, sketch=spec)
            jacobian, _ = service.jacobian_for(plane, idse)
            cls.sse_curves.append(service.sweep(plane, sse, SWEEP_QPS, jacobian))
            cls.idse_curves.append(service.sweep(plane, idse, SWEEP_QPS, jacobian))

    def test_idse_curves_are_stepwise_monotone(self):
        for curve in self.idse_curves:
            for previous, current in zip(curve.points, curve.points[1:]):
                self.assertLessEqual(current.bits, previous.bits * 1.01)
                self.assertGreaterEqual(current.idse, previous.idse * 0.99)

    def test_idse_saves_rate_at_equal_feature_distance(self):
        anchor = pool_curves(self.sse_curves, 'sse')
        test = pool_curves(self.idse_curves, 'idse')
        self.assertEqual(anchor.metadata['images'], '10')
        self.assertLess(bd_rate(anchor, test, QualityAxis.NEG_FEATDIST), 0.0)

    def test_trace_normalisation_keeps_rate_near_sse(self):
        anchor = pool_curves(self.sse_curves, 'sse')
        test = pool_curves(self.idse_curves, 'idse')
        for sse_point, idse_point in zip(anchor.points, test.points):
            self.assertLess(abs(idse_point.bits / sse_point.bits - 1.0), 0.25)

    def test_isolated_block_distance_is_not_monotone(self):
        plane = self.planes[0]
        config = RDOConfig(metric=Metric.SSE, qp=30)
        report = fd_monotonicity(plane, config, SWEEP_QPS, DEFAULT_NET)
        self.assertEqual(report.distances.shape, (6, 64))
        self.assertGreater(len(report.non_monotone_blocks), 0)
