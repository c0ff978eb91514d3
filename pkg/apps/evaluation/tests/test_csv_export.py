"""
Curve Export Tests
Tests for the curve CSV, the gnuplot .dat file and the decision log sibling
"""

import csv
import math
import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from apps.coding.domain.entities import ModeId
from apps.evaluation.domain.entities import RDCurve, RDPoint
from apps.evaluation.infrastructure.csv_export import (
    CURVE_COLUMNS,
    emit_csv,
    parse_metadata,
    read_curves,
    write_curves,
    write_dat,
)
from apps.rdo.domain.entities import BlockDecision
from apps.rdo.infrastructure.decision_log import DECISION_COLUMNS
from shared.domain.exceptions import NotFoundException


def sample_curve(label='idse', scale=1.0):
    points = tuple(
        RDPoint(
            qp=qp,
            bits=int(4096 * scale) >> k,
            bpp=(int(4096 * scale) >> k) / 4096.0,
            psnr=38.0 - 1.5 * k,
            idse=0.25 * (k + 1),
            feature_distance=math.nan if label == 'sse' else 0.5 * (k + 1),
            encode_flops=1234567,
        )
        for k, qp in enumerate((26, 30, 34, 38))
    )
    metadata = {'metric': label, 'sketch': 'rademacher', 'ell': '8', 'seed': '0', 'generator': 'numpy.random.Philox'}
    return RDCurve(label=label, points=points, metadata=metadata)


class CurveExportTestCase(SimpleTestCase):
    """Test cases for curve CSV and .dat export"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_empty_list_writes_header_only(self):
        path = self.dir / 'empty.csv'
        write_curves(path, [])
        self.assertEqual(path.read_text(), ','.join(CURVE_COLUMNS) + '\n')
        self.assertEqual(read_curves(path), [])

    def test_metadata_comment(self):
        path = self.dir / 'c.csv'
        write_curves(path, [sample_curve()])
        lines = path.read_text().splitlines()
        self.assertEqual(lines[:7], [
            '# label=idse',
            '# ell=8',
            '# generator=numpy.random.Philox',
            '# metric=idse',
            '# seed=0',
            '# sketch=rademacher',
            ','.join(CURVE_COLUMNS),
        ])
        self.assertEqual(parse_metadata(lines[5]), ('sketch', 'rademacher'))

    def test_values_with_spaces_and_equals(self):
        path = self.dir / 'spaces.csv'
        curve = sample_curve('idse l=8 rademacher')
        curve = RDCurve(
            label=curve.label,
            points=curve.points,
            metadata={**curve.metadata, 'weights': '/tmp/mis pesos/red a=1.bin'},
        )
        write_curves(path, [curve, sample_curve('sse')])
        loaded = read_curves(path)
        self.assertEqual([c.label for c in loaded], ['idse l=8 rademacher', 'sse'])
        self.assertEqual(loaded[0].metadata['weights'], '/tmp/mis pesos/red a=1.bin')
        self.assertEqual(loaded[0].metadata['metric'], 'idse l=8 rademacher')
        self.assertNotIn('weights', loaded[1].metadata)

    def test_comment_without_pair_ignored(self):
        self.assertIsNone(parse_metadata('# curvas del corpus'))
        self.assertEqual(parse_metadata('#tau=0.5'), ('tau', '0.5'))

    def test_read_back(self):
        path = self.dir / 'c.csv'
        curves = [sample_curve('idse'), sample_curve('sse', scale=1.2)]
        write_curves(path, curves)
        loaded = read_curves(path)
        self.assertEqual([c.label for c in loaded], ['idse', 'sse'])
        self.assertEqual(loaded[0].points, curves[0].points)
        self.assertEqual(loaded[0].metadata, curves[0].metadata)
        self.assertEqual(loaded[1].qps, [26, 30, 34, 38])
        self.assertTrue(all(math.isnan(p.feature_distance) for p in loaded[1].points))

    def test_deterministic_bytes(self):
        first, second = self.dir / 'a.csv', self.dir / 'b.csv'
        write_curves(first, [sample_curve()])
        write_curves(second, [sample_curve()])
        self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_dat_blocks(self):
        path = self.dir / 'c.dat'
        write_dat(path, [sample_curve('idse'), sample_curve('sse')])
        blocks = path.read_text().rstrip('\n').split('\n\n\n')
        self.assertEqual(len(blocks), 2)
        lines = blocks[1].splitlines()
        self.assertEqual(lines[0], '# sse')
        self.assertEqual(lines[1], '# qp bpp psnr idse feature_distance bits')
        self.assertEqual(len(lines), 2 + 4)
        self.assertEqual(lines[2].split()[0], '26')

    def test_emit_csv_with_decisions(self):
        decisions = [
            BlockDecision(index=i, mode=ModeId.T16 if i % 2 else ModeId.T4, distortion=1.5, bits=20, cost=3.0)
            for i in range(3)
        ]
        written = emit_csv([sample_curve()], self.dir / 'run.csv', decisions)
        self.assertEqual([p.name for p in written], ['run.csv', 'run.dat', 'run_decisions.csv'])
        self.assertTrue(all(p.exists() for p in written))
        with written[2].open(newline='') as handle:
            reader = csv.DictReader(handle)
            rows = list(reader)
        self.assertEqual(reader.fieldnames, DECISION_COLUMNS)
        self.assertEqual([row['mode'] for row in rows], ['T4', 'T16', 'T4'])

    def test_emit_csv_without_decisions(self):
        written = emit_csv([sample_curve()], self.dir / 'run.csv')
        self.assertEqual(len(written), 2)
        self.assertFalse((self.dir / 'run_decisions.csv').exists())

    def test_missing_file(self):
        with self.assertRaises(NotFoundException):
            read_curves(self.dir / 'none.csv')
