"""
PGM Repository Tests
Tests for PGM ingestion and macroblock padding
"""

import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from apps.imaging.domain.exceptions import InvalidImageFormat
from apps.imaging.infrastructure.pgm import (
    PGMImageRepository,
    encode_pgm,
    load_image,
    parse_pgm,
)
from shared.domain.exceptions import NotFoundException


class PGMRepositoryTestCase(SimpleTestCase):
    """Test cases for reading and writing binary PGM files"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.repository = PGMImageRepository()

    def write(self, name, data):
        path = Path(self.tmp.name) / name
        path.write_bytes(data)
        return path

    def test_constant_image_without_padding(self):
        """A 16x16 image keeps its size and samples"""
        path = self.write('flat.pgm', encode_pgm(np.full((16, 16), 128, dtype=np.uint8)))
        plane = load_image(path)

        self.assertEqual((plane.width, plane.height), (16, 16))
        self.assertTrue(np.all(plane.pixels == 128))

    def test_edge_replication_padding(self):
        """A 17x16 image pads to 32x16 replicating the last column"""
        pixels = np.arange(16 * 17, dtype=np.uint8).reshape(16, 17)
        plane = load_image(self.write('ramp.pgm', encode_pgm(pixels)))

        self.assertEqual((plane.width, plane.height), (32, 16))
        self.assertEqual((plane.orig_width, plane.orig_height), (17, 16))
        for col in range(17, 32):
            np.testing.assert_array_equal(plane.pixels[:, col], pixels[:, 16])
        np.testing.assert_array_equal(plane.visible_pixels, pixels)

    def test_large_image_block_count(self):
        """A 768x768 image has 2304 macroblocks"""
        pixels = np.zeros((768, 768), dtype=np.uint8)
        plane = load_image(self.write('big.pgm', encode_pgm(pixels)))
        self.assertEqual(plane.grid().n_b, 2304)

    def test_padding_is_idempotent(self):
        """Loading an already padded image changes no samples"""
        rng = np.random.default_rng(3)
        pixels = rng.integers(0, 256, size=(21, 35), dtype=np.uint8)
        first = load_image(self.write('a.pgm', encode_pgm(pixels)))
        second = load_image(self.write('b.pgm', encode_pgm(first.pixels)))
        np.testing.assert_array_equal(first.pixels, second.pixels)

    def test_comment_after_magic_is_tolerated(self):
        """Comment lines after the magic number are skipped"""
        data = b'P5\n# created by a scanner\n2 1\n255\n' + bytes([7, 9])
        np.testing.assert_array_equal(parse_pgm(data), [[7, 9]])

    def test_rejects_wrong_maxval(self):
        """Only maxval 255 is accepted"""
        with self.assertRaises(InvalidImageFormat):
            parse_pgm(b'P5 2 1 1023\n' + bytes(4))

    def test_rejects_wrong_magic(self):
        """ASCII PGM and other formats are rejected"""
        with self.assertRaises(InvalidImageFormat):
            parse_pgm(b'P2 2 1 255\n1 2')

    def test_rejects_truncated_raster(self):
        """Missing raster bytes raise a format error"""
        with self.assertRaises(InvalidImageFormat):
            parse_pgm(b'P5 4 4 255\n' + bytes(10))

    def test_missing_file(self):
        """Unreadable paths raise NotFoundException"""
        with self.assertRaises(NotFoundException):
            load_image(Path(self.tmp.name) / 'missing.pgm')

    def test_write_read_round_trip(self):
        """Saved PGMs read back identically"""
        rng = np.random.default_rng(11)
        pixels = rng.integers(0, 256, size=(34, 67), dtype=np.uint8)
        path = Path(self.tmp.name) / 'rt.pgm'
        self.repository.save(path, pixels)
        np.testing.assert_array_equal(parse_pgm(path.read_bytes()), pixels)
