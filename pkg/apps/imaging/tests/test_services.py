"""
Imaging Service Tests
Tests for block extraction and PSNR
"""

import math

import numpy as np
from django.test import SimpleTestCase

from apps.imaging.application.services import (
    PSNR_IDENTICAL,
    assemble_blocks,
    extract_block,
    extract_blocks,
    psnr,
)
from apps.imaging.domain.entities import ImagePlane
from apps.imaging.domain.exceptions import BlockIndexOutOfRange, DimensionMismatch


class BlockExtractionTestCase(SimpleTestCase):
    """Test cases for macroblock extraction"""

    def test_constant_plane(self):
        plane = ImagePlane.from_array(np.full((32, 48), 128, dtype=np.uint8))
        for i in range(plane.grid().n_b):
            np.testing.assert_array_equal(extract_block(plane, i), np.full(256, 128.0))

    def test_single_bright_pixel(self):
        pixels = np.zeros((32, 32), dtype=np.uint8)
        pixels[0, 0] = 255
        vector = extract_block(ImagePlane.from_array(pixels), 0)
        self.assertEqual(vector[0], 255.0)
        self.assertEqual(np.count_nonzero(vector), 1)

    def test_ramp_matches_slicing_oracle(self):
        pixels = (np.arange(48 * 64) % 251).astype(np.uint8).reshape(48, 64)
        plane = ImagePlane.from_array(pixels)
        grid = plane.grid()
        for i in range(grid.n_b):
            row, col = divmod(i, 64 // 16)
            expected = [
                float(pixels[row * 16 + y, col * 16 + x])
                for y in range(16) for x in range(16)
            ]
            np.testing.assert_array_equal(extract_block(plane, i), expected)

    def test_reassembly_reproduces_plane(self):
        rng = np.random.default_rng(5)
        plane = ImagePlane.from_array(rng.integers(0, 256, size=(48, 80), dtype=np.uint8))
        rebuilt = assemble_blocks(extract_blocks(plane), plane.grid())
        np.testing.assert_array_equal(rebuilt, plane.pixels)

    def test_index_out_of_range(self):
        plane = ImagePlane.from_array(np.zeros((16, 16), dtype=np.uint8))
        with self.assertRaises(BlockIndexOutOfRange):
            extract_block(plane, 1)
        with self.assertRaises(BlockIndexOutOfRange):
            extract_block(plane, -1)


class PSNRTestCase(SimpleTestCase):
    """Test cases for PSNR over the unpadded region"""

    def test_identical_planes(self):
        plane = ImagePlane.from_array(np.full((16, 16), 9, dtype=np.uint8))
        self.assertEqual(psnr(plane, plane), PSNR_IDENTICAL)

    def test_zero_vs_one(self):
        a = ImagePlane.from_array(np.zeros((16, 16), dtype=np.uint8))
        b = ImagePlane.from_array(np.ones((16, 16), dtype=np.uint8))
        self.assertAlmostEqual(psnr(a, b), 10 * math.log10(255 ** 2), places=9)
        self.assertAlmostEqual(psnr(a, b), 48.1308036, places=6)

    def test_random_pair_matches_double_loop(self):
        rng = np.random.default_rng(8)
        pa = rng.integers(0, 256, size=(32, 32), dtype=np.uint8)
        pb = rng.integers(0, 256, size=(32, 32), dtype=np.uint8)
        a = ImagePlane.from_array(pa, orig_width=30, orig_height=20)
        b = ImagePlane.from_array(pb, orig_width=30, orig_height=20)

        total = 0.0
        for y in range(20):
            for x in range(30):
                total += (float(pa[y, x]) - float(pb[y, x])) ** 2
        expected = 10 * math.log10(255 ** 2 / (total / 600))

        self.assertLess(abs(psnr(a, b) - expected), 1e-9)
        self.assertEqual(psnr(a, b), psnr(b, a))

    def test_dimension_mismatch(self):
        a = ImagePlane.from_array(np.zeros((16, 16), dtype=np.uint8))
        b = ImagePlane.from_array(np.zeros((16, 32), dtype=np.uint8))
        with self.assertRaises(DimensionMismatch):
            psnr(a, b)
