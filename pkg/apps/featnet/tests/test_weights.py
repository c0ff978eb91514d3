"""
Weights Repository Tests
Tests for the binary weight file format and the gen_weights command
"""

import struct
import tempfile
from io import StringIO
from pathlib import Path

import numpy as np
from django.core.management import call_command
from django.test import SimpleTestCase

from apps.featnet.application.services import default_net, init_random
from apps.featnet.domain.entities import FeatNetSpec, default_spec
from apps.featnet.domain.exceptions import InvalidWeights, WeightsFormatError
from apps.featnet.domain.layers import AvgPool, Conv2D, Dense, Softplus
from apps.featnet.infrastructure.weights import (
    WEIGHTS_MAGIC,
    deserialize_net,
    load_weights,
    save_weights,
    serialize_net,
)
from shared.domain.exceptions import NotFoundException


class WeightsFormatTestCase(SimpleTestCase):
    """Test cases for weight persistence"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.path = Path(self.tmp.name) / 'net.bin'

    def tearDown(self):
        self.tmp.cleanup()

    def test_save_then_load_is_bitwise_identical(self):
        net = init_random(default_spec(activation='softplus', beta=7.5), seed=3)
        save_weights(self.path, net)
        loaded = load_weights(self.path)
        self.assertEqual(loaded.spec, net.spec)
        self.assertTrue(loaded.weights.bitwise_equal(net.weights))
        self.assertEqual(serialize_net(loaded), self.path.read_bytes())

    def test_round_trip_with_dense_layer(self):
        spec = FeatNetSpec(layers=(Conv2D(1, 2), AvgPool(2), Softplus(3.0), Dense(2 * 4 * 4, 3)))
        net = init_random(spec, seed=9)
        loaded = deserialize_net(serialize_net(net))
        self.assertEqual(loaded.spec, spec)
        self.assertTrue(loaded.weights.bitwise_equal(net.weights))

    def test_header_layout(self):
        data = serialize_net(init_random(default_spec(), seed=1))
        magic, version, n_layers = struct.unpack_from('<4sHH', data)
        self.assertEqual(magic, WEIGHTS_MAGIC)
        self.assertEqual(version, 1)
        self.assertEqual(n_layers, 6)
        scale, offset = struct.unpack_from('<dd', data, 8)
        self.assertEqual(scale, 1.0 / 255.0)
        self.assertEqual(offset, 0.0)

    def test_wrong_magic(self):
        data = bytearray(serialize_net(init_random(default_spec(), seed=1)))
        data[0:4] = b'XXXX'
        with self.assertRaises(WeightsFormatError):
            deserialize_net(bytes(data))

    def test_wrong_version(self):
        data = bytearray(serialize_net(init_random(default_spec(), seed=1)))
        data[4:6] = struct.pack('<H', 99)
        with self.assertRaises(WeightsFormatError):
            deserialize_net(bytes(data))

    def test_truncated_file(self):
        data = serialize_net(init_random(default_spec(), seed=1))
        for cut in (3, 30, len(data) - 1):
            with self.assertRaises(WeightsFormatError):
                deserialize_net(data[:cut])

    def test_trailing_bytes_rejected(self):
        data = serialize_net(init_random(default_spec(), seed=1))
        with self.assertRaises(WeightsFormatError):
            deserialize_net(data + b'\x00')

    def test_declared_spec_mismatch(self):
        save_weights(self.path, init_random(default_spec(depth=1), seed=1))
        with self.assertRaises(InvalidWeights):
            load_weights(self.path, spec=default_spec(depth=2))

    def test_missing_file(self):
        with self.assertRaises(NotFoundException):
            load_weights(Path(self.tmp.name) / 'missing.bin')

    def test_floats_stored_little_endian(self):
        spec = FeatNetSpec(layers=(Conv2D(1, 1),))
        net = init_random(spec, seed=2)
        data = serialize_net(net)
        kernel = np.frombuffer(data[-40:-4], dtype='<f4')
        np.testing.assert_array_equal(kernel, net.weights.params[0].kernel.reshape(-1))


class GenWeightsCommandTestCase(SimpleTestCase):
    """Test cases for the gen_weights management command"""

    def test_generates_loadable_weights(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / 'gen.bin'
            stdout = StringIO()
            call_command('gen_weights', '--out', str(out), '--seed', '5', stdout=stdout)
            net = load_weights(out, spec=default_spec())
            self.assertTrue(net.weights.bitwise_equal(init_random(default_spec(), seed=5).weights))
            self.assertIn('seed=5', stdout.getvalue())

    def test_softplus_depth_three(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / 'deep.bin'
            call_command(
                'gen_weights', '--out', str(out), '--depth', '3',
                '--activation', 'softplus', stdout=StringIO(),
            )
            net = load_weights(out)
            self.assertEqual(len(net.spec.layers), 9)
            self.assertIsInstance(net.spec.layers[1], Softplus)

    def test_centered_flags_reproduce_default_extractor(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / 'centered.bin'
            call_command(
                'gen_weights', '--out', str(out), '--seed', '4', '--activation', 'softplus',
                '--beta', '20', '--centered', '--bias-shift', '-0.1', stdout=StringIO(),
            )
            net = load_weights(out)
            self.assertTrue(net.weights.bitwise_equal(default_net(4).weights))
