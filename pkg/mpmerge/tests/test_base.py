# -*- coding: utf-8 -*-

"""UNIT TESTS FOR BASE.

This module contains unit tests for the mpmerge.base module.

:Author: mpmerge developers

"""

import os
import threading
from unittest import TestCase, mock

import numpy as np
import numpy.testing as npt

from mpmerge.base import observable, rng, transform, types
from mpmerge.interface.errors import ConfigError, DataError, ShapeError


class TypesTestCase(TestCase):
    """Test case for types module."""

    def setUp(self):
        """Set test parameter values."""
        self.data1 = [[3, 4], [1, 0]]
        self.data2 = np.array([[1.0, np.nan]])
        self.data3 = np.arange(6).reshape(2, 3)

    def tearDown(self):
        """Unset test parameter values."""
        self.data1 = None
        self.data2 = None
        self.data3 = None

    def test_check_tokens(self):
        """Test check_tokens."""
        tokens = types.check_tokens(self.data1)

        npt.assert_equal(tokens.dtype, np.float32, err_msg='Incorrect dtype')
        npt.assert_array_equal(
            tokens,
            np.array([[3, 4], [1, 0]], dtype=np.float32),
            err_msg='Incorrect tokens',
        )

        npt.assert_raises(DataError, types.check_tokens, self.data2)
        npt.assert_raises(ShapeError, types.check_tokens, np.zeros(3))
        npt.assert_raises(ShapeError, types.check_tokens, np.zeros((0, 3)))
        npt.assert_raises(ShapeError, types.check_tokens, np.zeros((3, 0)))
        npt.assert_raises(TypeError, types.check_tokens, '1')

    def test_check_special_tokens(self):
        """Test check_special_tokens."""
        npt.assert_equal(
            types.check_special_tokens([], 4).shape,
            (0, 4),
            err_msg='Empty special tokens not accepted',
        )

        npt.assert_raises(
            ShapeError,
            types.check_special_tokens,
            self.data3,
            4,
        )

    def test_check_npndarray(self):
        """Test check_npndarray."""
        npt.assert_raises(
            TypeError,
            types.check_npndarray,
            self.data3,
            dtype=np.floating,
        )

        npt.assert_raises(TypeError, types.check_npndarray, self.data1)

    def test_validate_merge_map(self):
        """Test validate_merge_map."""
        types.validate_merge_map(np.array([0, 1, 0, 2]), 3)
        types.validate_merge_map(np.array([0, 0, 0]), 1, None)

        npt.assert_raises(
            DataError,
            types.validate_merge_map,
            np.array([0, 0, 0]),
            1,
        )
        npt.assert_raises(
            DataError,
            types.validate_merge_map,
            np.array([1, 0]),
            2,
        )
        npt.assert_raises(
            DataError,
            types.validate_merge_map,
            np.array([0, 2, 2]),
            3,
        )
        npt.assert_raises(
            DataError,
            types.validate_merge_map,
            np.array([0, 1]),
            1,
        )
        npt.assert_raises(ShapeError, types.validate_merge_map, [], 0)

    def test_merge_map(self):
        """Test MergeMap."""
        merge_map = types.MergeMap([0, 1, 0, 2])

        npt.assert_equal(merge_map.n_clusters, 3, err_msg='Wrong N prime')
        npt.assert_equal(len(merge_map), 4, err_msg='Wrong length')
        npt.assert_equal(
            merge_map.entries.dtype,
            np.uint32,
            err_msg='Wrong map dtype',
        )
        npt.assert_array_equal(
            merge_map.cluster_sizes(),
            [2, 1, 1],
            err_msg='Wrong cluster sizes',
        )
        npt.assert_almost_equal(
            merge_map.merged_fraction(),
            0.25,
            err_msg='Wrong merged fraction',
        )
        npt.assert_equal(
            merge_map == types.MergeMap(np.array([0, 1, 0, 2])),
            True,
            err_msg='Equal maps compare unequal',
        )
        npt.assert_raises(ValueError, merge_map.entries.__setitem__, 0, 1)

        identity = types.MergeMap.identity(5)
        npt.assert_equal(identity.is_identity(), True, err_msg='Not identity')
        npt.assert_array_equal(identity.entries, np.arange(5))

        npt.assert_raises(DataError, types.MergeMap, [0, 0, 0])
        npt.assert_raises(DataError, types.MergeMap, [0, -1])
        npt.assert_raises(TypeError, types.MergeMap, [0.0, 1.0])


class RngTestCase(TestCase):
    """Test case for rng module."""

    def test_get_rng(self):
        """Test get_rng."""
        npt.assert_array_equal(
            rng.get_rng(7).random(10),
            rng.get_rng(7).random(10),
            err_msg='Seeded draws differ',
        )

        draws = rng.get_rng(7).random(10), rng.get_rng(8).random(10)
        npt.assert_equal(
            np.array_equal(*draws),
            False,
            err_msg='Different seeds give identical draws',
        )

        npt.assert_equal(
            type(rng.get_rng(0).bit_generator).__name__,
            'Philox',
            err_msg='Wrong bit generator',
        )

        npt.assert_raises(ConfigError, rng.get_rng, -1)
        npt.assert_raises(ConfigError, rng.get_rng, 1.5)

    def test_resolve_seed(self):
        """Test resolve_seed."""
        with mock.patch.dict(os.environ, {rng.SEED_ENV_VAR: '42'}):
            npt.assert_equal(rng.resolve_seed(3), 42, err_msg='Env ignored')

        with mock.patch.dict(os.environ, {rng.SEED_ENV_VAR: ''}):
            npt.assert_equal(rng.resolve_seed(3), 3, err_msg='Empty env used')

        with mock.patch.dict(os.environ, {rng.SEED_ENV_VAR: 'x'}):
            npt.assert_raises(ConfigError, rng.resolve_seed, 3)

    def test_random_tokens(self):
        """Test random_tokens."""
        tokens = rng.random_tokens(rng.get_rng(0), 5, 3)

        npt.assert_equal(tokens.shape, (5, 3), err_msg='Wrong shape')
        npt.assert_equal(tokens.dtype, np.float32, err_msg='Wrong dtype')
        npt.assert_equal(
            np.all((tokens >= -1) & (tokens < 1)),
            True,
            err_msg='Tokens out of range',
        )


class TransformTestCase(TestCase):
    """Test case for transform module."""

    def setUp(self):
        """Set test parameter values."""
        self.image = np.arange(16).reshape(4, 4)
        self.rgb = np.arange(96).reshape(4, 8, 3)

    def tearDown(self):
        """Unset test parameter values."""
        self.image = None
        self.rgb = None

    def test_image_to_patches(self):
        """Test image_to_patches."""
        npt.assert_array_equal(
            transform.image_to_patches(self.image, 2),
            np.array([
                [0, 1, 4, 5],
                [2, 3, 6, 7],
                [8, 9, 12, 13],
                [10, 11, 14, 15],
            ]),
            err_msg='Incorrect raster-order patches',
        )

        npt.assert_raises(
            ShapeError,
            transform.image_to_patches,
            self.image,
            3,
        )

    def test_patches_to_image(self):
        """Test patches_to_image."""
        patches = transform.image_to_patches(self.rgb, 2)

        npt.assert_equal(patches.shape, (8, 12), err_msg='Wrong patch shape')
        npt.assert_array_equal(
            transform.patches_to_image(patches, (2, 4), 2),
            self.rgb,
            err_msg='Incorrect image reassembly',
        )

        npt.assert_raises(
            ShapeError,
            transform.patches_to_image,
            patches,
            (3, 4),
            2,
        )

    def test_patch_grid(self):
        """Test patch_grid."""
        npt.assert_equal(
            transform.patch_grid((512, 512, 3), 16),
            (32, 32),
            err_msg='Wrong grid',
        )


class ObservableTestCase(TestCase):
    """Test case for observable module."""

    def setUp(self):
        """Set test parameter values."""
        self.observable = observable.Observable(['mpm'])
        self.received = []

    def tearDown(self):
        """Unset test parameter values."""
        self.observable = None
        self.received = None

    def _callback(self, signal):
        self.received.append((signal.block, signal.n_in, signal.n_out))

    def test_observers(self):
        """Test add_observer, notify_observers and remove_observer."""
        self.observable.add_observer('mpm', self._callback)

        npt.assert_equal(
            self.observable.notify_observers('mpm', block=2, n_in=8, n_out=5),
            True,
            err_msg='Notification failed',
        )
        npt.assert_equal(self.received, [(2, 8, 5)], err_msg='No signal')

        self.observable.remove_observer('mpm', self._callback)
        self.observable.notify_observers('mpm', block=3, n_in=5, n_out=4)

        npt.assert_equal(len(self.received), 1, err_msg='Observer not removed')
        npt.assert_raises(
            ValueError,
            self.observable.add_observer,
            'cost',
            self._callback,
        )

    def test_threaded_notifications(self):
        """Test that no notification is lost across threads."""
        self.observable.add_observer('mpm', self._callback)

        def notify():
            for _ in range(50):
                self.observable.notify_observers(
                    'mpm',
                    block=0,
                    n_in=2,
                    n_out=1,
                )

        threads = [threading.Thread(target=notify) for _ in range(4)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()

        npt.assert_equal(len(self.received), 200, err_msg='Lost signals')

    def test_merge_rate_observer(self):
        """Test MergeRateObserver."""
        rates = observable.MergeRateObserver()
        self.observable.add_observer('mpm', rates)

        self.observable.notify_observers('mpm', block=2, n_in=8, n_out=6)
        self.observable.notify_observers('mpm', block=2, n_in=8, n_out=4)
        self.observable.notify_observers('mpm', block=5, n_in=4, n_out=3)

        npt.assert_equal(
            rates.retrieve_rates(),
            {2: 0.375, 5: 0.25},
            err_msg='Incorrect merge rates',
        )

        rates.reset()
        npt.assert_equal(rates.retrieve_rates(), {}, err_msg='Reset failed')
