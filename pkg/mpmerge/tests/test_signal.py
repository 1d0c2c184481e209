# -*- coding: utf-8 -*-

"""UNIT TESTS FOR SIGNAL.

This module contains unit tests for the mpmerge.signal module.

:Author: mpmerge developers

"""

from unittest import TestCase

import numpy as np
import numpy.testing as npt

from mpmerge.base.rng import get_rng
from mpmerge.base.transform import image_to_patches
from mpmerge.interface.errors import ShapeError
from mpmerge.signal import noise, synthetic


def _patch_duplicates(image, patch):
    """Count patches whose content occurs more than once."""
    patches = image_to_patches(image, patch)
    _, inverse, counts = np.unique(
        patches,
        axis=0,
        return_inverse=True,
        return_counts=True,
    )

    return int(np.sum(counts[np.ravel(inverse)] > 1))


class NoiseTestCase(TestCase):
    """Test case for noise module."""

    def setUp(self):
        """Set test parameter values."""
        self.data1 = np.arange(9).reshape(3, 3).astype(float)
        self.image = get_rng(5).random((8, 8, 3))

    def tearDown(self):
        """Unset test parameter values."""
        self.data1 = None
        self.image = None

    def test_add_noise_gauss(self):
        """Test add_noise with Gaussian noise."""
        npt.assert_allclose(
            noise.add_noise(self.data1, get_rng(1), sigma=0.1),
            self.data1 + 0.1 * get_rng(1).standard_normal((3, 3)),
            err_msg='Incorrect Gaussian noise',
        )
        npt.assert_array_equal(
            noise.add_noise(self.data1, get_rng(1), sigma=0.0),
            self.data1,
            err_msg='Zero sigma changed the data',
        )

    def test_add_noise_poisson(self):
        """Test add_noise with Poisson noise."""
        npt.assert_array_equal(
            noise.add_noise(self.data1, get_rng(3), noise_type='poisson'),
            self.data1 + get_rng(3).poisson(self.data1),
            err_msg='Incorrect Poisson noise',
        )

    def test_add_noise_errors(self):
        """Test add_noise errors."""
        npt.assert_raises(
            ValueError,
            noise.add_noise,
            self.data1,
            get_rng(0),
            noise_type='bla',
        )
        npt.assert_raises(
            ValueError,
            noise.add_noise,
            self.data1,
            get_rng(0),
            sigma=-1.0,
        )

    def test_degrade_image(self):
        """Test degrade_image."""
        npt.assert_array_equal(
            noise.degrade_image(self.image, get_rng(0), 1.0, 0.0),
            self.image,
            err_msg='Identity degradation changed the image',
        )
        npt.assert_allclose(
            noise.degrade_image(self.image, get_rng(0), 0.5, 0.0),
            self.image * 0.5,
            err_msg='Incorrect luminosity scaling',
        )

        degraded = noise.degrade_image(
            self.image,
            get_rng(0),
            luminosity=0.3,
            sigma=0.2,
            poisson_scale=50.0,
        )
        npt.assert_equal(degraded.shape, (8, 8, 3), err_msg='Shape changed')
        npt.assert_equal(
            np.all((degraded >= 0) & (degraded <= 1)),
            True,
            err_msg='Degraded image not clipped',
        )

        npt.assert_raises(
            ValueError,
            noise.degrade_image,
            self.image,
            get_rng(0),
            0.0,
        )
        npt.assert_raises(
            ValueError,
            noise.degrade_image,
            self.image,
            get_rng(0),
            0.5,
            -0.1,
        )


class SyntheticTestCase(TestCase):
    """Test case for synthetic module."""

    def test_redundant_image(self):
        """Test redundant_image."""
        for fraction, expected in ((0.0, 0), (0.5, 8), (1.0, 16)):
            image = synthetic.redundant_image(32, 32, 8, fraction, get_rng(1))
            npt.assert_equal(
                _patch_duplicates(image, 8),
                expected,
                err_msg='Wrong duplicates for {0}'.format(fraction),
            )

        npt.assert_equal(image.shape, (32, 32, 3), err_msg='Wrong shape')
        npt.assert_equal(
            np.all((image >= 0) & (image < 1)),
            True,
            err_msg='Pixels out of range',
        )

        npt.assert_raises(
            ValueError,
            synthetic.redundant_image,
            32,
            32,
            8,
            1.5,
            get_rng(0),
        )
        npt.assert_raises(
            ShapeError,
            synthetic.redundant_image,
            30,
            32,
            8,
            0.5,
            get_rng(0),
        )

    def test_smooth_scene(self):
        """Test smooth_scene."""
        scene = synthetic.smooth_scene(32, 48, get_rng(2), channels=1)

        npt.assert_equal(scene.shape, (32, 48, 1), err_msg='Wrong shape')
        npt.assert_almost_equal(scene.min(), 0.0, err_msg='Wrong minimum')
        npt.assert_almost_equal(scene.max(), 1.0, err_msg='Wrong maximum')
