# -*- coding: utf-8 -*-

"""SYNTHETIC IMAGES.

This module contains generators of synthetic test images with a controlled
amount of redundancy.

:Author: mpmerge developers

"""

import numpy as np
from scipy.ndimage import gaussian_filter

from mpmerge.base.transform import patch_grid, patches_to_image


def redundant_image(height, width, patch, duplicate_fraction, rng, channels=3):
    """Redundant image.

    Random image in which a chosen fraction of the patches has an exact twin
    elsewhere in the image.

    Parameters
    ----------
    height : int
        Image height in pixels
    width : int
        Image width in pixels
    patch : int
        Patch size in pixels
    duplicate_fraction : float
        Fraction of patches, in ``[0, 1]``, that share their content with
        exactly one other patch
    rng : numpy.random.Generator
        Random number generator
    channels : int, optional
        Number of channels (default is ``3``)

    Returns
    -------
    numpy.ndarray
        ``height x width x channels`` image with values in ``[0, 1)``

    Raises
    ------
    ValueError
        For a fraction outside ``[0, 1]``

    Examples
    --------
    >>> from mpmerge.base.rng import get_rng
    >>> from mpmerge.signal.synthetic import redundant_image
    >>> redundant_image(64, 64, 16, 0.5, get_rng(0)).shape
    (64, 64, 3)

    """
    if not 0 <= duplicate_fraction <= 1:
        raise ValueError('The duplicate fraction must lie in [0, 1].')

    grid = patch_grid((height, width), patch)
    n_patches = grid[0] * grid[1]

    patches = rng.random((n_patches, patch * patch * channels))

    n_pairs = int(duplicate_fraction * n_patches) // 2
    order = rng.permutation(n_patches)[:2 * n_pairs].reshape(-1, 2)
    patches[order[:, 1]] = patches[order[:, 0]]

    return patches_to_image(patches, grid, patch)


def smooth_scene(height, width, rng, sigma=8.0, channels=3):
    """Smooth scene.

    Gaussian-filtered random field rescaled to ``[0, 1]``, a stand-in for a
    natural image with large homogeneous regions.

    Parameters
    ----------
    height : int
        Image height in pixels
    width : int
        Image width in pixels
    rng : numpy.random.Generator
        Random number generator
    sigma : float, optional
        Standard deviation of the Gaussian filter in pixels (default is
        ``8.0``)
    channels : int, optional
        Number of channels (default is ``3``)

    Returns
    -------
    numpy.ndarray
        ``height x width x channels`` image

    """
    field = rng.standard_normal((height, width, channels))
    field = gaussian_filter(field, sigma=(sigma, sigma, 0), mode='wrap')

    field -= field.min()
    peak = field.max()

    return field / peak if peak > 0 else field
