# -*- coding: utf-8 -*-

"""MERGE MAP VISUALISATION.

This module contains methods for tinting image patches by cluster so that
merged patches can be seen at a glance.

:Author: mpmerge developers

"""

import numpy as np

from mpmerge.base.transform import check_image, patch_grid
from mpmerge.interface.errors import ShapeError

# Odd multiplier, so the hash is a bijection on 24 bit integers
_HASH_MULT = 0x9E3779
_HASH_MASK = 0xFFFFFF
TINT_ALPHA = 0.5


def cluster_colors(cluster_ids):
    """Cluster colours.

    Deterministic colour hash of cluster IDs. Distinct IDs below ``2 ** 24``
    map to distinct colours.

    Parameters
    ----------
    cluster_ids : numpy.ndarray
        Integer cluster IDs

    Returns
    -------
    numpy.ndarray
        RGB colours in ``[0, 1]``, one row per ID

    Examples
    --------
    >>> from mpmerge.bench.visualize import cluster_colors
    >>> cluster_colors([0]).tolist()
    [[0.0, 0.0, 0.0]]

    """
    hashed = (np.asarray(cluster_ids, dtype=np.uint64) * _HASH_MULT)
    hashed &= _HASH_MASK
    hashed ^= hashed >> np.uint64(12)

    channels = np.stack(
        (hashed >> np.uint64(16), hashed >> np.uint64(8), hashed),
        axis=-1,
    ) & np.uint64(0xFF)

    return channels.astype(np.float64) / 255


def visualize(image, merge_map, patch, alpha=TINT_ALPHA):
    """Visualise merge map.

    Blend every patch with the colour of its cluster.

    Parameters
    ----------
    image : numpy.ndarray
        ``H x W x C`` image, ``uint8`` or float in ``[0, 1]``
    merge_map : mpmerge.base.types.MergeMap
        Map from the patches, in raster order, to clusters
    patch : int
        Patch size in pixels
    alpha : float, optional
        Weight of the tint (default is ``0.5``)

    Returns
    -------
    numpy.ndarray
        ``H x W x 3`` float image in ``[0, 1]``

    Raises
    ------
    ShapeError
        If the map length does not match the patch grid

    """
    image = check_image(image)

    if image.dtype == np.uint8:
        image = image / 255
    image = np.clip(image.astype(np.float64), 0, 1)

    if image.shape[2] == 1:
        image = np.repeat(image, 3, axis=2)

    grid_h, grid_w = patch_grid(image.shape, patch)

    if merge_map.n_tokens != grid_h * grid_w:
        raise ShapeError(
            'Merge map of length {0} does not match the {1}x{2} patch grid.'
            .format(merge_map.n_tokens, grid_h, grid_w),
        )

    colors = cluster_colors(merge_map.entries).reshape(grid_h, grid_w, 3)
    tint = np.repeat(np.repeat(colors, patch, axis=0), patch, axis=1)

    return (1 - alpha) * image[:, :, :3] + alpha * tint
