# -*- coding: utf-8 -*-

"""DATA TRANSFORM ROUTINES.

This module contains methods for moving between images and raster-ordered
patch matrices.

:Author: mpmerge developers

"""

import numpy as np

from mpmerge.interface.errors import ShapeError


def check_image(image):
    """Check image.

    Return the input image as an ``H x W x C`` float array, a 2D input is
    treated as a single channel image.

    Parameters
    ----------
    image : numpy.ndarray
        Input image

    Returns
    -------
    numpy.ndarray
        3D image array

    Raises
    ------
    ShapeError
        For invalid image dimensions

    """
    image = np.asarray(image)

    if image.ndim == 2:
        image = image[:, :, None]

    if image.ndim != 3 or min(image.shape) < 1:
        raise ShapeError(
            'Images must have shape (H, W) or (H, W, C), got {0}.'.format(
                image.shape,
            ),
        )

    return image


def patch_grid(image_shape, patch):
    """Patch grid.

    Parameters
    ----------
    image_shape : tuple
        Image shape, ``(H, W)`` or ``(H, W, C)``
    patch : int
        Patch size in pixels

    Returns
    -------
    tuple
        Grid shape ``(H / P, W / P)``

    Raises
    ------
    ShapeError
        If the image is not divisible into patches

    Examples
    --------
    >>> from mpmerge.base.transform import patch_grid
    >>> patch_grid((512, 512, 3), 16)
    (32, 32)

    """
    height, width = image_shape[:2]

    if patch < 1 or height % patch or width % patch:
        raise ShapeError(
            'Image shape {0} is not divisible by the patch size {1}.'.format(
                (height, width),
                patch,
            ),
        )

    return height // patch, width // patch


def image_to_patches(image, patch):
    """Image to patches.

    This method cuts an image into ``P x P`` patches and flattens each patch,
    patches are returned in raster order (left-to-right, top-to-bottom).

    Parameters
    ----------
    image : numpy.ndarray
        Input image, ``H x W`` or ``H x W x C``
    patch : int
        Patch size in pixels

    Returns
    -------
    numpy.ndarray
        Patch matrix of shape ``(N, P * P * C)``

    Examples
    --------
    >>> import numpy as np
    >>> from mpmerge.base.transform import image_to_patches
    >>> a = np.arange(16).reshape(4, 4)
    >>> image_to_patches(a, 2)
    array([[ 0,  1,  4,  5],
           [ 2,  3,  6,  7],
           [ 8,  9, 12, 13],
           [10, 11, 14, 15]])

    See Also
    --------
    patches_to_image : complimentary function

    """
    image = check_image(image)
    grid_h, grid_w = patch_grid(image.shape, patch)
    channels = image.shape[2]

    patches = image.reshape(grid_h, patch, grid_w, patch, channels)
    patches = patches.transpose(0, 2, 1, 3, 4)

    return patches.reshape(grid_h * grid_w, patch * patch * channels)


def patches_to_image(patches, grid_shape, patch):
    """Patches to image.

    This method reassembles raster-ordered flattened patches into an image.

    Parameters
    ----------
    patches : numpy.ndarray
        Patch matrix of shape ``(N, P * P * C)``
    grid_shape : tuple
        Grid shape ``(H / P, W / P)``
    patch : int
        Patch size in pixels

    Returns
    -------
    numpy.ndarray
        Image of shape ``(H, W, C)``

    Raises
    ------
    ShapeError
        If the patch matrix does not match the grid

    See Also
    --------
    image_to_patches : complimentary function

    """
    patches = np.asarray(patches)
    grid_h, grid_w = grid_shape

    if patches.ndim != 2 or patches.shape[0] != grid_h * grid_w:
        raise ShapeError('The patches do not match the grid shape.')

    if patches.shape[1] % (patch * patch):
        raise ShapeError('The patch length is not a multiple of P * P.')

    channels = patches.shape[1] // (patch * patch)

    image = patches.reshape(grid_h, grid_w, patch, patch, channels)
    image = image.transpose(0, 2, 1, 3, 4)

    return image.reshape(grid_h * patch, grid_w * patch, channels)
