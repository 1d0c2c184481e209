# -*- coding: utf-8 -*-

"""NOISE ROUTINES.

This module contains methods for adding noise to images and for simulating
low-light capture.

:Author: mpmerge developers

"""

import numpy as np

from mpmerge.base.transform import check_image


def add_noise(input_data, rng, sigma=1.0, noise_type='gauss'):
    """Add noise to data.

    This method adds Gaussian or Poisson noise to the input data

    Parameters
    ----------
    input_data : numpy.ndarray, list or tuple
        Input data array
    rng : numpy.random.Generator
        Random number generator
    sigma : float, optional
        Standard deviation of the noise to be added ('gauss' only, default is
        ``1.0``)
    noise_type : {'gauss', 'poisson'}
        Type of noise to be added (default is 'gauss')

    Returns
    -------
    numpy.ndarray
        Input data with added noise

    Raises
    ------
    ValueError
        If `noise_type` is not 'gauss' or 'poisson'
    ValueError
        If `sigma` is negative

    Examples
    --------
    >>> import numpy as np
    >>> from mpmerge.base.rng import get_rng
    >>> from mpmerge.signal.noise import add_noise
    >>> add_noise(np.zeros(5), get_rng(1), sigma=0.0)
    array([0., 0., 0., 0., 0.])

    """
    input_data = np.array(input_data, dtype=np.float64)

    if noise_type not in {'gauss', 'poisson'}:
        raise ValueError(
            'Invalid noise type. Options are "gauss" or "poisson"',
        )

    if sigma < 0:
        raise ValueError('Sigma must be non-negative')

    if noise_type == 'poisson':
        return input_data + rng.poisson(np.abs(input_data))

    return input_data + sigma * rng.standard_normal(input_data.shape)


def degrade_image(image, rng, luminosity=0.5, sigma=0.05, poisson_scale=0.0):
    r"""Degrade image.

    Simulate night-time capture: the luminosity is reduced, then shot noise
    and thermal noise are added.

    Parameters
    ----------
    image : numpy.ndarray
        ``H x W x C`` image with values in ``[0, 1]``
    rng : numpy.random.Generator
        Random number generator
    luminosity : float, optional
        Luminosity scale in ``(0, 1]`` (default is ``0.5``)
    sigma : float, optional
        Standard deviation of the Gaussian (thermal) noise (default is
        ``0.05``)
    poisson_scale : float, optional
        Photon count per unit intensity of the Poisson (shot) noise, ``0``
        disables it (default is ``0.0``)

    Returns
    -------
    numpy.ndarray
        Degraded image, values clipped to ``[0, 1]``

    Raises
    ------
    ValueError
        For an out-of-range parameter

    Notes
    -----
    With :math:`a` the luminosity, :math:`k` the Poisson scale and
    :math:`\sigma` the thermal noise level, each pixel becomes

    .. math::
        y = \mathrm{clip}\left(\frac{\mathcal{P}(k a x)}{k}
        + \mathcal{N}(0, \sigma^2), 0, 1\right)

    A luminosity of ``1`` with ``sigma = 0`` and ``poisson_scale = 0`` leaves
    the image unchanged.

    """
    image = check_image(image).astype(np.float64)

    if not 0 < luminosity <= 1:
        raise ValueError('The luminosity must lie in (0, 1].')

    if sigma < 0 or poisson_scale < 0:
        raise ValueError('Noise levels must be non-negative.')

    degraded = image * luminosity

    if poisson_scale > 0:
        counts = add_noise(degraded * poisson_scale, rng, noise_type='poisson')
        degraded = (counts - degraded * poisson_scale) / poisson_scale

    if sigma > 0:
        degraded = add_noise(degraded, rng, sigma=float(sigma))

    return np.clip(degraded, 0, 1)
