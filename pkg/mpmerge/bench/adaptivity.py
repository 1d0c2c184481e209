# -*- coding: utf-8 -*-

"""CONTENT ADAPTIVITY.

This module contains the day/night experiment: the same image is encoded
clean and after a simulated low-light capture, and the fraction of tokens
removed by the first MPM insertion is compared.

:Author: mpmerge developers

"""

import numpy as np

from mpmerge.base.rng import get_rng
from mpmerge.encoder.config import InsertionSchedule
from mpmerge.encoder.layers import transformer_block
from mpmerge.encoder.model import patch_embed
from mpmerge.interface.errors import ConfigError
from mpmerge.interface.log import log_info
from mpmerge.merge.kernel import mpm_step
from mpmerge.signal.noise import degrade_image


def merged_fraction_at_first_insertion(image, enc, schedule):
    """Merged fraction at the first insertion.

    Parameters
    ----------
    image : numpy.ndarray
        ``H x W x C`` image
    enc : mpmerge.encoder.model.Encoder
        Encoder
    schedule : InsertionSchedule or iterable
        Non-empty insertion schedule

    Returns
    -------
    float
        ``(N - N') / N`` of the first MPM call

    Raises
    ------
    ConfigError
        For an empty schedule

    """
    if not isinstance(schedule, InsertionSchedule):
        schedule = InsertionSchedule(schedule)

    if not len(schedule):
        raise ConfigError('The adaptivity study needs a non-empty schedule.')

    schedule.check_depth(enc.config.depth)
    first = schedule.blocks[0]

    tokens = np.concatenate(
        (enc.special_tokens, patch_embed(image, enc)),
        axis=0,
    )

    for blk in enc.blocks[:first]:
        tokens = transformer_block(tokens, blk)

    return mpm_step(tokens[enc.n_special:]).merge_map.merged_fraction()


def run_adaptivity(
    image,
    enc,
    schedule,
    luminosity=0.5,
    sigma=0.05,
    poisson_scale=0.0,
    seed=0,
    seeds=1,
    log=None,
):
    """Run the adaptivity study.

    Parameters
    ----------
    image : numpy.ndarray
        Clean ``H x W x C`` image with values in ``[0, 1]``
    enc : mpmerge.encoder.model.Encoder
        Encoder
    schedule : InsertionSchedule or iterable
        Non-empty insertion schedule
    luminosity : float, optional
        Luminosity scale of the degraded image (default is ``0.5``)
    sigma : float, optional
        Gaussian noise level (default is ``0.05``)
    poisson_scale : float, optional
        Photon count per unit intensity, ``0`` disables shot noise (default
        is ``0.0``)
    seed : int, optional
        First noise seed (default is ``0``)
    seeds : int, optional
        Number of noise seeds, ``seed`` to ``seed + seeds - 1`` (default is
        ``1``)
    log : logging.Logger, optional
        Logging instance (default is ``None``)

    Returns
    -------
    dict
        Clean and degraded merged fractions, their deltas and the number of
        seeds where the clean image merges more

    """
    if seeds < 1:
        raise ConfigError('At least one seed is needed.')

    clean = merged_fraction_at_first_insertion(image, enc, schedule)

    degraded = []
    for noise_seed in range(seed, seed + seeds):
        noisy = degrade_image(
            image,
            get_rng(noise_seed),
            luminosity=luminosity,
            sigma=sigma,
            poisson_scale=poisson_scale,
        )
        degraded.append(
            merged_fraction_at_first_insertion(noisy, enc, schedule),
        )
        log_info(
            log,
            ' - Seed {0}: clean {1:.4f}, degraded {2:.4f}',
            noise_seed,
            clean,
            degraded[-1],
        )

    deltas = [clean - fraction for fraction in degraded]

    return {
        'clean_merged_fraction': clean,
        'degraded_merged_fraction': degraded,
        'delta': deltas,
        'mean_delta': float(np.mean(deltas)),
        'seeds': seeds,
        'clean_wins': int(sum(delta > 0 for delta in deltas)),
        'luminosity': luminosity,
        'sigma': sigma,
        'poisson_scale': poisson_scale,
    }
