# -*- coding: utf-8 -*-

"""RANDOM NUMBER GENERATION.

This module fixes the seeded pseudo-random number generator used everywhere
in mpmerge: a counter-based Philox 4x64-10 bit generator wrapped in a
:class:`numpy.random.Generator`. Results drawn with the same seed and the same
``PRNG_VERSION`` are reproducible across platforms.

:Author: mpmerge developers

"""

import os

import numpy as np

from mpmerge.base.types import TOKEN_DTYPE
from mpmerge.interface.errors import ConfigError

PRNG_ALGORITHM = 'philox4x64-10'
PRNG_VERSION = 1
SEED_ENV_VAR = 'MPM_SEED'


def get_rng(seed=0):
    """Get random number generator.

    Parameters
    ----------
    seed : int, optional
        Non-negative seed (default is ``0``)

    Returns
    -------
    numpy.random.Generator
        Generator backed by :class:`numpy.random.Philox`

    Raises
    ------
    ConfigError
        For a negative or non-integer seed

    Examples
    --------
    >>> from mpmerge.base.rng import get_rng
    >>> get_rng(1).integers(10) == get_rng(1).integers(10)
    True

    """
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ConfigError('The seed must be an integer, not {0}.'.format(
            type(seed),
        ))

    if seed < 0:
        raise ConfigError('The seed must be non-negative.')

    return np.random.Generator(np.random.Philox(int(seed)))


def resolve_seed(seed=0):
    """Resolve seed.

    The ``MPM_SEED`` environment variable, when set, overrides the seed given
    on the command line or in code.

    Parameters
    ----------
    seed : int, optional
        Default seed (default is ``0``)

    Returns
    -------
    int
        Seed to use

    Raises
    ------
    ConfigError
        If ``MPM_SEED`` is not a non-negative integer

    """
    env_seed = os.environ.get(SEED_ENV_VAR)

    if env_seed is None or env_seed.strip() == '':
        return seed

    try:
        env_seed = int(env_seed)
    except ValueError:
        raise ConfigError(
            '{0} must be an integer, got "{1}".'.format(
                SEED_ENV_VAR,
                env_seed,
            ),
        )

    if env_seed < 0:
        raise ConfigError('{0} must be non-negative.'.format(SEED_ENV_VAR))

    return env_seed


def random_tokens(rng, n_tokens, dim, low=-1.0, high=1.0):
    """Random tokens.

    Draw a token matrix with entries uniform in ``[low, high)``.

    Parameters
    ----------
    rng : numpy.random.Generator
        Random number generator
    n_tokens : int
        Number of tokens
    dim : int
        Feature dimension
    low : float, optional
        Lower bound (default is ``-1.0``)
    high : float, optional
        Upper bound (default is ``1.0``)

    Returns
    -------
    numpy.ndarray
        ``n_tokens x dim`` float32 token matrix

    """
    return rng.uniform(low, high, size=(n_tokens, dim)).astype(TOKEN_DTYPE)
