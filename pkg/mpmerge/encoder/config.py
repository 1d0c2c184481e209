# -*- coding: utf-8 -*-

"""ENCODER CONFIGURATION.

This module contains the encoder hyperparameters and the MPM insertion
schedule.

:Author: mpmerge developers

"""

import numpy as np

from mpmerge.interface.errors import ConfigError

DEFAULT_SCHEDULE = (2, 5)


def check_count(input_obj, name, minimum=1):
    """Check count.

    Parameters
    ----------
    input_obj : int
        Candidate value
    name : str
        Name used in error messages
    minimum : int, optional
        Smallest allowed value (default is ``1``)

    Returns
    -------
    int
        Input value as a Python integer

    Raises
    ------
    ConfigError
        For a non-integer or a value below ``minimum``

    """
    if isinstance(input_obj, bool) or not isinstance(
        input_obj,
        (int, np.integer),
    ):
        raise ConfigError('{0} must be an integer, not {1}.'.format(
            name,
            type(input_obj),
        ))

    if input_obj < minimum:
        raise ConfigError('{0} must be at least {1}, got {2}.'.format(
            name,
            minimum,
            input_obj,
        ))

    return int(input_obj)


class EncoderConfig(object):
    """Encoder configuration.

    Hyperparameters of the toy ViT-style encoder.

    Parameters
    ----------
    image_h : int, optional
        Image height in pixels (default is ``512``)
    image_w : int, optional
        Image width in pixels (default is ``512``)
    patch : int, optional
        Patch size ``P`` in pixels (default is ``16``)
    depth : int, optional
        Number of transformer blocks ``L`` (default is ``12``)
    dim : int, optional
        Token dimension ``d`` (default is ``192``)
    heads : int, optional
        Number of attention heads (default is ``3``)
    ffn_mult : int, optional
        Hidden width of the feed-forward network as a multiple of ``d``
        (default is ``4``)
    n_special : int, optional
        Number of special tokens ``E`` (default is ``1``)
    channels : int, optional
        Number of image channels (default is ``3``)
    seed : int, optional
        Seed of the weight initialisation (default is ``0``)

    Raises
    ------
    ConfigError
        For indivisible image or head dimensions, or non-positive sizes

    Examples
    --------
    >>> from mpmerge.encoder.config import EncoderConfig
    >>> cfg = EncoderConfig()
    >>> cfg.n_tokens, cfg.head_dim
    (1024, 64)

    """

    def __init__(
        self,
        image_h=512,
        image_w=512,
        patch=16,
        depth=12,
        dim=192,
        heads=3,
        ffn_mult=4,
        n_special=1,
        channels=3,
        seed=0,
    ):

        self.image_h = check_count(image_h, 'image_h')
        self.image_w = check_count(image_w, 'image_w')
        self.patch = check_count(patch, 'patch')
        self.depth = check_count(depth, 'depth')
        self.dim = check_count(dim, 'dim')
        self.heads = check_count(heads, 'heads')
        self.ffn_mult = check_count(ffn_mult, 'ffn_mult')
        self.n_special = check_count(n_special, 'n_special', minimum=0)
        self.channels = check_count(channels, 'channels')
        self.seed = check_count(seed, 'seed', minimum=0)

        if self.image_h % self.patch or self.image_w % self.patch:
            raise ConfigError(
                'Image size {0}x{1} is not divisible by the patch size {2}.'
                .format(self.image_h, self.image_w, self.patch),
            )

        if self.dim % self.heads:
            raise ConfigError(
                'Dimension {0} is not divisible by {1} heads.'.format(
                    self.dim,
                    self.heads,
                ),
            )

    @property
    def grid(self):
        """Patch grid shape ``(H / P, W / P)``."""
        return self.image_h // self.patch, self.image_w // self.patch

    @property
    def n_tokens(self):
        """Number of image tokens ``N``."""
        grid_h, grid_w = self.grid
        return grid_h * grid_w

    @property
    def head_dim(self):
        """Per-head dimension."""
        return self.dim // self.heads

    @property
    def patch_dim(self):
        """Length of a flattened patch."""
        return self.patch * self.patch * self.channels

    def to_dict(self):
        """Return the hyperparameters as a dictionary."""
        return {
            'image_h': self.image_h,
            'image_w': self.image_w,
            'patch': self.patch,
            'depth': self.depth,
            'dim': self.dim,
            'heads': self.heads,
            'ffn_mult': self.ffn_mult,
            'n_special': self.n_special,
            'channels': self.channels,
            'seed': self.seed,
        }

    def __eq__(self, other):
        """Equality."""
        if not isinstance(other, EncoderConfig):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self):
        """Hash."""
        return hash(tuple(sorted(self.to_dict().items())))

    def __repr__(self):
        """Representation."""
        fields = (
            '{0}={1}'.format(key, value)
            for key, value in self.to_dict().items()
        )

        return 'EncoderConfig({0})'.format(', '.join(fields))


class InsertionSchedule(object):
    """Insertion schedule.

    Sorted 0-based block indices before which MPM runs. An empty schedule is
    the baseline encoder.

    Parameters
    ----------
    blocks : iterable, optional
        Block indices (default is ``(2, 5)``)

    Raises
    ------
    ConfigError
        If the indices are negative, repeated or not increasing

    Examples
    --------
    >>> from mpmerge.encoder.config import InsertionSchedule
    >>> schedule = InsertionSchedule.parse('2,5')
    >>> 5 in schedule, 3 in schedule
    (True, False)

    """

    def __init__(self, blocks=DEFAULT_SCHEDULE):

        blocks = tuple(
            check_count(block, 'block index', minimum=0) for block in blocks
        )

        if any(prev >= nxt for prev, nxt in zip(blocks, blocks[1:])):
            raise ConfigError(
                'Schedule indices must be distinct and increasing, got {0}.'
                .format(list(blocks)),
            )

        self._blocks = blocks

    @classmethod
    def parse(cls, text):
        """Parse a comma-separated schedule.

        Parameters
        ----------
        text : str
            Indices such as ``'2,5'``, an empty string for no merging

        Returns
        -------
        InsertionSchedule
            Parsed schedule

        Raises
        ------
        ConfigError
            For non-integer entries

        """
        text = text.strip()

        if not text:
            return cls(())

        try:
            blocks = [int(field) for field in text.split(',')]
        except ValueError:
            raise ConfigError('Invalid schedule "{0}".'.format(text))

        return cls(blocks)

    @property
    def blocks(self):
        """Block indices."""
        return self._blocks

    def check_depth(self, depth):
        """Check depth.

        Parameters
        ----------
        depth : int
            Number of encoder blocks

        Raises
        ------
        ConfigError
            If an index is not below ``depth``

        """
        if self._blocks and self._blocks[-1] >= depth:
            raise ConfigError(
                'Schedule index {0} is out of range for {1} blocks.'.format(
                    self._blocks[-1],
                    depth,
                ),
            )

    def __contains__(self, block):
        """Membership."""
        return block in self._blocks

    def __iter__(self):
        """Iterate over the block indices."""
        return iter(self._blocks)

    def __len__(self):
        """Number of insertions."""
        return len(self._blocks)

    def __eq__(self, other):
        """Equality."""
        if not isinstance(other, InsertionSchedule):
            return NotImplemented
        return self._blocks == other.blocks

    def __hash__(self):
        """Hash."""
        return hash(self._blocks)

    def __str__(self):
        """Comma-separated form, as accepted by :meth:`parse`."""
        return ','.join(str(block) for block in self._blocks)

    def __repr__(self):
        """Representation."""
        return 'InsertionSchedule({0})'.format(list(self._blocks))
