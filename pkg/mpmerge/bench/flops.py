# -*- coding: utf-8 -*-

r"""FLOP ESTIMATES.

This module contains an analytic FLOP model of the toy encoder. A block at
sequence length :math:`n` costs

.. math::
    \underbrace{4 n d^2 + 2 n^2 d}_{\mathrm{MSA}}
    + \underbrace{4 n d (m d)}_{\mathrm{FFN}}

and an MPM call on :math:`n` image tokens costs :math:`2 n^2 d + 3 n d`
(affinity, normalisation and averaging).

:Author: mpmerge developers

"""

import numpy as np

GIGA = 1e9


def msa_flops(n_tokens, dim):
    """FLOPs of the attention sublayer at length ``n_tokens``."""
    return 4 * n_tokens * dim ** 2 + 2 * n_tokens ** 2 * dim


def ffn_flops(n_tokens, dim, ffn_mult=4):
    """FLOPs of the feed-forward sublayer at length ``n_tokens``."""
    return 2 * n_tokens * dim * (ffn_mult * dim) * 2


def mpm_flops(n_tokens, dim):
    """FLOPs of one MPM call on ``n_tokens`` image tokens."""
    return 2 * n_tokens ** 2 * dim + 3 * n_tokens * dim


class FlopEstimate(object):
    """FLOP estimate.

    Parameters
    ----------
    block_lengths : list
        Sequence length entering every block
    dim : int
        Token dimension ``d``
    ffn_mult : int, optional
        Hidden width multiple of the feed-forward network (default is ``4``)
    merge_lengths : list, optional
        Number of image tokens entering every MPM call (default is ``()``)

    Examples
    --------
    >>> from mpmerge.bench.flops import FlopEstimate
    >>> FlopEstimate([2], 1).total
    48

    """

    def __init__(self, block_lengths, dim, ffn_mult=4, merge_lengths=()):

        self.block_lengths = [int(length) for length in block_lengths]
        self.merge_lengths = [int(length) for length in merge_lengths]
        self.dim = int(dim)
        self.ffn_mult = int(ffn_mult)

    @classmethod
    def from_output(cls, output, dim, ffn_mult=4):
        """Build an estimate from an encoder output.

        Parameters
        ----------
        output : mpmerge.encoder.model.EncoderOutput
            Encoder output
        dim : int
            Token dimension
        ffn_mult : int, optional
            Hidden width multiple (default is ``4``)

        Returns
        -------
        FlopEstimate
            Estimate at the lengths the output went through

        """
        merge_lengths = [
            merge_map.n_tokens for merge_map in output.composed_map.provenance
        ]

        return cls(output.per_block_lengths, dim, ffn_mult, merge_lengths)

    @property
    def msa(self):
        """Attention FLOPs summed over blocks."""
        return sum(
            msa_flops(length, self.dim) for length in self.block_lengths
        )

    @property
    def ffn(self):
        """Feed-forward FLOPs summed over blocks."""
        return sum(
            ffn_flops(length, self.dim, self.ffn_mult)
            for length in self.block_lengths
        )

    @property
    def mpm(self):
        """MPM FLOPs summed over insertions."""
        return sum(
            mpm_flops(length, self.dim) for length in self.merge_lengths
        )

    @property
    def backbone(self):
        """Block FLOPs, attention plus feed-forward."""
        return self.msa + self.ffn

    @property
    def total(self):
        """Block and MPM FLOPs."""
        return self.backbone + self.mpm

    @property
    def gflops(self):
        """Block GFLOPs.

        The MPM cost is left out so that the estimate can only decrease when
        a sequence gets shorter, see :attr:`merge_gflops`.

        """
        return self.backbone / GIGA

    @property
    def merge_gflops(self):
        """MPM GFLOPs."""
        return self.mpm / GIGA


def baseline_gflops(n_tokens, n_special, dim, depth, ffn_mult=4):
    """Baseline GFLOPs.

    Closed-form cost of an encoder without merging.

    Parameters
    ----------
    n_tokens : int
        Number of image tokens ``N``
    n_special : int
        Number of special tokens ``E``
    dim : int
        Token dimension ``d``
    depth : int
        Number of blocks ``L``
    ffn_mult : int, optional
        Hidden width multiple (default is ``4``)

    Returns
    -------
    float
        :math:`L (4 n d^2 + 2 n^2 d + 4 m n d^2) / 10^9` with :math:`n = E + N`

    """
    length = n_tokens + n_special
    per_block = (
        4 * length * dim ** 2
        + 2 * length ** 2 * dim
        + 4 * ffn_mult * length * dim ** 2
    )

    return depth * per_block / GIGA


def mean_gflops(estimates, attribute='gflops'):
    """Mean of a GFLOP attribute over estimates, ``0.0`` for an empty list."""
    if not estimates:
        return 0.0

    values = [getattr(estimate, attribute) for estimate in estimates]

    return float(np.mean(values))
