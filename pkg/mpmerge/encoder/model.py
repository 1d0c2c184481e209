# -*- coding: utf-8 -*-

"""TOY ENCODER.

This module contains a minimal deterministic ViT-style encoder (patch
embedding followed by ``L`` transformer blocks) with Mutual Pair Merging
inserted before the blocks listed in an :class:`InsertionSchedule`.

Special tokens are concatenated in front of the image tokens throughout.
They take part in attention but never in merging.

:Author: mpmerge developers

"""

from collections import namedtuple
from time import perf_counter

import numpy as np

from mpmerge.base.observable import Observable
from mpmerge.base.rng import get_rng
from mpmerge.base.transform import check_image, image_to_patches
from mpmerge.base.types import TOKEN_DTYPE, check_npndarray, check_tokens
from mpmerge.encoder.config import EncoderConfig, InsertionSchedule
from mpmerge.encoder.layers import init_block, layer_norm, transformer_block
from mpmerge.interface.errors import ConfigError, ShapeError
from mpmerge.merge.kernel import mpm_step
from mpmerge.merge.reconstruction import (
    ComposedMap,
    assemble_decoder_input,
    compose,
    reconstruct,
)

BatchOutput = namedtuple(
    'BatchOutput',
    [
        'outputs',
        'padded_lengths',
        'merge_time',
        'block_time',
        'per_block_time',
    ],
)


class Encoder(Observable):
    """Encoder.

    Holds the read-only weights of the toy encoder. The encoder is observable
    and emits the ``'mpm'`` signal after every merge with the attributes
    ``block``, ``n_in`` and ``n_out``.

    Parameters
    ----------
    config : EncoderConfig
        Encoder hyperparameters
    patch_weight : numpy.ndarray
        ``P * P * C x d`` patch projection
    patch_bias : numpy.ndarray
        Patch projection bias
    pos_embed : numpy.ndarray
        ``N x d`` absolute positional embeddings
    special_tokens : numpy.ndarray
        ``E x d`` special tokens
    blocks : list
        :class:`~mpmerge.encoder.layers.BlockWeights` of every block
    norm_gamma : numpy.ndarray
        Scale of the final layer normalisation
    norm_beta : numpy.ndarray
        Shift of the final layer normalisation

    See Also
    --------
    init_encoder : seeded constructor

    """

    def __init__(
        self,
        config,
        patch_weight,
        patch_bias,
        pos_embed,
        special_tokens,
        blocks,
        norm_gamma,
        norm_beta,
    ):

        super().__init__(['mpm'])

        self.config = config
        self.patch_weight = patch_weight
        self.patch_bias = patch_bias
        self.pos_embed = pos_embed
        self.special_tokens = special_tokens
        self.blocks = tuple(blocks)
        self.norm_gamma = norm_gamma
        self.norm_beta = norm_beta

    @property
    def n_special(self):
        """Number of special tokens ``E``."""
        return self.special_tokens.shape[0]

    def checksum(self):
        """Weight checksum.

        Returns
        -------
        float
            Sum of all weights in double precision

        """
        arrays = [self.patch_weight, self.patch_bias, self.pos_embed]
        arrays.append(self.special_tokens)
        for blk in self.blocks:
            arrays.extend(blk[1:])

        return float(sum(np.sum(array, dtype=np.float64) for array in arrays))


class EncoderOutput(object):
    """Encoder output.

    Parameters
    ----------
    tokens : numpy.ndarray
        ``(E + N') x d`` output tokens, special tokens first
    composed_map : ComposedMap
        Map from the ``N`` original patches onto the ``N'`` output image
        tokens
    per_block_lengths : list
        Sequence length ``E + n`` entering every block
    merge_time : float
        Seconds spent in MPM and map composition
    per_block_time : list
        Seconds spent in every transformer block
    n_special : int
        Number of special tokens ``E``

    """

    def __init__(
        self,
        tokens,
        composed_map,
        per_block_lengths,
        merge_time,
        per_block_time,
        n_special,
    ):

        if tokens.shape[0] != n_special + composed_map.n_clusters:
            raise ShapeError(
                'Output has {0} tokens, expected {1}.'.format(
                    tokens.shape[0],
                    n_special + composed_map.n_clusters,
                ),
            )

        self.tokens = tokens
        self.composed_map = composed_map
        self.per_block_lengths = list(per_block_lengths)
        self.merge_time = merge_time
        self.per_block_time = list(per_block_time)
        self.n_special = n_special

    @property
    def block_time(self):
        """Seconds spent in the transformer blocks."""
        return sum(self.per_block_time)

    @property
    def special_tokens(self):
        """Special-token rows."""
        return self.tokens[:self.n_special]

    @property
    def image_tokens(self):
        """Image-token rows."""
        return self.tokens[self.n_special:]

    @property
    def final_n(self):
        """Number of image tokens after the last merge."""
        return self.composed_map.n_clusters


def _frozen(weights):
    """Return float32 weights with the writeable flag unset."""
    weights = weights.astype(TOKEN_DTYPE)
    check_npndarray(weights, writeable=False, verbose=False)

    return weights


def init_encoder(config):
    """Initialise encoder.

    Parameters
    ----------
    config : EncoderConfig
        Encoder hyperparameters

    Returns
    -------
    Encoder
        Encoder with weights drawn from the seeded generator with scale
        ``1 / sqrt(d)``

    Raises
    ------
    ConfigError
        For an invalid configuration

    Examples
    --------
    >>> from mpmerge.encoder.config import EncoderConfig
    >>> from mpmerge.encoder.model import init_encoder
    >>> cfg = EncoderConfig(image_h=32, image_w=32, depth=2, dim=8, heads=2)
    >>> init_encoder(cfg).checksum() == init_encoder(cfg).checksum()
    True

    """
    if not isinstance(config, EncoderConfig):
        raise ConfigError('Expected an EncoderConfig, got {0}.'.format(
            type(config),
        ))

    rng = get_rng(config.seed)
    dim = config.dim
    scale = 1.0 / np.sqrt(dim)

    def draw(shape):
        return _frozen(rng.standard_normal(shape) * scale)

    patch_weight = draw((config.patch_dim, dim))
    patch_bias = draw(dim)
    pos_embed = draw((config.n_tokens, dim))
    special_tokens = draw((config.n_special, dim))

    blocks = [
        init_block(rng, dim, config.heads, config.ffn_mult)
        for _ in range(config.depth)
    ]

    return Encoder(
        config,
        patch_weight,
        patch_bias,
        pos_embed,
        special_tokens,
        blocks,
        _frozen(np.ones(dim)),
        _frozen(np.zeros(dim)),
    )


def patch_embed(image, enc):
    """Patch embedding.

    Parameters
    ----------
    image : numpy.ndarray
        ``H x W x C`` image
    enc : Encoder
        Encoder

    Returns
    -------
    numpy.ndarray
        ``N x d`` raster-ordered image tokens with positional embeddings
        added

    Raises
    ------
    ShapeError
        If the image does not match the encoder geometry

    """
    image = check_image(image)
    cfg = enc.config

    if image.shape != (cfg.image_h, cfg.image_w, cfg.channels):
        raise ShapeError(
            'Image of shape {0} does not match the encoder input {1}.'.format(
                image.shape,
                (cfg.image_h, cfg.image_w, cfg.channels),
            ),
        )

    patches = image_to_patches(image, cfg.patch).astype(TOKEN_DTYPE)

    return patches @ enc.patch_weight + enc.patch_bias + enc.pos_embed


def _check_schedule(schedule, enc):
    """Return a schedule checked against the encoder depth."""
    if not isinstance(schedule, InsertionSchedule):
        schedule = InsertionSchedule(schedule)

    schedule.check_depth(enc.config.depth)

    return schedule


def _merge(tokens, composed_map, n_special, block, enc):
    """Merge the image tokens of one sequence.

    Returns the new sequence, the new composed map and the elapsed time.
    """
    start = perf_counter()

    n_in = tokens.shape[0] - n_special
    merged, merge_map = mpm_step(tokens[n_special:])

    if isinstance(composed_map, type(None)):
        composed_map = ComposedMap.from_map(merge_map)
    else:
        composed_map = compose(composed_map, merge_map)

    tokens = np.concatenate((tokens[:n_special], merged), axis=0)
    elapsed = perf_counter() - start

    enc.notify_observers(
        'mpm',
        block=block,
        n_in=n_in,
        n_out=merged.shape[0],
    )

    return tokens, composed_map, elapsed


def forward_tokens(tokens, enc, schedule, use_msa=True):
    """Forward tokens.

    Run the transformer blocks, with merging, on an embedded sequence.

    Parameters
    ----------
    tokens : numpy.ndarray
        ``(E + N) x d`` sequence, special tokens first
    enc : Encoder
        Encoder
    schedule : InsertionSchedule or iterable
        Blocks before which MPM runs
    use_msa : bool, optional
        Option to use the attention sublayers (default is ``True``)

    Returns
    -------
    EncoderOutput
        Output tokens, composed map, lengths and timings

    """
    schedule = _check_schedule(schedule, enc)
    n_special = enc.n_special
    n_tokens = tokens.shape[0] - n_special

    composed_map = None
    per_block_lengths = []
    merge_time = 0.0
    per_block_time = []

    for index, blk in enumerate(enc.blocks):
        if index in schedule:
            tokens, composed_map, elapsed = _merge(
                tokens,
                composed_map,
                n_special,
                index,
                enc,
            )
            merge_time += elapsed

        per_block_lengths.append(tokens.shape[0])

        start = perf_counter()
        tokens = transformer_block(tokens, blk, use_msa=use_msa)
        per_block_time.append(perf_counter() - start)

    tokens = layer_norm(tokens, enc.norm_gamma, enc.norm_beta)

    if isinstance(composed_map, type(None)):
        composed_map = ComposedMap.identity(n_tokens)

    return EncoderOutput(
        tokens,
        composed_map,
        per_block_lengths,
        merge_time,
        per_block_time,
        n_special,
    )


def forward(image, enc, schedule, use_msa=True):
    """Forward.

    Parameters
    ----------
    image : numpy.ndarray
        ``H x W x C`` image
    enc : Encoder
        Encoder
    schedule : InsertionSchedule or iterable
        Blocks before which MPM runs, an empty schedule is the baseline
    use_msa : bool, optional
        Option to use the attention sublayers (default is ``True``)

    Returns
    -------
    EncoderOutput
        Output tokens, composed map, lengths and timings

    Examples
    --------
    >>> import numpy as np
    >>> from mpmerge.encoder.config import EncoderConfig
    >>> from mpmerge.encoder.model import forward, init_encoder
    >>> cfg = EncoderConfig(image_h=32, image_w=32, depth=2, dim=8, heads=2)
    >>> enc = init_encoder(cfg)
    >>> forward(np.zeros((32, 32, 3)), enc, []).per_block_lengths
    [5, 5]

    """
    tokens = np.concatenate(
        (enc.special_tokens, patch_embed(image, enc)),
        axis=0,
    )

    return forward_tokens(tokens, enc, schedule, use_msa=use_msa)


def forward_full_pipeline(image, enc, schedule):
    """Forward full pipeline.

    Encode, restore the full image-token grid and prepend the special tokens.

    Parameters
    ----------
    image : numpy.ndarray
        ``H x W x C`` image
    enc : Encoder
        Encoder
    schedule : InsertionSchedule or iterable
        Blocks before which MPM runs

    Returns
    -------
    numpy.ndarray
        ``(E + N) x d`` decoder input, whatever the schedule

    """
    output = forward(image, enc, schedule)
    z_up = reconstruct(output.image_tokens, output.composed_map)

    return assemble_decoder_input(output.special_tokens, z_up)


def _pad(sequences, dim):
    """Stack sequences into a zero-padded batch with a key mask."""
    lengths = [seq.shape[0] for seq in sequences]
    n_max = max(lengths)

    if min(lengths) == n_max:
        return np.stack(sequences), None, n_max

    batch = np.zeros((len(sequences), n_max, dim), dtype=TOKEN_DTYPE)
    key_mask = np.zeros((len(sequences), n_max), dtype=bool)

    for index, seq in enumerate(sequences):
        batch[index, :lengths[index]] = seq
        key_mask[index, :lengths[index]] = True

    return batch, key_mask, n_max


def forward_batch(
    images,
    enc,
    schedule,
    executor=None,
    use_msa=True,
    embedded=False,
):
    """Forward batch.

    Encode a batch of images. Merging runs per image, the merged sequences
    are then zero-padded to the batch maximum and the padding keys are
    masked in attention.

    Parameters
    ----------
    images : list
        ``H x W x C`` images
    enc : Encoder
        Encoder
    schedule : InsertionSchedule or iterable
        Blocks before which MPM runs
    executor : concurrent.futures.Executor, optional
        Executor used to embed and merge the images in parallel
    use_msa : bool, optional
        Option to use the attention sublayers (default is ``True``)
    embedded : bool, optional
        Option to treat the inputs as ``N x d`` image tokens that skip the
        patch embedding (default is ``False``)

    Returns
    -------
    BatchOutput
        Per-image :class:`EncoderOutput`, the padded length entering every
        block, the batch merge time and the batch block time, in total and
        per block

    Notes
    -----
    The per-image block times are the batch block times divided by the
    batch size.

    """
    schedule = _check_schedule(schedule, enc)
    n_special = enc.n_special
    dim = enc.config.dim
    n_images = len(images)

    if not n_images:
        raise ShapeError('A batch needs at least one image.')

    def run(func, *iterables):
        if isinstance(executor, type(None)):
            return list(map(func, *iterables))
        return list(executor.map(func, *iterables))

    def embed(image):
        if embedded:
            tokens = check_tokens(image)
            if tokens.shape[1] != dim:
                raise ShapeError(
                    'Tokens of dimension {0} do not match d={1}.'.format(
                        tokens.shape[1],
                        dim,
                    ),
                )
        else:
            tokens = patch_embed(image, enc)
        return np.concatenate((enc.special_tokens, tokens), axis=0)

    sequences = run(embed, images)
    n_tokens = [seq.shape[0] - n_special for seq in sequences]

    composed_maps = [None] * n_images
    image_merge_time = [0.0] * n_images
    lengths = [[] for _ in range(n_images)]
    padded_lengths = []
    merge_time = 0.0
    per_block_time = []

    for index, blk in enumerate(enc.blocks):
        if index in schedule:
            start = perf_counter()
            merged = run(
                lambda seq, cmap: _merge(seq, cmap, n_special, index, enc),
                sequences,
                composed_maps,
            )
            merge_time += perf_counter() - start

            for image_index, (seq, cmap, elapsed) in enumerate(merged):
                sequences[image_index] = seq
                composed_maps[image_index] = cmap
                image_merge_time[image_index] += elapsed

        for image_index, seq in enumerate(sequences):
            lengths[image_index].append(seq.shape[0])

        start = perf_counter()
        batch, key_mask, n_max = _pad(sequences, dim)
        batch = transformer_block(batch, blk, key_mask, use_msa=use_msa)
        sequences = [
            batch[image_index, :seq.shape[0]]
            for image_index, seq in enumerate(sequences)
        ]
        per_block_time.append(perf_counter() - start)
        padded_lengths.append(n_max)

    outputs = []
    for image_index, seq in enumerate(sequences):
        cmap = composed_maps[image_index]
        if isinstance(cmap, type(None)):
            cmap = ComposedMap.identity(n_tokens[image_index])
        outputs.append(EncoderOutput(
            layer_norm(seq, enc.norm_gamma, enc.norm_beta),
            cmap,
            lengths[image_index],
            image_merge_time[image_index],
            [elapsed / n_images for elapsed in per_block_time],
            n_special,
        ))

    return BatchOutput(
        outputs,
        padded_lengths,
        merge_time,
        sum(per_block_time),
        per_block_time,
    )
