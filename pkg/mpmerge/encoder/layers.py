# -*- coding: utf-8 -*-

r"""TRANSFORMER LAYERS.

This module contains the building blocks of the toy encoder: layer
normalisation, multi-head self-attention, the feed-forward network and the
pre-norm transformer block

.. math::
    Y = X + \mathrm{MSA}(\mathrm{LN}(X)), \quad
    X_{\ell + 1} = Y + \mathrm{FFN}(\mathrm{LN}(Y))

All layers accept a single ``n x d`` sequence or a padded ``B x n x d`` batch
with a boolean key mask.

:Author: mpmerge developers

"""

from collections import namedtuple

import numpy as np
from scipy.special import erf, softmax

from mpmerge.base.types import TOKEN_DTYPE, check_npndarray
from mpmerge.interface.errors import ShapeError

LN_EPS = 1e-6

BlockWeights = namedtuple(
    'BlockWeights',
    [
        'n_heads',
        'ln1_gamma',
        'ln1_beta',
        'wqkv',
        'bqkv',
        'wo',
        'bo',
        'ln2_gamma',
        'ln2_beta',
        'w1',
        'b1',
        'w2',
        'b2',
    ],
)


def _draw(rng, shape, scale):
    """Draw frozen float32 weights from a centred normal distribution."""
    weights = (rng.standard_normal(shape) * scale).astype(TOKEN_DTYPE)
    check_npndarray(weights, writeable=False, verbose=False)

    return weights


def _constant(shape, fill_value):
    """Frozen float32 constant array."""
    weights = np.full(shape, fill_value, dtype=TOKEN_DTYPE)
    check_npndarray(weights, writeable=False, verbose=False)

    return weights


def init_block(rng, dim, heads, ffn_mult=4):
    """Initialise block weights.

    Every weight and bias is drawn from :math:`\\mathcal{N}(0, 1/d)`, layer
    normalisation starts at unit scale and zero shift.

    Parameters
    ----------
    rng : numpy.random.Generator
        Seeded random number generator
    dim : int
        Token dimension ``d``
    heads : int
        Number of attention heads
    ffn_mult : int, optional
        Hidden width multiple of the feed-forward network (default is ``4``)

    Returns
    -------
    BlockWeights
        Read-only block weights

    """
    scale = 1.0 / np.sqrt(dim)
    hidden = ffn_mult * dim

    return BlockWeights(
        n_heads=heads,
        ln1_gamma=_constant(dim, 1),
        ln1_beta=_constant(dim, 0),
        wqkv=_draw(rng, (dim, 3 * dim), scale),
        bqkv=_draw(rng, 3 * dim, scale),
        wo=_draw(rng, (dim, dim), scale),
        bo=_draw(rng, dim, scale),
        ln2_gamma=_constant(dim, 1),
        ln2_beta=_constant(dim, 0),
        w1=_draw(rng, (dim, hidden), scale),
        b1=_draw(rng, hidden, scale),
        w2=_draw(rng, (hidden, dim), scale),
        b2=_draw(rng, dim, scale),
    )


def layer_norm(input_data, gamma, beta, eps=LN_EPS):
    r"""Layer normalisation.

    Parameters
    ----------
    input_data : numpy.ndarray
        Tokens, the last axis is the feature axis
    gamma : numpy.ndarray
        Scale
    beta : numpy.ndarray
        Shift
    eps : float, optional
        Variance floor (default is ``1e-6``)

    Returns
    -------
    numpy.ndarray
        Normalised tokens

    Notes
    -----
    Implements :math:`\gamma (x - \mu) / \sqrt{\sigma^2 + \epsilon} + \beta`
    per token. An all-zero token maps to ``beta``.

    """
    mean = input_data.mean(axis=-1, keepdims=True)
    centred = input_data - mean
    var = (centred * centred).mean(axis=-1, keepdims=True)

    return centred / np.sqrt(var + TOKEN_DTYPE(eps)) * gamma + beta


def gelu(input_data):
    r"""GELU.

    Exact Gaussian error linear unit
    :math:`\frac{x}{2}(1 + \mathrm{erf}(x / \sqrt{2}))`.

    Parameters
    ----------
    input_data : numpy.ndarray
        Input data

    Returns
    -------
    numpy.ndarray
        Activated data

    """
    half = input_data.dtype.type(0.5)
    root = input_data.dtype.type(np.sqrt(0.5))

    return half * input_data * (1 + erf(input_data * root))


def _as_batch(input_data):
    """Return a 3D view of the tokens and whether one was added."""
    if input_data.ndim == 2:
        return input_data[None], True

    if input_data.ndim != 3:
        raise ShapeError('Tokens must have shape (n, d) or (B, n, d).')

    return input_data, False


def multi_head_attention(input_data, blk, key_mask=None):
    r"""Multi-head self-attention.

    Parameters
    ----------
    input_data : numpy.ndarray
        ``n x d`` tokens or a ``B x n x d`` batch
    blk : BlockWeights
        Block weights
    key_mask : numpy.ndarray, optional
        ``B x n`` (or ``n``) boolean mask, ``False`` marks padding keys which
        receive :math:`-\infty` logits

    Returns
    -------
    numpy.ndarray
        Attention output with the shape of the input

    Raises
    ------
    ShapeError
        If the feature dimension does not match the weights

    Notes
    -----
    Implements
    :math:`\mathrm{softmax}(Q K^\top / \sqrt{d_h} ) V` per head, followed by
    the output projection.

    """
    batch, squeeze = _as_batch(input_data)
    n_batch, n_tokens, dim = batch.shape

    if dim != blk.wo.shape[0]:
        raise ShapeError(
            'Tokens of dimension {0} do not match weights of dimension {1}.'
            .format(dim, blk.wo.shape[0]),
        )

    head_dim = dim // blk.n_heads

    qkv = batch @ blk.wqkv + blk.bqkv
    qkv = qkv.reshape(n_batch, n_tokens, 3, blk.n_heads, head_dim)
    query, key, value = qkv.transpose(2, 0, 3, 1, 4)

    scale = TOKEN_DTYPE(1.0 / np.sqrt(head_dim))
    logits = (query @ key.swapaxes(-1, -2)) * scale

    if not isinstance(key_mask, type(None)):
        key_mask = np.asarray(key_mask, dtype=bool).reshape(n_batch, 1, 1, -1)
        logits = np.where(key_mask, logits, TOKEN_DTYPE(-np.inf))

    attention = softmax(logits, axis=-1)

    heads_out = (attention @ value).transpose(0, 2, 1, 3)
    output = heads_out.reshape(n_batch, n_tokens, dim) @ blk.wo + blk.bo

    return output[0] if squeeze else output


def feed_forward(input_data, blk):
    """Feed-forward network.

    Parameters
    ----------
    input_data : numpy.ndarray
        Tokens, the last axis is the feature axis
    blk : BlockWeights
        Block weights

    Returns
    -------
    numpy.ndarray
        Output of the two-layer GELU network

    """
    return gelu(input_data @ blk.w1 + blk.b1) @ blk.w2 + blk.b2


def transformer_block(input_data, blk, key_mask=None, use_msa=True):
    """Transformer block.

    Pre-norm block with residual connections.

    Parameters
    ----------
    input_data : numpy.ndarray
        ``n x d`` tokens or a ``B x n x d`` batch
    blk : BlockWeights
        Block weights
    key_mask : numpy.ndarray, optional
        Boolean key mask for padded batches
    use_msa : bool, optional
        Option to use the attention sublayer, when ``False`` it is replaced
        by the identity (default is ``True``)

    Returns
    -------
    numpy.ndarray
        Output tokens with the shape of the input

    Examples
    --------
    >>> import numpy as np
    >>> from mpmerge.base.rng import get_rng
    >>> from mpmerge.encoder.layers import init_block, transformer_block
    >>> blk = init_block(get_rng(0), 8, 2)
    >>> transformer_block(np.ones((5, 8), dtype=np.float32), blk).shape
    (5, 8)

    """
    normed = layer_norm(input_data, blk.ln1_gamma, blk.ln1_beta)

    if use_msa:
        hidden = input_data + multi_head_attention(normed, blk, key_mask)
    else:
        hidden = input_data + normed

    normed = layer_norm(hidden, blk.ln2_gamma, blk.ln2_beta)

    return (hidden + feed_forward(normed, blk)).astype(TOKEN_DTYPE, copy=False)
