# -*- coding: utf-8 -*-

"""MATRIX ROUTINES.

This module contains methods for the dense cosine affinity between tokens.

:Author: mpmerge developers

"""

import numpy as np

from mpmerge.base.types import TOKEN_DTYPE, check_tokens
from mpmerge.interface.errors import DegenerateTokenError, ShapeError

NORM_FLOOR = 1e-12


def masked_value(dtype):
    """Masked value.

    Sentinel written on the diagonal of an affinity matrix: the most negative
    finite value of the element type, which compares below every cosine.

    Parameters
    ----------
    dtype : numpy.dtype
        Floating point type

    Returns
    -------
    float
        ``numpy.finfo(dtype).min``

    """
    return np.finfo(dtype).min


def row_normalize(input_data, dtype=TOKEN_DTYPE):
    r"""Row normalize.

    This method scales every token to unit L2 norm.

    Parameters
    ----------
    input_data : numpy.ndarray
        ``N x d`` token matrix
    dtype : numpy.dtype, optional
        Precision of the computation and of the output (default is
        ``float32``)

    Returns
    -------
    numpy.ndarray
        Row-normalized tokens

    Raises
    ------
    DegenerateTokenError
        If a token has an L2 norm below ``1e-12``

    Examples
    --------
    >>> from mpmerge.math.matrix import row_normalize
    >>> row_normalize([[3, 4]])
    array([[0.6, 0.8]], dtype=float32)

    Notes
    -----
    Implements :math:`\tilde{x}_i = x_i / \|x_i\|_2`. Cosine similarity is not
    defined for zero vectors, so such tokens are rejected.

    """
    tokens = check_tokens(input_data).astype(dtype, copy=False)
    norms = np.sqrt(np.einsum('ij,ij->i', tokens, tokens))

    degenerate = np.flatnonzero(norms < NORM_FLOOR)
    if degenerate.size:
        raise DegenerateTokenError(
            'Tokens {0} have zero L2 norm, cosine similarity is undefined.'
            .format(degenerate[:10].tolist()),
        )

    return tokens / norms[:, None]


def cosine_affinity(x_norm):
    r"""Cosine affinity.

    This method computes the dense affinity between row-normalized tokens and
    masks the diagonal so that no token selects itself.

    Parameters
    ----------
    x_norm : numpy.ndarray
        ``N x d`` row-normalized tokens

    Returns
    -------
    numpy.ndarray
        ``N x N`` symmetric affinity matrix of the same dtype as the input,
        with the diagonal set to :func:`masked_value`

    Raises
    ------
    ShapeError
        If the input is not a 2D array

    Examples
    --------
    >>> import numpy as np
    >>> from mpmerge.math.matrix import cosine_affinity
    >>> s = cosine_affinity(np.eye(2))
    >>> s[0, 1]
    0.0

    Notes
    -----
    Implements :math:`S = \tilde{X}\tilde{X}^\top`. The product is taken over
    the distinct rows only and expanded back, so that equal tokens get
    bit-equal rows and columns and argmax ties between them are exact. It is
    then symmetrised as :math:`(S + S^\top) / 2`, so :math:`S_{ij} = S_{ji}`
    holds exactly whatever summation order the BLAS library uses.

    """
    x_norm = np.asarray(x_norm)

    if x_norm.ndim != 2:
        raise ShapeError('Normalized tokens must be a 2D array.')

    unique_rows, inverse = np.unique(x_norm, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)

    affinity = unique_rows @ unique_rows.T
    affinity = (affinity + affinity.T) * 0.5
    affinity = np.take(np.take(affinity, inverse, axis=0), inverse, axis=1)
    np.fill_diagonal(affinity, masked_value(affinity.dtype))

    return affinity
