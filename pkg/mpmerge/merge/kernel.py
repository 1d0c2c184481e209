# -*- coding: utf-8 -*-

r"""MUTUAL PAIR MERGING.

This module contains the vectorised Mutual Pair Merging (MPM) kernel.

One MPM call proceeds as follows:

    1. L2-normalise the tokens, :math:`\tilde{X} = \mathrm{norm}_2(X)`.
    2. Compute the cosine affinity :math:`S = \tilde{X}\tilde{X}^\top` with a
       masked diagonal.
    3. Take every token's nearest neighbour
       :math:`b(i) = \arg\max_{j \neq i} S_{ij}` (lowest index on ties).
    4. Keep the mutual pairs :math:`\{(i, j) : b(i) = j, b(j) = i, i < j\}`.
    5. Give compact cluster IDs by a left-to-right scan, the lower index of a
       pair is the representative and its partner inherits the ID.
    6. Average the original (not normalised) tokens of each cluster.

There is no threshold or keep rate: how much a call merges depends only on
the data.

:Author: mpmerge developers

"""

from collections import namedtuple

import numpy as np

from mpmerge.base.types import (
    MAP_DTYPE,
    TOKEN_DTYPE,
    MergeMap,
    check_tokens,
)
from mpmerge.interface.errors import (
    InvalidPairingError,
    ReconstructionError,
    ShapeError,
)
from mpmerge.math.matrix import cosine_affinity, row_normalize

# Precision of the pairing decision, tokens themselves stay float32
AFFINITY_DTYPE = np.float64

MpmResult = namedtuple('MpmResult', ['merged', 'merge_map'])


def nearest_neighbors(affinity):
    """Nearest neighbours.

    Parameters
    ----------
    affinity : numpy.ndarray
        ``N x N`` affinity matrix with a masked diagonal, ``N >= 2``

    Returns
    -------
    numpy.ndarray
        Index of the most similar other token for every row

    Raises
    ------
    ShapeError
        If the affinity matrix is not square or has fewer than two rows

    Notes
    -----
    :func:`numpy.argmax` returns the first maximal entry, so ties go to the
    lowest column index.

    """
    affinity = np.asarray(affinity)

    if affinity.ndim != 2 or affinity.shape[0] != affinity.shape[1]:
        raise ShapeError('The affinity matrix must be square.')

    if affinity.shape[0] < 2:
        raise ShapeError('Nearest neighbours need at least two tokens.')

    return np.argmax(affinity, axis=1)


def mutual_pairs(neighbors):
    """Mutual pairs.

    Parameters
    ----------
    neighbors : numpy.ndarray
        Nearest-neighbour index of every token

    Returns
    -------
    numpy.ndarray
        ``P x 2`` array of reciprocal pairs ``(i, j)`` with ``i < j``, sorted
        by ``i``

    Examples
    --------
    >>> import numpy as np
    >>> from mpmerge.merge.kernel import mutual_pairs
    >>> mutual_pairs(np.array([1, 0, 0]))
    array([[0, 1]])

    """
    neighbors = np.asarray(neighbors, dtype=np.int64)
    index = np.arange(neighbors.size)

    keep = (neighbors[neighbors] == index) & (index < neighbors)

    return np.stack((index[keep], neighbors[keep]), axis=1)


def assign_compact_ids(n_tokens, pairs):
    """Assign compact IDs.

    Scan the positions from left to right: singletons and the lower index of
    each pair receive the next fresh ID, the higher index of a pair inherits
    the ID of its partner.

    Parameters
    ----------
    n_tokens : int
        Number of token positions
    pairs : numpy.ndarray
        ``P x 2`` array of disjoint pairs ``(i, j)`` with ``i < j``

    Returns
    -------
    MergeMap
        Compact merge map

    Raises
    ------
    InvalidPairingError
        For out-of-range, unordered or overlapping pairs

    Examples
    --------
    >>> from mpmerge.merge.kernel import assign_compact_ids
    >>> assign_compact_ids(6, [(0, 1), (2, 5)]).entries
    array([0, 0, 1, 2, 3, 1], dtype=uint32)

    """
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    lower, upper = pairs[:, 0], pairs[:, 1]

    if pairs.size:
        if lower.min() < 0 or upper.max() >= n_tokens:
            raise InvalidPairingError('Pair indices must lie in [0, n).')
        if np.any(lower >= upper):
            raise InvalidPairingError('Pairs must satisfy i < j.')
        if np.bincount(pairs.ravel(), minlength=n_tokens).max() > 1:
            raise InvalidPairingError('Pairs must be disjoint.')

    is_rep = np.ones(n_tokens, dtype=bool)
    is_rep[upper] = False

    entries = np.cumsum(is_rep, dtype=np.int64) - 1
    entries[upper] = entries[lower]

    n_clusters = n_tokens - lower.size

    return MergeMap(
        entries.astype(MAP_DTYPE),
        n_clusters=n_clusters,
        validate=__debug__,
    )


def merge_tokens(input_data, merge_map):
    r"""Merge tokens.

    Average the tokens of every cluster.

    Parameters
    ----------
    input_data : numpy.ndarray
        ``N x d`` token matrix
    merge_map : MergeMap
        Map with clusters of one or two members

    Returns
    -------
    numpy.ndarray
        ``N' x d`` merged tokens, row ``k`` is the mean of the rows mapped to
        ``k``

    Raises
    ------
    ReconstructionError
        If the map length differs from the number of tokens

    Notes
    -----
    Implements :math:`x'_k = \frac{1}{|C_k|}\sum_{i \in C_k} x_i`. Since IDs
    are first seen in increasing order, the first member of every cluster
    sits at the ``k``-th representative position; the second member, when
    there is one, is added in float64 and the pair halved, so that the mean
    of two finite tokens is finite and correctly rounded. Maps with larger
    clusters (composed maps) fall back to an unbuffered float64 sum.

    """
    tokens = check_tokens(input_data)
    entries = merge_map.entries

    if entries.size != tokens.shape[0]:
        raise ReconstructionError(
            'Merge map of length {0} does not match {1} tokens.'.format(
                entries.size,
                tokens.shape[0],
            ),
        )

    sizes = merge_map.cluster_sizes()
    if sizes.max() > MergeMap.max_cluster_size:
        sums = np.zeros((merge_map.n_clusters, tokens.shape[1]))
        np.add.at(sums, entries, tokens)
        return (sums / sizes[:, None]).astype(TOKEN_DTYPE)

    running_max = np.maximum.accumulate(entries.astype(np.int64))
    is_first = entries > np.concatenate(([-1], running_max[:-1]))

    merged = tokens[is_first].copy()

    second = np.flatnonzero(~is_first)
    if second.size:
        ids = entries[second]
        pair_sum = merged[ids].astype(np.float64) + tokens[second]
        merged[ids] = (pair_sum * 0.5).astype(TOKEN_DTYPE)

    return merged


def mpm_step(input_data):
    """MPM step.

    Run one Mutual Pair Merging call.

    Parameters
    ----------
    input_data : numpy.ndarray
        ``N x d`` token matrix, ``N >= 1``

    Returns
    -------
    MpmResult
        Merged ``N' x d`` tokens and the length-``N`` merge map

    Raises
    ------
    DegenerateTokenError
        If a token has zero L2 norm

    Examples
    --------
    >>> import numpy as np
    >>> from mpmerge.merge.kernel import mpm_step
    >>> x = np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    >>> mpm_step(x).merge_map.entries
    array([0, 0, 1], dtype=uint32)

    """
    tokens = check_tokens(input_data)
    n_tokens = tokens.shape[0]

    if n_tokens == 1:
        return MpmResult(tokens.copy(), MergeMap.identity(1))

    x_norm = row_normalize(tokens, dtype=AFFINITY_DTYPE)
    neighbors = nearest_neighbors(cosine_affinity(x_norm))
    merge_map = assign_compact_ids(n_tokens, mutual_pairs(neighbors))

    return MpmResult(merge_tokens(tokens, merge_map), merge_map)
