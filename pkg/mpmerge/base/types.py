# -*- coding: utf-8 -*-

"""TYPE HANDLING ROUTINES.

This module contains the shared token and merge-map types together with the
methods that validate them.

Token matrices are plain ``float32`` numpy arrays of shape ``(N, d)`` in
raster order; merge maps are wrapped in :class:`MergeMap` so that the number
of clusters travels with the cluster IDs.

:Author: mpmerge developers

"""

import numpy as np

from mpmerge.interface.errors import DataError, ShapeError, warn

TOKEN_DTYPE = np.float32
MAP_DTYPE = np.uint32


def check_npndarray(input_obj, dtype=None, writeable=True, verbose=True):
    """Check Numpy ND-Array.

    Check if input object is a numpy array and set its writeable flag.

    Parameters
    ----------
    input_obj : numpy.ndarray
        Input object
    dtype : type
        Numpy ndarray data type
    writeable : bool
        Option to make array immutable
    verbose : bool
        Verbosity option

    Raises
    ------
    TypeError
        For invalid input type
    TypeError
        For invalid numpy.ndarray dtype

    """
    if not isinstance(input_obj, np.ndarray):
        raise TypeError('Input is not a numpy array.')

    if (
        (not isinstance(dtype, type(None)))
        and (not np.issubdtype(input_obj.dtype, dtype))
    ):
        raise TypeError(
            'The numpy array elements are not of type: {0}'.format(dtype),
        )

    if not writeable and verbose and input_obj.flags.writeable:
        warn('Making input data immutable.')

    input_obj.flags.writeable = writeable


def check_tokens(input_data, name='tokens'):
    """Check tokens.

    Check that the input is a valid token matrix and return it as a
    C-contiguous ``float32`` array.

    Parameters
    ----------
    input_data : numpy.ndarray, list or tuple
        Candidate ``N x d`` token matrix
    name : str, optional
        Name used in error messages (default is ``'tokens'``)

    Returns
    -------
    numpy.ndarray
        Token matrix of dtype ``float32``

    Raises
    ------
    TypeError
        For invalid input type
    ShapeError
        If the input is not 2D or has no rows or columns
    DataError
        If any entry is NaN or infinite

    Examples
    --------
    >>> from mpmerge.base.types import check_tokens
    >>> check_tokens([[3, 4]])
    array([[3., 4.]], dtype=float32)

    """
    if not isinstance(input_data, (list, tuple, np.ndarray)):
        raise TypeError('Invalid {0} type.'.format(name))

    tokens = np.ascontiguousarray(input_data, dtype=TOKEN_DTYPE)

    if tokens.ndim != 2:
        raise ShapeError(
            'The {0} must be a 2D array, not {1}D.'.format(name, tokens.ndim),
        )

    if tokens.shape[0] < 1 or tokens.shape[1] < 1:
        raise ShapeError(
            'The {0} must have at least one row and one column, got {1}.'
            .format(name, tokens.shape),
        )

    if not np.all(np.isfinite(tokens)):
        raise DataError('The {0} contain NaN or Inf values.'.format(name))

    return tokens


def check_special_tokens(input_data, dim):
    """Check special tokens.

    Check that the input is a valid ``E x d`` special-token matrix, ``E`` may
    be zero.

    Parameters
    ----------
    input_data : numpy.ndarray, list or tuple
        Candidate special tokens
    dim : int
        Expected feature dimension

    Returns
    -------
    numpy.ndarray
        Special tokens of dtype ``float32``

    Raises
    ------
    ShapeError
        For an invalid shape or feature dimension
    DataError
        If any entry is NaN or infinite

    """
    special = np.ascontiguousarray(input_data, dtype=TOKEN_DTYPE)

    if special.size == 0:
        special = special.reshape(0, dim)

    if special.ndim != 2 or special.shape[1] != dim:
        raise ShapeError(
            'Special tokens must have shape (E, {0}), got {1}.'.format(
                dim,
                special.shape,
            ),
        )

    if not np.all(np.isfinite(special)):
        raise DataError('The special tokens contain NaN or Inf values.')

    return special


def validate_merge_map(entries, n_clusters, max_cluster_size=2):
    r"""Validate merge map.

    Check the merge-map invariants with a single pass over the entries:
    every ID is below ``n_clusters``, every cluster is non-empty, clusters
    are no larger than ``max_cluster_size`` and IDs are first seen in
    increasing order.

    Parameters
    ----------
    entries : numpy.ndarray
        1D array of cluster IDs
    n_clusters : int
        Number of clusters
    max_cluster_size : int or None, optional
        Largest allowed cluster, ``None`` disables the check (default is
        ``2``)

    Raises
    ------
    ShapeError
        If the entries are not a non-empty 1D array
    DataError
        If any invariant is violated

    Notes
    -----
    With clusters of at most two members the number of clusters satisfies

    .. math::
        \lceil N / 2 \rceil \leq N' \leq N

    which is also checked.

    """
    entries = np.asarray(entries)

    if entries.ndim != 1 or entries.size < 1:
        raise ShapeError('A merge map must be a non-empty 1D array.')

    n_tokens = entries.size
    entries = entries.astype(np.int64)

    if n_clusters < 1 or n_clusters > n_tokens:
        raise DataError(
            'Invalid number of clusters {0} for {1} tokens.'.format(
                n_clusters,
                n_tokens,
            ),
        )

    if entries.min() < 0 or entries.max() >= n_clusters:
        raise DataError('Merge map IDs must lie in [0, {0}).'.format(
            n_clusters,
        ))

    sizes = np.bincount(entries, minlength=n_clusters)

    if np.any(sizes == 0):
        raise DataError('Merge map is not surjective.')

    if max_cluster_size is not None:
        if sizes.max() > max_cluster_size:
            raise DataError(
                'Merge map has a cluster with {0} members, maximum is {1}.'
                .format(sizes.max(), max_cluster_size),
            )

    previous_max = np.maximum.accumulate(entries)
    previous_max = np.concatenate(([-1], previous_max[:-1]))

    if np.any(entries > previous_max + 1):
        raise DataError(
            'Merge map IDs are not first seen in increasing order.',
        )


class MergeMap(object):
    """Merge map.

    Length-``N`` surjection from token positions onto compact cluster IDs
    ``0 .. N' - 1``. The entries are stored as a read-only ``uint32`` array.

    Parameters
    ----------
    entries : numpy.ndarray, list or tuple
        Cluster ID of every token position
    n_clusters : int, optional
        Number of clusters, inferred as ``max(entries) + 1`` if not provided
    validate : bool, optional
        Option to check the merge-map invariants (default is ``True``)

    Examples
    --------
    >>> from mpmerge.base.types import MergeMap
    >>> merge_map = MergeMap([0, 1, 0, 2])
    >>> merge_map.n_clusters
    3
    >>> merge_map.cluster_sizes()
    array([2, 1, 1])

    """

    max_cluster_size = 2

    def __init__(self, entries, n_clusters=None, validate=True):

        entries = np.asarray(entries)

        if entries.ndim != 1 or entries.size < 1:
            raise ShapeError('A merge map must be a non-empty 1D array.')

        if not np.issubdtype(entries.dtype, np.integer):
            raise TypeError('Merge map entries must be integers.')

        if entries.min() < 0:
            raise DataError('Merge map IDs must be non-negative.')

        entries = np.array(entries, dtype=MAP_DTYPE)
        check_npndarray(entries, writeable=False, verbose=False)

        if isinstance(n_clusters, type(None)):
            n_clusters = int(entries.max()) + 1

        if validate:
            validate_merge_map(entries, n_clusters, self.max_cluster_size)

        self._entries = entries
        self._n_clusters = int(n_clusters)

    @property
    def entries(self):
        """Cluster IDs."""
        return self._entries

    @property
    def n_clusters(self):
        """Number of clusters."""
        return self._n_clusters

    @property
    def n_tokens(self):
        """Number of token positions."""
        return self._entries.size

    def __len__(self):
        """Length."""
        return self._entries.size

    def __eq__(self, other):
        """Equality."""
        if not isinstance(other, MergeMap):
            return NotImplemented

        return (
            self.n_clusters == other.n_clusters
            and np.array_equal(self.entries, other.entries)
        )

    def __hash__(self):
        """Hash."""
        return hash((self._n_clusters, self._entries.tobytes()))

    def __repr__(self):
        """Representation."""
        return '{0}(n_tokens={1}, n_clusters={2})'.format(
            type(self).__name__,
            self.n_tokens,
            self.n_clusters,
        )

    def cluster_sizes(self):
        """Cluster sizes.

        Returns
        -------
        numpy.ndarray
            Number of token positions in each cluster

        """
        return np.bincount(self._entries, minlength=self._n_clusters)

    def is_identity(self):
        """Check if the map keeps every token on its own.

        Returns
        -------
        bool
            ``True`` if ``N' == N``

        """
        return self._n_clusters == self.n_tokens

    def merged_fraction(self):
        """Merged fraction.

        Returns
        -------
        float
            Fraction of tokens removed, ``(N - N') / N``

        """
        return (self.n_tokens - self._n_clusters) / self.n_tokens

    @classmethod
    def identity(cls, n_tokens):
        """Identity map.

        Parameters
        ----------
        n_tokens : int
            Number of token positions

        Returns
        -------
        MergeMap
            Map sending position ``i`` to cluster ``i``

        """
        return cls(np.arange(n_tokens), n_clusters=n_tokens, validate=False)
