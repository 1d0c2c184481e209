# -*- coding: utf-8 -*-

r"""RECONSTRUCTION ROUTINES.

This module contains methods for composing merge maps over several MPM
insertions and for restoring the full-length token sequence by a gather.

After two insertions with maps :math:`r^{(1)}` and :math:`r^{(2)}` the
composed map is :math:`r^{(*)}(i) = r^{(2)}(r^{(1)}(i))` and the upsampled
tokens are :math:`Z^{\uparrow}[i] = Z[r^{(*)}(i)]`. Reconstruction is a pure
copy, no arithmetic touches the token values.

:Author: mpmerge developers

"""

from functools import reduce

import numpy as np

from mpmerge.base.types import (
    MAP_DTYPE,
    MergeMap,
    check_special_tokens,
    check_tokens,
)
from mpmerge.interface.errors import (
    CompositionError,
    ReconstructionError,
    ShapeError,
)


class ComposedMap(MergeMap):
    """Composed merge map.

    Merge map from the original ``N`` positions to the final cluster IDs of a
    chain of MPM insertions. Clusters may hold more than two positions, all
    other merge-map invariants still hold.

    Parameters
    ----------
    entries : numpy.ndarray, list or tuple
        Cluster ID of every original token position
    n_clusters : int, optional
        Number of clusters, inferred as ``max(entries) + 1`` if not provided
    provenance : tuple, optional
        Constituent merge maps in application order (default is ``()``)
    validate : bool, optional
        Option to check the merge-map invariants (default is ``True``)

    Examples
    --------
    >>> from mpmerge.merge.reconstruction import ComposedMap
    >>> ComposedMap([0, 0, 0, 1]).cluster_sizes()
    array([3, 1])

    """

    max_cluster_size = None

    def __init__(
        self,
        entries,
        n_clusters=None,
        provenance=(),
        validate=True,
    ):

        super().__init__(entries, n_clusters=n_clusters, validate=validate)
        self._provenance = tuple(provenance)

    @property
    def provenance(self):
        """Constituent merge maps."""
        return self._provenance

    @classmethod
    def identity(cls, n_tokens):
        """Identity map.

        Parameters
        ----------
        n_tokens : int
            Number of token positions

        Returns
        -------
        ComposedMap
            Map sending position ``i`` to cluster ``i`` with no provenance

        """
        return cls(np.arange(n_tokens), n_clusters=n_tokens, validate=False)

    @classmethod
    def from_map(cls, merge_map):
        """Wrap a single merge map.

        Parameters
        ----------
        merge_map : MergeMap
            Merge map

        Returns
        -------
        ComposedMap
            The same map with itself as provenance

        """
        if isinstance(merge_map, ComposedMap):
            return merge_map

        return cls(
            merge_map.entries,
            n_clusters=merge_map.n_clusters,
            provenance=(merge_map,),
            validate=False,
        )


def _check_map(merge_map, name):
    """Check that the input is a merge map."""
    if not isinstance(merge_map, MergeMap):
        raise TypeError('{0} must be a MergeMap, not {1}.'.format(
            name,
            type(merge_map),
        ))


def _provenance(merge_map):
    """Return the constituents of a map."""
    if isinstance(merge_map, ComposedMap) and merge_map.provenance:
        return merge_map.provenance

    return (merge_map,)


def compose(first_map, second_map):
    """Compose.

    Parameters
    ----------
    first_map : MergeMap
        Map applied first, from ``N`` positions to ``N'`` clusters
    second_map : MergeMap
        Map applied second, of length ``N'``

    Returns
    -------
    ComposedMap
        Map ``i -> second_map(first_map(i))`` with ``second_map.n_clusters``
        clusters

    Raises
    ------
    CompositionError
        If the length of ``second_map`` differs from the number of clusters
        of ``first_map``

    Examples
    --------
    >>> from mpmerge.base.types import MergeMap
    >>> from mpmerge.merge.reconstruction import compose
    >>> compose(MergeMap([0, 0, 1, 2]), MergeMap([0, 1, 1])).entries
    array([0, 0, 1, 1], dtype=uint32)

    """
    _check_map(first_map, 'first_map')
    _check_map(second_map, 'second_map')

    if second_map.n_tokens != first_map.n_clusters:
        raise CompositionError(
            'Cannot compose a map onto {0} clusters with a map of length {1}.'
            .format(first_map.n_clusters, second_map.n_tokens),
        )

    entries = second_map.entries[first_map.entries]

    return ComposedMap(
        entries.astype(MAP_DTYPE, copy=False),
        n_clusters=second_map.n_clusters,
        provenance=_provenance(first_map) + _provenance(second_map),
        validate=__debug__,
    )


def compose_all(merge_maps, n_tokens=None):
    """Compose all.

    Left-fold composition of a chain of merge maps.

    Parameters
    ----------
    merge_maps : list or tuple
        Merge maps in application order
    n_tokens : int, optional
        Original number of positions, only needed for an empty chain

    Returns
    -------
    ComposedMap
        Composed map, the identity on ``n_tokens`` positions for an empty
        chain

    Raises
    ------
    ValueError
        For an empty chain without ``n_tokens``

    """
    merge_maps = list(merge_maps)

    if not merge_maps:
        if isinstance(n_tokens, type(None)):
            raise ValueError('An empty chain needs the number of tokens.')
        return ComposedMap.identity(n_tokens)

    return reduce(compose, merge_maps[1:], ComposedMap.from_map(merge_maps[0]))


def reconstruct(z_img, merge_map):
    r"""Reconstruct.

    Restore the full-length token sequence from the merged tokens.

    Parameters
    ----------
    z_img : numpy.ndarray
        ``N' x d`` merged image tokens
    merge_map : MergeMap
        Map (usually composed) from the ``N`` original positions onto the
        ``N'`` rows of ``z_img``

    Returns
    -------
    numpy.ndarray
        ``N x d`` tokens in the original raster order

    Raises
    ------
    ReconstructionError
        If the number of rows of ``z_img`` differs from the number of clusters

    Notes
    -----
    Implements :math:`Z^{\uparrow}[i] = Z[r^{(*)}(i)]`.

    Examples
    --------
    >>> from mpmerge.base.types import MergeMap
    >>> from mpmerge.merge.reconstruction import reconstruct
    >>> reconstruct([[5.0, 5.0]], MergeMap([0, 0]))
    array([[5., 5.],
           [5., 5.]], dtype=float32)

    """
    _check_map(merge_map, 'merge_map')
    z_img = check_tokens(z_img, name='merged tokens')

    if z_img.shape[0] != merge_map.n_clusters:
        raise ReconstructionError(
            'Got {0} merged tokens for a map with {1} clusters.'.format(
                z_img.shape[0],
                merge_map.n_clusters,
            ),
        )

    return np.take(z_img, merge_map.entries, axis=0)


def assemble_decoder_input(special, z_up):
    """Assemble decoder input.

    Parameters
    ----------
    special : numpy.ndarray
        ``E x d`` special tokens, ``E`` may be zero
    z_up : numpy.ndarray
        ``N x d`` reconstructed image tokens

    Returns
    -------
    numpy.ndarray
        ``(E + N) x d`` tokens, special tokens first

    Raises
    ------
    ShapeError
        If the feature dimensions differ

    """
    z_up = check_tokens(z_up, name='image tokens')

    try:
        special = check_special_tokens(special, z_up.shape[1])
    except ShapeError as err:
        raise ShapeError('Cannot assemble the decoder input: {0}'.format(err))

    return np.concatenate((special, z_up), axis=0)
