# -*- coding: utf-8 -*-

"""MPMERGE PACKAGE.

mpmerge is a training-free token merging library built on Mutual Pair Merging
(MPM): tokens are paired with their mutual nearest neighbours in cosine space,
each pair is averaged, and a merge map allows the full sequence to be restored
by a single gather.

"""

from warnings import warn

from importlib_metadata import version

from mpmerge.base import *

try:
    _version = version('mpmerge')
except Exception:  # pragma: no cover
    _version = 'Unkown'
    warn(
        'Could not extract package metadata. Make sure the package is '
        + 'correctly installed.',
    )

__version__ = _version
