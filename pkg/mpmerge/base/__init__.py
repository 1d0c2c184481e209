# -*- coding: utf-8 -*-

"""BASE ROUTINES.

This module contains submodules for the shared token and merge-map types, the
seeded random number generator contract, image/patch transforms and the
observer pattern used by the encoder.

:Author: mpmerge developers

"""

__all__ = ['observable', 'rng', 'transform', 'types']
