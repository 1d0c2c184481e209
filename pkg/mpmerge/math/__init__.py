# -*- coding: utf-8 -*-

"""MATHEMATICS ROUTINES.

This module contains submodules for the dense similarity computations used by
the merge kernel.

:Author: mpmerge developers

"""

__all__ = ['matrix']
