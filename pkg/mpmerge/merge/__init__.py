# -*- coding: utf-8 -*-

"""MERGE ROUTINES.

This module contains submodules for Mutual Pair Merging and for restoring the
full token sequence from merged tokens.

:Author: mpmerge developers

"""

__all__ = ['kernel', 'reconstruction']
