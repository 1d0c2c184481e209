# -*- coding: utf-8 -*-

"""ENCODER ROUTINES.

This module contains submodules for the toy ViT-style encoder used as the
workload for Mutual Pair Merging.

:Author: mpmerge developers

"""

__all__ = ['config', 'layers', 'model']
