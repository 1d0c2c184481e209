# -*- coding: utf-8 -*-

"""SIGNAL PROCESSING ROUTINES.

This module contains submodules for image degradation and for synthetic test
images.

:Author: mpmerge developers

"""

__all__ = ['noise', 'synthetic']
