# -*- coding: utf-8 -*-

"""BENCHMARK ROUTINES.

This module contains submodules for the wall-clock benchmark of the toy
encoder, the FLOP model, merge-map visualisation, the content adaptivity
study and the ``mpmerge`` command line interface.

:Author: mpmerge developers

"""

__all__ = ['adaptivity', 'cli', 'flops', 'report', 'runner', 'visualize']
