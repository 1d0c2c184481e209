# -*- coding: utf-8 -*-

"""MPM ORACLE.

Brute-force reference implementations of the mpmerge kernels, written with
plain loops for obviousness. This tree shares no code with ``mpmerge`` and is
not part of the distribution; it exists only to validate the vectorised
kernels in the test suite.

:Author: mpmerge developers

"""

__all__ = ['naive']
