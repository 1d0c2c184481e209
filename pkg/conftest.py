# -*- coding: utf-8 -*-

"""Test configuration.

Puts the repository root on the import path so that the test suite can use
the brute-force reference implementations in ``mpm_oracle``.

"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
