# -*- coding: utf-8 -*-

"""INTERFACE ROUTINES.

This module contains submodules for error handling, logging and IO interaction.

:Author: mpmerge developers

"""

__all__ = ['errors', 'io', 'log']
