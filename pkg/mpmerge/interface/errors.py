# -*- coding: utf-8 -*-

"""ERROR HANDLING ROUTINES.

This module contains the mpmerge exception hierarchy and methods for handling
warnings and errors.

:Author: mpmerge developers

"""

import os
import sys
import warnings

try:
    from termcolor import colored
except ImportError:
    import_fail = True
else:
    import_fail = False


class MpmError(Exception):
    """Base class for all mpmerge errors."""


class FormatError(MpmError, ValueError):
    """Raised when a file does not follow the expected binary format."""


class TruncationError(FormatError):
    """Raised when a file payload is shorter than its header announces."""


class DataError(MpmError, ValueError):
    """Raised for invalid numerical content (e.g. NaN or Inf values)."""


class DegenerateTokenError(DataError):
    """Raised when a token has (numerically) zero L2 norm."""


class IoError(MpmError, IOError):
    """Raised when a file cannot be read or written."""


class ShapeError(MpmError, ValueError):
    """Raised for incompatible array shapes."""


class CompositionError(ShapeError):
    """Raised when two merge maps cannot be composed."""


class ReconstructionError(ShapeError):
    """Raised when merged tokens do not match the merge map."""


class InvalidPairingError(MpmError, ValueError):
    """Raised when a pair set is not a set of disjoint index pairs."""


class ConfigError(MpmError, ValueError):
    """Raised for invalid encoder or benchmark configuration."""


def _label(text, color):
    """Terminal label, coloured when termcolor is available."""
    if import_fail:
        return text

    return colored(text, color)


def warn(warn_string, log=None):
    """Warn.

    Print a warning on stderr and, when a log is given, route it through the
    :mod:`warnings` module so that the captured warning reaches the log file.

    Parameters
    ----------
    warn_string : str
        Warning message
    log : logging.Logger, optional
        Logging instance (default is ``None``)

    """
    sys.stderr.write('{0}: {1}\n'.format(
        _label('WARNING', 'yellow'),
        warn_string,
    ))

    if not isinstance(log, type(None)):
        warnings.warn(warn_string)


def catch_error(exception, log=None):
    """Catch error.

    Report an error on stderr, and in the log if one is given.

    Parameters
    ----------
    exception : Exception or str
        Error or message
    log : logging.Logger, optional
        Logging instance (default is ``None``)

    """
    sys.stderr.write('{0}: {1}\n'.format(_label('ERROR', 'red'), exception))

    if not isinstance(log, type(None)):
        log.error('{0}: {1}'.format(type(exception).__name__, exception))


def file_name_error(file_name):
    """File name error.

    Check that a path names an existing file.

    Parameters
    ----------
    file_name : str
        Path

    Raises
    ------
    IoError
        For an empty path, an option-like path or a missing file

    """
    file_name = str(file_name)

    if not file_name or file_name.startswith('-'):
        raise IoError('No input file name given.')

    if not os.path.isfile(file_name):
        raise IoError('Input file {0} not found.'.format(file_name))
