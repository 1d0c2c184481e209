# -*- coding: utf-8 -*-

"""LOGGING ROUTINES.

This module contains methods for file logging of command-line runs.

:Author: mpmerge developers

"""

import logging

LOG_FORMAT = '%(asctime)s %(message)s'
LOG_DATE_FORMAT = '%d/%m/%Y %H:%M:%S'


def set_up_log(filename, verbose=True):
    """Set up log.

    Open ``<filename>.log`` for writing and return a logger bound to it.
    Python warnings are captured into the logging system.

    Parameters
    ----------
    filename : str
        Log file name without the ``.log`` extension
    verbose : bool
        Option for verbose output (default is ``True``)

    Returns
    -------
    logging.Logger
        Logging instance

    """
    log_file = '{0}.log'.format(filename)

    if verbose:
        print('Writing log to', log_file)

    logging.captureWarnings(True)

    handler = logging.FileHandler(filename=log_file, mode='w')
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(logging.Formatter(
        fmt=LOG_FORMAT,
        datefmt=LOG_DATE_FORMAT,
    ))

    log = logging.getLogger('mpmerge.{0}'.format(log_file))
    log.setLevel(logging.DEBUG)
    log.propagate = False
    log.addHandler(handler)

    log.info('Log opened.')

    return log


def close_log(log, verbose=True):
    """Close log.

    Parameters
    ----------
    log : logging.Logger
        Logging instance returned by :func:`set_up_log`
    verbose : bool
        Option for verbose output (default is ``True``)

    """
    log.info('Log closed.')

    if verbose:
        print('Closed log', log.name)

    for handler in list(log.handlers):
        handler.close()
        log.removeHandler(handler)


def log_info(log, message, *args):
    """Log info.

    Send a formatted message to the log if one is provided.

    Parameters
    ----------
    log : logging.Logger or None
        Logging instance
    message : str
        Message with ``str.format`` placeholders
    *args : tuple
        Values substituted into the message

    """
    if not isinstance(log, type(None)):
        log.info(message.format(*args))
