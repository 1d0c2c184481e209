# -*- coding: utf-8 -*-

"""OBSERVERS.

This module contains the observer pattern used to follow merge statistics
while the encoder runs.

:Author: mpmerge developers

"""

import threading

import numpy as np


class SignalObject(object):
    """Attribute container passed to observers."""

    pass


class Observable(object):
    """Observable.

    Mixin giving an object named signals that callables can subscribe to.
    Notifications may come from several worker threads, observers are then
    called one notification at a time.

    Parameters
    ----------
    signals : list
        Names of the signals the object can emit

    """

    def __init__(self, signals):

        self._observers = {signal: [] for signal in signals}
        self._lock = threading.RLock()
        self._local = threading.local()

    @property
    def allowed_signals(self):
        """Names of the signals the object can emit."""
        return list(self._observers)

    def _is_allowed_signal(self, signal):
        """Check signal.

        Parameters
        ----------
        signal : str
            Signal name

        Raises
        ------
        ValueError
            If the object does not emit this signal

        """
        if signal not in self._observers:
            raise ValueError('{0} does not emit the signal "{1}".'.format(
                type(self).__name__,
                signal,
            ))

    def add_observer(self, signal, observer):
        """Subscribe a callable to a signal, at most once.

        Parameters
        ----------
        signal : str
            Signal name
        observer : callable
            Called with a :class:`SignalObject` on every notification

        """
        self._is_allowed_signal(signal)

        with self._lock:
            if observer not in self._observers[signal]:
                self._observers[signal].append(observer)

    def remove_observer(self, signal, observer):
        """Unsubscribe a callable from a signal."""
        self._is_allowed_signal(signal)

        with self._lock:
            if observer in self._observers[signal]:
                self._observers[signal].remove(observer)

    def has_observers(self, signal):
        """Tell whether anything listens to a signal.

        Parameters
        ----------
        signal : str
            Signal name

        Returns
        -------
        bool
            ``True`` if at least one observer is subscribed

        """
        return bool(self._observers.get(signal))

    def notify_observers(self, signal, **kwargs):
        """Notify observers.

        Parameters
        ----------
        signal : str
            Signal name
        kwargs : dict
            Attributes set on the :class:`SignalObject`, next to ``object``
            and ``signal``

        Returns
        -------
        bool
            ``False`` when called from inside an observer, ``True`` otherwise

        """
        if getattr(self._local, 'busy', False):
            return False

        message = SignalObject()
        message.object = self
        message.signal = signal
        for attribute, attribute_value in kwargs.items():
            setattr(message, attribute, attribute_value)

        with self._lock:
            self._local.busy = True
            try:
                for observer in list(self._observers[signal]):
                    observer(message)
            finally:
                self._local.busy = False

        return True



class MergeRateObserver(object):
    """Merge rate observer.

    Collect the merged fraction ``(n_in - n_out) / n_in`` reported by each
    ``'mpm'`` signal, grouped by the block index the merge was inserted
    before.

    Examples
    --------
    >>> from mpmerge.base.observable import MergeRateObserver, SignalObject
    >>> observer = MergeRateObserver()
    >>> signal = SignalObject()
    >>> signal.block, signal.n_in, signal.n_out = 2, 8, 6
    >>> observer(signal)
    >>> observer.retrieve_rates()
    {2: 0.25}

    """

    def __init__(self):

        self.list_blocks = []
        self.list_rates = []

    def __call__(self, signal):
        """Call Method.

        Parameters
        ----------
        signal : SignalObject
            Signal carrying ``block``, ``n_in`` and ``n_out``

        """
        self.list_blocks.append(signal.block)
        self.list_rates.append((signal.n_in - signal.n_out) / signal.n_in)

    def reset(self):
        """Forget all recorded rates."""
        self.list_blocks = []
        self.list_rates = []

    def retrieve_rates(self):
        """Retrieve rates.

        Returns
        -------
        dict
            Mean merged fraction per block index

        """
        blocks = np.array(self.list_blocks)
        rates = np.array(self.list_rates)

        return {
            int(block): float(rates[blocks == block].mean())
            for block in np.unique(blocks)
        }
