# -*- coding: utf-8 -*-

"""UNIT TESTS FOR INTERFACE.

This module contains unit tests for the mpmerge.interface module.

:Author: mpmerge developers

"""

import io as std_io
import os
import shutil
import tempfile
from unittest import TestCase, mock

import numpy as np
import numpy.testing as npt

from mpmerge.base.rng import get_rng, random_tokens
from mpmerge.base.types import MergeMap
from mpmerge.interface import errors, io, log
from mpmerge.merge.reconstruction import ComposedMap


def _token_bytes(n_tokens, dim, values, magic=io.TOKEN_MAGIC):
    """Raw token file content."""
    header = np.array([n_tokens, dim], dtype='<u4').tobytes()

    return magic + header + np.asarray(values, dtype='<f4').tobytes()


class IoTestCase(TestCase):
    """Test case for io module."""

    def setUp(self):
        """Set test parameter values."""
        self.tmpdir = tempfile.mkdtemp()
        self.tokens = np.arange(12, dtype=np.float32).reshape(4, 3) - 5.5

    def tearDown(self):
        """Unset test parameter values."""
        shutil.rmtree(self.tmpdir)
        self.tmpdir = None
        self.tokens = None

    def _path(self, name):
        return os.path.join(self.tmpdir, name)

    def _write(self, name, payload):
        path = self._path(name)
        with open(path, 'wb') as open_file:
            open_file.write(payload)
        return path

    def test_token_file(self):
        """Test write_token_file and read_token_file."""
        path = self._path('tokens.mpmt')
        io.write_token_file(self.tokens, path)

        npt.assert_equal(
            os.path.getsize(path),
            io.HEADER_SIZE + self.tokens.size * 4,
            err_msg='Wrong token file size',
        )
        npt.assert_array_equal(
            io.read_token_file(path),
            self.tokens,
            err_msg='Token file content changed',
        )

        one = self._path('one.mpmt')
        io.write_token_file(np.zeros((1, 1)), one)
        npt.assert_equal(os.path.getsize(one), 16, err_msg='Wrong 1x1 size')

    def test_token_file_random(self):
        """Test token files on 100 seeded random matrices."""
        rng = get_rng(31)
        path = self._path('random.mpmt')

        for case in range(100):
            n_tokens = int(rng.integers(1, 65))
            dim = int(rng.integers(1, 33))
            tokens = random_tokens(rng, n_tokens, dim, low=-1e3, high=1e3)
            io.write_token_file(tokens, path)
            npt.assert_array_equal(
                io.read_token_file(path),
                tokens,
                err_msg='Token file changed case {0}'.format(case),
            )

    def test_token_file_errors(self):
        """Test read_token_file errors."""
        bad_magic = self._write(
            'magic.mpmt',
            _token_bytes(1, 2, [1, 2], magic=b'XXXX'),
        )
        short = self._write('short.mpmt', _token_bytes(2, 2, [1, 2]))
        trailing = self._write('long.mpmt', _token_bytes(1, 1, [1, 2]))
        header = self._write('header.mpmt', io.TOKEN_MAGIC + b'\x01\x00')
        nan = self._write('nan.mpmt', _token_bytes(1, 2, [1, np.nan]))
        empty = self._write('empty.mpmt', _token_bytes(0, 2, []))

        npt.assert_raises(errors.FormatError, io.read_token_file, bad_magic)
        npt.assert_raises(errors.TruncationError, io.read_token_file, short)
        npt.assert_raises(errors.FormatError, io.read_token_file, trailing)
        npt.assert_raises(errors.TruncationError, io.read_token_file, header)
        npt.assert_raises(errors.DataError, io.read_token_file, nan)
        npt.assert_raises(errors.FormatError, io.read_token_file, empty)
        npt.assert_raises(
            errors.IoError,
            io.read_token_file,
            self._path('missing.mpmt'),
        )

    def test_token_csv(self):
        """Test read_token_csv and read_tokens."""
        path = self._write('tokens.csv', b'1,2\n3.5,-4\n')

        npt.assert_array_equal(
            io.read_tokens(path),
            np.array([[1, 2], [3.5, -4]], dtype=np.float32),
            err_msg='Incorrect CSV tokens',
        )

        one_line = self._write('line.csv', b'1,2,3\n')
        npt.assert_equal(
            io.read_tokens(one_line).shape,
            (1, 3),
            err_msg='Single line CSV not read as one token',
        )

        ragged = self._write('ragged.csv', b'1,2\n3\n')
        npt.assert_raises(errors.FormatError, io.read_token_csv, ragged)
        npt.assert_raises(
            errors.IoError,
            io.read_token_csv,
            self._path('missing.csv'),
        )

    def test_map_file(self):
        """Test write_map_file and read_map_file."""
        path = self._path('pairs.mpmm')
        merge_map = MergeMap([0, 1, 0, 2])
        io.write_map_file(merge_map, path)

        read_map = io.read_map_file(path)
        npt.assert_equal(
            type(read_map) is MergeMap,
            True,
            err_msg='Pair map not read as a MergeMap',
        )
        npt.assert_equal(read_map == merge_map, True, err_msg='Map changed')

        composed = self._path('composed.mpmm')
        io.write_map_file(ComposedMap([0, 0, 0, 1]), composed)
        npt.assert_equal(
            isinstance(io.read_map_file(composed), ComposedMap),
            True,
            err_msg='Large clusters not read as a ComposedMap',
        )

        npt.assert_raises(TypeError, io.write_map_file, [0, 1], path)

    def test_map_file_errors(self):
        """Test read_map_file errors."""
        header = np.array([2, 2], dtype='<u4').tobytes()
        unordered = self._write(
            'unordered.mpmm',
            io.MAP_MAGIC + header + np.array([1, 0], dtype='<u4').tobytes(),
        )
        truncated = self._write(
            'short.mpmm',
            io.MAP_MAGIC + header + np.array([0], dtype='<u4').tobytes(),
        )
        token_file = self._write('tokens.mpmm', _token_bytes(1, 1, [1]))

        npt.assert_raises(errors.FormatError, io.read_map_file, unordered)
        npt.assert_raises(errors.TruncationError, io.read_map_file, truncated)
        npt.assert_raises(errors.FormatError, io.read_map_file, token_file)

    def test_ppm(self):
        """Test write_ppm and read_ppm."""
        image = np.arange(18, dtype=np.uint8).reshape(2, 3, 3) * 10
        path = self._path('image.ppm')
        io.write_ppm(image, path)

        npt.assert_allclose(
            io.read_image(path),
            image / 255.0,
            err_msg='Incorrect PPM content',
        )

        commented = self._write(
            'comment.ppm',
            b'P6\n# made by hand\n2 1\n255\n' + bytes(range(6)),
        )
        npt.assert_equal(
            io.read_ppm(commented).shape,
            (1, 2, 3),
            err_msg='Comment not skipped',
        )

        gray = self._path('gray.ppm')
        io.write_ppm(np.ones((2, 2)), gray)
        npt.assert_array_equal(
            io.read_ppm(gray),
            np.ones((2, 2, 3)),
            err_msg='Gray image not expanded',
        )

    def test_ppm_errors(self):
        """Test PPM errors."""
        ascii_ppm = self._write('ascii.ppm', b'P3\n1 1\n255\n0 0 0\n')
        deep = self._write('deep.ppm', b'P6\n1 1\n65535\n' + bytes(6))
        short = self._write('short.ppm', b'P6\n2 2\n255\n' + bytes(5))
        no_header = self._write('header.ppm', b'P6\n2')

        npt.assert_raises(errors.FormatError, io.read_ppm, ascii_ppm)
        npt.assert_raises(errors.FormatError, io.read_ppm, deep)
        npt.assert_raises(errors.TruncationError, io.read_ppm, short)
        npt.assert_raises(errors.TruncationError, io.read_ppm, no_header)
        npt.assert_raises(
            errors.FormatError,
            io.write_ppm,
            np.zeros((2, 2, 2)),
            self._path('two.ppm'),
        )

    def test_read_image(self):
        """Test read_image."""
        image = np.linspace(0, 1, 24).reshape(2, 4, 3)
        path = self._path('image.npy')
        np.save(path, image)

        npt.assert_array_equal(
            io.read_image(path),
            image,
            err_msg='Incorrect npy image',
        )
        npt.assert_raises(
            errors.FormatError,
            io.read_image,
            self._path('image.png'),
        )


class ErrorsTestCase(TestCase):
    """Test case for errors module."""

    def test_hierarchy(self):
        """Test the exception hierarchy."""
        npt.assert_equal(
            issubclass(errors.TruncationError, errors.FormatError),
            True,
            err_msg='TruncationError is not a FormatError',
        )
        npt.assert_equal(
            issubclass(errors.DegenerateTokenError, errors.DataError),
            True,
            err_msg='DegenerateTokenError is not a DataError',
        )
        npt.assert_equal(
            issubclass(errors.CompositionError, errors.ShapeError),
            True,
            err_msg='CompositionError is not a ShapeError',
        )
        npt.assert_equal(
            all(
                issubclass(error, errors.MpmError)
                for error in (
                    errors.IoError,
                    errors.ReconstructionError,
                    errors.InvalidPairingError,
                    errors.ConfigError,
                )
            ),
            True,
            err_msg='Error outside the MpmError hierarchy',
        )

    def test_catch_error(self):
        """Test catch_error."""
        with mock.patch('sys.stderr', new_callable=std_io.StringIO) as stderr:
            errors.catch_error(errors.DataError('bad token'))

        npt.assert_equal(
            'bad token' in stderr.getvalue(),
            True,
            err_msg='Error not reported',
        )

    def test_warn(self):
        """Test warn."""
        with mock.patch('sys.stderr', new_callable=std_io.StringIO) as stderr:
            errors.warn('odd input')

        npt.assert_equal(
            'odd input' in stderr.getvalue(),
            True,
            err_msg='Warning not reported',
        )

    def test_file_name_error(self):
        """Test file_name_error."""
        npt.assert_raises(errors.IoError, errors.file_name_error, '')
        npt.assert_raises(errors.IoError, errors.file_name_error, '-x')
        npt.assert_raises(
            errors.IoError,
            errors.file_name_error,
            'no_such_file.mpmt',
        )


class LogTestCase(TestCase):
    """Test case for log module."""

    def setUp(self):
        """Set test parameter values."""
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        """Unset test parameter values."""
        shutil.rmtree(self.tmpdir)
        self.tmpdir = None

    def test_log(self):
        """Test set_up_log, log_info and close_log."""
        name = os.path.join(self.tmpdir, 'run')
        test_log = log.set_up_log(name, verbose=False)
        log.log_info(test_log, 'merged {0} tokens', 7)
        log.log_info(None, 'ignored')
        log.close_log(test_log, verbose=False)

        with open('{0}.log'.format(name)) as log_file:
            content = log_file.read()

        npt.assert_equal(
            'merged 7 tokens' in content,
            True,
            err_msg='Message not logged',
        )
        npt.assert_equal(
            'closed' in content,
            True,
            err_msg='Log not closed',
        )
        npt.assert_equal(test_log.handlers, [], err_msg='Handlers left open')
