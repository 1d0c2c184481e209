# -*- coding: utf-8 -*-

"""INPUT/OUTPUT ROUTINES.

This module contains readers and writers for the mpmerge file formats.

* Token files: ``b'MPMT'``, ``u32`` N, ``u32`` d, then ``N * d`` little-endian
  ``float32`` values in row-major order.
* Merge-map files: ``b'MPMM'``, ``u32`` N, ``u32`` N', then N little-endian
  ``uint32`` cluster IDs.
* Images: binary PPM (P6, 8 bit) or numpy ``.npy`` arrays.

:Author: mpmerge developers

"""

import os

import numpy as np

from mpmerge.base.transform import check_image
from mpmerge.base.types import MAP_DTYPE, MergeMap, check_tokens
from mpmerge.interface.errors import (
    DataError,
    FormatError,
    IoError,
    TruncationError,
    file_name_error,
)

TOKEN_MAGIC = b'MPMT'
MAP_MAGIC = b'MPMM'
HEADER_SIZE = 12

_HEADER_DTYPE = np.dtype('<u4')
_TOKEN_FILE_DTYPE = np.dtype('<f4')
_MAP_FILE_DTYPE = np.dtype('<u4')


def _read_bytes(path):
    """Read all bytes from a file, wrapping OS errors."""
    file_name_error(path)

    try:
        with open(path, 'rb') as open_file:
            return open_file.read()
    except OSError as err:
        raise IoError('Could not read {0}: {1}'.format(path, err))


def _write_bytes(path, payload):
    """Write bytes to a file, wrapping OS errors."""
    try:
        with open(path, 'wb') as open_file:
            open_file.write(payload)
    except OSError as err:
        raise IoError('Could not write {0}: {1}'.format(path, err))


def _split_header(data, magic, path):
    """Check the magic bytes and return the two header counts."""
    if len(data) < len(magic) or data[:len(magic)] != magic:
        raise FormatError(
            '{0} does not start with the magic bytes {1}.'.format(path, magic),
        )

    if len(data) < HEADER_SIZE:
        raise TruncationError('{0} has a truncated header.'.format(path))

    counts = np.frombuffer(data, dtype=_HEADER_DTYPE, count=2, offset=4)

    return int(counts[0]), int(counts[1])


def _check_payload(data, expected, path):
    """Check the payload size after the header."""
    payload_size = len(data) - HEADER_SIZE

    if payload_size < expected:
        raise TruncationError(
            '{0} is truncated: {1} payload bytes, expected {2}.'.format(
                path,
                payload_size,
                expected,
            ),
        )

    if payload_size > expected:
        raise FormatError(
            '{0} has {1} trailing bytes after the payload.'.format(
                path,
                payload_size - expected,
            ),
        )


def read_token_file(path):
    """Read token file.

    Parameters
    ----------
    path : str
        Path to an ``MPMT`` token file

    Returns
    -------
    numpy.ndarray
        ``N x d`` float32 token matrix

    Raises
    ------
    FormatError
        For bad magic bytes, empty dimensions or trailing bytes
    TruncationError
        For a truncated header or payload
    DataError
        If the payload contains NaN or Inf values

    See Also
    --------
    write_token_file : complimentary function

    """
    data = _read_bytes(path)
    n_tokens, dim = _split_header(data, TOKEN_MAGIC, path)

    if n_tokens < 1 or dim < 1:
        raise FormatError('{0} declares an empty token matrix.'.format(path))

    _check_payload(data, _TOKEN_FILE_DTYPE.itemsize * n_tokens * dim, path)

    tokens = np.frombuffer(
        data,
        dtype=_TOKEN_FILE_DTYPE,
        count=n_tokens * dim,
        offset=HEADER_SIZE,
    ).astype(np.float32).reshape(n_tokens, dim)

    if not np.all(np.isfinite(tokens)):
        raise DataError('{0} contains NaN or Inf values.'.format(path))

    return tokens


def write_token_file(tokens, path):
    """Write token file.

    Parameters
    ----------
    tokens : numpy.ndarray
        ``N x d`` token matrix
    path : str
        Output path

    Raises
    ------
    IoError
        If the file cannot be written

    Examples
    --------
    >>> import os, tempfile
    >>> import numpy as np
    >>> from mpmerge.interface.io import write_token_file
    >>> path = os.path.join(tempfile.mkdtemp(), 'one.mpmt')
    >>> write_token_file(np.zeros((1, 1)), path)
    >>> os.path.getsize(path)
    16

    """
    tokens = check_tokens(tokens)
    header = np.array(tokens.shape, dtype=_HEADER_DTYPE).tobytes()
    payload = tokens.astype(_TOKEN_FILE_DTYPE).tobytes(order='C')

    _write_bytes(path, TOKEN_MAGIC + header + payload)


def read_token_csv(path):
    """Read token CSV.

    One token per line, comma-separated values, the feature dimension is
    inferred from the first line.

    Parameters
    ----------
    path : str
        Path to a CSV file

    Returns
    -------
    numpy.ndarray
        ``N x d`` float32 token matrix

    Raises
    ------
    FormatError
        For ragged or non-numeric lines

    """
    file_name_error(path)

    try:
        tokens = np.loadtxt(path, delimiter=',', dtype=np.float64, ndmin=2)
    except ValueError as err:
        raise FormatError('Invalid token CSV {0}: {1}'.format(path, err))

    return check_tokens(tokens)


def read_tokens(path):
    """Read tokens.

    Dispatch on the file extension: ``.csv`` files are read as CSV, anything
    else as a binary token file.

    Parameters
    ----------
    path : str
        Input path

    Returns
    -------
    numpy.ndarray
        ``N x d`` float32 token matrix

    """
    if str(path).lower().endswith('.csv'):
        return read_token_csv(path)

    return read_token_file(path)


def read_map_file(path):
    """Read merge-map file.

    Parameters
    ----------
    path : str
        Path to an ``MPMM`` merge-map file

    Returns
    -------
    MergeMap or mpmerge.merge.reconstruction.ComposedMap
        A plain merge map when every cluster has at most two members,
        otherwise a composed map

    Raises
    ------
    FormatError
        For bad magic bytes or invalid map content
    TruncationError
        For a truncated header or payload

    See Also
    --------
    write_map_file : complimentary function

    """
    from mpmerge.merge.reconstruction import ComposedMap

    data = _read_bytes(path)
    n_tokens, n_clusters = _split_header(data, MAP_MAGIC, path)

    if n_tokens < 1:
        raise FormatError('{0} declares an empty merge map.'.format(path))

    _check_payload(data, _MAP_FILE_DTYPE.itemsize * n_tokens, path)

    entries = np.frombuffer(
        data,
        dtype=_MAP_FILE_DTYPE,
        count=n_tokens,
        offset=HEADER_SIZE,
    ).astype(MAP_DTYPE)

    try:
        merge_map = ComposedMap(entries, n_clusters=n_clusters)
    except DataError as err:
        raise FormatError('Invalid merge map in {0}: {1}'.format(path, err))

    if merge_map.cluster_sizes().max() <= MergeMap.max_cluster_size:
        return MergeMap(entries, n_clusters=n_clusters)

    return merge_map


def write_map_file(merge_map, path):
    """Write merge-map file.

    Parameters
    ----------
    merge_map : MergeMap
        Merge map to store
    path : str
        Output path

    Raises
    ------
    TypeError
        For invalid input type

    """
    if not isinstance(merge_map, MergeMap):
        raise TypeError('Input must be a MergeMap, not {0}.'.format(
            type(merge_map),
        ))

    header = np.array(
        [merge_map.n_tokens, merge_map.n_clusters],
        dtype=_HEADER_DTYPE,
    ).tobytes()
    payload = merge_map.entries.astype(_MAP_FILE_DTYPE).tobytes()

    _write_bytes(path, MAP_MAGIC + header + payload)


def _parse_ppm_header(data, path):
    """Return the four PPM header fields and the offset of the pixels."""
    fields = []
    pos = 0
    size = len(data)

    while len(fields) < 4:
        while pos < size and data[pos:pos + 1].isspace():
            pos += 1

        if data[pos:pos + 1] == b'#':
            while pos < size and data[pos:pos + 1] not in {b'\n', b'\r'}:
                pos += 1
            continue

        start = pos
        while pos < size and not data[pos:pos + 1].isspace():
            pos += 1

        if start == pos:
            raise TruncationError('{0} has a truncated PPM header.'.format(
                path,
            ))

        fields.append(data[start:pos])

    # Exactly one whitespace byte separates the header from the pixels
    return fields, pos + 1


def read_ppm(path):
    """Read PPM.

    Parameters
    ----------
    path : str
        Path to a binary (P6) 8 bit PPM image

    Returns
    -------
    numpy.ndarray
        ``H x W x 3`` float image with values in ``[0, 1]``

    Raises
    ------
    FormatError
        For anything other than an 8 bit P6 image
    TruncationError
        For a truncated header or pixel block

    """
    data = _read_bytes(path)
    fields, offset = _parse_ppm_header(data, path)

    if fields[0] != b'P6':
        raise FormatError('{0} is not a binary P6 PPM image.'.format(path))

    try:
        width, height, maxval = (int(field) for field in fields[1:])
    except ValueError:
        raise FormatError('{0} has a malformed PPM header.'.format(path))

    if width < 1 or height < 1 or not 0 < maxval < 256:
        raise FormatError('{0} is not an 8 bit PPM image.'.format(path))

    n_bytes = width * height * 3

    if len(data) - offset < n_bytes:
        raise TruncationError('{0} has a truncated pixel block.'.format(path))

    pixels = np.frombuffer(data, dtype=np.uint8, count=n_bytes, offset=offset)

    return pixels.reshape(height, width, 3).astype(np.float64) / maxval


def write_ppm(image, path):
    """Write PPM.

    Parameters
    ----------
    image : numpy.ndarray
        ``H x W``, ``H x W x 1`` or ``H x W x 3`` image, either ``uint8`` or
        float with values in ``[0, 1]`` (values outside are clipped)
    path : str
        Output path

    Raises
    ------
    FormatError
        For an unsupported number of channels

    """
    image = check_image(image)

    if image.shape[2] == 1:
        image = np.repeat(image, 3, axis=2)

    if image.shape[2] != 3:
        raise FormatError('PPM images must have 1 or 3 channels.')

    if image.dtype != np.uint8:
        image = np.around(np.clip(image, 0, 1) * 255).astype(np.uint8)

    header = 'P6\n{0} {1}\n255\n'.format(image.shape[1], image.shape[0])

    _write_bytes(path, header.encode('ascii') + image.tobytes(order='C'))


def read_image(path):
    """Read image.

    Parameters
    ----------
    path : str
        Path to a ``.ppm`` or ``.npy`` image

    Returns
    -------
    numpy.ndarray
        ``H x W x C`` float image

    Raises
    ------
    FormatError
        For an unsupported extension

    """
    extension = os.path.splitext(str(path))[1].lower()

    if extension == '.npy':
        try:
            image = np.load(path, allow_pickle=False)
        except OSError as err:
            raise IoError('Could not read {0}: {1}'.format(path, err))
        except ValueError as err:
            raise FormatError('Invalid image {0}: {1}'.format(path, err))

        return check_image(image).astype(np.float64)

    elif extension in {'.ppm', '.pnm'}:
        return read_ppm(path)

    raise FormatError(
        'Unsupported image format "{0}", use .ppm or .npy.'.format(extension),
    )
