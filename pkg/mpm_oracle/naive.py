# -*- coding: utf-8 -*-

"""NAIVE REFERENCE IMPLEMENTATIONS.

Loop-based versions of Mutual Pair Merging, multi-head attention, the
transformer block and gather reconstruction, one scalar step at a time.

:Author: mpmerge developers

"""

import math
from collections import namedtuple

import numpy as np

NaiveResult = namedtuple('NaiveResult', ['merged', 'entries', 'n_clusters'])


def naive_mpm(tokens):
    """Naive Mutual Pair Merging.

    Parameters
    ----------
    tokens : numpy.ndarray
        ``N x d`` token matrix

    Returns
    -------
    NaiveResult
        Merged ``float32`` tokens, the list of cluster IDs and the number of
        clusters

    Raises
    ------
    ValueError
        For an empty input or a zero-norm token

    """
    rows = np.asarray(tokens, dtype=np.float32).tolist()
    n_tokens = len(rows)

    if n_tokens == 0:
        raise ValueError('At least one token is needed.')

    if n_tokens == 1:
        return NaiveResult(np.array(rows, dtype=np.float32), [0], 1)

    unit = []
    for row in rows:
        norm = math.sqrt(sum(value * value for value in row))
        if norm < 1e-12:
            raise ValueError('Zero-norm token.')
        unit.append([value / norm for value in row])

    similarity = [[0.0] * n_tokens for _ in range(n_tokens)]
    for i in range(n_tokens):
        for j in range(n_tokens):
            similarity[i][j] = sum(
                a * b for a, b in zip(unit[i], unit[j])
            )

    best = []
    for i in range(n_tokens):
        best_j = -1
        for j in range(n_tokens):
            if j == i:
                continue
            if best_j < 0 or similarity[i][j] > similarity[i][best_j]:
                best_j = j
        best.append(best_j)

    partner = [None] * n_tokens
    for i in range(n_tokens):
        j = best[i]
        if best[j] == i and i < j:
            partner[i] = j
            partner[j] = i

    entries = [None] * n_tokens
    next_id = 0
    for i in range(n_tokens):
        if partner[i] is not None and partner[i] < i:
            entries[i] = entries[partner[i]]
        else:
            entries[i] = next_id
            next_id += 1

    merged = []
    for cluster in range(next_id):
        members = [rows[i] for i in range(n_tokens) if entries[i] == cluster]
        merged.append([
            sum(column) / len(members) for column in zip(*members)
        ])

    return NaiveResult(np.array(merged, dtype=np.float32), entries, next_id)


def _softmax(logits):
    """Softmax by max-subtraction over a list of logits."""
    peak = max(logits)
    exps = [math.exp(logit - peak) for logit in logits]
    total = sum(exps)

    return [value / total for value in exps]


def _affine(vector, weight, bias):
    """Row vector times a weight matrix plus bias, as explicit sums."""
    n_out = len(bias)

    return [
        sum(vector[k] * weight[k][o] for k in range(len(vector))) + bias[o]
        for o in range(n_out)
    ]


def naive_attention(tokens, weights):
    """Naive multi-head self-attention.

    Parameters
    ----------
    tokens : numpy.ndarray
        ``N x d`` input of the attention sublayer
    weights : object
        Object with the attributes ``n_heads``, ``wqkv``, ``bqkv``, ``wo`` and
        ``bo``

    Returns
    -------
    numpy.ndarray
        ``N x d`` attention output in double precision

    """
    rows = np.asarray(tokens, dtype=np.float64).tolist()
    wqkv = np.asarray(weights.wqkv, dtype=np.float64).tolist()
    bqkv = np.asarray(weights.bqkv, dtype=np.float64).tolist()
    wo = np.asarray(weights.wo, dtype=np.float64).tolist()
    bo = np.asarray(weights.bo, dtype=np.float64).tolist()

    n_tokens = len(rows)
    dim = len(bo)
    n_heads = weights.n_heads
    head_dim = dim // n_heads

    projected = [_affine(row, wqkv, bqkv) for row in rows]
    queries = [row[:dim] for row in projected]
    keys = [row[dim:2 * dim] for row in projected]
    values = [row[2 * dim:] for row in projected]

    concat = [[0.0] * dim for _ in range(n_tokens)]

    for head in range(n_heads):
        lo = head * head_dim
        hi = lo + head_dim
        for i in range(n_tokens):
            logits = []
            for j in range(n_tokens):
                dot = sum(
                    queries[i][k] * keys[j][k] for k in range(lo, hi)
                )
                logits.append(dot / math.sqrt(head_dim))
            probs = _softmax(logits)
            for k in range(lo, hi):
                concat[i][k] = sum(
                    probs[j] * values[j][k] for j in range(n_tokens)
                )

    return np.array([_affine(row, wo, bo) for row in concat])


def _layer_norm(row, gamma, beta, eps):
    """Layer normalisation of one token."""
    mean = sum(row) / len(row)
    var = sum((value - mean) ** 2 for value in row) / len(row)
    scale = 1.0 / math.sqrt(var + eps)

    return [
        (value - mean) * scale * gam + bet
        for value, gam, bet in zip(row, gamma, beta)
    ]


def naive_block(tokens, weights, eps=1e-6):
    """Naive pre-norm transformer block.

    Parameters
    ----------
    tokens : numpy.ndarray
        ``N x d`` tokens
    weights : object
        Block weights with the attributes of :func:`naive_attention` plus
        ``ln1_gamma``, ``ln1_beta``, ``ln2_gamma``, ``ln2_beta``, ``w1``,
        ``b1``, ``w2`` and ``b2``
    eps : float, optional
        Layer normalisation floor (default is ``1e-6``)

    Returns
    -------
    numpy.ndarray
        ``N x d`` output in double precision

    """
    rows = np.asarray(tokens, dtype=np.float64).tolist()

    def as_list(name):
        return np.asarray(getattr(weights, name), dtype=np.float64).tolist()

    normed = [
        _layer_norm(row, as_list('ln1_gamma'), as_list('ln1_beta'), eps)
        for row in rows
    ]
    attended = naive_attention(np.array(normed), weights).tolist()
    hidden = [
        [a + b for a, b in zip(row, att)] for row, att in zip(rows, attended)
    ]

    w1, b1 = as_list('w1'), as_list('b1')
    w2, b2 = as_list('w2'), as_list('b2')

    output = []
    for row in hidden:
        normed_row = _layer_norm(
            row,
            as_list('ln2_gamma'),
            as_list('ln2_beta'),
            eps,
        )
        inner = _affine(normed_row, w1, b1)
        inner = [
            0.5 * value * (1.0 + math.erf(value / math.sqrt(2.0)))
            for value in inner
        ]
        ffn = _affine(inner, w2, b2)
        output.append([a + b for a, b in zip(row, ffn)])

    return np.array(output)


def naive_compose_and_reconstruct(merge_maps, merged):
    """Naive composition and reconstruction.

    Apply the gathers one at a time, from the last map to the first.

    Parameters
    ----------
    merge_maps : list
        Merge maps in application order, as ID sequences or objects with an
        ``entries`` attribute
    merged : numpy.ndarray
        Tokens after the last merge

    Returns
    -------
    numpy.ndarray
        Tokens restored to the length of the first map

    """
    merged = np.asarray(merged)
    rows = [merged[k] for k in range(merged.shape[0])]

    for merge_map in reversed(list(merge_maps)):
        entries = getattr(merge_map, 'entries', merge_map)
        rows = [rows[int(cid)] for cid in entries]

    return np.array(rows, dtype=merged.dtype)
