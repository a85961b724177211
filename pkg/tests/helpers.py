"""Naive reference computations shared by the tests.

Deliberately independent of ``incmon.kernels`` and ``incmon.oracle``: plain
``itertools.product`` enumeration and triple-loop multiplication on tuples.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from incmon.exact import GF, QQ, ExactMatrix


def naive_mul(a, b, q=None):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = sum(a[i][l] * b[l][j] for l in range(n))
            row.append(s % q if q else s)
        out.append(tuple(row))
    return tuple(out)


def members(ctx, q):
    """Every member of ``ctx`` over GF(q) as a tuple-of-tuples, in lexicographic order."""
    n = ctx.n
    pinned = set(ctx.fixed_one_diagonal())
    slots = []
    for i in range(n):
        for j in range(n):
            if not ctx.poset.leq[i][j]:
                slots.append([0])
            elif i == j and i in pinned:
                slots.append([1])
            else:
                slots.append(range(q))
    for flat in itertools.product(*slots):
        yield tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n))


def idempotents(ctx, q):
    return [x for x in members(ctx, q) if naive_mul(x, x, q) == x]


def to_exact(x, q=None):
    return ExactMatrix.from_rows(x, GF(q) if q else QQ)


def block(k, m, B, D, q=None):
    """Tuple matrix [[1_k, B], [0, diag(D)]]."""
    n = k + m
    rows = []
    for i in range(n):
        row = [0] * n
        if i < k:
            row[i] = 1
            row[k:] = list(B[i])
        else:
            row[i] = D[i - k]
        rows.append(tuple(row))
    return tuple(rows)


def frac(s):
    return Fraction(s)
