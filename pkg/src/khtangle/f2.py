"""Sparse linear algebra over the two-element field.

A vector is a frozenset of basis keys: a key is present iff its
coefficient is 1.  Keys are opaque but must be hashable and totally
orderable so that pivoting is deterministic.
"""

from __future__ import annotations


ZERO = frozenset()


def vec(keys=()):
    return frozenset(keys)


def add(x, y):
    """Sum over F2 = symmetric difference of term sets."""
    return x ^ y


def add_all(vectors):
    acc = frozenset()
    for v in vectors:
        acc = acc ^ v
    return acc


def _reduce_row(row, pivots):
    """Eliminate row against a pivot dict {pivot key: row}."""
    while row:
        p = max(row)
        if p not in pivots:
            return row
        row = row ^ pivots[p]
    return row


def rank(rows):
    """Rank of the row list over F2."""
    pivots = {}
    r = 0
    for row in rows:
        row = _reduce_row(frozenset(row), pivots)
        if row:
            pivots[max(row)] = row
            r += 1
    return r


def solve(rows, target):
    """Indices I with sum(rows[i] for i in I) == target, or None.

    Returns a frozenset of row indices (a preimage witness under the
    linear map sending unit vectors to rows).
    """
    pivots = {}  # pivot key -> (row, combo of indices)
    for i, raw in enumerate(rows):
        row, combo = frozenset(raw), frozenset([i])
        while row:
            p = max(row)
            if p not in pivots:
                pivots[p] = (row, combo)
                break
            prow, pcombo = pivots[p]
            row, combo = row ^ prow, combo ^ pcombo
    t, combo = frozenset(target), frozenset()
    while t:
        p = max(t)
        if p not in pivots:
            return None
        prow, pcombo = pivots[p]
        t, combo = t ^ prow, combo ^ pcombo
    return combo


def in_span(rows, target):
    return solve(rows, target) is not None


def nullspace(rows):
    """Basis of combinations of rows summing to zero.

    Returns a list of frozensets of row indices; every subset-XOR of
    rows summing to zero is a combination of these.
    """
    pivots = {}
    basis = []
    for i, raw in enumerate(rows):
        row, combo = frozenset(raw), frozenset([i])
        while row:
            p = max(row)
            if p not in pivots:
                pivots[p] = (row, combo)
                break
            prow, pcombo = pivots[p]
            row, combo = row ^ prow, combo ^ pcombo
        else:
            basis.append(combo)
    return basis


def kernel_dim(rows, ncols):
    """dim ker of the matrix whose rows are given, acting on F2^ncols."""
    return ncols - rank(rows)
