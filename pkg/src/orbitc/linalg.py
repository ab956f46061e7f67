"""Exact and numerical rank machinery.

Exact routines work on Python integers and ``fractions.Fraction`` so that a
reported rank is a mathematical fact rather than a floating point estimate.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

DEFAULT_RTOL = 1e-8


def integer_rank(rows: Iterable[Sequence[int]], stop_at: int | None = None) -> int:
    """Rank over Q of an integer matrix by fraction-free (Bareiss) elimination.

    Rows are processed in the given order and pivots are taken from the
    earliest eligible row, so putting short-entry rows first keeps the
    intermediate minors small.  ``stop_at`` ends elimination once that rank
    is reached.
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    limit = min(len(m), ncols)
    if stop_at is not None:
        limit = min(limit, stop_at)
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        p = prow[col]
        tail = range(col + 1, ncols)
        for r in range(rank + 1, len(m)):
            row = m[r]
            a = row[col]
            if a == 0:
                if p != prev:
                    for c in tail:
                        if row[c]:
                            row[c] = row[c] * p // prev
            else:
                for c in tail:
                    row[c] = (p * row[c] - a * prow[c]) // prev
                row[col] = 0
        prev = p
        rank += 1
        if rank >= limit:
            break
        # drop rows that became identically zero to keep later sweeps short
        m[rank:] = [row for row in m[rank:] if any(row[col + 1:])]
        if rank >= len(m):
            break
    return rank


def clear_denominators(row: Sequence[Fraction | int]) -> list[int]:
    """Scale a rational row by the lcm of its denominators."""
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def rational_rank(rows: Iterable[Sequence[Fraction | int]], stop_at: int | None = None) -> int:
    return integer_rank((clear_denominators(r) for r in rows), stop_at=stop_at)


def numeric_rank(matrix: np.ndarray, rtol: float = DEFAULT_RTOL) -> int:
    """Number of singular values above ``rtol * sigma_max``."""
    a = np.asarray(matrix)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


def rational_nullspace(rows: Sequence[Sequence[int | Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : r . v = 0 for every row r} over Q."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        m[rank] = [x / p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for r, pcol in enumerate(pivots):
            v[pcol] = -m[r][fcol]
        basis.append(v)
    return basis


def exact_inverse(a: np.ndarray) -> np.ndarray:
    """Gauss-Jordan inverse of a square object array of Fractions.

    Raises ZeroDivisionError when the matrix is singular.
    """
    n = a.shape[0]
    m = [[Fraction(x) for x in a[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        out[i, :] = m[i][n:]
    return out
