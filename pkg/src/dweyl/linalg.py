"""Exact linear algebra over the rationals.

Rank computations use integer fraction-free elimination: rows or columns
are scaled to integers (scaling never changes rank) and eliminated by
cross-multiplication with gcd normalization.  No floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def _to_int_vector(vec: dict) -> dict:
    """Clear denominators and divide by the content; keys untouched."""
    if not vec:
        return {}
    denom = lcm(*(Fraction(v).denominator for v in vec.values()))
    ints = {k: int(v * denom) for k, v in vec.items() if v}
    if not ints:
        return {}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    return {k: v // g for k, v in ints.items()}


def rank_of_columns(columns) -> int:
    """Rank of a matrix given as an iterable of sparse columns.

    Each column is a dict mapping a row key (any totally ordered,
    hashable value) to a rational entry.
    """
    pivots = {}
    rank = 0
    for col in columns:
        vec = _to_int_vector(col)
        while vec:
            lead = max(vec)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = vec
                rank += 1
                break
            a, b = piv[lead], vec[lead]
            merged = {}
            for k, v in vec.items():
                merged[k] = a * v
            for k, v in piv.items():
                merged[k] = merged.get(k, 0) - b * v
            vec = {k: v for k, v in merged.items() if v}
            if vec:
                g = 0
                for v in vec.values():
                    g = gcd(g, v)
                vec = {k: v // g for k, v in vec.items()}
    return rank


def rank_dense(rows) -> int:
    """Rank of a dense matrix (list of rows of rationals)."""
    columns = []
    if not rows:
        return 0
    ncols = len(rows[0])
    for j in range(ncols):
        col = {}
        for i, row in enumerate(rows):
            if row[j]:
                col[i] = Fraction(row[j])
        columns.append(col)
    return rank_of_columns(columns)


def kernel_dimension(columns, ncols: int) -> int:
    """Nullity of the matrix whose columns are given sparsely."""
    return ncols - rank_of_columns(columns)
