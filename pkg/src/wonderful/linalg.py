"""Exact linear algebra over the rationals.

Rank uses fraction-free (Bareiss) elimination on integer rows; row echelon
forms are computed with `Fraction` entries so they can serve as canonical
keys for subspaces.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm


def _integer_rows(rows):
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def rank(rows) -> int:
    """Rank of a rational matrix given as a sequence of rows."""
    m = _integer_rows(rows)
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, len(m)):
            for j in range(c + 1, ncols):
                # Bareiss step: the division is exact by Sylvester's identity
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == len(m):
            break
    return r


def rref(rows) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced row echelon form with zero rows dropped."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return ()
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r])


def pivots(echelon) -> list[int]:
    return [next(j for j, x in enumerate(row) if x != 0) for row in echelon]


def reduce_vector(vec, echelon):
    """Reduce `vec` modulo the row space of a reduced echelon matrix."""
    v = [Fraction(x) for x in vec]
    for row, p in zip(echelon, pivots(echelon)):
        if v[p] != 0:
            f = v[p]
            v = [a - f * b for a, b in zip(v, row)]
    return v
