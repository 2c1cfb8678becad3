"""Determinants and minors of small polynomial matrices.

Matrices are plain lists of rows of :class:`Poly`.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .poly import Poly
from .ring import Ring

Matrix = Sequence[Sequence[Poly]]

_COFACTOR_LIMIT = 4


def submatrix(m: Matrix, rows: Sequence[int], cols: Sequence[int]) -> list[list[Poly]]:
    return [[m[i][j] for j in cols] for i in rows]


def delete_column(m: Matrix, j: int) -> list[list[Poly]]:
    return [[row[k] for k in range(len(row)) if k != j] for row in m]


def _ring_of(m: Matrix, ring: Ring | None) -> Ring:
    if ring is not None:
        return ring
    for row in m:
        for e in row:
            return e.ring
    raise ValueError("cannot infer the ring of an empty matrix; pass ring=")


def _cofactor_det(m: Matrix, ring: Ring) -> Poly:
    n = len(m)

    @lru_cache(maxsize=None)
    def det(row: int, cols: frozenset) -> Poly:
        if row == n:
            return ring.const(1)
        total = ring.zero()
        sign = 1
        for j in sorted(cols):
            e = m[row][j]
            if e:
                minor = det(row + 1, cols - {j})
                if minor:
                    term = e * minor
                    total = total + term if sign > 0 else total - term
            sign = -sign
        return total

    return det(0, frozenset(range(n)))


def _bareiss_det(m: Matrix, ring: Ring) -> Poly:
    a = [list(row) for row in m]
    n = len(a)
    sign = 1
    prev = ring.const(1)
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return ring.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q = num.divexact(prev)
                if q is None:
                    raise ArithmeticError("Bareiss step is not exact; matrix entries are inconsistent")
                a[i][j] = q
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def determinant(m: Matrix, ring: Ring | None = None) -> Poly:
    """Exact determinant: memoized cofactor expansion up to 4x4, Bareiss above.

    The empty (0x0) matrix has determinant 1.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError(f"determinant of a non-square {n}x{len(m[0]) if m else 0} matrix")
    ring = _ring_of(m, ring) if n else ring
    if n == 0:
        if ring is None:
            raise ValueError("pass ring= for the empty matrix")
        return ring.const(1)
    if n <= _COFACTOR_LIMIT:
        return _cofactor_det(m, ring)
    return _bareiss_det(m, ring)


def maximal_minors(m: Matrix, ring: Ring | None = None) -> list[Poly]:
    """``[N_1, ..., N_{u+1}]`` for a ``u x (u+1)`` matrix: ``N_i`` deletes column ``i``."""
    u = len(m)
    ring = _ring_of(m, ring) if u else ring
    ncols = len(m[0]) if u else 1
    if ncols != u + 1:
        raise ValueError(f"expected a {u}x{u + 1} matrix")
    return [determinant(delete_column(m, j), ring) for j in range(ncols)]


def minors(m: Matrix, r: int, ring: Ring | None = None) -> list[Poly]:
    """All ``r x r`` minors (zero ones included), rows-then-columns lexicographic."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    if not 1 <= r <= min(nrows, ncols):
        raise ValueError(f"minor size {r} out of range for a {nrows}x{ncols} matrix")
    ring = _ring_of(m, ring)
    return [determinant(submatrix(m, rows, cols), ring)
            for rows in combinations(range(nrows), r)
            for cols in combinations(range(ncols), r)]


def matmul(a: Matrix, b: Matrix, ring: Ring) -> list[list[Poly]]:
    if a and len(a[0]) != len(b):
        raise ValueError("inner dimensions differ")
    inner = len(b)
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(ncols):
            acc = ring.zero()
            for k in range(inner):
                if row[k] and b[k][j]:
                    acc = acc + row[k] * b[k][j]
            new.append(acc)
        out.append(new)
    return out


def transpose(m: Matrix) -> list[list[Poly]]:
    return [list(col) for col in zip(*m)]
