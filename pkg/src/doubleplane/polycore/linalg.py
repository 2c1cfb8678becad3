"""Dense linear algebra over ``F_p`` on numpy arrays.

Row reduction is blocked: each chunk of rows is first cleared against the
current reduced basis with one float64 matrix product (exact while
``k * (p - 1)**2 < 2**53``), then echelonized on its own.
"""

from __future__ import annotations

import numpy as np

_EXACT = float(2 ** 53)


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``a @ b mod p`` for inputs (int64 or float64) with entries in ``[0, p)``."""
    k = a.shape[1]
    if k == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    step = max(1, int(_EXACT // ((p - 1) ** 2 + 1)))
    a = a.astype(np.float64, copy=False)
    b = b.astype(np.float64, copy=False)
    out = None
    for lo in range(0, k, step):
        hi = min(k, lo + step)
        part = np.fmod(a[:, lo:hi] @ b[lo:hi], p).astype(np.int64)
        out = part if out is None else (out + part) % p
    return out


def _echelonize(x: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Plain Gauss-Jordan on a (small) block; returns reduced rows and pivot columns."""
    x = x % p
    rows, cols = x.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(x[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            x[[r, i]] = x[[i, r]]
        inv = pow(int(x[r, c]), -1, p)
        x[r, c:] = x[r, c:] * inv % p     # the pivot row is zero left of c
        col = x[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            x[nzr, c:] = (x[nzr, c:] - np.outer(col[nzr], x[r, c:])) % p
        pivots.append(c)
        r += 1
    return x[:r], pivots


class RowSpace:
    """Incrementally maintained reduced row echelon basis of a row space."""

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.basis = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []
        self._basis_f: np.ndarray | None = None

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, rows: np.ndarray) -> np.ndarray:
        """Reduce rows modulo the current space (result has zeros in pivot columns)."""
        rows = np.asarray(rows, dtype=np.int64) % self.p
        if rows.ndim == 1:
            return self.reduce(rows[None, :])[0]
        if not self.pivots or rows.shape[0] == 0:
            return rows
        if self._basis_f is None:
            self._basis_f = self.basis.astype(np.float64)
        coeffs = rows[:, self.pivots]
        return (rows - _matmul_mod(coeffs, self._basis_f, self.p)) % self.p

    def add(self, rows: np.ndarray, chunk: int = 64) -> None:
        rows = np.asarray(rows, dtype=np.int64)
        if rows.ndim == 1:
            rows = rows[None, :]
        for lo in range(0, rows.shape[0], chunk):
            if self.rank == self.ncols:
                return
            block = self.reduce(rows[lo:lo + chunk])
            block = block[np.any(block != 0, axis=1)]
            if block.shape[0] == 0:
                continue
            new, newpiv = _echelonize(block, self.p)
            if not newpiv:
                continue
            if self.pivots:
                coeffs = self.basis[:, newpiv]
                self.basis = (self.basis - _matmul_mod(coeffs, new, self.p)) % self.p
            self.basis = np.vstack([self.basis, new])
            self.pivots.extend(newpiv)
            self._basis_f = None

    def contains(self, row: np.ndarray) -> bool:
        return not np.any(self.reduce(row))


def rank_mod(m: np.ndarray, p: int) -> int:
    m = np.asarray(m, dtype=np.int64)
    if m.size == 0:
        return 0
    space = RowSpace(m.shape[1], p)
    space.add(m)
    return space.rank


def rref_mod(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with rows sorted by pivot column."""
    m = np.asarray(m, dtype=np.int64)
    space = RowSpace(m.shape[1], p)
    if m.size:
        space.add(m)
    order = np.argsort(space.pivots, kind="stable")
    return space.basis[order], [space.pivots[i] for i in order]


def nullspace_mod(m: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of ``{v : m @ v = 0}``."""
    m = np.asarray(m, dtype=np.int64)
    ncols = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    r, piv = rref_mod(m, p)
    free = [c for c in range(ncols) if c not in set(piv)]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for k, c in enumerate(free):
        out[k, c] = 1
        for row, pc in zip(r, piv):
            out[k, pc] = (-row[c]) % p
    return out
