"""Graded free modules, homogeneous maps, free complexes and their numerics.

Conventions: ``R(-a)`` has its generator in degree ``a`` and is recorded as
the twist ``a``.  A map's matrix acts on column vectors of source
coordinates, so entry ``(i, j)`` has degree ``source[j] - target[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

import numpy as np

from .polycore import Ideal, Poly, Ring
from .polycore.linalg import RowSpace, rank_mod
from .polycore.matrix import matmul, minors


class HomogeneityError(ValueError):
    pass


class NotAComplexError(ValueError):
    pass


class NotLinearError(ValueError):
    """The Hilbert polynomial of the resolved module is not of the form d*n + c."""


@dataclass(frozen=True)
class GradedFreeModule:
    twists: tuple[int, ...]
    ring: Ring

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(int(a) for a in self.twists))

    @property
    def rank(self) -> int:
        return len(self.twists)

    def dual(self, shift: int = 0) -> "GradedFreeModule":
        """``Hom(F, R)(shift)``: twist ``a`` becomes ``-a - shift``."""
        return GradedFreeModule(tuple(-a - shift for a in self.twists), self.ring)


class GradedMap:
    """A homogeneous map ``source -> target`` given by its matrix."""

    def __init__(self, matrix: Sequence[Sequence[Poly]], source: GradedFreeModule,
                 target: GradedFreeModule):
        if source.ring != target.ring:
            raise ValueError("source and target live over different rings")
        ring = source.ring
        matrix = tuple(tuple(row) for row in matrix)
        if len(matrix) != target.rank or any(len(row) != source.rank for row in matrix):
            raise ValueError(f"matrix shape does not match {target.rank}x{source.rank}")
        for i, row in enumerate(matrix):
            for j, e in enumerate(row):
                if e.ring != ring:
                    raise ValueError(f"entry ({i},{j}) is not in {ring}")
                if e and not (e.is_homogeneous() and e.degree() == source.twists[j] - target.twists[i]):
                    raise HomogeneityError(
                        f"entry ({i},{j}) = {e} should be homogeneous of degree "
                        f"{source.twists[j] - target.twists[i]}")
        self.matrix = matrix
        self.source = source
        self.target = target

    @property
    def ring(self) -> Ring:
        return self.source.ring

    @property
    def shape(self) -> tuple[int, int]:
        return self.target.rank, self.source.rank

    def is_zero(self) -> bool:
        return not any(e for row in self.matrix for e in row)

    def transpose(self, shift: int = 0) -> "GradedMap":
        """The dual map ``target^*(shift) -> source^*(shift)``."""
        mat = [list(col) for col in zip(*self.matrix)] if self.matrix else [[] for _ in range(self.source.rank)]
        return GradedMap(mat, self.target.dual(shift), self.source.dual(shift))

    def __repr__(self):
        return f"GradedMap({self.target.rank}x{self.source.rank}, {self.source.twists} -> {self.target.twists})"


def identity_map(module: GradedFreeModule) -> GradedMap:
    ring = module.ring
    mat = [[ring.const(1 if i == j else 0) for j in range(module.rank)] for i in range(module.rank)]
    return GradedMap(mat, module, module)


def compose(f: GradedMap, g: GradedMap) -> GradedMap:
    """``f ∘ g`` (apply ``g`` first)."""
    if g.target != f.source:
        raise ValueError(f"cannot compose: {g.target.twists} != {f.source.twists}")
    ring = f.ring
    if g.source.rank == 0 or f.target.rank == 0:
        mat = [[ring.zero() for _ in range(g.source.rank)] for _ in range(f.target.rank)]
    elif f.source.rank == 0:
        mat = [[ring.zero() for _ in range(g.source.rank)] for _ in range(f.target.rank)]
    else:
        mat = matmul(f.matrix, g.matrix, ring)
    return GradedMap(mat, g.source, f.target)


# -- ranks and minors ---------------------------------------------------
def _bareiss_rank(matrix, ring: Ring) -> int:
    a = [list(row) for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    prev = ring.const(1)
    rank = 0
    for k in range(min(nrows, ncols)):
        best = None
        for i in range(k, nrows):
            for j in range(k, ncols):
                e = a[i][j]
                if e and (best is None or len(e) < best[0]):
                    best = (len(e), i, j)
        if best is None:
            break
        _, pi, pj = best
        a[k], a[pi] = a[pi], a[k]
        for row in a:
            row[k], row[pj] = row[pj], row[k]
        piv = a[k][k]
        for i in range(k + 1, nrows):
            for j in range(k + 1, ncols):
                num = a[i][j] * piv - a[i][k] * a[k][j]
                if num:
                    q = num.divexact(prev)
                    if q is None:
                        raise ArithmeticError("fraction-free elimination hit an inexact division")
                    a[i][j] = q
                else:
                    a[i][j] = ring.zero()
            a[i][k] = ring.zero()
        prev = piv
        rank += 1
    return rank


def rank_of_map(f: GradedMap | Sequence[Sequence[Poly]], ring: Ring | None = None) -> int:
    """Rank over the fraction field, by fraction-free (Bareiss) elimination with full pivoting."""
    if isinstance(f, GradedMap):
        matrix, ring = f.matrix, f.ring
    else:
        matrix = [list(r) for r in f]
        if ring is None:
            ring = next((e.ring for row in matrix for e in row), None)
    if not matrix or not matrix[0] or ring is None:
        return 0
    return _bareiss_rank(matrix, ring)


def minors_ideal(f: GradedMap | Sequence[Sequence[Poly]], r: int, ring: Ring | None = None) -> Ideal:
    """``I_r``: the ideal of all ``r x r`` minors."""
    if isinstance(f, GradedMap):
        matrix, ring = f.matrix, f.ring
    else:
        matrix = f
        if ring is None:
            ring = next(e.ring for row in matrix for e in row)
    return Ideal(ring, [m for m in minors(matrix, r, ring) if m])


# -- complexes ----------------------------------------------------------
class FreeComplex:
    """``F_0 <- F_1 <- F_2 <- ...`` with ``maps[k]: F_{k+1} -> F_k``."""

    def __init__(self, maps: Sequence[GradedMap], verify: bool = True):
        maps = tuple(maps)
        for k in range(1, len(maps)):
            if maps[k].target != maps[k - 1].source:
                raise ValueError(f"maps {k - 1} and {k} do not chain")
        self.maps = maps
        if verify:
            bad = self.nonzero_compositions()
            if bad:
                raise NotAComplexError(f"compositions {bad} are not zero")

    def nonzero_compositions(self) -> list[tuple[int, int]]:
        return [(k - 1, k) for k in range(1, len(self.maps))
                if not compose(self.maps[k - 1], self.maps[k]).is_zero()]

    @property
    def modules(self) -> list[GradedFreeModule]:
        if not self.maps:
            return []
        return [self.maps[0].target] + [m.source for m in self.maps]

    @property
    def ring(self) -> Ring:
        return self.maps[0].ring

    def __len__(self):
        return len(self.maps)


def is_minimal(c: FreeComplex) -> bool:
    """No matrix entry is a non-zero constant."""
    return not any(e and e.is_constant() for m in c.maps for row in m.matrix for e in row)


def koszul_complex(ring: Ring, forms: Sequence[Poly]) -> FreeComplex:
    """Koszul complex on homogeneous ``forms``, resolving ``ring / (forms)`` when they form a regular sequence."""
    from itertools import combinations

    n = len(forms)
    degs = [f.degree() for f in forms]
    subsets = [list(combinations(range(n), k)) for k in range(n + 1)]
    maps = []
    for k in range(1, n + 1):
        src = GradedFreeModule(tuple(sum(degs[i] for i in s) for s in subsets[k]), ring)
        tgt = GradedFreeModule(tuple(sum(degs[i] for i in s) for s in subsets[k - 1]), ring)
        index = {s: i for i, s in enumerate(subsets[k - 1])}
        mat = [[ring.zero() for _ in subsets[k]] for _ in subsets[k - 1]]
        for j, s in enumerate(subsets[k]):
            for pos, i in enumerate(s):
                face = s[:pos] + s[pos + 1:]
                mat[index[face]][j] = forms[i] if pos % 2 == 0 else -forms[i]
        maps.append(GradedMap(mat, src, tgt))
    return FreeComplex(maps)


# -- Hilbert functions and polynomials from twists -----------------------
def _binom_poly(shift: int, k: int) -> list[Fraction]:
    """Coefficients (constant first) of ``C(n + shift, k)`` as a polynomial in ``n``."""
    coeffs = [Fraction(1)]
    for r in range(k):
        # multiply by (n + shift - r)
        c0 = shift - r
        new = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i] += c * c0
            new[i + 1] += c
        coeffs = new
    return [c / factorial(k) for c in coeffs]


def alternating_twists(c: FreeComplex) -> list[tuple[int, int]]:
    """``(sign, twist)`` for every summand of every module of the complex."""
    out = []
    for i, mod in enumerate(c.modules):
        sign = 1 if i % 2 == 0 else -1
        out.extend((sign, a) for a in mod.twists)
    return out


def hilbert_function_from_twists(c: FreeComplex, n: int) -> int:
    """Alternating binomial sum: the Hilbert function of the module resolved by ``c``."""
    N = c.ring.nvars
    total = 0
    for sign, a in alternating_twists(c):
        if n - a >= 0:
            total += sign * comb(n - a + N - 1, N - 1)
    return total


def hilbert_polynomial_coefficients(c: FreeComplex) -> list[Fraction]:
    """Coefficients (constant first, trailing zeros stripped) of the Hilbert polynomial."""
    N = c.ring.nvars
    total = [Fraction(0)] * N
    for sign, a in alternating_twists(c):
        for i, v in enumerate(_binom_poly(N - 1 - a, N - 1)):
            total[i] += sign * v
    while total and total[-1] == 0:
        total.pop()
    return total


def hilbert_polynomial(c: FreeComplex) -> tuple[int, int]:
    """``(degree, arithmetic genus)`` from ``P(n) = d*n + 1 - p_a``."""
    coeffs = hilbert_polynomial_coefficients(c)
    if len(coeffs) != 2:
        raise NotLinearError(f"Hilbert polynomial has coefficients {coeffs}, not linear in n")
    c0, c1 = coeffs
    if c0.denominator != 1 or c1.denominator != 1:
        raise NotLinearError(f"non-integral Hilbert polynomial {coeffs}")
    return int(c1), int(1 - c0)


# -- graded cokernels ---------------------------------------------------
class GradedCokernel:
    """``coker(matrix)`` for a homogeneous matrix into ``⊕ R(-a_i)``, degree by degree.

    ``gen_degrees[i]`` is the degree of the ``i``-th generator ``e_i``.
    Column degrees are inferred from the non-zero entries.
    """

    def __init__(self, matrix: Sequence[Sequence[Poly]], gen_degrees: Sequence[int], ring: Ring):
        self.ring = ring
        self.matrix = [list(row) for row in matrix]
        self.gen_degrees = tuple(gen_degrees)
        if len(self.matrix) != len(self.gen_degrees):
            raise ValueError("one generator degree per row is required")
        ncols = len(self.matrix[0]) if self.matrix else 0
        col_degrees: list[int | None] = []
        for j in range(ncols):
            deg = None
            for i, row in enumerate(self.matrix):
                e = row[j]
                if not e:
                    continue
                if not e.is_homogeneous():
                    raise HomogeneityError(f"entry ({i},{j}) is not homogeneous")
                d = self.gen_degrees[i] + e.degree()
                if deg is None:
                    deg = d
                elif deg != d:
                    raise HomogeneityError(f"column {j} is not homogeneous for the generator degrees")
            col_degrees.append(deg)
        self.col_degrees = col_degrees
        self._spaces: dict[int, RowSpace] = {}

    @property
    def ngens(self) -> int:
        return len(self.gen_degrees)

    def basis(self, j: int) -> tuple[list[tuple[int, int]], dict[tuple[int, int], int]]:
        """Monomial basis ``(generator, monomial)`` of the free target in degree ``j``."""
        items = []
        for i, a in enumerate(self.gen_degrees):
            for m in self.ring.monomials(j - a):
                items.append((i, m))
        return items, {it: k for k, it in enumerate(items)}

    def vector(self, column: Sequence[Poly], shift_mono: int, index: dict) -> np.ndarray:
        v = np.zeros(len(index), dtype=np.int64)
        shift = shift_mono - self.ring.bias
        for i, e in enumerate(column):
            for m, c in e.terms.items():
                v[index[(i, m + shift)]] = c
        return v

    def image(self, j: int) -> RowSpace:
        """Row space of the image in degree ``j`` (cached)."""
        space = self._spaces.get(j)
        if space is not None:
            return space
        _, index = self.basis(j)
        space = RowSpace(len(index), self.ring.p)
        rows = []
        for c, b in enumerate(self.col_degrees):
            if b is None or b > j:
                continue
            column = [row[c] for row in self.matrix]
            for u in self.ring.monomials(j - b):
                rows.append(self.vector(column, u, index))
        if rows:
            space.add(np.array(rows))
        self._spaces[j] = space
        return space

    def dim(self, j: int) -> int:
        items, _ = self.basis(j)
        if not items:
            return 0
        return len(items) - self.image(j).rank

    def minimal_generator_count(self) -> int:
        """``dim N / mN``: generators minus the rank of the constant part of the matrix."""
        if not self.matrix:
            return 0
        const = np.array([[e.constant_coeff() if e else 0 for e in row] for row in self.matrix], dtype=np.int64)
        return self.ngens - (rank_mod(const, self.ring.p) if const.size else 0)

    def minimal_relation_count(self) -> int:
        """Minimal number of generators of the image (the relations of the cokernel)."""
        total = 0
        for b in sorted({b for b in self.col_degrees if b is not None}):
            _, index = self.basis(b)
            lower = RowSpace(len(index), self.ring.p)
            rows = []
            for c, bc in enumerate(self.col_degrees):
                if bc is None or bc >= b:
                    continue
                column = [row[c] for row in self.matrix]
                for u in self.ring.monomials(b - bc):
                    rows.append(self.vector(column, u, index))
            if rows:
                lower.add(np.array(rows))
            full_rank = self.image(b).rank
            total += full_rank - lower.rank
        return total


# -- gradings of matrices -----------------------------------------------
class GradingError(ValueError):
    pass


def infer_grading(matrix: Sequence[Sequence[Poly]], nrows: int, ncols: int,
                  seeds: dict[tuple[str, int], int] | None = None,
                  partial: bool = False) -> tuple[list[int | None], list[int | None]]:
    """Row weights ``u`` and column weights ``v`` with ``deg m[i][j] = v[j] - u[i]``.

    Weights propagate along non-zero entries from ``seeds`` (``("r", i)`` or
    ``("c", j)`` keys; default: row 0 has weight 0).  Nodes not reached stay
    ``None`` when ``partial`` is set, otherwise they raise.
    """
    u: list[int | None] = [None] * nrows
    v: list[int | None] = [None] * ncols
    seeds = dict(seeds) if seeds else ({("r", 0): 0} if nrows else {})
    for (kind, k), w in seeds.items():
        (u if kind == "r" else v)[k] = w
    queue = list(seeds)
    for i, row in enumerate(matrix):
        for j, e in enumerate(row):
            if e and not e.is_homogeneous():
                raise GradingError(f"entry ({i},{j}) = {e} is not homogeneous")
    while queue:
        kind, k = queue.pop()
        if kind == "r":
            for j in range(ncols):
                e = matrix[k][j]
                if not e:
                    continue
                want = u[k] + e.degree()
                if v[j] is None:
                    v[j] = want
                    queue.append(("c", j))
                elif v[j] != want:
                    raise GradingError(f"entry ({k},{j}) breaks homogeneity: degree {e.degree()}, "
                                       f"weights force {v[j] - u[k]}")
        else:
            for i in range(nrows):
                e = matrix[i][k]
                if not e:
                    continue
                want = v[k] - e.degree()
                if u[i] is None:
                    u[i] = want
                    queue.append(("r", i))
                elif u[i] != want:
                    raise GradingError(f"entry ({i},{k}) breaks homogeneity: degree {e.degree()}, "
                                       f"weights force {v[k] - u[i]}")
    if not partial and (None in u or None in v):
        raise GradingError("the non-zero entries do not determine a grading of every row and column")
    return u, v
