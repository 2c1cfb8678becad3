"""Normal-form matrices of curves in the double plane ``x^2 = 0`` and the ideals they define.

A :class:`BMatrix` is the ``(s+1) x (s+2)`` matrix

    [ a_11 ... a_1,s+1    f_1     ]
    [ ...                 ...     ]
    [ a_s1 ... a_s,s+1    f_s     ]
    [ p_1  ... p_s+1      f_s+1   ]

over ``S = k[y,z,t]`` together with a form ``h``.  ``A`` (the top-left
block) is a Hilbert-Burch matrix of a zero-dimensional ``Z`` in the plane
``x = 0``.  ``B_i`` and ``A_i`` are the maximal minors deleting column
``i``; the curve ideal is

    J = (x^2, x p, p h A_i + x B_i  (i = 1..s+1)),   p = (-1)^s B_{s+2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Sequence, Union

from .gradedlin import GradingError, infer_grading
from .polycore import (Ideal, Poly, Ring, codimension, hilbert_function, ideal_quotient,
                       is_irrelevant, membership, ring_R, ring_S)
from .polycore.matrix import delete_column, determinant, maximal_minors, minors


class InvariantError(ValueError):
    """A normal-form rule is violated; ``rule`` names it."""

    def __init__(self, rule: str, message: str):
        super().__init__(f"{rule}: {message}")
        self.rule = rule


class PreconditionError(ValueError):
    pass


def _as_matrix(rows, ring: Ring) -> tuple[tuple[Poly, ...], ...]:
    return tuple(tuple(ring.parse(e) if isinstance(e, str) else e for e in row) for row in rows)


def _as_poly(e, ring: Ring) -> Poly:
    return ring.parse(e) if isinstance(e, str) else e


@dataclass(frozen=True, eq=False)
class HilbertBurchMatrix:
    """An ``s x (s+1)`` homogeneous matrix whose maximal minors cut out ``Z`` in codimension 2."""

    A: tuple[tuple[Poly, ...], ...]
    s: int
    ring: Ring

    @classmethod
    def create(cls, A, ring: Ring | None = None, check: bool = True) -> "HilbertBurchMatrix":
        ring = ring or ring_S()
        A = _as_matrix(A, ring)
        s = len(A)
        if any(len(row) != s + 1 for row in A):
            raise InvariantError("shape", f"A must be {s}x{s + 1}")
        hb = cls(A, s, ring)
        if check and s >= 1:
            try:
                infer_grading(A, s, s + 1)
            except GradingError as exc:
                raise InvariantError("homogeneity", str(exc)) from None
            if codimension(hb.ideal) != 2:
                raise InvariantError("Hilbert-Burch codimension",
                                     f"I_s(A) has codimension {codimension(hb.ideal)}, not 2")
        return hb

    @cached_property
    def minors(self) -> tuple[Poly, ...]:
        """``(A_1, ..., A_{s+1})``; for ``s = 0`` this is ``(1,)``."""
        if self.s == 0:
            return (self.ring.const(1),)
        return tuple(maximal_minors(self.A, self.ring))

    @cached_property
    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.minors)

    def __eq__(self, other):
        return isinstance(other, HilbertBurchMatrix) and self.A == other.A and self.ring == other.ring

    def __hash__(self):
        return hash((self.A, self.ring))


@dataclass(frozen=True, eq=False)
class BMatrix:
    """Validated normal-form data; build with :meth:`create`.

    ``row_weights`` (length ``s+1``) and ``col_weights`` (length ``s+2``)
    grade ``B``: a non-zero entry ``(i, j)`` has degree
    ``col_weights[j] - row_weights[i]``.

    Errors name the broken rule.  "condition (iii)" is the degree bound
    ``deg f_1 >= deg a_11 + sum_j deg a_j,j+1 - 1``, i.e. ``deg h >= 0``.
    """

    hb: HilbertBurchMatrix
    p_row: tuple[Poly, ...]
    f_col: tuple[Poly, ...]
    h: Poly
    row_weights: tuple[int, ...]
    col_weights: tuple[int, ...]

    @classmethod
    def create(cls, A, p_row, f_col, h, ring: Ring | None = None) -> "BMatrix":
        ring = ring or ring_S()
        hb = A if isinstance(A, HilbertBurchMatrix) else HilbertBurchMatrix.create(A, ring)
        ring = hb.ring
        s = hb.s
        p_row = tuple(_as_poly(e, ring) for e in p_row)
        f_col = tuple(_as_poly(e, ring) for e in f_col)
        h = _as_poly(h, ring)
        if len(p_row) != s + 1 or len(f_col) != s + 1:
            raise InvariantError("shape", f"p_row and f_col need {s + 1} entries each")
        if not h or not h.is_homogeneous():
            raise InvariantError("degree of h", "h must be a non-zero homogeneous form")
        rows = [list(r) + [f_col[i]] for i, r in enumerate(hb.A)] + [list(p_row) + [f_col[s]]]
        try:
            u, v = infer_grading(rows, s + 1, s + 2, partial=True)
        except GradingError as exc:
            raise InvariantError("homogeneity", str(exc)) from None
        if None in u or None in v[:s + 1]:
            raise InvariantError("homogeneity", "the non-zero entries of [A; p_row] do not grade B")
        D = sum(v[:s + 1]) - sum(u[:s])
        if v[s + 1] is None:        # zero f-column: its weight is fixed by h
            v[s + 1] = D + h.degree() - 1
        need_h = v[s + 1] - D + 1
        if need_h < 0:
            raise InvariantError(
                "condition (iii)",
                f"deg f_1 = {v[s + 1] - u[0]} is below deg a_11 + sum deg a_j,j+1 - 1 = {D - u[0] - 1}"
                if s else f"deg f_1 = {v[s + 1] - u[0]} forces deg h = {need_h} < 0")
        if h.degree() != need_h:
            raise InvariantError("degree of h", f"deg h = {h.degree()}, the grading of B forces {need_h}")
        b = cls(hb, p_row, f_col, h, tuple(u), tuple(v))
        if not b.p:
            raise InvariantError("degenerate p", "B_{s+2} = 0")
        for i in range(s):
            for j in range(s + 1):
                if not hb.A[i][j]:
                    continue
                df, da = v[s + 1] - u[i], v[j] - u[i]
                if df < da or (df == da and not (s == 1 and b.minor_degrees[j] == 1)):
                    raise InvariantError(
                        "degree guard",
                        f"deg f_{i + 1} = {df} against deg a_{i + 1},{j + 1} = {da} "
                        f"(equality needs s = 1 and deg A_{j + 1} = 1)")
        return b

    # -- shape and grading --------------------------------------------
    @property
    def s(self) -> int:
        return self.hb.s

    @property
    def ring(self) -> Ring:
        return self.hb.ring

    @property
    def A(self) -> tuple[tuple[Poly, ...], ...]:
        return self.hb.A

    @cached_property
    def matrix(self) -> tuple[tuple[Poly, ...], ...]:
        s = self.s
        rows = [tuple(r) + (self.f_col[i],) for i, r in enumerate(self.hb.A)]
        rows.append(tuple(self.p_row) + (self.f_col[s],))
        return tuple(rows)

    @property
    def M(self) -> tuple[tuple[Poly, ...], ...]:
        """``[A | f_1..f_s]``: ``B`` without its last row."""
        return self.matrix[:-1]

    @property
    def D(self) -> int:
        s = self.s
        return sum(self.col_weights[:s + 1]) - sum(self.row_weights[:s])

    @property
    def minor_degrees(self) -> tuple[int, ...]:
        """Degrees of ``A_1..A_{s+1}`` (the twists of ``F``)."""
        return tuple(self.D - v for v in self.col_weights[:self.s + 1])

    @property
    def syzygy_degrees(self) -> tuple[int, ...]:
        """Twists of ``G``: the degrees of the columns of ``tA`` as relations."""
        return tuple(self.D - u for u in self.row_weights[:self.s])

    @property
    def delta(self) -> int:
        return self.D - self.row_weights[self.s]

    @property
    def deg_h(self) -> int:
        return self.h.degree()

    @property
    def d(self) -> int:
        return 2 * self.delta + self.deg_h

    # -- minors -----------------------------------------------------------
    @cached_property
    def B_minors(self) -> tuple[Poly, ...]:
        """``(B_1, ..., B_{s+2})``."""
        return tuple(maximal_minors(self.matrix, self.ring))

    @cached_property
    def p(self) -> Poly:
        B_last = determinant(delete_column(self.matrix, self.s + 1), self.ring)
        return B_last if self.s % 2 == 0 else -B_last

    def condition_iii(self) -> tuple[int, int]:
        """``(deg f_1, deg a_11 + sum_j deg a_{j,j+1} - 1)`` from the grading."""
        s, u, v = self.s, self.row_weights, self.col_weights
        rhs = (v[0] - u[0]) + sum(v[j + 1] - u[j] for j in range(s)) - 1
        return v[s + 1] - u[0], rhs

    def with_entries(self, A=None, p_row=None, f_col=None, h=None) -> "BMatrix":
        return BMatrix.create(self.A if A is None else A,
                              self.p_row if p_row is None else p_row,
                              self.f_col if f_col is None else f_col,
                              self.h if h is None else h, self.ring)

    def __eq__(self, other):
        return (isinstance(other, BMatrix) and self.matrix == other.matrix and self.h == other.h)

    def __hash__(self):
        return hash((self.matrix, self.h))


def compute_p(b: BMatrix) -> Poly:
    """``p = (-1)^s B_{s+2}``: the (signed) determinant of ``[A; p_row]``."""
    return b.p


# -- the curve ideal -------------------------------------------------------
@dataclass(frozen=True, eq=False)
class CurveIdeal:
    source: BMatrix
    G_list: tuple[Poly, ...]
    generators: tuple[Poly, ...]
    J: Ideal
    standard: bool = True

    @property
    def ring(self) -> Ring:
        return self.J.ring

    @property
    def s(self) -> int:
        return self.source.s

    @cached_property
    def p(self) -> Poly:
        return self.source.p.to_ring(self.ring)


def curve_ideal_from_G(b: BMatrix, G: Sequence[Poly], standard: bool = False) -> CurveIdeal:
    """``(x^2, xp, p h A_i + x (-1)^{i-1} G_i)`` for an arbitrary list ``G``."""
    R = ring_R(b.ring.p)
    G = tuple(_as_poly(g, b.ring) for g in G)
    if len(G) != b.s + 1:
        raise ValueError(f"need {b.s + 1} polynomials G_i")
    x = R.var("x")
    p, h = b.p.to_ring(R), b.h.to_ring(R)
    gens = [x * x, x * p]
    for i, (Ai, Gi) in enumerate(zip(b.hb.minors, G)):
        Bi = Gi if i % 2 == 0 else -Gi
        gens.append(p * h * Ai.to_ring(R) + x * Bi.to_ring(R))
    return CurveIdeal(b, G, tuple(gens), Ideal(R, gens), standard)


def build_curve_ideal(b: BMatrix) -> CurveIdeal:
    G = [Bi if i % 2 == 0 else -Bi for i, Bi in enumerate(b.B_minors[:b.s + 1])]
    return curve_ideal_from_G(b, G, standard=True)


def verify_expected_residual(c: CurveIdeal) -> bool:
    """``J : x == (x, p)`` and ``J + (x) == (x) + p h I_Z``."""
    R = c.ring
    x = R.var("x")
    b = c.source
    p, h = c.p, b.h.to_ring(R)
    if ideal_quotient(c.J, x) != Ideal(R, [x, p]):
        return False
    lhs = Ideal(R, c.J.gens + (x,))
    rhs = Ideal(R, [x] + [p * h * Ai.to_ring(R) for Ai in b.hb.minors])
    return lhs == rhs


@dataclass(frozen=True)
class GoodResidualReport:
    quotient: bool                       # J : x == (x, p)
    syzygy: bool                         # A G == p f for some f
    minors: bool                         # G_i == (-1)^{i-1} B_i for some last column
    f_from_syzygy: tuple[Poly, ...] | None
    f_from_minors: tuple[Poly, ...] | None

    @property
    def consistent(self) -> bool:
        return self.quotient == self.syzygy == self.minors

    def as_dict(self) -> dict:
        return {"quotient": self.quotient, "syzygy": self.syzygy, "minors": self.minors,
                "consistent": self.consistent}


def _divide_all(polys, p: Poly) -> tuple[Poly, ...] | None:
    out = []
    for g in polys:
        q = g.divexact(p)
        if q is None:
            return None
        out.append(q)
    return tuple(out)


def _matvec(rows, vec, ring: Ring) -> list[Poly]:
    out = []
    for row in rows:
        acc = ring.zero()
        for a, g in zip(row, vec):
            if a and g:
                acc = acc + a * g
        out.append(acc)
    return out


def check_good_residual_equivalences(c: CurveIdeal) -> GoodResidualReport:
    """Decide the three equivalent characterizations of the expected residual sequence separately."""
    b = c.source
    S = b.ring
    x = c.ring.var("x")
    G = c.G_list
    p = b.p
    quotient = ideal_quotient(c.J, x) == Ideal(c.ring, [x, c.p])

    f_iii = _divide_all(_matvec(b.A, G, S), p)

    f_iv = _divide_all(_matvec(list(b.A) + [b.p_row], G, S), p)
    minors_ok = False
    if f_iv is not None:
        rows = [list(r) + [f_iv[i]] for i, r in enumerate(b.A)] + [list(b.p_row) + [f_iv[b.s]]]
        Bp = maximal_minors(rows, S)
        minors_ok = all((Bp[i] if i % 2 == 0 else -Bp[i]) == G[i] for i in range(b.s + 1))
    return GoodResidualReport(quotient, f_iii is not None, minors_ok, f_iii, f_iv if minors_ok else None)


def check_hp2(c: CurveIdeal, verified: bool = False) -> bool:
    """``h p^2 ∈ J``; requires the expected residual sequence."""
    if not verified and not verify_expected_residual(c):
        raise PreconditionError("J does not have the expected residual sequence")
    h = c.source.h.to_ring(c.ring)
    return membership(h * c.p * c.p, c.J)


# -- invariants ------------------------------------------------------------
def genus_formula(d: int, delta: int, deg_Z: int) -> int:
    """Arithmetic genus of a curve in the double plane with residual data ``(delta, Z)``."""
    if not d >= 2 * delta >= 2:
        raise ValueError(f"need d >= 2*delta >= 2, got d={d}, delta={delta}")
    return comb(d - delta - 1, 2) + comb(delta - 1, 2) + delta - deg_Z - 1


def stable_hilbert_value(ideal: Ideal, start: int = 0, run: int = 3, limit: int = 500) -> int:
    """First value taken ``run`` times in a row by the Hilbert function from ``start`` on."""
    start = max(start, 0)
    vals = [hilbert_function(ideal, n) for n in range(start, start + run)]
    n = start + run
    while len(set(vals[-run:])) != 1:
        if n > limit:
            raise RuntimeError("Hilbert function did not stabilize")
        vals.append(hilbert_function(ideal, n))
        n += 1
    return vals[-1]


@dataclass(frozen=True, eq=False)
class Triple:
    I_Z: Ideal
    I_Cprime: Ideal
    I_P: Ideal
    delta: int
    deg_h: int
    d: int
    deg_Z: int
    genus: int


def extract_triple(c: CurveIdeal) -> Triple:
    b = c.source
    R = c.ring
    x = R.var("x")
    I_Z = b.hb.ideal
    start = max(b.minor_degrees) if b.s else 0
    deg_Z = stable_hilbert_value(I_Z, start) if b.s else 0
    d = b.d
    return Triple(I_Z, Ideal(R, [x, c.p]), Ideal(R, [x, c.p * b.h.to_ring(R)]),
                  b.delta, b.deg_h, d, deg_Z, genus_formula(d, b.delta, deg_Z))


def maximal_minors_of_M(b: BMatrix) -> Ideal:
    """``I_s(M)`` in ``S``."""
    return Ideal(b.ring, [m for m in minors(b.M, b.s, b.ring) if m])


def is_curve(c: CurveIdeal | BMatrix) -> bool:
    """Is ``I_s(M)`` irrelevant (and condition (iii) satisfied)?"""
    b = c.source if isinstance(c, CurveIdeal) else c
    if b.s < 1:
        raise ValueError("the curve criterion via minors of M needs s >= 1")
    lhs, rhs = b.condition_iii()
    return lhs >= rhs and is_irrelevant(maximal_minors_of_M(b))


# -- row operations --------------------------------------------------------
@dataclass(frozen=True)
class Scale:
    """Multiply row ``row`` (0-based; ``s`` is the last row) by the constant ``c``."""
    row: int
    c: int


@dataclass(frozen=True)
class AddMultiple:
    """Add ``multiplier * row src`` to row ``dst`` (0-based)."""
    src: int
    dst: int
    multiplier: Union[Poly, str, int]


RowOp = Union[Scale, AddMultiple]


def preserves_J(b: BMatrix, op: RowOp) -> bool:
    """Everything except adding a multiple of the last row to a row of ``A``."""
    return not (isinstance(op, AddMultiple) and op.src == b.s and op.dst < b.s)


def apply_row_op(b: BMatrix, op: RowOp, compensate: bool = True) -> BMatrix:
    """Apply ``op`` to ``B``.

    Scaling a row of ``A`` by ``c`` multiplies every ``A_i``, ``B_i`` and
    ``p`` by ``c``, which turns ``J`` into the ideal built with ``c h``.  With
    ``compensate`` the new ``h`` is divided by ``c`` so ``J`` is unchanged.
    """
    s, ring = b.s, b.ring
    rows = [list(r) for r in b.matrix]
    h = b.h
    if isinstance(op, Scale):
        c = op.c % ring.p
        if not c:
            raise ValueError("scaling by zero is not a row operation")
        if not 0 <= op.row <= s:
            raise IndexError(f"row {op.row} out of range")
        rows[op.row] = [e.scale(c) for e in rows[op.row]]
        if compensate and op.row < s:
            h = h.scale(pow(c, -1, ring.p))
    elif isinstance(op, AddMultiple):
        if op.src == op.dst or not (0 <= op.src <= s and 0 <= op.dst <= s):
            raise IndexError(f"bad rows {op.src} -> {op.dst}")
        m = op.multiplier
        m = ring.const(m) if isinstance(m, int) else _as_poly(m, ring)
        if m:
            want = b.row_weights[op.src] - b.row_weights[op.dst]
            if not m.is_homogeneous() or m.degree() != want:
                raise InvariantError("homogeneity",
                                     f"multiplier {m} must be homogeneous of degree {want}")
            rows[op.dst] = [e + m * f for e, f in zip(rows[op.dst], rows[op.src])]
    else:
        raise TypeError(f"unknown row operation {op!r}")
    A = [r[:s + 1] for r in rows[:s]]
    return BMatrix.create(A, rows[s][:s + 1], [r[s + 1] for r in rows], h, ring)


@dataclass(frozen=True, eq=False)
class RowOpResult:
    same_ideal: bool
    expected_same: bool
    transformed: BMatrix


def row_equivalence_test(b: BMatrix, op: RowOp, compensate: bool = True) -> RowOpResult:
    """Rebuild ``J`` after ``op`` and compare reduced Groebner bases."""
    new = apply_row_op(b, op, compensate)
    same = build_curve_ideal(new).J == build_curve_ideal(b).J
    return RowOpResult(same, preserves_J(b, op), new)
