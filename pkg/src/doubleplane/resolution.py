"""The explicit graded minimal free resolution of a curve ideal ``J`` and its exactness certificate.

    0 <- R/J <- F_0 <-a1- F_1 <-a2- F_2 <-a3- F_3 <- 0

    F_1 = R(-2) + F(-d+delta) + R(-1-delta)
    F_2 = G(-d+delta) + F(-d-1+delta) + R(-2-delta)
    F_3 = G(-d-1+delta)

``F`` and ``G`` carry the twists of the Hilbert-Burch resolution
``0 <- I_Z <- F <-tA- G <- 0`` of the residual points.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .gradedlin import (FreeComplex, GradedCokernel, GradedFreeModule, GradedMap, NotAComplexError,
                        hilbert_function_from_twists, hilbert_polynomial, is_minimal, rank_of_map)
from .normalform import CurveIdeal, PreconditionError, verify_expected_residual
from .polycore import Ideal, Poly, codimension
from .polycore.matrix import determinant, minors, submatrix


@dataclass(frozen=True, eq=False)
class ResolutionData:
    complex: FreeComplex
    M: tuple[tuple[Poly, ...], ...]
    F_twists: tuple[int, ...]     # degrees of A_1..A_{s+1}
    G_twists: tuple[int, ...]
    s: int
    delta: int
    d: int
    curve: CurveIdeal

    @property
    def alpha1(self) -> GradedMap:
        return self.complex.maps[0]

    @property
    def alpha2(self) -> GradedMap:
        return self.complex.maps[1]

    @property
    def alpha3(self) -> GradedMap:
        return self.complex.maps[2]

    @property
    def terms(self) -> list[tuple[int, ...]]:
        return [m.twists for m in self.complex.modules]

    def sign_pattern(self) -> dict:
        """The realized sign conventions, for the report."""
        return {
            "alpha1": "(-1)^(i+1) (p h A_i + x B_i), last entry -p x",
            "alpha2_row0": "(-1)^i B_i, last entry p",
            "alpha2_last_row": "(-1)^(i+1) h A_i, last entry x",
            "alpha3": "-x E_s over tM",
        }


def _twists(b):
    s, d, delta = b.s, b.d, b.delta
    c = b.minor_degrees
    g = b.syzygy_degrees
    F0 = (0,)
    F1 = (2,) + tuple(cj + d - delta for cj in c) + (1 + delta,)
    F2 = tuple(gk + d - delta for gk in g) + tuple(cj + d + 1 - delta for cj in c) + (2 + delta,)
    F3 = tuple(gk + d + 1 - delta for gk in g)
    return F0, F1, F2, F3


def build_resolution(c: CurveIdeal, check: bool = True) -> ResolutionData:
    """Assemble ``alpha1, alpha2, alpha3`` and verify that they form a complex.

    With ``check`` the expected residual sequence is verified first.
    """
    b = c.source
    s = b.s
    if s < 1:
        raise ValueError("the resolution is only defined for s >= 1")
    if not c.standard:
        raise PreconditionError("the resolution is built from a B matrix, not from a modified G list")
    if check and not verify_expected_residual(c):
        raise PreconditionError("J does not have the expected residual sequence")
    R = c.ring
    x = R.var("x")
    zero = R.zero()
    lift = lambda e: e.to_ring(R)   # noqa: E731
    p, h = lift(b.p), lift(b.h)
    Ai = [lift(a) for a in b.hb.minors]
    Bi = [lift(m) for m in b.B_minors]
    M = tuple(tuple(lift(e) for e in row) for row in b.M)
    sign = lambda k: 1 if k % 2 == 0 else -1   # noqa: E731  (-1)^k

    # alpha1: 1 x (s+3)
    a1 = [x * x] + [(p * h * Ai[i] + x * Bi[i]) * sign(i) for i in range(s + 1)] + [-(p * x)]

    # alpha2: (s+3) x (2s+2); columns G (s), F (s+1), last (1)
    a2 = []
    a2.append([zero] * s + [Bi[i] * sign(i + 1) for i in range(s + 1)] + [p])
    for j in range(s + 1):
        a2.append([M[k][j] for k in range(s)]
                  + [x if i == j else zero for i in range(s + 1)] + [zero])
    a2.append([M[k][s + 1] for k in range(s)] + [h * Ai[i] * sign(i) for i in range(s + 1)] + [x])

    # alpha3: (2s+2) x s
    a3 = [[-x if i == k else zero for k in range(s)] for i in range(s)]
    a3 += [[M[k][j] for k in range(s)] for j in range(s + 2)]

    F0, F1, F2, F3 = (GradedFreeModule(t, R) for t in _twists(b))
    maps = [GradedMap([a1], F1, F0), GradedMap(a2, F2, F1), GradedMap(a3, F3, F2)]
    try:
        cx = FreeComplex(maps)
    except NotAComplexError as exc:
        raise NotAComplexError(f"the displayed sign pattern does not give a complex: {exc}") from None
    return ResolutionData(cx, M, b.minor_degrees, b.syzygy_degrees, s, b.delta, b.d, c)


# -- Buchsbaum-Eisenbud ----------------------------------------------------
class CertificationRefused(ValueError):
    pass


@dataclass
class Certificate:
    ranks: tuple[int, int, int]
    expected_ranks: tuple[int, int, int]
    codims: tuple[int, int, int]
    witnesses: dict = field(default_factory=dict)

    @property
    def rank_chain(self) -> bool:
        r1, r2, r3 = self.ranks
        e1, e2, e3 = self.expected_ranks
        return (r1, r2, r3) == (e1, e2, e3) and r1 + r2 == e1 + e2 and r2 + r3 == e2 + e3

    @property
    def passed(self) -> bool:
        c1, c2, c3 = self.codims
        return self.rank_chain and c1 >= 1 and c2 >= 2 and c3 >= 3 and all(
            v for k, v in self.witnesses.items() if k.endswith("_ok"))

    def as_dict(self) -> dict:
        return {"ranks": list(self.ranks), "expected_ranks": list(self.expected_ranks),
                "codims": list(self.codims), "rank_chain": self.rank_chain, "passed": self.passed,
                **{k: v for k, v in self.witnesses.items()}}


def _alpha2_witnesses(r: ResolutionData) -> tuple[Poly, Poly]:
    """The two ``(s+2)``-minors of ``alpha2`` used as codimension witnesses."""
    s = r.s
    m = r.alpha2.matrix
    rows_x = list(range(1, s + 3))
    cols_x = list(range(s, 2 * s + 2))
    w_x = determinant(submatrix(m, rows_x, cols_x), r.complex.ring)
    rows_p = [0] + list(range(2, s + 3))
    cols_p = list(range(s)) + [2 * s, 2 * s + 1]
    w_p = determinant(submatrix(m, rows_p, cols_p), r.complex.ring)
    return w_x, w_p


def buchsbaum_eisenbud_certify(r: ResolutionData, full_minors: bool = False) -> Certificate:
    """Ranks and codimensions of the determinantal ideals of the three maps.

    Codimension lower bounds come from witness minors (an ideal generated
    by some of the minors has codimension at most that of all of them).
    ``full_minors`` computes the complete minor ideals instead.
    """
    cx = r.complex
    bad = cx.nonzero_compositions()
    if bad:
        raise CertificationRefused(f"not a complex: compositions {bad} are non-zero")
    s = r.s
    R = cx.ring
    x = R.var("x")
    ranks = tuple(rank_of_map(m) for m in cx.maps)
    expected = (1, s + 2, s)
    w: dict = {}

    c1 = codimension(Ideal(R, cx.maps[0].matrix[0]))

    w_x, w_p = _alpha2_witnesses(r)
    b = r.curve.source
    lift = lambda e: e.to_ring(R)   # noqa: E731
    prod = lift(b.hb.minors[0] * b.hb.minors[s] * b.h * b.p)
    w["alpha2_x_power_ok"] = w_x == x ** (s + 2) or w_x == -(x ** (s + 2))
    red = w_p.substitute_zero("x")
    w["alpha2_product_ok"] = bool(prod) and (red == prod or red == -prod)
    if full_minors:
        c2 = codimension(Ideal(R, [m for m in minors(r.alpha2.matrix, s + 2, R) if m]))
        c3 = codimension(Ideal(R, [m for m in minors(r.alpha3.matrix, s, R) if m]))
    else:
        c2 = codimension(Ideal(R, [w_x, w_p]))
        a3 = r.alpha3.matrix
        xs = (-x) ** s
        tA = [a3[s + j] for j in range(s + 1)]
        tA_minors = [determinant([tA[j] for j in range(s + 1) if j != i], R) for i in range(s + 1)]
        w["alpha3_minors_ok"] = all(m in (lift(a), -lift(a)) for m, a in zip(tA_minors, b.hb.minors))
        w3 = [xs] + [m for m in tA_minors if m]
        c3 = codimension(Ideal(R, w3))
    w["minor_ideals"] = "full" if full_minors else "witness"
    return Certificate(ranks, expected, (c1, c2, c3), w)


# -- readouts ----------------------------------------------------------------
def betti_table(r: ResolutionData) -> dict[int, dict[int, int]]:
    """``{i: {twist: multiplicity}}`` for ``F_1, F_2, F_3`` (indexed 0, 1, 2)."""
    if not is_minimal(r.complex):
        raise ValueError("the complex is not minimal")
    return {i: dict(sorted(Counter(m.source.twists).items())) for i, m in enumerate(r.complex.maps)}


def resolution_hilbert_polynomial(r: ResolutionData) -> tuple[int, int]:
    return hilbert_polynomial(r.complex)


def resolution_hilbert_function(r: ResolutionData, n: int) -> int:
    return hilbert_function_from_twists(r.complex, n)


def dual_cokernel(r: ResolutionData, shift: int = -4, over: str = "S") -> GradedCokernel:
    """``coker(alpha3^T)(shift)`` as a graded cokernel.

    ``F_3^*`` has generators in degrees ``-t`` for the twists ``t`` of
    ``F_3``; twisting by ``shift`` moves them to ``-t - shift``.  Because
    ``alpha3^T = [-x E_s | tM^T]`` puts ``x e_k`` in the image, the cokernel
    over ``R`` equals the cokernel over ``S`` of the matrix with ``x = 0``;
    ``over="R"`` computes it literally.
    """
    a3 = r.alpha3
    mat = [list(col) for col in zip(*a3.matrix)]
    gens = [-t - shift for t in a3.source.twists]
    if over == "R":
        return GradedCokernel(mat, gens, r.complex.ring)
    if over != "S":
        raise ValueError(f"unknown ring {over!r}")
    S = r.curve.source.ring
    return GradedCokernel([[e.substitute_zero("x").to_ring(S) for e in row] for row in mat], gens, S)
