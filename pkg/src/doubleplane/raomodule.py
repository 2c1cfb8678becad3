"""The Hartshorne-Rao module of a curve in the double plane, presented by ``[x E_s  M]``.

``M = [A | f_1..f_s]`` is ``B`` without its last row.  The module is the
cokernel of ``[x E_s  M]`` into ``s`` free generators in degrees
``delta + 1 - g_k`` (``g_k`` the twists of ``G``).  Since ``x`` acts as zero,
everything except the ``R``-annihilator is computed over ``S``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .gradedlin import GradedCokernel, GradingError, infer_grading
from .instances import random_form
from .normalform import BMatrix, CurveIdeal, HilbertBurchMatrix, InvariantError, is_curve
from .polycore import Ideal, Poly, Ring, hilbert_function, is_irrelevant, ring_R, ring_S
from .polycore.linalg import nullspace_mod
from .polycore.matrix import minors


class NotACurveError(ValueError):
    pass


def _minors_ideal_S(M, s: int, ring: Ring) -> Ideal:
    return Ideal(ring, [m for m in minors(M, s, ring) if m])


@dataclass(frozen=True, eq=False)
class RaoPresentation:
    s: int
    M: tuple[tuple[Poly, ...], ...]          # over S
    gen_degrees: tuple[int, ...]
    delta: int | None = None
    d: int | None = None

    @classmethod
    def create(cls, M, gen_degrees: Sequence[int], ring: Ring | None = None, **kw) -> "RaoPresentation":
        ring = ring or ring_S()
        M = tuple(tuple(ring.parse(e) if isinstance(e, str) else e for e in row) for row in M)
        s = len(M)
        if s < 1:
            raise ValueError("the presentation needs s >= 1")
        if any(len(row) != s + 2 for row in M):
            raise ValueError(f"M must be {s}x{s + 2}")
        if len(gen_degrees) != s:
            raise ValueError("one generator degree per row of M")
        for i, row in enumerate(M):
            if not any(row):
                raise ValueError(f"row {i + 1} of M is zero")
            for j, e in enumerate(row):
                if e and e.is_constant():
                    raise ValueError(f"entry ({i + 1},{j + 1}) = {e} is a unit; entries must have positive degree")
        pres = cls(s, M, tuple(gen_degrees), **kw)
        pres.cokernel("S")   # homogeneity check
        return pres

    @property
    def ring(self) -> Ring:
        return self.M[0][0].ring

    def matrix_R(self) -> list[list[Poly]]:
        """``[x E_s  M]`` over ``R``."""
        R = ring_R(self.ring.p)
        x = R.var("x")
        return [[x if i == k else R.zero() for k in range(self.s)] + [e.to_ring(R) for e in row]
                for i, row in enumerate(self.M)]

    def cokernel(self, over: str = "S") -> GradedCokernel:
        if over == "S":
            return GradedCokernel(self.M, self.gen_degrees, self.ring)
        if over == "R":
            return GradedCokernel(self.matrix_R(), self.gen_degrees, ring_R(self.ring.p))
        raise ValueError(f"unknown ring {over!r}")

    def minors_ideal(self) -> Ideal:
        return _minors_ideal_S(self.M, self.s, self.ring)


def rao_presentation(c: CurveIdeal | BMatrix, allow_infinite: bool = False) -> RaoPresentation:
    b = c.source if isinstance(c, CurveIdeal) else c
    if b.s < 1:
        raise ValueError("no Rao module presentation for s = 0 (the curve is aCM)")
    if not allow_infinite and not is_curve(b):
        raise NotACurveError("not a curve: I_s(M) is not irrelevant, the Rao module would have infinite length")
    gens = tuple(b.delta + 1 - g for g in b.syzygy_degrees)
    return RaoPresentation.create(b.M, gens, b.ring, delta=b.delta, d=b.d)


# -- Rao function ------------------------------------------------------------
@dataclass(frozen=True)
class RaoFunction:
    values: Mapping[int, int]       # non-zero values only
    window: tuple[int, int]
    finite: bool
    bound: int

    def __getitem__(self, j: int) -> int:
        return self.values.get(j, 0)

    @property
    def total(self) -> int:
        return sum(self.values.values())

    def as_dict(self) -> dict[int, int]:
        return dict(sorted(self.values.items()))


def rao_function(r: RaoPresentation, over: str = "S") -> RaoFunction:
    """Degreewise dimensions of the cokernel.

    Scanning starts at the lowest generator degree and stops after three
    consecutive zeros past ``max generator degree + max entry degree``.
    If the module is non-zero in degree ``max generator degree + 3 D - 2``
    (``D`` the largest degree of an ``s``-minor of ``M``), ``I_s(M)`` cannot
    be irrelevant and the module is flagged as having infinite length.
    """
    cok = r.cokernel(over)
    lo, top = min(r.gen_degrees), max(r.gen_degrees)
    max_entry = max(e.degree() for row in r.M for e in row if e)
    threshold = top + max_entry
    minor_degs = [m.degree() for m in minors(r.M, r.s, r.ring) if m]
    bound = top + 3 * max(minor_degs) - 2 if minor_degs else threshold
    bound = max(bound, threshold + 3)
    values: dict[int, int] = {}
    zeros = 0
    j = lo
    while True:
        v = cok.dim(j)
        if v:
            values[j] = v
            zeros = 0
            if j >= bound:
                return RaoFunction(values, (lo, j), False, bound)
        else:
            zeros += 1
            if zeros >= 3 and j - 2 > threshold:
                return RaoFunction(values, (lo, j), True, bound)
        j += 1


def check_self_duality(rho: RaoFunction | Mapping[int, int], d: int) -> bool:
    """``rho(j) == rho(d - 2 - j)`` for every ``j``."""
    vals = rho.values if isinstance(rho, RaoFunction) else rho
    support = {j for j, v in vals.items() if v}
    return all(vals.get(j, 0) == vals.get(d - 2 - j, 0) for j in support | {d - 2 - j for j in support})


def duality_bridge(rho: RaoFunction, dual) -> dict[int, tuple[int, int]]:
    """``{j: (rho(j), dim dual_{-j})}`` over the support window of ``rho``.

    ``dual`` is ``coker(alpha3^T)(-4)`` (see :func:`resolution.dual_cokernel`),
    the graded dual of the Rao module.
    """
    lo, hi = rho.window
    return {j: (rho[j], dual.dim(-j)) for j in range(lo - 1, hi + 2)}


# -- generators and relations -------------------------------------------------
def minimal_generator_count(r: RaoPresentation) -> int:
    return r.cokernel("R").minimal_generator_count()


def minimal_relation_count(r: RaoPresentation) -> int:
    """Minimal number of relations of the presentation over ``R`` (``x`` included)."""
    return r.cokernel("R").minimal_relation_count()


# -- annihilators ---------------------------------------------------------------
@dataclass
class AnnihilatorReport:
    ann_S_ok: bool
    ann_R_ok: bool | None
    bound: int
    failing_S: list[int] = field(default_factory=list)
    failing_R: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.ann_S_ok and self.ann_R_ok is not False

    def as_dict(self) -> dict:
        return {"ann_S": self.ann_S_ok, "ann_R": self.ann_R_ok, "bound": self.bound,
                "failing_S": self.failing_S, "failing_R": self.failing_R}


def _annihilator_degree(cok: GradedCokernel, n: int) -> tuple[np.ndarray, list[int]]:
    """Basis (rows, monomial coordinates) of the degree-``n`` forms killing the module."""
    ring = cok.ring
    monos = ring.monomials(n)
    blocks = []
    for k, a in enumerate(cok.gen_degrees):
        deg = a + n
        items, index = cok.basis(deg)
        if not items:
            continue
        space = cok.image(deg)
        rows = np.zeros((len(monos), len(items)), dtype=np.int64)
        for r_, u in enumerate(monos):
            rows[r_, index[(k, u)]] = 1
        blocks.append(space.reduce(rows))
    if not blocks:
        return np.eye(len(monos), dtype=np.int64), monos
    big = np.hstack(blocks)
    return nullspace_mod(big.T, ring.p), monos


def _ann_check(cok: GradedCokernel, candidate: Ideal, bound: int) -> list[int]:
    ring = cok.ring
    failing = []
    # candidate ⊆ Ann: every generator kills every module generator
    for g in candidate.gens:
        for k, a in enumerate(cok.gen_degrees):
            deg = a + g.degree()
            items, index = cok.basis(deg)
            if not items:
                continue
            vec = cok.vector([g if i == k else ring.zero() for i in range(cok.ngens)], ring.one, index)
            if not cok.image(deg).contains(vec):
                failing.append(g.degree())
    # Ann ⊆ candidate, degree by degree
    for n in range(0, bound + 1):
        basis, monos = _annihilator_degree(cok, n)
        for row in basis:
            f = Poly(ring, {m: int(c) for m, c in zip(monos, row) if c})
            if f not in candidate:
                failing.append(n)
                break
    return sorted(set(failing))


def annihilator_check(r: RaoPresentation, rho: RaoFunction | None = None, over_R: bool = True) -> AnnihilatorReport:
    """``Ann_S = I_s(M)`` and ``Ann_R = xR + I_s(M) R``, degree by degree.

    Forms of degree above ``top - min generator degree`` kill the module for
    degree reasons, and both candidates contain every form of degree at
    least the vanishing degree of ``S / I_s(M)``; checking up to the larger
    of the two decides the equalities.
    """
    rho = rho or rao_function(r)
    if not rho.finite:
        raise NotACurveError("annihilator check needs a finite-length module")
    I = r.minors_ideal()
    top = max(rho.values) if rho.values else min(r.gen_degrees)
    n_I = 0
    while hilbert_function(I, n_I) != 0:
        n_I += 1
    bound = max(top - min(r.gen_degrees) + 1, n_I)
    fail_S = _ann_check(r.cokernel("S"), I, bound)
    fail_R: list[int] = []
    ok_R = None
    if over_R:
        R = ring_R(r.ring.p)
        cand = Ideal(R, [R.var("x")] + [g.to_ring(R) for g in I.gens])
        fail_R = _ann_check(r.cokernel("R"), cand, bound)
        ok_R = not fail_R
    return AnnihilatorReport(not fail_S, ok_R, bound, fail_S, fail_R)


# -- presentation shape and the converse construction ---------------------
@dataclass
class ShapeReport:
    ok: bool
    reasons: list[str]
    M: tuple[tuple[Poly, ...], ...] | None = None
    x_columns: tuple[int, ...] = ()

    def __bool__(self):
        return self.ok


def _is_x_multiple(e: Poly) -> bool:
    if not e or len(e) != 1:
        return False
    exps, _ = next(iter(e))
    return list(exps) == [1, 0, 0, 0]


def _last_column_choice(M, ring: Ring):
    """``(weights, f column, deg h)`` with ``f`` a column of largest weight."""
    s = len(M)
    u, v = infer_grading(M, s, s + 2)
    T = sum(v) - sum(u)
    f = max(range(s + 2), key=lambda j: (v[j], j))
    return u, v, f, 2 * v[f] - T + 1


def presentation_shape_check(candidate: Sequence[Sequence[Poly]], gen_degrees: Sequence[int] | None = None,
                            ring: Ring | None = None) -> ShapeReport:
    """Is ``candidate`` (over ``R``) of the form ``[x E_s  M]`` for a curve in the double plane?"""
    ring = ring or ring_R()
    cand = [[ring.parse(e) if isinstance(e, str) else e.to_ring(ring) for e in row] for row in candidate]
    s = len(cand)
    if s < 1 or any(len(row) != 2 * s + 2 for row in cand):
        raise ValueError(f"candidate must be s x (2s+2), got {s} rows")
    if gen_degrees is not None:
        if len(gen_degrees) != s:
            raise ValueError("one generator degree per row")
        try:
            GradedCokernel(cand, gen_degrees, ring)
        except ValueError as exc:
            raise ValueError(f"malformed twist data: {exc}") from None
    reasons: list[str] = []
    # pick one x-column per row
    xcols: dict[int, int] = {}
    for j in range(2 * s + 2):
        col = [cand[i][j] for i in range(s)]
        nz = [i for i in range(s) if col[i]]
        if len(nz) == 1 and _is_x_multiple(col[nz[0]]) and nz[0] not in xcols:
            xcols[nz[0]] = j
    if len(xcols) != s:
        reasons.append(f"found x E_s columns for rows {sorted(i + 1 for i in xcols)} only")
        return ShapeReport(False, reasons)
    S = ring_S(ring.p)
    mcols = [j for j in range(2 * s + 2) if j not in xcols.values()]
    M = []
    for i in range(s):
        row = []
        for j in mcols:
            e = cand[i][j]
            if "x" in e.variables():
                reasons.append(f"entry ({i + 1},{j + 1}) = {e} involves x")
            elif e and e.is_constant():
                reasons.append(f"entry ({i + 1},{j + 1}) = {e} is a unit, not in (y,z,t)")
            row.append(e.to_ring(S) if "x" not in e.variables() else S.zero())
        M.append(tuple(row))
    if reasons:
        return ShapeReport(False, reasons)
    try:
        _, _, _, deg_h = _last_column_choice(M, S)
    except GradingError as exc:
        return ShapeReport(False, [f"M does not carry a consistent grading: {exc}"])
    if deg_h < 0:
        reasons.append(f"condition (iii) is not satisfiable: best choice of last column gives deg h = {deg_h}")
    if not is_irrelevant(_minors_ideal_S(M, s, S)):
        reasons.append("I_s(M) is not irrelevant")
    return ShapeReport(not reasons, reasons, tuple(M), tuple(xcols[i] for i in range(s)))


class ConstructionError(ValueError):
    pass


def construct_curve_from_module(M, seed: int = 0, tries: int = 50, ring: Ring | None = None) -> BMatrix:
    """A normal-form ``B`` whose Rao module is presented by ``[x E_s  M]``.

    The last column of ``B`` is a column of ``M`` of largest weight (chosen
    so the remaining block is Hilbert-Burch), ``h = t^{deg h}``, and the
    p-row gets random dense forms of the smallest positive degrees allowed
    by the grading.
    """
    ring = ring or ring_S()
    M = [[ring.parse(e) if isinstance(e, str) else e for e in row] for row in M]
    s = len(M)
    report = presentation_shape_check(
        [[ring_R(ring.p).var("x") if i == k else ring_R(ring.p).zero() for k in range(s)]
         + [e.to_ring(ring_R(ring.p)) for e in row] for i, row in enumerate(M)])
    if not report:
        raise ValueError("shape check failed: " + "; ".join(report.reasons))
    u, v, _, _ = _last_column_choice(M, ring)
    order = sorted(range(s + 2), key=lambda j: (-v[j], -j))
    chosen = None
    for f in order:
        if v[f] != v[order[0]]:
            break
        A = [[row[j] for j in range(s + 2) if j != f] for row in M]
        try:
            HilbertBurchMatrix.create(A, ring)
        except InvariantError:
            continue
        chosen = f
        break
    if chosen is None:
        raise ConstructionError("no largest-weight column leaves a Hilbert-Burch block")
    f = chosen
    A = [[row[j] for j in range(s + 2) if j != f] for row in M]
    f_col = [row[f] for row in M]
    vA = [v[j] for j in range(s + 2) if j != f]
    D = sum(vA) - sum(u)
    deg_h = v[f] - D + 1
    u_last = min(vA) - 1
    h = ring.var("t") ** deg_h
    rng = random.Random(seed)
    last_error = None
    for _ in range(tries):
        p_row = [random_form(ring, vj - u_last, rng) for vj in vA]
        f_last = random_form(ring, v[f] - u_last, rng)
        try:
            return BMatrix.create(A, p_row, f_col + [f_last], h, ring)
        except InvariantError as exc:
            if exc.rule != "degenerate p":
                raise ConstructionError(str(exc)) from None
            last_error = exc
    raise ConstructionError(f"no p-row with B_(s+2) != 0 after {tries} tries (seed {seed}): {last_error}")


# -- local complete intersection check -----------------------------------------
@dataclass(frozen=True)
class LciVerdict:
    certified: bool
    trials: int
    f: tuple[Poly, ...] | None = None

    def __str__(self):
        return f"lci-certified on trial {self.trials}" if self.certified else \
            f"no certificate after {self.trials} trials"


def lci_randomized_check(A: HilbertBurchMatrix, trials: int, seed: int = 0, extra_degree: int = 0) -> LciVerdict:
    """Look for ``f`` making ``I_s([A | f])`` irrelevant (one-sided: success proves lci).

    ``f_i`` gets degree ``D - 1 - u_i + extra_degree`` where ``D`` is the
    degree of the minors (the smallest choice with ``deg h >= 0``).
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    s, ring = A.s, A.ring
    if s < 1:
        raise ValueError("need s >= 1")
    u, v = infer_grading(A.A, s, s + 1)
    D = sum(v) - sum(u)
    vf = D - 1 + extra_degree
    rng = random.Random(seed)
    for trial in range(1, trials + 1):
        f = tuple(random_form(ring, vf - u[i], rng) if vf - u[i] > 0 else ring.zero() for i in range(s))
        M = [list(row) + [f[i]] for i, row in enumerate(A.A)]
        if is_irrelevant(_minors_ideal_S(M, s, ring)):
            return LciVerdict(True, trial, f)
    return LciVerdict(False, trials)


__all__ = [
    "RaoPresentation", "RaoFunction", "NotACurveError", "rao_presentation", "rao_function",
    "check_self_duality", "duality_bridge", "minimal_generator_count", "minimal_relation_count",
    "AnnihilatorReport", "annihilator_check", "ShapeReport", "presentation_shape_check",
    "ConstructionError", "construct_curve_from_module", "LciVerdict", "lci_randomized_check",
]
