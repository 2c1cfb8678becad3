"""Ideals with a lazily cached reduced Groebner basis, and the operations built on it."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .groebner import normal_form, reduced_groebner_basis
from .poly import Poly
from .ring import Ring, RingError


class Ideal:
    """A polynomial ideal given by generators.

    Two ideals compare equal iff their reduced Groebner bases coincide.  The
    basis is computed on first use; concurrent first uses may both compute
    it, and both publish the same value.
    """

    def __init__(self, ring: Ring, gens: Iterable[Poly] = ()):
        gens = tuple(gens)
        for g in gens:
            if g.ring != ring:
                raise RingError(f"generator {g} does not live in {ring}")
        self.ring = ring
        self.gens = tuple(g for g in gens if g)
        self._gb: tuple[Poly, ...] | None = None

    @classmethod
    def from_strings(cls, ring: Ring, texts: Iterable[str]) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts])

    # -- Groebner basis -------------------------------------------------
    @property
    def gb(self) -> tuple[Poly, ...]:
        gb = self._gb
        if gb is None:
            gb = tuple(reduced_groebner_basis(self.gens, self.ring))
            self._gb = gb
        return gb

    def groebner(self) -> "Ideal":
        out = Ideal(self.ring, self.gb)
        out._gb = self.gb
        return out

    def leading_monomials(self) -> list[int]:
        return [g.lm for g in self.gb]

    def reduce(self, f: Poly) -> Poly:
        """Normal form of ``f`` modulo the reduced Groebner basis."""
        if f.ring != self.ring:
            raise RingError("ring mismatch")
        basis = [(g.lm, [(m, c) for m, c in g.terms.items() if m != g.lm]) for g in self.gb]
        return Poly(self.ring, normal_form(dict(f.terms), basis, self.ring))

    def __contains__(self, f: Poly) -> bool:
        return not self.reduce(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(g in self for g in other.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.gb == other.gb

    def __hash__(self):
        return hash((self.ring, self.gb))

    def is_unit(self) -> bool:
        gb = self.gb
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.gens

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def __add__(self, other: "Ideal") -> "Ideal":
        if self.ring != other.ring:
            raise RingError("ring mismatch")
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: "Ideal | Poly") -> "Ideal":
        if isinstance(other, Poly):
            return Ideal(self.ring, [g * other for g in self.gens])
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    def to_ring(self, ring: Ring) -> "Ideal":
        """Extend (or restrict, if the generators allow it) to ``ring``."""
        return Ideal(ring, [g.to_ring(ring) for g in self.gens])

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"


def groebner(ideal: Ideal) -> Ideal:
    """The ideal re-generated by its reduced Groebner basis (degrevlex)."""
    return ideal.groebner()


def membership(f: Poly, ideal: Ideal) -> bool:
    return f in ideal


# -- elimination-based operations ---------------------------------------
def _elimination_ring(ring: Ring, name: str = "_w") -> Ring:
    n = ring.nvars
    return Ring((name,) + ring.names, ring.p, weights=[(1,) + (0,) * n, (0,) + (1,) * n])


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """``a ∩ b`` by eliminating ``w`` from ``w*a + (1 - w)*b``."""
    if a.ring != b.ring:
        raise RingError("ring mismatch")
    ring = a.ring
    if a.is_zero() or b.is_zero():
        return Ideal(ring)
    big = _elimination_ring(ring)
    w = big.var("_w")
    gens = [w * g.to_ring(big) for g in a.gens] + [(1 - w) * g.to_ring(big) for g in b.gens]
    gb = reduced_groebner_basis(gens, big)
    wi = 0
    kept = [g for g in gb if all(big.decode(m)[wi] == 0 for m in g.terms)]
    return Ideal(ring, [g.to_ring(ring) for g in kept])


def ideal_quotient(ideal: Ideal, f: Poly) -> Ideal:
    """``ideal : f`` as ``(ideal ∩ (f)) / f``."""
    if not f:
        raise ZeroDivisionError("ideal quotient by the zero polynomial")
    if f.ring != ideal.ring:
        raise RingError("ring mismatch")
    inter = intersect(ideal, Ideal(ideal.ring, [f]))
    quots = []
    for g in inter.gens:
        q = g.divexact(f)
        if q is None:
            raise ArithmeticError(f"{g} in the intersection is not divisible by {f}")
        quots.append(q)
    return Ideal(ideal.ring, quots)


def quotient_by_variable(ideal: Ideal, name: str) -> Ideal:
    """``ideal : v`` for a homogeneous ideal and a ring variable ``v``.

    Uses a degrevlex order in which ``v`` is the smallest variable: then
    ``v`` divides a homogeneous ``g`` iff it divides its leading term, and
    dividing the basis elements by ``v`` where possible gives ``ideal : v``.
    """
    ring = ideal.ring
    if not ideal.is_homogeneous():
        return ideal_quotient(ideal, ring.var(name))
    names = tuple(n for n in ring.names if n != name) + (name,)
    if name not in ring.names:
        raise RingError(f"{name} is not a variable of {ring}")
    moved = Ring(names, ring.p)
    gb = reduced_groebner_basis([g.to_ring(moved) for g in ideal.gens], moved)
    v = moved.var(name)
    out = []
    for g in gb:
        q = g.divexact(v)
        out.append((q if q is not None else g).to_ring(ring))
    return Ideal(ring, out)


def saturation_check(ideal: Ideal) -> bool:
    """Is ``ideal`` saturated with respect to the irrelevant ideal, i.e. ``I : m == I``?

    Shortcut: if some variable is a non-zero-divisor modulo ``I`` then
    ``I : m ⊆ I : v = I``.  Otherwise ``I : m`` is assembled as the
    intersection of the ``I : v``.
    """
    ring = ideal.ring
    if ideal.is_unit():
        return True
    quotients = []
    for name in reversed(ring.names):
        q = quotient_by_variable(ideal, name)
        if q == ideal:
            return True
        quotients.append(q)
    total = quotients[0]
    for q in quotients[1:]:
        total = intersect(total, q)
    return total == ideal


# -- combinatorics of the initial ideal ---------------------------------
def dimension(ideal: Ideal) -> int:
    """Krull dimension of ``ring / ideal`` (``-1`` for the unit ideal)."""
    ring = ideal.ring
    if ideal.is_unit():
        return -1
    supports = [frozenset(i for i, e in enumerate(ring.decode(m)) if e) for m in ideal.leading_monomials()]
    n = ring.nvars
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            chosen = frozenset(subset)
            if all(not s <= chosen for s in supports):
                return size
    return 0  # unreachable: the empty set works unless the ideal is the unit


def codimension(ideal: Ideal) -> int:
    return ideal.ring.nvars - dimension(ideal)


def is_irrelevant(ideal: Ideal) -> bool:
    """Does the ideal have radical equal to the maximal homogeneous ideal (or is it the unit ideal)?"""
    return dimension(ideal) <= 0


def hilbert_function(ideal: Ideal, n: int, method: str = "initial") -> int:
    """``dim_K (ring/ideal)_n``.

    ``method="initial"`` counts standard monomials of the initial ideal;
    ``method="linear"`` ranks the degree-``n`` span of monomial multiples of
    the (homogeneous) generators, never touching a Groebner basis.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    ring = ideal.ring
    if method == "initial":
        lms = ideal.leading_monomials()
        bias, guard = ring.bias, ring.guard
        count = 0
        for m in ring.monomials(n):
            if all((m - a + bias) & guard for a in lms):
                count += 1
        return count
    if method == "linear":
        return _hilbert_function_linear(ideal, n)
    raise ValueError(f"unknown method {method!r}")


def _hilbert_function_linear(ideal: Ideal, n: int) -> int:
    """Rank of the degree-``n`` span of ``u * g`` over all generators ``g``.

    Monomial generators contribute unit vectors, so the columns they cover
    are counted directly and dropped from the remaining elimination.
    """
    import numpy as np

    from .linalg import rank_mod

    ring = ideal.ring
    bias, guard = ring.bias, ring.guard
    monos = ring.monomials(n)
    for g in ideal.gens:
        if not g.is_homogeneous():
            raise ValueError("the linear-algebra Hilbert function needs homogeneous generators")
    mono_gens = [g.lm for g in ideal.gens if len(g) == 1 and g.degree() <= n]
    free = [m for m in monos if all((m - a + bias) & guard for a in mono_gens)]
    if not free:
        return 0
    col = {m: i for i, m in enumerate(free)}
    rows = []
    for g in ideal.gens:
        dg = g.degree()
        if len(g) == 1 or dg > n:
            continue
        terms = list(g.terms.items())
        for u in ring.monomials(n - dg):
            shift = u - bias
            entries = [(col[m + shift], c) for m, c in terms if m + shift in col]
            if entries:
                row = np.zeros(len(free), dtype=np.int64)
                for k, c in entries:
                    row[k] = c
                rows.append(row)
    if not rows:
        return len(free)
    return len(free) - rank_mod(np.array(rows), ring.p)


def ideal_of(ring: Ring, gens: Sequence[Poly | str]) -> Ideal:
    return Ideal(ring, [ring.parse(g) if isinstance(g, str) else g for g in gens])
