"""Random normal-form instances from degree profiles."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .normalform import BMatrix, InvariantError
from .polycore import Poly, Ring, ring_S


def random_form(ring: Ring, degree: int, rng: random.Random, nonzero: bool = True) -> Poly:
    """Dense random form: every monomial of ``degree`` with a uniform coefficient in ``F_p``."""
    if degree < 0:
        return ring.zero()
    while True:
        terms = {m: rng.randrange(ring.p) for m in ring.monomials(degree)}
        f = Poly(ring, {m: c for m, c in terms.items() if c})
        if f or not nonzero:
            return f


class ProfileError(ValueError):
    pass


@dataclass(frozen=True)
class DegreeProfile:
    """Weights of ``B``: ``deg a_ij = cols[j] - rows[i]``.

    ``p_degree`` is the smallest degree in the p-row; the last column is
    fixed either by ``deg_h`` or by ``deg_f1`` (the degree of ``f_1``).
    """

    cols: tuple[int, ...]
    rows: tuple[int, ...]
    p_degree: int = 1
    deg_h: int | None = 0
    deg_f1: int | None = None

    @property
    def s(self) -> int:
        return len(self.rows)

    @classmethod
    def uniform(cls, s: int, a: int = 1, p: int = 1, h: int = 0) -> "DegreeProfile":
        return cls((a,) * (s + 1), (0,) * s, p, h)

    @classmethod
    def parse(cls, text: str, s: int) -> "DegreeProfile":
        """``a=1,h=0`` or ``cols=1:1:2,rows=0:0,p=1,f=3``."""
        if s < 1:
            raise ProfileError("s must be at least 1")
        fields: dict[str, str] = {}
        for item in filter(None, (x.strip() for x in text.split(","))):
            key, sep, val = item.partition("=")
            if not sep:
                raise ProfileError(f"expected key=value, got {item!r}")
            fields[key.strip()] = val.strip()
        unknown = set(fields) - {"a", "cols", "rows", "p", "h", "f"}
        if unknown:
            raise ProfileError(f"unknown profile keys {sorted(unknown)}")
        try:
            a = int(fields.get("a", 1))
            cols = tuple(int(v) for v in fields["cols"].split(":")) if "cols" in fields else (a,) * (s + 1)
            rows = tuple(int(v) for v in fields["rows"].split(":")) if "rows" in fields else (0,) * s
            p = int(fields.get("p", 1))
            f = int(fields["f"]) if "f" in fields else None
            h = None if f is not None else int(fields.get("h", 0))
        except ValueError as exc:
            raise ProfileError(f"bad profile {text!r}: {exc}") from None
        if "h" in fields and f is not None:
            raise ProfileError("give either h or f, not both")
        if len(cols) != s + 1 or len(rows) != s:
            raise ProfileError(f"need {s + 1} column and {s} row weights")
        return cls(cols, rows, p, h, f)

    def weights(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Full ``(row_weights, col_weights)`` of ``B``."""
        U = list(self.rows) + [min(self.cols) - self.p_degree]
        D = sum(self.cols) - sum(self.rows)
        if self.deg_f1 is not None:
            vf = self.rows[0] + self.deg_f1
            if vf - D + 1 < 0:
                raise ProfileError(
                    f"condition (iii) fails: deg f_1 = {self.deg_f1} < "
                    f"deg a_11 + sum deg a_j,j+1 - 1 = {D - self.rows[0] - 1}")
        else:
            if self.deg_h is None or self.deg_h < 0:
                raise ProfileError("condition (iii) fails: deg h must be non-negative")
            vf = D + self.deg_h - 1
        return tuple(U), tuple(self.cols) + (vf,)

    def describe(self) -> str:
        last = f"f={self.deg_f1}" if self.deg_f1 is not None else f"h={self.deg_h}"
        return (f"cols={':'.join(map(str, self.cols))},rows={':'.join(map(str, self.rows))},"
                f"p={self.p_degree},{last}")


def random_bmatrix(profile: DegreeProfile, rng: random.Random, ring: Ring | None = None,
                   tries: int = 100) -> BMatrix:
    """A random :class:`BMatrix` with the given weights.

    Entries of non-positive degree are set to zero.  Draws that miss the
    codimension-2 condition on ``A`` or give ``p = 0`` are retried.
    """
    ring = ring or ring_S()
    U, V = profile.weights()
    s = profile.s
    deg_h = V[-1] - (sum(V[:-1]) - sum(U[:-1])) + 1
    if profile.p_degree < 1:
        raise ProfileError("p-row entries need positive degree")

    def entry(i, j):
        deg = V[j] - U[i]
        return random_form(ring, deg, rng) if deg > 0 else ring.zero()

    last_error = None
    for _ in range(tries):
        A = [[entry(i, j) for j in range(s + 1)] for i in range(s)]
        p_row = [entry(s, j) for j in range(s + 1)]
        f_col = [entry(i, s + 1) for i in range(s + 1)]
        h = random_form(ring, deg_h, rng)
        try:
            return BMatrix.create(A, p_row, f_col, h, ring)
        except InvariantError as exc:
            if exc.rule not in ("Hilbert-Burch codimension", "degenerate p", "homogeneity"):
                raise ProfileError(str(exc)) from None
            last_error = exc
    raise ProfileError(f"no valid instance after {tries} draws (last: {last_error})")


def random_profile(rng: random.Random, s: int, max_entry_degree: int = 2, max_deg_h: int = 1) -> DegreeProfile:
    """Mixed column weights in ``1..max_entry_degree`` with zero row weights."""
    cols = tuple(rng.randint(1, max_entry_degree) for _ in range(s + 1))
    p_max = max_entry_degree - (max(cols) - min(cols))
    return DegreeProfile(cols, (0,) * s, rng.randint(1, max(1, p_max)), rng.randint(0, max_deg_h))
