"""Sparse polynomials over ``F_p`` with packed monomials."""

from __future__ import annotations

from typing import Iterator, Mapping

from .ring import Ring, RingError, convert_monomial


class Poly:
    """An immutable sparse polynomial.

    ``terms`` maps packed monomials (see :mod:`.ring`) to coefficients in
    ``[1, p)``; zero coefficients never appear.  Do not mutate it.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[int, int]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic queries --------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    @property
    def lm(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms)

    @property
    def lc(self) -> int:
        return self.terms[self.lm]

    def sorted_terms(self) -> list[tuple[int, int]]:
        return sorted(self.terms.items(), reverse=True)

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], int]]:
        dec = self.ring.decode
        for m, c in self.sorted_terms():
            yield dec(m), c

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        if not self.terms:
            return -1
        deg = self.ring.deg
        return max(deg(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        deg = self.ring.deg
        return len({deg(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(m == self.ring.one for m in self.terms)

    def constant_coeff(self) -> int:
        return self.terms.get(self.ring.one, 0)

    def variables(self) -> set[str]:
        used = set()
        for exps, _ in self:
            used.update(n for n, e in zip(self.ring.names, exps) if e)
        return used

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "Poly") -> None:
        if self.ring != other.ring:
            raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Poly(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Poly":
        p = self.ring.p
        c %= p
        if not c:
            return Poly(self.ring, {})
        return Poly(self.ring, {m: v * c % p for m, v in self.terms.items()})

    def mul_term(self, mono: int, c: int) -> "Poly":
        p, shift = self.ring.p, mono - self.ring.bias
        c %= p
        if not c:
            return Poly(self.ring, {})
        return Poly(self.ring, {m + shift: v * c % p for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            self, other = other, self
        p, bias = self.ring.p, self.ring.bias
        out: dict[int, int] = {}
        get = out.get
        for m2, c2 in other.terms.items():
            shift = m2 - bias
            for m1, c1 in self.terms.items():
                k = m1 + shift
                out[k] = (get(k, 0) + c1 * c2) % p
        return Poly(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self.scale(pow(self.lc, -1, self.ring.p))

    def divexact(self, other: "Poly") -> "Poly | None":
        """Return ``q`` with ``self == q * other``, or ``None`` if no such ``q``."""
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        ring = self.ring
        p, bias, guard = ring.p, ring.bias, ring.guard
        lm_g = other.lm
        inv = pow(other.terms[lm_g], -1, p)
        tail = [(m, c) for m, c in other.terms.items() if m != lm_g]
        rem = dict(self.terms)
        quo: dict[int, int] = {}
        while rem:
            m = max(rem)
            if (m - lm_g + bias) & guard:
                return None
            c = rem.pop(m) * inv % p
            shift = m - lm_g
            quo[shift + bias] = c
            for gm, gc in tail:
                k = gm + shift
                v = (rem.get(k, 0) - c * gc) % p
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return Poly(ring, quo)

    # -- ring changes ---------------------------------------------------
    def to_ring(self, ring: Ring) -> "Poly":
        """Reinterpret in ``ring`` by variable name (same prime)."""
        if ring == self.ring:
            return self
        if ring.p != self.ring.p:
            raise RingError("cannot change the characteristic")
        return Poly(ring, {convert_monomial(m, self.ring, ring): c for m, c in self.terms.items()})

    def substitute_zero(self, name: str) -> "Poly":
        """Set one variable to zero (stays in the same ring)."""
        i = self.ring.index(name)
        dec = self.ring.decode
        return Poly(self.ring, {m: c for m, c in self.terms.items() if dec(m)[i] == 0})

    def evaluate(self, point: Mapping[str, int]) -> int:
        p = self.ring.p
        vals = [point[n] % p for n in self.ring.names]
        total = 0
        for exps, c in self:
            term = c
            for v, e in zip(vals, exps):
                if e:
                    term = term * pow(v, e, p) % p
            total += term
        return total % p

    # -- comparison / display ------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        p = self.ring.p
        half = p // 2
        out = []
        for m, c in self.sorted_terms():
            neg = c > half
            a = p - c if neg else c
            mono = self.ring.monomial_str(m)
            if mono == "1":
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(out)

    def __repr__(self):
        return f"Poly({self})"
