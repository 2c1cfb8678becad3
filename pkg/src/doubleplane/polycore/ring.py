"""Polynomial rings over a prime field with packed-integer monomials.

A monomial is stored as a single Python int laid out so that

* integer comparison is the monomial order,
* multiplication is ``a + b - ring.bias``,
* ``a`` divides ``b`` iff ``(b - a + ring.bias) & ring.guard == 0``.

The low part holds one 16-bit field per variable containing
``0x7FFF - exponent`` (the last variable occupies the most significant
field, which gives the reverse-lexicographic tie break).  Above it sit
one 32-bit field per weight vector, most significant first.  Degrevlex is
the single weight vector ``(1, ..., 1)``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

DEFAULT_PRIME = 32003

_BITS = 16
_FIELD = (1 << _BITS) - 1
_MAXEXP = (1 << (_BITS - 1)) - 1
_WBITS = 32


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class RingError(ValueError):
    """Operands live in different rings or the ring data is invalid."""


class Ring:
    """``F_p[names]`` with a weighted reverse-lex monomial order.

    ``weights`` is a list of non-negative integer vectors compared in turn
    before the reverse-lexicographic tie break; the default is a single
    all-ones vector, i.e. degrevlex with ``names[0]`` the largest variable.
    """

    def __init__(self, names: Sequence[str], p: int = DEFAULT_PRIME,
                 weights: Sequence[Sequence[int]] | None = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise RingError(f"duplicate variable names {names}")
        if not is_prime(p):
            raise RingError(f"{p} is not prime")
        if p >= 1 << 25:
            raise RingError("prime must be below 2**25")
        n = len(names)
        if weights is None:
            weights = [(1,) * n]
        weights = tuple(tuple(int(c) for c in w) for w in weights)
        for w in weights:
            if len(w) != n or min(w, default=0) < 0:
                raise RingError(f"bad weight vector {w}")
        self.names = names
        self.nvars = n
        self.p = p
        self.weights = weights
        self._index = {v: i for i, v in enumerate(names)}

        low = n * _BITS
        self.lowmask = (1 << low) - 1
        self.bias = sum(_MAXEXP << (_BITS * i) for i in range(n))
        self.guard = sum((_MAXEXP + 1) << (_BITS * i) for i in range(n))
        k = len(weights)
        self._woffsets = tuple(low + (k - 1 - j) * _WBITS for j in range(k))
        self.one = self.bias  # the monomial 1
        # total degree can be read off the top weight field for degrevlex
        self._deg_shift = self._woffsets[0] if weights and weights[0] == (1,) * n else None
        self._cache_monomials: dict[int, tuple[int, ...]] = {}

    # -- identity -------------------------------------------------------
    def _key(self):
        return (self.names, self.p, self.weights)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        order = "degrevlex" if self._deg_shift is not None and len(self.weights) == 1 else f"weights={self.weights}"
        return f"Ring(F_{self.p}[{','.join(self.names)}], {order})"

    def with_prime(self, p: int) -> "Ring":
        return Ring(self.names, p, self.weights)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RingError(f"variable {name!r} is not in {self.names}") from None

    # -- monomials ------------------------------------------------------
    def encode(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise RingError(f"expected {self.nvars} exponents, got {len(exps)}")
        m = self.bias
        for i, e in enumerate(exps):
            if e < 0 or e > _MAXEXP:
                raise RingError(f"exponent {e} out of range")
            m -= e << (_BITS * i)
        for w, off in zip(self.weights, self._woffsets):
            m += sum(wi * e for wi, e in zip(w, exps)) << off
        return m

    def decode(self, m: int) -> tuple[int, ...]:
        low = m & self.lowmask
        return tuple(_MAXEXP - ((low >> (_BITS * i)) & _FIELD) for i in range(self.nvars))

    def deg(self, m: int) -> int:
        if self._deg_shift is not None:
            return m >> self._deg_shift
        return sum(self.decode(m))

    def divides(self, a: int, b: int) -> bool:
        return not ((b - a + self.bias) & self.guard)

    def lcm(self, a: int, b: int) -> int:
        return self.encode([max(u, v) for u, v in zip(self.decode(a), self.decode(b))])

    def variable(self, name: str) -> int:
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return self.encode(exps)

    def monomials(self, degree: int) -> tuple[int, ...]:
        """All monomials of the given total degree, largest first."""
        if degree < 0:
            return ()
        cached = self._cache_monomials.get(degree)
        if cached is None:
            out = []
            for combo in combinations_with_replacement(range(self.nvars), degree):
                exps = [0] * self.nvars
                for i in combo:
                    exps[i] += 1
                out.append(self.encode(exps))
            cached = tuple(sorted(out, reverse=True))
            self._cache_monomials[degree] = cached
        return cached

    def monomial_str(self, m: int) -> str:
        parts = []
        for name, e in zip(self.names, self.decode(m)):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    # -- polynomial constructors ---------------------------------------
    def zero(self):
        from .poly import Poly
        return Poly(self, {})

    def const(self, c: int):
        from .poly import Poly
        c %= self.p
        return Poly(self, {self.one: c} if c else {})

    def var(self, name: str):
        from .poly import Poly
        return Poly(self, {self.variable(name): 1})

    def gens(self):
        return tuple(self.var(v) for v in self.names)

    def from_dict(self, terms: dict[Sequence[int], int]):
        """Build a polynomial from ``{exponent tuple: coefficient}``."""
        from .poly import Poly
        out: dict[int, int] = {}
        for exps, c in terms.items():
            m = self.encode(exps)
            out[m] = (out.get(m, 0) + c) % self.p
        return Poly(self, {m: c for m, c in out.items() if c})

    def parse(self, text: str):
        from .parse import parse_poly
        return parse_poly(text, self)


@lru_cache(maxsize=None)
def ring_S(p: int = DEFAULT_PRIME) -> Ring:
    """The plane coordinate ring ``k[y, z, t]``."""
    return Ring(("y", "z", "t"), p)


@lru_cache(maxsize=None)
def ring_R(p: int = DEFAULT_PRIME) -> Ring:
    """The space coordinate ring ``k[x, y, z, t]``."""
    return Ring(("x", "y", "z", "t"), p)


def convert_monomial(m: int, src: Ring, dst: Ring) -> int:
    exps = dict(zip(src.names, src.decode(m)))
    out = []
    for name in dst.names:
        out.append(exps.pop(name, 0))
    if any(exps.values()):
        missing = [k for k, v in exps.items() if v]
        raise RingError(f"variables {missing} do not exist in {dst}")
    return dst.encode(out)

