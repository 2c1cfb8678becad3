"""Buchberger's algorithm with the Gebauer-Moeller criteria and sugar selection.

Works on raw ``{monomial: coeff}`` dicts for speed; the public entry point
:func:`reduced_groebner_basis` takes and returns :class:`Poly`.
"""

from __future__ import annotations

from typing import Sequence

from .poly import Poly
from .ring import Ring


def _monic(f: dict, p: int) -> dict:
    lm = max(f)
    inv = pow(f[lm], -1, p)
    if inv == 1:
        return f
    return {m: c * inv % p for m, c in f.items()}


def normal_form(f: dict, basis: Sequence[tuple[int, list]], ring: Ring, full: bool = True) -> dict:
    """Reduce ``f`` by monic ``basis`` given as ``(lm, tail terms)`` pairs.

    With ``full=False`` only the leading term is reduced (top reduction).
    """
    p, bias, guard = ring.p, ring.bias, ring.guard
    f = dict(f)
    rem: dict[int, int] = {}
    while f:
        m = max(f)
        for lm_g, tail in basis:
            if not ((m - lm_g + bias) & guard):
                c = f.pop(m)
                shift = m - lm_g
                for gm, gc in tail:
                    k = gm + shift
                    v = (f.get(k, 0) - c * gc) % p
                    if v:
                        f[k] = v
                    else:
                        f.pop(k, None)
                break
        else:
            if not full:
                f.update(rem)
                return f
            rem[m] = f.pop(m)
    return rem


def _split(f: dict) -> tuple[int, list]:
    lm = max(f)
    return lm, [(m, c) for m, c in f.items() if m != lm]


def _groebner_dicts(polys: list[dict], ring: Ring) -> list[dict]:
    p, bias, guard = ring.p, ring.bias, ring.guard
    deg = ring.deg
    lcm = ring.lcm

    def divides(a, b):
        return not ((b - a + bias) & guard)

    def coprime(a, b):
        return lcm(a, b) == a + b - bias

    basis: list[dict] = []        # all polynomials ever added (monic)
    lms: list[int] = []
    sugar: list[int] = []
    active: list[int] = []        # indices forming the current basis G
    pairs: dict[tuple[int, int], tuple[int, int]] = {}  # (i, j) -> (sugar, lcm)

    def reducers():
        return [(lms[i], [(m, c) for m, c in basis[i].items() if m != lms[i]]) for i in active]

    def pair_key(i, j):
        L = lcm(lms[i], lms[j])
        dl = deg(L)
        s = max(sugar[i] + dl - deg(lms[i]), sugar[j] + dl - deg(lms[j]))
        return (s, L)

    def add(f: dict, s: int) -> None:
        nonlocal active
        h = len(basis)
        basis.append(f)
        lmh = max(f)
        lms.append(lmh)
        sugar.append(s)
        # Gebauer-Moeller update (Becker-Weispfenning, UPDATE)
        C = [(g, lcm(lms[g], lmh)) for g in active]
        D = []
        while C:
            g, L = C.pop()
            if coprime(lms[g], lmh):
                D.append((g, L))
                continue
            if any(divides(L2, L) for _, L2 in C) or any(divides(L2, L) for _, L2 in D):
                continue
            D.append((g, L))
        E = [(g, L) for g, L in D if not coprime(lms[g], lmh)]
        for (a, b) in list(pairs):
            L = pairs[(a, b)][1]
            if divides(lmh, L) and lcm(lms[a], lmh) != L and lcm(lms[b], lmh) != L:
                del pairs[(a, b)]
        for g, L in E:
            pairs[(g, h)] = pair_key(g, h)
        active = [g for g in active if not divides(lmh, lms[g])] + [h]

    seen = []
    for f in polys:
        if f:
            seen.append(f)
    seen.sort(key=lambda f: max(f))
    for f in seen:
        s = max(deg(m) for m in f)
        red = normal_form(f, reducers(), ring) if active else f
        if red:
            if red.get(ring.one) and len(red) == 1:
                return [{ring.one: 1}]
            add(_monic(red, p), s)

    red_cache = None
    while pairs:
        key = min(pairs, key=pairs.__getitem__)
        s, L = pairs.pop(key)
        i, j = key
        fi, fj = basis[i], basis[j]
        si, sj = L - lms[i], L - lms[j]   # multiplier shifts
        spoly: dict[int, int] = {}
        for m, c in fi.items():
            k = m + si
            spoly[k] = c
        for m, c in fj.items():
            k = m + sj
            v = (spoly.get(k, 0) - c) % p
            if v:
                spoly[k] = v
            else:
                spoly.pop(k, None)
        if not spoly:
            continue
        if red_cache is None:
            red_cache = reducers()
        r = normal_form(spoly, red_cache, ring)
        if r:
            if ring.one in r and len(r) == 1:
                return [{ring.one: 1}]
            if max(r) == ring.one:
                return [{ring.one: 1}]
            add(_monic(r, p), s)
            red_cache = None
    return [basis[i] for i in active]


def _reduce_basis(G: list[dict], ring: Ring) -> list[dict]:
    p, bias, guard = ring.p, ring.bias, ring.guard
    G = sorted(G, key=max)
    minimal: list[dict] = []
    for g in G:
        lm = max(g)
        if not any(not ((lm - max(h) + bias) & guard) for h in minimal):
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = [_split(h) for j, h in enumerate(minimal) if j != i]
        lm = max(g)
        tail = {m: c for m, c in g.items() if m != lm}
        tail = normal_form(tail, others, ring)
        tail[lm] = g[lm]
        out.append(_monic(tail, p))
    out.sort(key=max, reverse=True)
    return out


def reduced_groebner_basis(polys: Sequence[Poly], ring: Ring | None = None) -> list[Poly]:
    """Reduced, monic Groebner basis sorted by decreasing leading monomial."""
    polys = list(polys)
    if ring is None:
        if not polys:
            raise ValueError("ring required for an empty generator list")
        ring = polys[0].ring
    for f in polys:
        if f.ring != ring:
            raise ValueError(f"generator {f} is not in {ring}")
    G = _groebner_dicts([dict(f.terms) for f in polys if f], ring)
    if not G:
        return []
    return [Poly(ring, g) for g in _reduce_basis(G, ring)]
