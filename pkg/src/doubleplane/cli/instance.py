"""Instance files: line-oriented ``key = value`` text.

    # E1
    p = 32003
    s = 1
    A = y, z          # rows separated by ';', entries by ','
    p_row = t, -y
    f_col = t, y
    h = 1

Module files use the single key ``M`` (plus optional ``p`` and ``seed``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..normalform import BMatrix
from ..polycore import DEFAULT_PRIME, ParseError, Poly, Ring, ring_S


class InstanceError(ValueError):
    """Bad instance text; ``line`` and ``column`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


_MATRIX_KEYS = {"A", "M"}
_LIST_KEYS = {"p_row", "f_col"}
_KNOWN = {"p", "s", "A", "p_row", "f_col", "h", "seed", "M"}


@dataclass
class InstanceFile:
    s: int
    A: list[list[str]]
    p_row: list[str]
    f_col: list[str]
    h: str
    p: int = DEFAULT_PRIME
    seed: int | None = None

    def ring(self) -> Ring:
        return ring_S(self.p)

    def to_bmatrix(self) -> BMatrix:
        S = self.ring()
        A = [[S.parse(e) for e in row] for row in self.A]
        return BMatrix.create(A, [S.parse(e) for e in self.p_row], [S.parse(e) for e in self.f_col],
                              S.parse(self.h), S)

    @classmethod
    def from_bmatrix(cls, b: BMatrix, seed: int | None = None) -> "InstanceFile":
        return cls(b.s, [[str(e) for e in row] for row in b.A], [str(e) for e in b.p_row],
                   [str(e) for e in b.f_col], str(b.h), b.ring.p, seed)

    def as_dict(self) -> dict:
        out = {"p": self.p, "s": self.s, "A": self.A, "p_row": self.p_row, "f_col": self.f_col, "h": self.h}
        if self.seed is not None:
            out["seed"] = self.seed
        return out


@dataclass
class ModuleFile:
    M: list[list[str]]
    p: int = DEFAULT_PRIME
    seed: int = 0
    extra: dict = field(default_factory=dict)


def _split_matrix(value: str) -> list[list[str]]:
    value = value.strip()
    if not value:
        return []
    return [[e.strip() for e in row.split(",")] for row in value.split(";")]


def _read_pairs(text: str) -> dict[str, tuple[str, int, int]]:
    """``{key: (value, line, column of value)}``."""
    pairs: dict[str, tuple[str, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InstanceError("expected 'key = value'", lineno, 1)
        key = key.strip()
        if key not in _KNOWN:
            raise InstanceError(f"unknown key {key!r}", lineno, raw.index(key) + 1)
        if key in pairs:
            raise InstanceError(f"duplicate key {key!r}", lineno, 1)
        pairs[key] = (value, lineno, line.index("=") + 2)
    return pairs


def _check_polys(value: str, entries: list[str], ring: Ring, line: int, col: int) -> None:
    """Parse every entry, mapping errors back to a line/column."""
    offset = 0
    for e in entries:
        start = value.index(e, offset) if e else offset
        try:
            ring.parse(e)
        except ParseError as exc:
            raise InstanceError(f"{exc.message} in {e!r}", line, col + start + exc.pos) from None
        offset = start + len(e)


def _int(pairs, key, default=None):
    if key not in pairs:
        if default is None:
            raise InstanceError(f"missing key {key!r}")
        return default
    value, line, col = pairs[key]
    try:
        return int(value.strip())
    except ValueError:
        raise InstanceError(f"{key} must be an integer", line, col) from None


def parse_instance(text: str) -> InstanceFile:
    pairs = _read_pairs(text)
    if "M" in pairs:
        raise InstanceError("this is a module file (key M); use from-module", pairs["M"][1], 1)
    p = _int(pairs, "p", DEFAULT_PRIME)
    try:
        ring = ring_S(p)
    except ValueError as exc:
        raise InstanceError(str(exc), pairs["p"][1], pairs["p"][2]) from None
    s = _int(pairs, "s")
    if s < 0:
        raise InstanceError("s must be non-negative", pairs["s"][1], pairs["s"][2])
    for key in ("p_row", "f_col", "h"):
        if key not in pairs:
            raise InstanceError(f"missing key {key!r}")
    if s and "A" not in pairs:
        raise InstanceError("missing key 'A'")
    A = _split_matrix(pairs["A"][0]) if "A" in pairs else []
    if len(A) != s or any(len(row) != s + 1 for row in A):
        line = pairs["A"][1] if "A" in pairs else None
        raise InstanceError(f"A must be {s} rows of {s + 1} entries", line, 1 if line else None)
    for key in ("A", "p_row", "f_col", "h"):
        if key not in pairs:
            continue
        value, line, col = pairs[key]
        entries = [e for row in _split_matrix(value) for e in row] if key != "h" else [value.strip()]
        _check_polys(value, entries, ring, line, col)
    p_row = [e.strip() for e in pairs["p_row"][0].split(",")]
    f_col = [e.strip() for e in pairs["f_col"][0].split(",")]
    for key, vals in (("p_row", p_row), ("f_col", f_col)):
        if len(vals) != s + 1:
            raise InstanceError(f"{key} needs {s + 1} entries", pairs[key][1], pairs[key][2])
    seed = _int(pairs, "seed", -1)
    return InstanceFile(s, A, p_row, f_col, pairs["h"][0].strip(), p, None if seed == -1 else seed)


def parse_module(text: str) -> ModuleFile:
    pairs = _read_pairs(text)
    if "M" not in pairs:
        raise InstanceError("missing key 'M'")
    extra = set(pairs) - {"M", "p", "seed"}
    if extra:
        key = sorted(extra)[0]
        raise InstanceError(f"unexpected key {key!r} in a module file", pairs[key][1], 1)
    p = _int(pairs, "p", DEFAULT_PRIME)
    ring = ring_S(p)
    value, line, col = pairs["M"]
    M = _split_matrix(value)
    if not M or any(len(row) != len(M) + 2 for row in M):
        raise InstanceError("M must be s rows of s+2 entries", line, col)
    _check_polys(value, [e for row in M for e in row], ring, line, col)
    return ModuleFile(M, p, _int(pairs, "seed", 0))


def emit_instance(inst: InstanceFile, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"p = {inst.p}")
    lines.append(f"s = {inst.s}")
    if inst.s:
        lines.append("A = " + "; ".join(", ".join(row) for row in inst.A))
    lines.append("p_row = " + ", ".join(inst.p_row))
    lines.append("f_col = " + ", ".join(inst.f_col))
    lines.append(f"h = {inst.h}")
    if inst.seed is not None:
        lines.append(f"seed = {inst.seed}")
    return "\n".join(lines) + "\n"


def module_matrix(mf: ModuleFile) -> list[list[Poly]]:
    S = ring_S(mf.p)
    return [[S.parse(e) for e in row] for row in mf.M]
