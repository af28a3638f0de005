"""Colors P^1/H, spoke lengths and invariant valuations of SL2(C)/H.

A color [x:y] is the zero set of the linear form x*w + y*z; H acts on the
right on row vectors (x y).  The spoke of an orbit j carries valuations
nu(j, r) for -1 < r <= b(j), all spokes meeting at the center r = -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclo import ONE, ZERO, CycNum, Scalar, root_of_unity
from .sl2core import IDENTITY, MINUS_IDENTITY, FiniteSubgroup, Label, Mat2, build_subgroup


class ProjPoint:
    """A point of P^1 normalized so its first nonzero coordinate is 1."""

    __slots__ = ("x", "y", "_hash")

    def __init__(self, x: Scalar, y: Scalar):
        x, y = CycNum.coerce(x), CycNum.coerce(y)
        if x.is_zero():
            if y.is_zero():
                raise ValueError("[0:0] is not a projective point")
            x, y = ZERO, ONE
        elif x != ONE:
            x, y = ONE, y / x
        self.x, self.y = x, y
        self._hash = None

    def act(self, h: Mat2) -> "ProjPoint":
        """(x y) . h"""
        return ProjPoint(self.x * h.a + self.y * h.c, self.x * h.b + self.y * h.d)

    def key(self) -> tuple:
        return (self.x.canonical_key(), self.y.canonical_key())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.x, self.y))
        return self._hash

    def __repr__(self) -> str:
        return f"[{self.x}:{self.y}]"

    def to_json(self) -> list:
        return [self.x.to_json(), self.y.to_json()]

    @classmethod
    def from_json(cls, data) -> "ProjPoint":
        if not isinstance(data, list) or len(data) != 2:
            raise ValueError("projective point must be a pair [x, y]")
        return cls(CycNum.from_json(data[0]), CycNum.from_json(data[1]))


class ColorOrbit:
    """An H-orbit in P^1, i.e. a color of SL2/H and the spoke attached to it."""

    __slots__ = ("label", "representative", "orbit", "_hash")

    def __init__(self, label: Label, orbit: frozenset):
        self.label = label
        self.orbit = orbit
        self.representative = min(orbit, key=ProjPoint.key)
        self._hash = None

    @property
    def size(self) -> int:
        return len(self.orbit)

    @property
    def b(self) -> Fraction:
        return Fraction(2, self.size) - 1

    def __contains__(self, p: ProjPoint) -> bool:
        return p in self.orbit

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColorOrbit):
            return NotImplemented
        return self.label == other.label and self.representative == other.representative

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.label, self.representative))
        return self._hash

    def key(self) -> tuple:
        return self.representative.key()

    def __repr__(self) -> str:
        return f"ColorOrbit({self.label}, {self.representative!r}, size={self.size})"


_orbit_cache: dict[tuple[Label, ProjPoint], ColorOrbit] = {}


def _projective_image(H: FiniteSubgroup) -> list[Mat2]:
    """One element of H per class modulo -I."""
    if not H.contains_center():
        return list(H)
    seen, out = set(), []
    for h in H:
        if h not in seen:
            seen.add(h)
            seen.add(-h)
            out.append(h)
    return out


def color_orbit(H: FiniteSubgroup, p: ProjPoint) -> ColorOrbit:
    hit = _orbit_cache.get((H.label, p))
    if hit is not None:
        return hit
    pts = frozenset(p.act(h) for h in _projective_image(H))
    j = ColorOrbit(H.label, pts)
    for q in pts:
        _orbit_cache[(H.label, q)] = j
    return j


def spoke_b(H: FiniteSubgroup | None, j: ColorOrbit) -> Fraction:
    """b(j) = 2/s(j) - 1 for the orbit size s(j)."""
    return j.b


def generic_orbit_size(H: FiniteSubgroup) -> int:
    return len(_projective_image(H))


def _element_order(h: Mat2, bound: int = 240) -> int:
    g = h
    for k in range(1, bound + 1):
        if g == IDENTITY:
            return k
        g = g @ h
    raise ValueError("element of unbounded order")


def eigen_directions(h: Mat2) -> list[ProjPoint]:
    """Row vectors p with p.h proportional to p, for h of finite order."""
    if h.is_diagonal() and h.a == h.d:
        return []
    m = _element_order(h)
    tr = h.trace()
    out = []
    for k in range(m):
        lam = root_of_unity(m, k)
        if lam * lam - tr * lam + 1 != ZERO:
            continue
        # p (h - lam) = 0
        x, y = h.c, lam - h.a
        if x.is_zero() and y.is_zero():
            x, y = lam - h.d, h.b
        p = ProjPoint(x, y)
        if p not in out:
            out.append(p)
    return out


@dataclass(frozen=True)
class Diagram:
    label: Label
    special: tuple[tuple[ColorOrbit, Fraction], ...]
    generic_size: int
    generic_b: Fraction

    def spokes(self) -> list[ColorOrbit]:
        return [j for j, _ in self.special]

    def to_json(self) -> dict:
        return {
            "group": str(self.label),
            "generic": {"size": self.generic_size, "b": _fmt(self.generic_b)},
            "special": [{"rep": j.representative.to_json(), "size": j.size, "b": _fmt(b)}
                        for j, b in self.special],
        }

    def ascii(self, width: int = 24) -> str:
        """Spokes drawn from the center (r = -1) out to r = b."""
        def bar(b: Fraction) -> str:
            n = round((b + 1) / 2 * width)
            return "o" + "-" * n + "|"
        lines = [f"{self.label}: {len(self.special)} special spoke(s), generic orbit size {self.generic_size}"]
        for j, b in self.special:
            lines.append(f"  {bar(b):<{width + 2}} b = {_fmt(b):>7}  size {j.size:<3} {j.representative!r}")
        lines.append(f"  {bar(self.generic_b):<{width + 2}} b = {_fmt(self.generic_b):>7}  generic")
        return "\n".join(lines)


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@lru_cache(maxsize=None)
def _diagram(label: Label) -> Diagram:
    H = build_subgroup(label)
    gsize = generic_orbit_size(H)
    found: list[ColorOrbit] = []
    for h in H:
        if h == IDENTITY or h == MINUS_IDENTITY:
            continue
        for p in eigen_directions(h):
            j = color_orbit(H, p)
            if j not in found:
                found.append(j)
    special = [j for j in found if j.size < gsize]
    special.sort(key=lambda j: (-j.b, j.key()))
    return Diagram(label, tuple((j, j.b) for j in special), gsize, Fraction(2, gsize) - 1)


def diagram(H: "FiniteSubgroup | Label | str") -> Diagram:
    label = H.label if isinstance(H, FiniteSubgroup) else Label.parse(H)
    return _diagram(label)


# valuations -----------------------------------------------------------------

@dataclass(frozen=True)
class Valuation:
    """nu(j, r); the center nu0 has spoke None and r = -1."""
    spoke: ColorOrbit | None
    r: Fraction

    @property
    def is_center(self) -> bool:
        return self.spoke is None

    def __repr__(self) -> str:
        if self.spoke is None:
            return "nu0"
        return f"nu({self.spoke.representative!r}, {_fmt(self.r)})"


CENTER = Valuation(None, Fraction(-1))


def valuation(j: ColorOrbit, r: Fraction | int | str) -> Valuation:
    r = Fraction(r)
    if r == -1:
        return CENTER
    if r < -1 or r > j.b:
        raise ValueError(f"r = {_fmt(r)} outside the spoke range (-1, {_fmt(j.b)}] of {j.representative!r}")
    return Valuation(j, r)
