"""2x2 matrices over cyclotomic fields, the split and compact real group
structures on SL2, and the finite subgroups of SL2(C) with their normalizers."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Sequence

from .cyclo import ONE, ZERO, CycNum, I_UNIT, SQRT2, Scalar, root_of_unity, zeta


class SigmaKind(str, Enum):
    SPLIT = "split"
    COMPACT = "compact"

    @classmethod
    def parse(cls, text: "str | SigmaKind") -> "SigmaKind":
        if isinstance(text, SigmaKind):
            return text
        aliases = {"split": cls.SPLIT, "s": cls.SPLIT, "sigma_s": cls.SPLIT,
                   "compact": cls.COMPACT, "c": cls.COMPACT, "sigma_c": cls.COMPACT}
        try:
            return aliases[text.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown real group structure {text!r} (use split or compact)") from None


class Mat2:
    """Immutable 2x2 matrix [[a, b], [c, d]] over CycNum."""

    __slots__ = ("a", "b", "c", "d", "_hash")

    def __init__(self, a: Scalar, b: Scalar, c: Scalar, d: Scalar):
        self.a = CycNum.coerce(a)
        self.b = CycNum.coerce(b)
        self.c = CycNum.coerce(c)
        self.d = CycNum.coerce(d)
        self._hash = None

    @classmethod
    def diag(cls, x: Scalar, y: Scalar | None = None) -> "Mat2":
        x = CycNum.coerce(x)
        return cls(x, ZERO, ZERO, x.inverse() if y is None else y)

    @classmethod
    def antidiag(cls, x: Scalar, y: Scalar | None = None) -> "Mat2":
        """[[0, x], [y, 0]]; y defaults to -1/x so the determinant is 1."""
        x = CycNum.coerce(x)
        return cls(ZERO, x, -x.inverse() if y is None else y, ZERO)

    def entries(self) -> tuple[CycNum, CycNum, CycNum, CycNum]:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, o: "Mat2") -> "Mat2":
        if not isinstance(o, Mat2):
            return NotImplemented
        return Mat2(_dot(self.a, o.a, self.b, o.c), _dot(self.a, o.b, self.b, o.d),
                    _dot(self.c, o.a, self.d, o.c), _dot(self.c, o.b, self.d, o.d))

    def scale(self, s: Scalar) -> "Mat2":
        return Mat2(self.a * s, self.b * s, self.c * s, self.d * s)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def det(self) -> CycNum:
        return _dot(self.a, self.d, -self.b, self.c)

    def trace(self) -> CycNum:
        return self.a + self.d

    def inverse(self) -> "Mat2":
        det = self.det()
        if det == ONE:
            return Mat2(self.d, -self.b, -self.c, self.a)
        inv = det.inverse()
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def __pow__(self, k: int) -> "Mat2":
        base = self if k >= 0 else self.inverse()
        result = IDENTITY
        for _ in range(abs(k)):
            result = result @ base
        return result

    def conj(self) -> "Mat2":
        return Mat2(self.a.conj(), self.b.conj(), self.c.conj(), self.d.conj())

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    def adjoint(self) -> "Mat2":
        return Mat2(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())

    def is_diagonal(self) -> bool:
        return self.b.is_zero() and self.c.is_zero()

    def is_antidiagonal(self) -> bool:
        return self.a.is_zero() and self.d.is_zero()

    def is_monomial(self) -> bool:
        return self.is_diagonal() or self.is_antidiagonal()

    def key(self) -> tuple:
        return tuple(x.canonical_key() for x in self.entries())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.entries() == other.entries()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.entries())
        return self._hash

    def __repr__(self) -> str:
        return f"Mat2([[{self.a}, {self.b}], [{self.c}, {self.d}]])"

    def to_json(self) -> list:
        return [[self.a.to_json(), self.b.to_json()], [self.c.to_json(), self.d.to_json()]]

    @classmethod
    def from_json(cls, data) -> "Mat2":
        if (not isinstance(data, list) or len(data) != 2
                or any(not isinstance(row, list) or len(row) != 2 for row in data)):
            raise ValueError("matrix must be a 2x2 nested list")
        return cls(*(CycNum.from_json(x) for row in data for x in row))


def _dot(x1: CycNum, y1: CycNum, x2: CycNum, y2: CycNum) -> CycNum:
    if x1.is_zero() or y1.is_zero():
        return ZERO if x2.is_zero() or y2.is_zero() else x2 * y2
    if x2.is_zero() or y2.is_zero():
        return x1 * y1
    return x1 * y1 + x2 * y2


# named matrices -------------------------------------------------------------

IDENTITY = Mat2(ONE, ZERO, ZERO, ONE)
MINUS_IDENTITY = -IDENTITY
E = Mat2(0, 1, -1, 0)
F = Mat2(ZERO, I_UNIT, I_UNIT, ZERO)
D = Mat2(ONE, I_UNIT, I_UNIT, ONE).scale(SQRT2.inverse())
ALPHA = Mat2(1 - I_UNIT, 1 - I_UNIT, -1 - I_UNIT, 1 + I_UNIT).scale(CycNum.rational(1) / 2)


def omega(n: int) -> Mat2:
    """diag(zeta_n, zeta_n^-1)."""
    return _omega(n)


@lru_cache(maxsize=None)
def _omega(n: int) -> Mat2:
    if n < 1:
        raise ValueError("omega needs a positive order")
    return Mat2(zeta(n), ZERO, ZERO, root_of_unity(n, -1))


def _beta() -> Mat2:
    z = zeta(5)
    c = z + z ** 4
    return Mat2(c, ONE, ONE, -c).scale((z ** 2 - z ** 3).inverse())


BETA = _beta()


# real group structures ------------------------------------------------------

def apply_sigma(kind: SigmaKind | str, g: Mat2) -> Mat2:
    """split: entrywise conjugation; compact: inverse of the conjugate transpose."""
    kind = SigmaKind.parse(kind)
    if kind is SigmaKind.SPLIT:
        return g.conj()
    return g.adjoint().inverse()


# labels ---------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Label:
    family: str
    n: int

    def __post_init__(self):
        if self.family == "A" and self.n < 1:
            raise ValueError("A(n) needs n >= 1")
        if self.family == "D" and self.n < 4:
            raise ValueError("D(n) needs n >= 4")
        if self.family == "E" and self.n not in (6, 7, 8):
            raise ValueError("E(n) needs n in {6, 7, 8}")
        if self.family not in ("A", "D", "E"):
            raise ValueError(f"unknown family {self.family!r}")

    @classmethod
    def parse(cls, text: "str | Label") -> "Label":
        if isinstance(text, Label):
            return text
        m = re.fullmatch(r"\s*([ADEade])\s*(?:\(\s*(\d+)\s*\)|_?(\d+))\s*", text)
        if not m:
            raise ValueError(f"cannot parse subgroup label {text!r} (expected e.g. A5, D(4), E6)")
        return cls(m.group(1).upper(), int(m.group(2) or m.group(3)))

    def order(self) -> int:
        if self.family == "A":
            return self.n
        if self.family == "D":
            return 4 * self.n - 8
        return {6: 24, 7: 48, 8: 120}[self.n]

    def __str__(self) -> str:
        return f"{self.family}{self.n}"


def standard_generators(label: Label) -> list[Mat2]:
    if label.family == "A":
        return [omega(label.n)]
    if label.family == "D":
        return [omega(2 * label.n - 4), F]
    if label.n == 6:
        return [omega(4), F, ALPHA]
    if label.n == 7:
        return [omega(4), F, ALPHA, omega(8)]
    return [omega(10), E, BETA]


# subgroups ------------------------------------------------------------------

CLOSURE_BOUND = 1000


class ClosureOverflow(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteSubgroup:
    label: Label
    generators: tuple[Mat2, ...]
    elements: tuple[Mat2, ...]
    _members: frozenset = field(repr=False)

    @property
    def cardinality(self) -> int:
        return len(self.elements)

    order = cardinality

    def __contains__(self, g: Mat2) -> bool:
        return g in self._members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def contains_center(self) -> bool:
        return MINUS_IDENTITY in self._members

    def __repr__(self) -> str:
        return f"FiniteSubgroup({self.label}, order={len(self.elements)})"


def closure(generators: Iterable[Mat2], bound: int = CLOSURE_BOUND) -> list[Mat2]:
    """All products of the generators, breadth first from the identity."""
    gens = list(generators)
    seen = {IDENTITY}
    order = [IDENTITY]
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = g @ s
                if h not in seen:
                    seen.add(h)
                    order.append(h)
                    nxt.append(h)
                    if len(seen) > bound:
                        raise ClosureOverflow(f"closure exceeded {bound} elements")
        frontier = nxt
    return order


@lru_cache(maxsize=None)
def _build(label: Label) -> FiniteSubgroup:
    gens = standard_generators(label)
    for g in gens:
        if g.det() != ONE:
            raise ValueError(f"generator {g} of {label} does not have determinant 1")
    elems = closure(gens)
    if len(elems) != label.order():
        raise AssertionError(f"{label}: closure has {len(elems)} elements, expected {label.order()}")
    elems.sort(key=Mat2.key)
    return FiniteSubgroup(label, tuple(gens), tuple(elems), frozenset(elems))


def build_subgroup(label: "Label | str") -> FiniteSubgroup:
    return _build(Label.parse(label))


def coset_equal(g1: Mat2, g2: Mat2, H: FiniteSubgroup) -> bool:
    return g1.inverse() @ g2 in H


def normalizes(g: Mat2, H: FiniteSubgroup) -> bool:
    ginv = g.inverse()
    return all(g @ h @ ginv in H for h in H.generators)


# normalizer quotients -------------------------------------------------------

class QuotientKind(str, Enum):
    WHOLE_GROUP = "whole_group"
    DIHEDRAL_INFINITY = "dihedral_infinity"
    FINITE = "finite"


@dataclass(frozen=True)
class NormalizerQuotient:
    kind: QuotientKind
    representatives: tuple[Mat2, ...] = ()
    table: tuple[tuple[int, ...], ...] = ()

    @property
    def order(self) -> int | None:
        return len(self.representatives) if self.kind is QuotientKind.FINITE else None

    def coset_index(self, g: Mat2, H: FiniteSubgroup) -> int:
        for i, r in enumerate(self.representatives):
            if coset_equal(r, g, H):
                return i
        raise ValueError(f"{g} does not normalize {H.label}")


def _quotient_representatives(label: Label) -> list[Mat2]:
    if label.family == "D":
        if label.n == 4:
            w = omega(8)
            return [IDENTITY, ALPHA, ALPHA @ ALPHA, w, w @ ALPHA, w @ ALPHA @ ALPHA]
        return [IDENTITY, omega(4 * label.n - 8)]
    if label.n == 6:
        return [IDENTITY, omega(8)]
    return [IDENTITY]


@lru_cache(maxsize=None)
def _quotient(label: Label) -> NormalizerQuotient:
    if label.family == "A":
        if label.n <= 2:
            return NormalizerQuotient(QuotientKind.WHOLE_GROUP)
        return NormalizerQuotient(QuotientKind.DIHEDRAL_INFINITY)
    H = _build(label)
    reps = _quotient_representatives(label)
    for r in reps:
        if not normalizes(r, H):
            raise AssertionError(f"{r} does not normalize {label}")
    for i, r in enumerate(reps):
        for s in reps[:i]:
            if coset_equal(r, s, H):
                raise AssertionError(f"representatives {s} and {r} share a coset of {label}")
    quotient = NormalizerQuotient(QuotientKind.FINITE, tuple(reps))
    table = tuple(tuple(quotient.coset_index(r @ s, H) for s in reps) for r in reps)
    return NormalizerQuotient(QuotientKind.FINITE, tuple(reps), table)


def normalizer_quotient(H: "FiniteSubgroup | Label | str") -> NormalizerQuotient:
    label = H.label if isinstance(H, FiniteSubgroup) else Label.parse(H)
    return _quotient(label)


def normalizer_elements(H: FiniteSubgroup) -> list[Mat2]:
    """All of N(H) for a finite quotient."""
    q = normalizer_quotient(H)
    if q.kind is not QuotientKind.FINITE:
        raise ValueError(f"N({H.label}) is infinite")
    return [r @ h for r in q.representatives for h in H]


# parsing of matrix tokens ---------------------------------------------------

_NAMED = {"I2": IDENTITY, "I": IDENTITY, "e": E, "f": F, "d": D, "alpha": ALPHA, "beta": BETA}


def parse_matrix(text: str) -> Mat2:
    """Named tokens (I2, -I2, e, f, d, alpha, beta, omegaN) joined by '*', or inline JSON."""
    import json

    text = text.strip()
    if text.startswith("["):
        return Mat2.from_json(json.loads(text))
    result = IDENTITY
    for raw in text.split("*"):
        tok = raw.strip()
        sign = 1
        if tok.startswith("-"):
            sign, tok = -1, tok[1:].strip()
        if tok in _NAMED:
            m = _NAMED[tok]
        elif re.fullmatch(r"(omega|w)_?\d+", tok):
            m = omega(int(re.sub(r"\D", "", tok)))
        elif re.fullmatch(r"(omega|w)_?\d+\^-?\d+", tok):
            base, exp = tok.split("^")
            m = omega(int(re.sub(r"\D", "", base))) ** int(exp)
        else:
            raise ValueError(f"unknown matrix token {raw.strip()!r}")
        result = result @ (m if sign == 1 else -m)
    return result


def matrix_name(g: Mat2, candidates: Sequence[tuple[str, Mat2]] | None = None) -> str | None:
    for name, m in candidates or _display_names():
        if m == g:
            return name
    return None


def _display_names() -> list[tuple[str, Mat2]]:
    out = [("I2", IDENTITY), ("-I2", MINUS_IDENTITY), ("e", E), ("f", F), ("d", D)]
    for n in (3, 4, 5, 6, 8, 10, 12, 14, 16, 20, 24, 32):
        out.append((f"omega{n}", omega(n)))
    return out
