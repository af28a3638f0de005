"""Orbit records of SL2-embeddings of SL2/H, their colored data and facets,
and the combinatorial conditions for a set of orbits to form an embedding.

Facets live on the spokes (-1, b(j)].  Spokes of generic orbits that no
record mentions are handled together through a single default channel,
which is either empty or the full spoke.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .equipment import CENTER, ColorOrbit, ProjPoint, Valuation, color_orbit, diagram
from .sl2core import FiniteSubgroup, Label, build_subgroup

MINUS_ONE = Fraction(-1)


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


# intervals ------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def is_empty(self) -> bool:
        return self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed))

    def contains(self, x: Fraction) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def sample(self) -> Fraction:
        """Some point of a non-empty interval."""
        if self.lo_closed:
            return self.lo
        if self.hi_closed and self.lo == self.hi:
            return self.hi
        return (self.lo + self.hi) / 2

    def intersect(self, other: "Interval") -> "Interval":
        if self.lo > other.lo or (self.lo == other.lo and not self.lo_closed):
            lo, lo_c = self.lo, self.lo_closed
        else:
            lo, lo_c = other.lo, other.lo_closed
        if self.hi < other.hi or (self.hi == other.hi and not self.hi_closed):
            hi, hi_c = self.hi, self.hi_closed
        else:
            hi, hi_c = other.hi, other.hi_closed
        return Interval(lo, hi, lo_c, hi_c)

    def __str__(self) -> str:
        if self.lo == self.hi:
            return f"{{{_fmt(self.lo)}}}"
        return f"{'[' if self.lo_closed else '('}{_fmt(self.lo)}, {_fmt(self.hi)}{']' if self.hi_closed else ')'}"


class IntervalSet:
    """A finite union of rational intervals kept disjoint, sorted and maximal."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[Interval] = ()):
        self.parts = _normalize([p for p in parts if not p.is_empty()])

    @classmethod
    def spoke(cls, b: Fraction) -> "IntervalSet":
        return cls([Interval(MINUS_ONE, Fraction(b), False, True)])

    def is_empty(self) -> bool:
        return not self.parts

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.parts + other.parts)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(p.intersect(q) for p in self.parts for q in other.parts)

    def complement_in(self, whole: "IntervalSet") -> "IntervalSet":
        if whole.is_empty():
            return IntervalSet()
        w_lo, w_hi = whole.parts[0].lo, whole.parts[-1].hi
        gaps, lo, lo_closed = [], w_lo, True
        for p in self.parts:
            gaps.append(Interval(lo, p.lo, lo_closed, not p.lo_closed))
            lo, lo_closed = p.hi, not p.hi_closed
        gaps.append(Interval(lo, w_hi, lo_closed, True))
        return IntervalSet(gaps).intersect(whole)

    def closure_in_spoke(self, b: Fraction) -> "IntervalSet":
        """Topological closure inside (-1, b]."""
        closed = [Interval(p.lo, p.hi, True, True) for p in self.parts]
        return IntervalSet(closed).intersect(IntervalSet.spoke(b))

    def contains(self, x: Fraction) -> bool:
        return any(p.contains(x) for p in self.parts)

    def sample(self) -> Fraction:
        return self.parts[0].sample()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntervalSet) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(tuple(self.parts))

    def __repr__(self) -> str:
        return " u ".join(str(p) for p in self.parts) if self.parts else "{}"


def _normalize(parts: list[Interval]) -> tuple[Interval, ...]:
    parts.sort(key=lambda p: (p.lo, not p.lo_closed))
    out: list[Interval] = []
    for p in parts:
        if out:
            q = out[-1]
            touches = p.lo < q.hi or (p.lo == q.hi and (p.lo_closed or q.hi_closed))
            if touches:
                if p.hi > q.hi or (p.hi == q.hi and p.hi_closed):
                    out[-1] = Interval(q.lo, p.hi, q.lo_closed, p.hi_closed)
                continue
        out.append(p)
    return tuple(out)


# orbit records ----------------------------------------------------------------

class OrbitType(str, Enum):
    C = "C"
    A = "A"
    AB = "AB"
    BPLUS = "B+"
    BMINUS = "B-"
    BZERO = "B0"


@dataclass(frozen=True)
class OrbitRecord:
    kind: OrbitType
    spokes: tuple[ColorOrbit, ...]
    r: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(Fraction(x) for x in self.r))
        object.__setattr__(self, "kind", OrbitType(self.kind))

    def identity(self) -> tuple:
        """Key under which two records describe the same orbit."""
        if self.kind is OrbitType.A:
            return (self.kind.value, frozenset(zip(self.spokes, self.r)))
        return (self.kind.value, self.spokes, self.r)

    def sort_key(self) -> tuple:
        return (self.kind.value, tuple(j.key() for j in self.spokes), self.r)

    def __str__(self) -> str:
        if self.kind is OrbitType.A:
            name = f"A{len(self.spokes)}"
        else:
            name = self.kind.value
        spokes = ",".join(repr(j.representative) for j in self.spokes)
        return f"{name}({spokes},{','.join(_fmt(x) for x in self.r)})"

    def to_json(self) -> dict:
        return {"type": self.kind.value,
                "spokes": [j.representative.to_json() for j in self.spokes],
                "r": [_fmt(x) for x in self.r]}


def C(j: ColorOrbit, r) -> OrbitRecord:
    return OrbitRecord(OrbitType.C, (j,), (r,))


def A(spokes: Sequence[ColorOrbit], rs: Sequence) -> OrbitRecord:
    return OrbitRecord(OrbitType.A, tuple(spokes), tuple(rs))


def AB(j: ColorOrbit, r1, r2) -> OrbitRecord:
    return OrbitRecord(OrbitType.AB, (j,), (r1, r2))


def Bplus(j: ColorOrbit, r) -> OrbitRecord:
    return OrbitRecord(OrbitType.BPLUS, (j,), (r,))


def Bminus(j: ColorOrbit, r) -> OrbitRecord:
    return OrbitRecord(OrbitType.BMINUS, (j,), (r,))


def Bzero(j: ColorOrbit, r) -> OrbitRecord:
    return OrbitRecord(OrbitType.BZERO, (j,), (r,))


def record_problem(rec: OrbitRecord) -> str | None:
    """Why a record is not a legal orbit, or None."""
    k, js, rs = rec.kind, rec.spokes, rec.r
    want = {OrbitType.AB: (1, 2)}.get(k, (1, 1))
    if k is OrbitType.A:
        if not js or len(js) != len(rs):
            return "A needs N >= 1 spokes and as many r values"
        if len(set(js)) != len(js):
            return "A needs distinct spokes"
        for j, r in zip(js, rs):
            if not (-1 < r <= j.b):
                return f"r = {_fmt(r)} outside (-1, {_fmt(j.b)}]"
        if sum(1 / (1 + r) for r in rs) < 1:
            return "sum of 1/(1+r_i) is below 1"
        return None
    if (len(js), len(rs)) != want:
        return f"{k.value} needs {want[0]} spoke(s) and {want[1]} r value(s)"
    j, b = js[0], js[0].b
    if k is OrbitType.C and not (-1 < rs[0] <= b):
        return f"r = {_fmt(rs[0])} outside (-1, {_fmt(b)}]"
    if k is OrbitType.AB and not (-1 <= rs[0] < rs[1] <= b):
        return f"need -1 <= r1 < r2 <= {_fmt(b)}"
    if k is OrbitType.BPLUS and not (-1 <= rs[0] < b):
        return f"r = {_fmt(rs[0])} outside [-1, {_fmt(b)})"
    if k in (OrbitType.BMINUS, OrbitType.BZERO) and not (0 < rs[0] < b):
        return f"r = {_fmt(rs[0])} outside (0, {_fmt(b)})"
    return None


# colored data -------------------------------------------------------------------

@dataclass(frozen=True)
class ColorSet:
    """Either the finite set `spokes` or, when cofinite, its complement in P^1/H."""
    spokes: frozenset
    cofinite: bool = False

    def __str__(self) -> str:
        inner = ", ".join(sorted(repr(j.representative) for j in self.spokes))
        if self.cofinite:
            return "P1/H" if not self.spokes else f"P1/H minus {{{inner}}}"
        return f"{{{inner}}}"


def colored_data(rec: OrbitRecord) -> tuple[frozenset, ColorSet]:
    """The pair (invariant valuations, colors) containing the orbit."""
    vals = frozenset(CENTER if r == -1 else Valuation(j, r) for j, r in _pairs(rec))
    k = rec.kind
    if k in (OrbitType.C, OrbitType.AB):
        colors = ColorSet(frozenset())
    elif k is OrbitType.A:
        colors = ColorSet(frozenset(rec.spokes), True)
    elif k is OrbitType.BPLUS:
        colors = ColorSet(frozenset(rec.spokes))
    elif k is OrbitType.BMINUS:
        colors = ColorSet(frozenset(rec.spokes), True)
    else:
        colors = ColorSet(frozenset(), True)
    return vals, colors


def _pairs(rec: OrbitRecord) -> list[tuple[ColorOrbit, Fraction]]:
    if rec.kind is OrbitType.AB:
        return [(rec.spokes[0], rec.r[0]), (rec.spokes[0], rec.r[1])]
    return list(zip(rec.spokes, rec.r))


# facets -------------------------------------------------------------------------

@dataclass(frozen=True)
class FacetSet:
    """Per-spoke interval sets; every spoke not listed carries the default
    (the full spoke when `default_full`, otherwise nothing)."""
    explicit: tuple[tuple[ColorOrbit, IntervalSet], ...]
    default_full: bool = False

    def on(self, j: ColorOrbit) -> IntervalSet:
        for k, s in self.explicit:
            if k == j:
                return s
        return IntervalSet.spoke(j.b) if self.default_full else IntervalSet()

    def to_json(self) -> dict:
        return {"default": "full" if self.default_full else "empty",
                "spokes": [{"rep": j.representative.to_json(), "intervals": str(s)}
                           for j, s in self.explicit]}


def facet(rec: OrbitRecord) -> FacetSet:
    k, j = rec.kind, rec.spokes[0]
    if k is OrbitType.C:
        r = rec.r[0]
        return FacetSet(((j, IntervalSet([Interval(r, r)])),))
    if k is OrbitType.AB:
        return FacetSet(((j, IntervalSet([Interval(rec.r[0], rec.r[1], False, False)])),))
    if k is OrbitType.A:
        listed = [(s, IntervalSet([Interval(MINUS_ONE, r, False, False)])) for s, r in zip(rec.spokes, rec.r)]
        return FacetSet(tuple(listed), True)
    return FacetSet(((j, IntervalSet([Interval(rec.r[0], j.b, False, True)])),))


# embeddings -------------------------------------------------------------------

@dataclass(frozen=True)
class Embedding:
    group: Label
    records: tuple[OrbitRecord, ...]
    nu0: bool = False

    def to_json(self) -> dict:
        return {"group": str(self.group), "nu0": self.nu0,
                "orbits": [r.to_json() for r in self.records]}


@dataclass(frozen=True)
class Violation:
    condition: str
    message: str
    witness: str

    def to_json(self) -> dict:
        return {"condition": self.condition, "message": self.message, "witness": self.witness}


@dataclass(frozen=True)
class ValidityReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def conditions(self) -> set[str]:
        return {v.condition for v in self.violations}

    def to_json(self) -> dict:
        return {"valid": self.valid, "violations": [v.to_json() for v in self.violations]}


def _witness(j: ColorOrbit | None, r: Fraction) -> str:
    if j is None:
        return f"nu(generic, {_fmt(r)})"
    return repr(Valuation(j, r))


def _materialized(emb: Embedding) -> list[ColorOrbit]:
    """Special spokes of the diagram plus every spoke some record mentions."""
    spokes = list(diagram(emb.group).spokes())
    for rec in emb.records:
        for j in rec.spokes:
            if j not in spokes:
                spokes.append(j)
    return spokes


def _generic_size(emb: Embedding) -> int:
    return diagram(emb.group).generic_size


def _coverage(emb: Embedding) -> tuple[dict, list[tuple[str, IntervalSet]]]:
    """Per materialized spoke, the list of (record name, facet piece); and the
    list of contributors to the default channel."""
    spokes = _materialized(emb)
    facets = [(str(rec), facet(rec)) for rec in emb.records]
    per_spoke = {j: [(name, f.on(j)) for name, f in facets] for j in spokes}
    gsize = _generic_size(emb)
    gb = Fraction(2, gsize) - 1
    default = [(name, IntervalSet.spoke(gb)) for name, f in facets if f.default_full]
    if emb.nu0:
        default.append(("B+(generic,-1)", IntervalSet.spoke(gb)))
    return per_spoke, default


def validate_embedding(emb: Embedding) -> ValidityReport:
    out: list[Violation] = []
    for rec in emb.records:
        problem = record_problem(rec)
        if problem:
            out.append(Violation("record", f"{rec}: {problem}", str(rec)))
        for j in rec.spokes:
            if j.label != emb.group:
                out.append(Violation("record", f"{rec}: spoke belongs to {j.label}", str(rec)))
    if out:
        return ValidityReport(tuple(out))

    per_spoke, default = _coverage(emb)
    gb = Fraction(2, _generic_size(emb)) - 1

    # (i) disjoint facets
    for j, pieces in per_spoke.items():
        live = [(n, s) for n, s in pieces if not s.is_empty()]
        for a in range(len(live)):
            for c in range(a + 1, len(live)):
                common = live[a][1].intersect(live[c][1])
                if not common.is_empty():
                    out.append(Violation("i", f"facets of {live[a][0]} and {live[c][0]} meet",
                                         _witness(j, common.sample())))
    if len(default) > 1:
        out.append(Violation("i", f"facets of {default[0][0]} and {default[1][0]} meet on generic spokes",
                             _witness(None, gb)))

    # (ii) closed union
    for j, pieces in per_spoke.items():
        union = IntervalSet()
        for _, s in pieces:
            union = union.union(s)
        missing = union.complement_in(union.closure_in_spoke(j.b))
        if not missing.is_empty():
            out.append(Violation("ii", "union of facets is not closed",
                                 ", ".join(_witness(j, part.sample()) for part in missing.parts)))
        elif default:
            # generic spokes accumulate onto every spoke
            gap = union.complement_in(IntervalSet.spoke(j.b))
            if not gap.is_empty():
                out.append(Violation("ii", "full generic spokes accumulate on a spoke that is not fully covered",
                                     _witness(j, gap.sample())))

    # (iii) holds by construction: with nu0 the listed records are finite and
    # cofinitely many generic spokes carry B+(j,-1).  (iv) without nu0:
    bplus_center = [rec for rec in emb.records if rec.kind is OrbitType.BPLUS and rec.r[0] == -1]
    if not emb.nu0 and bplus_center:
        out.append(Violation("iv", "B+(j,-1) orbit without the divisor of nu0", str(bplus_center[0])))
    return ValidityReport(tuple(out))


def is_complete(emb: Embedding) -> bool:
    per_spoke, default = _coverage(emb)
    if not default:
        return False
    for j, pieces in per_spoke.items():
        union = IntervalSet()
        for _, s in pieces:
            union = union.union(s)
        if union != IntervalSet.spoke(j.b):
            return False
    return True


def is_quasiprojective(emb: Embedding) -> bool:
    return sum(rec.kind in (OrbitType.BMINUS, OrbitType.BZERO) for rec in emb.records) <= 1


# JSON ---------------------------------------------------------------------------

class EmbeddingParseError(ValueError):
    pass


def embedding_from_json(data) -> Embedding:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise EmbeddingParseError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise EmbeddingParseError("embedding must be a JSON object")
    try:
        label = Label.parse(data["group"])
    except KeyError:
        raise EmbeddingParseError("group: missing") from None
    except (ValueError, TypeError, AttributeError) as exc:
        raise EmbeddingParseError(f"group: {exc}") from None
    nu0 = data.get("nu0", False)
    if not isinstance(nu0, bool):
        raise EmbeddingParseError("nu0: must be true or false")
    orbits = data.get("orbits")
    if not isinstance(orbits, list):
        raise EmbeddingParseError("orbits: must be a list")
    H = build_subgroup(label)
    records = [_record_from_json(H, item, f"orbits[{i}]") for i, item in enumerate(orbits)]
    return Embedding(label, tuple(records), nu0)


def _record_from_json(H: FiniteSubgroup, item, where: str) -> OrbitRecord:
    if not isinstance(item, dict):
        raise EmbeddingParseError(f"{where}: must be an object")
    try:
        kind = OrbitType(item.get("type"))
    except ValueError:
        raise EmbeddingParseError(f"{where}.type: unknown orbit type {item.get('type')!r}") from None
    spokes_raw = item.get("spokes")
    if not isinstance(spokes_raw, list):
        raise EmbeddingParseError(f"{where}.spokes: must be a list")
    spokes = []
    for k, p in enumerate(spokes_raw):
        try:
            spokes.append(color_orbit(H, ProjPoint.from_json(p)))
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise EmbeddingParseError(f"{where}.spokes[{k}]: {exc}") from None
    r_raw = item.get("r")
    if not isinstance(r_raw, list):
        raise EmbeddingParseError(f"{where}.r: must be a list")
    rs = []
    for k, x in enumerate(r_raw):
        if isinstance(x, bool) or not isinstance(x, (int, str)):
            raise EmbeddingParseError(f"{where}.r[{k}]: must be an integer or a 'p/q' string")
        try:
            rs.append(Fraction(x))
        except (ValueError, ZeroDivisionError) as exc:
            raise EmbeddingParseError(f"{where}.r[{k}]: {exc}") from None
    return OrbitRecord(kind, tuple(spokes), tuple(rs))


def load_embedding(path: str) -> Embedding:
    with open(path, encoding="utf-8") as fh:
        return embedding_from_json(fh.read())
