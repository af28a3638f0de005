"""The Galois action induced by a real structure on colors, valuations and
orbits, and the test whether the structure extends to an embedding."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .embeddings import Embedding, OrbitRecord, OrbitType
from .equipment import ColorOrbit, ProjPoint, Valuation, CENTER, color_orbit, diagram
from .realhom import RealStructure, validate_structure
from .sl2core import E, FiniteSubgroup, Mat2, SigmaKind, build_subgroup


class GammaAction:
    """Complex conjugation acting on P^1/H through a real structure.

    split:   [a:b] -> [conj a : conj b] . t
    compact: [a:b] -> [-conj b : conj a] . t
    """

    def __init__(self, structure: RealStructure):
        v = validate_structure(structure.sigma, structure.subgroup, structure.twist)
        if not v:
            raise ValueError(f"not a real structure: {v.reason}")
        self.structure = structure
        s = structure.sigma
        self._matrix = structure.twist if s is SigmaKind.SPLIT else E @ structure.twist
        self._cache: dict[ColorOrbit, ColorOrbit] = {}

    @classmethod
    def of(cls, sigma: SigmaKind | str, H: FiniteSubgroup | str, t: Mat2) -> "GammaAction":
        if not isinstance(H, FiniteSubgroup):
            H = build_subgroup(H)
        return cls(RealStructure(SigmaKind.parse(sigma), H, t))

    @property
    def subgroup(self) -> FiniteSubgroup:
        return self.structure.subgroup

    def on_point(self, p: ProjPoint) -> ProjPoint:
        # (-conj b, conj a) = (conj a, conj b) . e
        return ProjPoint(p.x.conj(), p.y.conj()).act(self._matrix)

    def on_color(self, j: ColorOrbit) -> ColorOrbit:
        hit = self._cache.get(j)
        if hit is None:
            hit = color_orbit(self.subgroup, self.on_point(j.representative))
            self._cache[j] = hit
        return hit


def gamma_on_color(act: GammaAction, j: ColorOrbit) -> ColorOrbit:
    return act.on_color(j)


def gamma_on_valuation(act: GammaAction, v: Valuation) -> Valuation:
    if v.is_center:
        return CENTER
    return Valuation(act.on_color(v.spoke), v.r)


def gamma_on_record(act: GammaAction, rec: OrbitRecord) -> OrbitRecord:
    return OrbitRecord(rec.kind, tuple(act.on_color(j) for j in rec.spokes), rec.r)


class ExtensionOutcome(str, Enum):
    NOT_PRESERVED = "not_preserved"
    EXTENDS_NOT_EFFECTIVE = "extends_not_effective"
    EXTENDS_EFFECTIVE = "extends_effective"


@dataclass(frozen=True)
class ExtensionVerdict:
    outcome: ExtensionOutcome
    witnesses: tuple[str, ...] = ()

    @property
    def extends(self) -> bool:
        return self.outcome is not ExtensionOutcome.NOT_PRESERVED

    @property
    def effective(self) -> bool:
        return self.outcome is ExtensionOutcome.EXTENDS_EFFECTIVE

    def to_json(self) -> dict:
        return {"outcome": self.outcome.value, "witnesses": list(self.witnesses)}


def _exceptional_generic(emb: Embedding) -> set[ColorOrbit]:
    gsize = diagram(emb.group).generic_size
    return {j for rec in emb.records for j in rec.spokes if j.size == gsize}


def check_extension(act: GammaAction, emb: Embedding) -> ExtensionVerdict:
    if act.subgroup.label != emb.group:
        raise ValueError(f"structure on {act.subgroup.label} but embedding of {emb.group}")
    before = Counter(rec.identity() for rec in emb.records)
    images = [(rec, gamma_on_record(act, rec)) for rec in emb.records]
    after = Counter(img.identity() for _, img in images)
    if before != after:
        moved = [f"{rec} -> {img}" for rec, img in images if img.identity() not in before]
        return ExtensionVerdict(ExtensionOutcome.NOT_PRESERVED, tuple(moved))
    if emb.nu0:
        exceptional = _exceptional_generic(emb)
        if {act.on_color(j) for j in exceptional} != exceptional:
            return ExtensionVerdict(ExtensionOutcome.NOT_PRESERVED,
                                    ("exceptional generic spokes of the nu0 divisor are not stable",))
    swapped = [f"{rec} -> {img}" for rec, img in images
               if rec.kind in (OrbitType.BMINUS, OrbitType.BZERO) and img.identity() != rec.identity()]
    if swapped:
        return ExtensionVerdict(ExtensionOutcome.EXTENDS_NOT_EFFECTIVE, tuple(swapped))
    return ExtensionVerdict(ExtensionOutcome.EXTENDS_EFFECTIVE)
