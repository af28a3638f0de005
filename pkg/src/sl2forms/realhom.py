"""Equivariant real structures gH -> sigma(g) t H on SL2(C)/H.

A twist t defines a real structure when sigma(H) = t H t^-1 and
sigma(t) t lies in H.  Two twists are equivalent when
t2 in sigma(n) t1 n^-1 H for some n normalizing H.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cyclo import ONE, CycNum, real_sign, root_of_unity
from .sl2core import (E, F, IDENTITY, MINUS_IDENTITY, FiniteSubgroup, Label, Mat2, QuotientKind,
                      SigmaKind, apply_sigma, build_subgroup, matrix_name, normalizer_elements,
                      normalizer_quotient, omega)


@dataclass(frozen=True)
class Validity:
    valid: bool
    reason: str | None = None
    witness: Mat2 | None = None

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class RealStructure:
    sigma: SigmaKind
    subgroup: FiniteSubgroup
    twist: Mat2

    def check(self) -> Validity:
        return validate_structure(self.sigma, self.subgroup, self.twist)


def validate_structure(sigma: SigmaKind | str, H: FiniteSubgroup, t: Mat2) -> Validity:
    sigma = SigmaKind.parse(sigma)
    if t.det() != ONE:
        return Validity(False, "det(t) != 1", t)
    tinv = t.inverse()
    for h in H:
        if tinv @ apply_sigma(sigma, h) @ t not in H:
            return Validity(False, "sigma(H) != t H t^-1", h)
    if apply_sigma(sigma, t) @ t not in H:
        return Validity(False, "sigma(t) t is not in H", apply_sigma(sigma, t) @ t)
    return Validity(True)


# equivalence ----------------------------------------------------------------

class Outcome(str, Enum):
    EQUIVALENT = "equivalent"
    INEQUIVALENT = "inequivalent"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class EquivalenceResult:
    outcome: Outcome
    witness: Mat2 | None = None
    reason: str = ""


def relates(sigma: SigmaKind, H: FiniteSubgroup, n: Mat2, t1: Mat2, t2: Mat2) -> bool:
    """Whether t2 lies in sigma(n) t1 n^-1 H."""
    m = apply_sigma(sigma, n) @ t1 @ n.inverse()
    return m.inverse() @ t2 in H


def _bounded_rationals(height: int) -> list[Fraction]:
    out = []
    for h in range(1, height + 1):
        layer = {Fraction(p, q) for p in range(1, h + 1) for q in range(1, h + 1)
                 if max(p, q) == h and gcd(p, q) == 1}
        out.extend(sorted(layer))
    return out


def monomial_candidates(root_order: int, height: int):
    """Diagonal and antidiagonal matrices with entry s * zeta, s rational of bounded height."""
    roots = [root_of_unity(root_order, k) for k in range(root_order)]
    for s in _bounded_rationals(height):
        for z in roots:
            x = z * s
            yield Mat2.diag(x)
            yield Mat2.antidiag(x)


def _root_index(x: CycNum, n: int) -> int | None:
    """k with x = zeta_n^k, or None."""
    for k in range(n):
        if x == root_of_unity(n, k):
            return k
    return None


def _is_root_of_unity(x: CycNum, n: int) -> bool:
    return x ** n == ONE


def _cyclic_invariant(sigma: SigmaKind, H: FiniteSubgroup, t: Mat2):
    """A complete invariant of the class of a valid twist for A_n, n >= 3.

    Valid twists are monomial.  Returns a comparison object: a tuple for
    exact classes, or ('anti', q) for split antidiagonal twists, which need
    the pairwise test in _same_antidiagonal_class.
    """
    n = H.label.n
    if sigma is SigmaKind.SPLIT:
        if t.is_diagonal():
            return ("diag",)
        a = t.b
        return ("anti", a / a.conj())
    if t.is_antidiagonal():
        return ("anti-compact",)
    x = t.a
    u = x / x.conj()
    if n % 2 == 0:
        k = _root_index(u, n)
        return ("diag", k % 2)
    w = u ** ((n + 1) // 2)
    return ("diag", real_sign(x / w))


def _same_antidiagonal_class(q1: CycNum, q2: CycNum, n: int) -> bool:
    # q is determined up to the squares of mu_n and up to inversion
    m = n if n % 2 else n // 2
    return _is_root_of_unity(q1 / q2, m) or _is_root_of_unity(q1 * q2, m)


def _whole_group_invariant(sigma: SigmaKind, H: FiniteSubgroup, t: Mat2):
    c = apply_sigma(sigma, t) @ t
    sign = 1 if c == IDENTITY else -1
    if H.label.n == 1 and sigma is SigmaKind.COMPACT:
        # t is hermitian; the sign of its trace separates the two classes
        return ("hermitian", real_sign(t.trace()))
    if H.label.n == 1:
        return ("split",)
    return ("sign", sign)


def invariants_agree(sigma: SigmaKind, H: FiniteSubgroup, t1: Mat2, t2: Mat2) -> bool | None:
    """Compare complete class invariants; None when no invariant is implemented."""
    kind = normalizer_quotient(H).kind
    if kind is QuotientKind.WHOLE_GROUP:
        return _whole_group_invariant(sigma, H, t1) == _whole_group_invariant(sigma, H, t2)
    if kind is QuotientKind.DIHEDRAL_INFINITY:
        i1, i2 = _cyclic_invariant(sigma, H, t1), _cyclic_invariant(sigma, H, t2)
        if i1[0] == "anti" and i2[0] == "anti":
            return _same_antidiagonal_class(i1[1], i2[1], H.label.n)
        return i1 == i2
    return None


def structures_equivalent(sigma: SigmaKind | str, H: FiniteSubgroup, t1: Mat2, t2: Mat2,
                          *, height: int = 16, root_order: int | None = None) -> EquivalenceResult:
    sigma = SigmaKind.parse(sigma)
    for t in (t1, t2):
        v = validate_structure(sigma, H, t)
        if not v:
            raise ValueError(f"twist {t} is not a real structure: {v.reason}")
    if relates(sigma, H, IDENTITY, t1, t2):
        return EquivalenceResult(Outcome.EQUIVALENT, IDENTITY, "same coset")
    quotient = normalizer_quotient(H)
    if quotient.kind is QuotientKind.FINITE:
        for n in normalizer_elements(H):
            if relates(sigma, H, n, t1, t2):
                return EquivalenceResult(Outcome.EQUIVALENT, n, "exhaustive search over N(H)")
        return EquivalenceResult(Outcome.INEQUIVALENT, None, "exhaustive search over N(H)")
    agree = invariants_agree(sigma, H, t1, t2)
    if agree is False:
        return EquivalenceResult(Outcome.INEQUIVALENT, None, "class invariants differ")
    order = root_order or 8 * H.label.n
    targets = {t2 @ h for h in H}
    for n in monomial_candidates(order, height):
        if apply_sigma(sigma, n) @ t1 @ n.inverse() in targets:
            return EquivalenceResult(Outcome.EQUIVALENT, n, "bounded monomial search")
    return EquivalenceResult(Outcome.UNDECIDED, None,
                             f"no monomial witness with height <= {height} and root order <= {order}")


# Galois cohomology ----------------------------------------------------------

@dataclass(frozen=True)
class CohomologyClass:
    representative: Mat2
    label: str

    def to_json(self) -> dict:
        return {"label": self.label, "representative": self.representative.to_json()}


def describe(g: Mat2, n: int | None = None) -> str:
    names = [("I2", IDENTITY), ("-I2", MINUS_IDENTITY), ("e", E), ("f", F), ("-e", -E), ("-f", -F)]
    if n is not None:
        w = omega(n)
        names += [(f"omega{n}", w), (f"-omega{n}", -w), (f"e*omega{n}", E @ w),
                  (f"f*omega{n}", F @ w), (f"-f*omega{n}", -(F @ w))]
    return matrix_name(g, names) or matrix_name(g) or repr(g)


def _class(g: Mat2, n: int | None = None) -> CohomologyClass:
    return CohomologyClass(g, describe(g, n))


def _whole_group_classes(sigma: SigmaKind, label: Label) -> list[Mat2]:
    if label.n == 1:
        return [IDENTITY] if sigma is SigmaKind.SPLIT else [IDENTITY, MINUS_IDENTITY]
    return [IDENTITY, E]


def cyclic_candidates(sigma: SigmaKind, n: int) -> list[Mat2]:
    """Candidate class representatives for A_n, n >= 3, before de-duplication."""
    w = omega(2 * n)
    if n % 2:
        return [IDENTITY, F, F @ w] if sigma is SigmaKind.SPLIT else [IDENTITY, MINUS_IDENTITY]
    return [IDENTITY, E, E @ w] if sigma is SigmaKind.SPLIT else [IDENTITY, E, w]


def _dedupe(sigma: SigmaKind, H: FiniteSubgroup, reps: list[Mat2]) -> list[Mat2]:
    kept: list[Mat2] = []
    for t in reps:
        if not any(structures_equivalent(sigma, H, k, t).outcome is Outcome.EQUIVALENT for k in kept):
            kept.append(t)
    return kept


def _sorted_classes(reps: list[Mat2], n: int | None = None) -> list[CohomologyClass]:
    return [_class(g, n) for g in sorted(reps, key=Mat2.key)]


@lru_cache(maxsize=None)
def _h1(sigma: SigmaKind, label: Label, allow_cyclic: bool) -> tuple[CohomologyClass, ...]:
    H = build_subgroup(label)
    quotient = normalizer_quotient(H)
    if quotient.kind is QuotientKind.DIHEDRAL_INFINITY:
        if not allow_cyclic:
            raise ValueError(f"N({label})/{label} is infinite; use h1_table")
        reps = cyclic_candidates(sigma, label.n)
    elif quotient.kind is QuotientKind.WHOLE_GROUP:
        reps = _whole_group_classes(sigma, label)
    else:
        reps = [r for r in quotient.representatives
                if apply_sigma(sigma, r) @ r in H and validate_structure(sigma, H, r)]
    for r in reps:
        v = validate_structure(sigma, H, r)
        if not v:
            raise AssertionError(f"{r} is not a cocycle for {sigma.value} {label}: {v.reason}")
    n = 2 * label.n if label.family == "A" else (4 * label.n - 8 if label.family == "D" else 8)
    return tuple(_sorted_classes(_dedupe(sigma, H, reps), n))


def h1_enumerate(sigma: SigmaKind | str, H: "FiniteSubgroup | Label | str") -> list[CohomologyClass]:
    label = H.label if isinstance(H, FiniteSubgroup) else Label.parse(H)
    return list(_h1(SigmaKind.parse(sigma), label, False))


def h1_table(sigma: SigmaKind | str, label: "Label | str") -> list[CohomologyClass]:
    """Class representatives for any label; cyclic groups use the candidate list,
    each checked to be a cocycle, with provably equivalent candidates merged."""
    return list(_h1(SigmaKind.parse(sigma), Label.parse(label), True))


# real locus for the compact structure ---------------------------------------

def sigma_c_locus_nonempty(H: FiniteSubgroup, t: Mat2) -> bool:
    """Whether gH -> sigma_c(g) t H has a real point.

    A fixed point gH needs t in g* g H, i.e. t h^-1 positive definite
    hermitian for some h in H; for t in H this always holds.
    """
    if t in H:
        return True
    for h in H:
        m = t @ h.inverse()
        if m == m.adjoint() and real_sign(m.a) > 0:
            return True
    return False
