from fractions import Fraction

import pytest

from sl2forms.realhom import (Outcome, cyclic_candidates, h1_enumerate, h1_table, relates,
                              sigma_c_locus_nonempty, structures_equivalent, validate_structure)
from sl2forms.sl2core import (E, IDENTITY, MINUS_IDENTITY, Label, Mat2, SigmaKind, apply_sigma,
                              build_subgroup, normalizer_elements, omega)

SPLIT, COMPACT = SigmaKind.SPLIT, SigmaKind.COMPACT


def reps(classes):
    return {c.representative for c in classes}


def test_validity_examples():
    assert validate_structure("split", build_subgroup("E6"), IDENTITY)
    bad = validate_structure("split", build_subgroup("E8"), omega(8))
    assert not bad and bad.reason == "sigma(H) != t H t^-1"
    assert validate_structure("compact", build_subgroup("A3"), MINUS_IDENTITY)


def test_validity_reasons():
    v = validate_structure("split", build_subgroup("A1"), Mat2.diag(2))
    assert not v and v.reason == "sigma(t) t is not in H" and v.witness == Mat2.diag(4)
    assert validate_structure("split", build_subgroup("A1"), Mat2(1, 1, 0, 2)).reason == "det(t) != 1"
    # e is not a cocycle for compact A3: sigma_c(e) e = -I is not in A3
    v = validate_structure("compact", build_subgroup("A3"), E)
    assert not v and v.reason == "sigma(t) t is not in H"


def test_e8_has_no_element_of_order_8():
    # the reason omega8 cannot normalize E8
    E8 = build_subgroup("E8")
    w = omega(8)
    conj = {w @ h @ w.inverse() for h in E8}
    assert conj != set(E8)


def test_d4_classes_are_distinct():
    res = structures_equivalent("split", build_subgroup("D4"), IDENTITY, omega(8))
    assert res.outcome is Outcome.INEQUIVALENT


def test_reflexive_with_identity_witness():
    H = build_subgroup("A6")
    res = structures_equivalent("compact", H, omega(12), omega(12))
    assert res.outcome is Outcome.EQUIVALENT and res.witness == IDENTITY


def test_bounded_search_finds_diagonal_witness():
    H = build_subgroup("A3")
    t2 = Mat2.diag(Fraction(4), Fraction(1, 4))
    res = structures_equivalent("compact", H, IDENTITY, t2)
    assert res.outcome is Outcome.EQUIVALENT
    n = res.witness
    assert relates(COMPACT, H, n, IDENTITY, t2)
    assert n == Mat2.diag(Fraction(1, 2), Fraction(2))
    # its inverse b = diag(2, 1/2) relates the pair the other way round:
    # b^-1 t2 sigma_c(b) lies in I2 H
    b = n.inverse()
    assert b.inverse() @ t2 @ apply_sigma(COMPACT, b) in H


def test_undecided_is_reported_not_coerced():
    # no witness of height <= 2 connects I2 and diag(4, 1/4)
    H = build_subgroup("A3")
    res = structures_equivalent("compact", H, IDENTITY, Mat2.diag(Fraction(4), Fraction(1, 4)), height=1)
    assert res.outcome is Outcome.UNDECIDED


def test_invalid_input_raises():
    with pytest.raises(ValueError):
        structures_equivalent("compact", build_subgroup("A3"), IDENTITY, E)


def test_cyclic_invariants_separate_classes():
    H = build_subgroup("A4")
    w = omega(8)
    assert structures_equivalent("compact", H, IDENTITY, E).outcome is Outcome.INEQUIVALENT
    assert structures_equivalent("compact", H, IDENTITY, w).outcome is Outcome.INEQUIVALENT
    assert structures_equivalent("split", H, E, E @ w).outcome is Outcome.INEQUIVALENT
    A1 = build_subgroup("A1")
    assert structures_equivalent("compact", A1, IDENTITY, MINUS_IDENTITY).outcome is Outcome.INEQUIVALENT


def test_odd_cyclic_split_candidates_collapse():
    # conjugating by e turns f into -f, and (-f)^-1 f omega_2n = -omega_2n lies in A_n
    for n in (3, 5, 7):
        H = build_subgroup(Label("A", n))
        f, fw = cyclic_candidates(SPLIT, n)[1:]
        res = structures_equivalent("split", H, f, fw)
        assert res.outcome is Outcome.EQUIVALENT
        assert relates(SPLIT, H, E, f, fw)


@pytest.mark.parametrize("sigma,label,expected", [
    ("split", "D4", {IDENTITY, omega(8)}),
    ("compact", "E6", {IDENTITY, omega(8)}),
    ("split", "E8", {IDENTITY}),
    ("compact", "E7", {IDENTITY}),
    ("split", "D7", {IDENTITY, omega(20)}),
])
def test_h1_enumerate(sigma, label, expected):
    assert reps(h1_enumerate(sigma, label)) == expected


def test_h1_enumerate_rejects_infinite_quotient():
    with pytest.raises(ValueError):
        h1_enumerate("split", "A5")


@pytest.mark.parametrize("sigma,label,expected", [
    ("compact", "A5", {IDENTITY, MINUS_IDENTITY}),
    ("compact", "A4", {IDENTITY, E, omega(8)}),
    ("split", "A4", {IDENTITY, E, E @ omega(8)}),
    ("split", "A1", {IDENTITY}),
    ("compact", "A1", {IDENTITY, MINUS_IDENTITY}),
    ("split", "A2", {IDENTITY, E}),
])
def test_h1_table(sigma, label, expected):
    assert reps(h1_table(sigma, label)) == expected


@pytest.mark.parametrize("sigma", ["split", "compact"])
@pytest.mark.parametrize("label", ["A1", "A2", "A3", "A4", "A6", "D4", "D5", "E6", "E7", "E8"])
def test_h1_representatives_are_cocycles_and_pairwise_distinct(sigma, label):
    H = build_subgroup(label)
    classes = h1_table(sigma, label)
    for c in classes:
        assert validate_structure(sigma, H, c.representative)
    for i, a in enumerate(classes):
        for b in classes[i + 1:]:
            assert structures_equivalent(sigma, H, a.representative, b.representative).outcome \
                is Outcome.INEQUIVALENT


def brute_force_classes(sigma, H):
    """Partition all cocycles in N(H) by the coboundary relation, without shortcuts."""
    N = normalizer_elements(H)
    cocycles = [a for a in N if validate_structure(sigma, H, a)]
    classes = []
    for a in cocycles:
        for cls in classes:
            if any(relates(sigma, H, n, cls[0], a) for n in N):
                cls.append(a)
                break
        else:
            classes.append([a])
    return classes


@pytest.mark.parametrize("label", ["D4", "D5", "D6", "E6", "E7"])
@pytest.mark.parametrize("sigma", [SPLIT, COMPACT])
def test_h1_count_matches_brute_force(label, sigma):
    H = build_subgroup(label)
    assert len(brute_force_classes(sigma, H)) == len(h1_enumerate(sigma, label))


@pytest.mark.parametrize("label", ["A2", "A4", "A6", "D4", "D5", "D6", "E6", "E7", "E8"])
def test_multiplying_by_e_exchanges_split_and_compact(label):
    # for -I in H, a -> e a maps split classes bijectively onto compact classes
    H = build_subgroup(label)
    split, compact = h1_table(SPLIT, label), h1_table(COMPACT, label)
    assert len(split) == len(compact)
    hit = []
    for c in split:
        t = E @ c.representative
        assert validate_structure(COMPACT, H, t)
        same = [k for k, d in enumerate(compact)
                if structures_equivalent(COMPACT, H, d.representative, t).outcome is Outcome.EQUIVALENT]
        assert len(same) == 1
        hit.extend(same)
    assert sorted(hit) == list(range(len(compact)))


@pytest.mark.parametrize("label,t,expected", [
    ("E6", IDENTITY, True), ("E6", omega(8), False), ("A2", MINUS_IDENTITY, True),
    ("A1", MINUS_IDENTITY, False), ("D5", omega(12), False), ("A4", E, False),
])
def test_sigma_c_locus(label, t, expected):
    assert sigma_c_locus_nonempty(build_subgroup(label), t) is expected


def test_sigma_c_locus_is_a_class_invariant():
    H = build_subgroup("A3")
    t = Mat2.diag(Fraction(4), Fraction(1, 4))
    assert structures_equivalent("compact", H, IDENTITY, t).outcome is Outcome.EQUIVALENT
    assert sigma_c_locus_nonempty(H, t) == sigma_c_locus_nonempty(H, IDENTITY)
