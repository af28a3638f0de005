import pytest

from sl2forms.catalog import e6_quartic_spokes, example_embedding, minimal_completion
from sl2forms.cyclo import I_UNIT
from sl2forms.descent import (ExtensionOutcome, GammaAction, check_extension, gamma_on_color,
                              gamma_on_record, gamma_on_valuation)
from sl2forms.embeddings import AB, A, Bplus, C, Embedding, validate_embedding
from sl2forms.equipment import CENTER, ProjPoint, Valuation, color_orbit
from sl2forms.sl2core import E, F, IDENTITY, MINUS_IDENTITY, Label, build_subgroup, omega

EFF = ExtensionOutcome.EXTENDS_EFFECTIVE
NOT = ExtensionOutcome.NOT_PRESERVED
WEAK = ExtensionOutcome.EXTENDS_NOT_EFFECTIVE


def verdict(sigma, label, t, emb):
    return check_extension(GammaAction.of(sigma, label, t), emb).outcome


def test_invalid_structure_rejected():
    with pytest.raises(ValueError):
        GammaAction.of("compact", "A3", E)


def test_split_identity_fixes_real_points():
    act = GammaAction.of("split", "A1", IDENTITY)
    j = color_orbit(build_subgroup("A1"), ProjPoint(1, 3))
    assert gamma_on_color(act, j) == j
    rec = C(j, 1)
    assert gamma_on_record(act, rec) == rec


def test_compact_swaps_poles():
    # [a:b] -> [-conj b : conj a]
    act = GammaAction.of("compact", "A1", IDENTITY)
    H = build_subgroup("A1")
    j10, j01 = color_orbit(H, ProjPoint(1, 0)), color_orbit(H, ProjPoint(0, 1))
    assert gamma_on_color(act, j01) == j10
    assert gamma_on_record(act, C(j01, 1)) == C(j10, 1)
    assert gamma_on_valuation(act, Valuation(j10, 0)) == Valuation(j01, 0)
    assert gamma_on_valuation(act, CENTER) is CENTER
    # the antipodal map has no fixed color
    jz = color_orbit(H, ProjPoint(1, I_UNIT))
    assert gamma_on_color(act, jz) == color_orbit(H, ProjPoint(1, -I_UNIT))


def test_example_p2xp1():
    emb = example_embedding("p2xp1").embedding
    assert verdict("split", "A1", IDENTITY, emb) is EFF
    v = check_extension(GammaAction.of("compact", "A1", IDENTITY), emb)
    assert v.outcome is NOT and v.witnesses
    assert verdict("compact", "A1", MINUS_IDENTITY, emb) is NOT


def test_example_two_bminus():
    emb = example_embedding("two_bminus").embedding
    assert verdict("split", "A1", IDENTITY, emb) is EFF
    assert verdict("compact", "A1", IDENTITY, emb) is WEAK
    assert verdict("compact", "A1", MINUS_IDENTITY, emb) is WEAK


@pytest.mark.parametrize("sigma,t,outcome", [
    ("split", E, NOT),              # mu_1
    ("split", IDENTITY, EFF),       # mu_2
    ("split", F, EFF),              # mu_3
    ("compact", IDENTITY, NOT),     # mu_4
    ("compact", E, EFF),            # mu_5
    ("compact", E @ F, EFF),        # mu_6
])
def test_example_p1cubed(sigma, t, outcome):
    emb = example_embedding("p1cubed").embedding
    assert verdict(sigma, "A2", t, emb) is outcome


def test_a3_record_survives_permutation():
    emb = example_embedding("p1cubed").embedding
    act = GammaAction.of("split", "A2", F)
    a3 = next(r for r in emb.records if len(r.spokes) == 3)
    image = gamma_on_record(act, a3)
    assert image.spokes != a3.spokes
    assert image.identity() == a3.identity()


def test_e6_color_swap():
    j1, j2 = e6_quartic_spokes()
    for sigma in ("split", "compact"):
        act = GammaAction.of(sigma, "E6", IDENTITY)
        assert gamma_on_color(act, j1) == j2
        assert gamma_on_color(act, j2) == j1
        act = GammaAction.of(sigma, "E6", omega(8))
        assert gamma_on_color(act, j1) == j1


def test_gamma_is_involution_and_keeps_b():
    for label, t in (("E7", IDENTITY), ("D6", omega(16)), ("A5", F)):
        act = GammaAction.of("split", label, t)
        H = build_subgroup(label)
        for p in (ProjPoint(1, 2), ProjPoint(1, I_UNIT + 3), ProjPoint(0, 1)):
            j = color_orbit(H, p)
            g = gamma_on_color(act, j)
            assert gamma_on_color(act, g) == j and g.b == j.b


def test_label_mismatch_raises():
    emb = minimal_completion("E6").embedding
    with pytest.raises(ValueError):
        check_extension(GammaAction.of("split", "E7", IDENTITY), emb)


def test_nu0_exceptional_spokes_must_be_stable():
    H = build_subgroup("A1")

    def emb_on(p):
        j = color_orbit(H, p)
        return Embedding(Label("A", 1), (AB(j, -1, 0), C(j, 0), Bplus(j, 0)), nu0=True)

    real, nonreal = emb_on(ProjPoint(1, 2)), emb_on(ProjPoint(1, I_UNIT))
    assert validate_embedding(real).valid and validate_embedding(nonreal).valid
    assert verdict("split", "A1", IDENTITY, real) is EFF
    assert verdict("split", "A1", IDENTITY, nonreal) is NOT


def test_effective_verdict_is_stable_under_relisting():
    emb = minimal_completion("E8").embedding
    act = GammaAction.of("compact", "E8", IDENTITY)
    assert check_extension(act, emb).effective
    moved = Embedding(emb.group, tuple(gamma_on_record(act, r) for r in emb.records), emb.nu0)
    assert check_extension(act, moved).outcome is EFF
