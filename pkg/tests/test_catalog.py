from collections import Counter
from fractions import Fraction
from itertools import combinations, product

import pytest

from sl2forms.catalog import (dihedral_spokes, e6_quartic_spokes, example_embedding,
                              extendable_class_counts, extends_up_to_automorphism, minimal_completion,
                              reproduce_extension_table, reproduce_h1_table, reproduce_structure_table,
                              sigma_c_locus_rows, structure_list)
from sl2forms.descent import GammaAction, check_extension
from sl2forms.embeddings import (AB, A, Bplus, C, Embedding, OrbitType, facet, is_complete,
                                 record_problem, validate_embedding)
from sl2forms.equipment import diagram
from sl2forms.sl2core import IDENTITY, Label, SigmaKind, omega
from oracles import tilings

Q = Fraction


# decoding of the completion diagrams ----------------------------------------------------

def diagram_marks(label: Label) -> dict:
    """Spokes carrying a tick mark in the completion diagrams, with the mark positions."""
    if label.family == "E":
        if label.n == 6:
            j = e6_quartic_spokes()[0]
        else:
            size = 6 if label.n == 7 else 12
            j = next(k for k in diagram(label).spokes() if k.size == size)
        return {j: [j.b]}
    j_wx, _, j_f3 = dihedral_spokes(label.n)
    if label.n == 5:
        return {j_f3: [j_f3.b]}
    return {j_wx: [Q(0)], j_f3: [j_f3.b]}


def candidate_records(marks: dict) -> list:
    out = []
    spokes = list(marks)
    for j, ms in marks.items():
        out += [C(j, m) for m in ms]
        ends = [Q(-1)] + ms
        out += [AB(j, x, y) for x, y in combinations(ends, 2) if x < y]
        out += [Bplus(j, x) for x in ends if x < j.b]
    for k in range(1, len(spokes) + 1):
        for subset in combinations(spokes, k):
            for rs in product(*(marks[j] for j in subset)):
                out.append(A(list(subset), list(rs)))
    return [r for r in out if record_problem(r) is None]


def boundaries(emb: Embedding, j) -> set:
    pts = set()
    for rec in emb.records:
        for part in facet(rec).on(j).parts:
            for x in (part.lo, part.hi):
                if x == -1:
                    continue
                if x == j.b and part.hi == j.b and part.lo < j.b:
                    continue
                pts.add(x)
    return pts


def realizes(emb: Embedding, marks: dict) -> bool:
    spokes = set(diagram(emb.group).spokes()) | set(marks)
    return all(boundaries(emb, j) == set(marks.get(j, [])) for j in spokes)


def decode(label: Label) -> list:
    marks = diagram_marks(label)

    def accept(combo):
        emb = Embedding(label, combo)
        return validate_embedding(emb).valid and is_complete(emb) and realizes(emb, marks)

    return tilings(candidate_records(marks), accept)


@pytest.mark.parametrize("label", ["D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8"])
def test_completion_is_the_unique_tiling_of_the_marks(label):
    label = Label.parse(label)
    found = decode(label)
    assert len(found) == 1
    fixture = minimal_completion(label).embedding
    assert Counter(r.identity() for r in found[0]) == Counter(r.identity() for r in fixture.records)


def test_completion_spoke_lengths():
    emb = minimal_completion("D4").embedding
    touched = sorted({j for r in emb.records for j in r.spokes}, key=lambda j: j.key())
    assert sorted([j.b for j in touched] + [diagram("D4").generic_b]) == [Q(-1, 2), 0, 0]
    assert [b for _, b in diagram("E8").special] == [Q(-5, 6), Q(-9, 10), Q(-14, 15)]


def test_completion_out_of_range():
    for bad in ("A3", "A1"):
        with pytest.raises(ValueError):
            minimal_completion(bad)


def test_example_records():
    p2 = example_embedding("p2xp1")
    assert len(p2.embedding.records) == 4 and p2.complete
    tb = example_embedding("two_bminus")
    assert sum(r.kind is OrbitType.BMINUS for r in tb.embedding.records) == 2
    cube = example_embedding("p1cubed").embedding
    assert cube.group == Label("A", 2)
    kinds = Counter((r.kind, len(r.spokes)) for r in cube.records)
    assert kinds == {(OrbitType.A, 3): 1, (OrbitType.C, 1): 3}
    with pytest.raises(ValueError):
        example_embedding("p3")


@pytest.mark.parametrize("name", ["p2xp1", "two_bminus", "p1cubed"])
def test_example_completeness_flag(name):
    fx = example_embedding(name)
    assert validate_embedding(fx.embedding).valid
    assert is_complete(fx.embedding) == fx.complete


# tables ------------------------------------------------------------------------------------

def row(report, key):
    return next(r for r in report.rows if r.key == key)


def test_h1_report_rows():
    rep = reproduce_h1_table()
    assert len(rep.rows) == 32
    assert row(rep, "D4 split").computed == ["I2", "omega8"]
    assert row(rep, "E8 compact").computed == ["I2"]
    assert sorted(row(rep, "A4 compact").computed) == ["I2", "e", "omega8"]
    assert row(rep, "E7 split").match


def test_h1_report_flags_odd_cyclic_split_rows():
    rep = reproduce_h1_table()
    bad = {r.key for r in rep.mismatches()}
    assert bad == {"A3 split", "A5 split", "A7 split"}
    assert "equivalent" in row(rep, "A5 split").detail


def test_extension_report():
    rep = reproduce_extension_table()
    assert rep.all_match
    assert row(rep, "E6 split omega8").computed == "YES"
    assert row(rep, "E6 split I2").computed == "NO"
    assert row(rep, "D5 compact I2").computed == "NO"
    assert row(rep, "D5 compact omega12").computed == "YES"


def test_d4_needs_an_automorphism_of_the_completion():
    emb = minimal_completion("D4").embedding
    direct = check_extension(GammaAction.of("split", "D4", omega(8)), emb)
    assert not direct.extends
    ans = extends_up_to_automorphism(SigmaKind.SPLIT, Label("D", 4), omega(8), emb)
    assert ans.extends and ans.conjugator != IDENTITY


def test_structure_report():
    rep = reproduce_structure_table()
    assert row(rep, "D5 compact omega12").computed == "empty"
    assert row(rep, "E8 compact I2").computed == "SU2/E8"
    assert row(rep, "A1 compact -I2").computed == "empty"
    bad = {r.key.rsplit(" ", 1)[0] for r in rep.mismatches()}
    assert bad == {"A3 split", "A5 split", "A7 split"}


def test_compact_locus_column():
    assert all(r.match for r in sigma_c_locus_rows())


def test_structure_list_twists_are_valid():
    from sl2forms.realhom import validate_structure
    from sl2forms.sl2core import build_subgroup
    for ent in structure_list():
        assert validate_structure(ent.sigma, build_subgroup(ent.label), ent.twist), ent


def test_extendable_counts():
    counts = extendable_class_counts()
    for key, n in counts.items():
        assert n == (2 if key.startswith("D4") else 1), key
