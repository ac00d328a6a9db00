import random

import pytest

from virtual_knot_lab.core.exceptions import BraidParseError, DiagramParseError, SwitchPreconditionError
from virtual_knot_lab.modules.algebra.matrices import identity, mat_equal, mat_mul
from virtual_knot_lab.modules.braids.braidrep import (
    SIGMA,
    TAU,
    Letter,
    VirtualBraidWord,
    check_burau_equivalence,
    fixed_vectors_hold,
    format_braid,
    parse_braid,
    random_word,
    relation_pairs,
    represent,
)
from virtual_knot_lab.modules.diagrams.diagmod import diagram_from_braid
from virtual_knot_lab.modules.invariants.properties import ALEXANDER_MATRIX, ALEXANDER_WORD
from virtual_knot_lab.modules.switches.catalog import get_switch, switch_names


def test_parse_braid():
    w = parse_braid("s1 -s2  v1", 3)
    assert w.letters == (Letter("s", 1), Letter("-s", 2), Letter("v", 1))
    assert format_braid(w) == "s1 -s2 v1"
    assert not w.is_classical()
    assert parse_braid("", 1).letters == ()


@pytest.mark.parametrize("text,strands", [("s0", 3), ("s3", 3), ("x1", 3), ("s1", 0), ("-v1", 2)])
def test_parse_braid_rejects(text, strands):
    with pytest.raises(BraidParseError):
        parse_braid(text, strands)


def test_inverse_and_composition():
    w = parse_braid("s1 v2 -s1", 3)
    assert str(w.inverse()) == "s1 v2 -s1"
    assert str(parse_braid("s1 s2", 3).inverse()) == "-s2 -s1"
    with pytest.raises(BraidParseError):
        w * parse_braid("s1", 2)


@pytest.mark.parametrize("name", switch_names())
def test_virtual_braid_relations(name):
    S = get_switch(name)
    # four strands only add far commutation
    for strands in ((3,) if name in ("e1", "e2") else (3, 4)):
        for lhs, rhs in relation_pairs(strands):
            assert mat_equal(represent(lhs, S), represent(rhs, S)), f"{lhs} != {rhs}"


def test_word_times_inverse_is_identity():
    S = get_switch("budapest", augment_var="t")
    w = parse_braid("s1 v2 -s1 s2", 3)
    assert mat_equal(represent(w * w.inverse(), S), identity(3, S.ring))


def test_first_letter_acts_first():
    S = get_switch("alexander")
    a, b = parse_braid("s1", 3), parse_braid("s2", 3)
    assert mat_equal(represent(a * b, S), mat_mul(represent(b, S), represent(a, S)))


def test_alexander_image_closed_form():
    S = get_switch("alexander")
    f = S.ring.field
    expected = tuple(tuple(f.parse(x) for x in row) for row in ALEXANDER_MATRIX)
    assert mat_equal(represent(parse_braid(ALEXANDER_WORD, 3), S), expected)


@pytest.mark.parametrize("name", ["budapest", "e1"])
def test_burau_conjugation(name):
    S = get_switch(name)
    for text, strands in (("s1", 2), ("s1 -s2 s1", 3)):
        assert check_burau_equivalence(parse_braid(text, strands), S)


def test_burau_conjugation_needs_classical_word():
    with pytest.raises(SwitchPreconditionError):
        check_burau_equivalence(parse_braid("v1", 2), get_switch("budapest"))
    with pytest.raises(SwitchPreconditionError):
        check_burau_equivalence(parse_braid("s1", 2), get_switch("alexander"))


@pytest.mark.parametrize("name", ["budapest", "e1", "e2"])
def test_fixed_vectors(name):
    S = get_switch(name)
    assert fixed_vectors_hold(S, 2)
    assert fixed_vectors_hold(S, 3)


def test_random_words_are_seeded():
    a = random_word(random.Random(5), 4, 10)
    b = random_word(random.Random(5), 4, 10)
    assert a == b
    classical = random_word(random.Random(5), 4, 10, virtual=False)
    assert classical.is_classical()
    assert len(random_word(random.Random(1), 1, 5)) == 0


def test_closure_diagram():
    D = diagram_from_braid(parse_braid("s1 s1 s1", 2))
    assert len(D.crossings) == 3
    assert D.components() == 1
    assert all(c.sign == 1 for c in D.crossings)
    two = diagram_from_braid(parse_braid("s1 s1", 2))
    assert two.components() == 2


def test_closure_with_virtual_crossings():
    D = diagram_from_braid(parse_braid("v2 s1 s2 s1 v2 -s1 -s2 -s1", 3))
    assert len(D.crossings) == 6
    assert D.components() == 1
    assert sorted(c.sign for c in D.crossings) == [-1, -1, -1, 1, 1, 1]


def test_closure_without_classical_crossings_rejected():
    with pytest.raises(DiagramParseError):
        diagram_from_braid(parse_braid("v1", 2))
    with pytest.raises(DiagramParseError):
        diagram_from_braid(VirtualBraidWord(3, (Letter(SIGMA, 1),)))


def test_letter_inverse():
    assert Letter(TAU, 2).inverse() == Letter(TAU, 2)
    assert Letter(SIGMA, 1).inverse() == Letter("-s", 1)
