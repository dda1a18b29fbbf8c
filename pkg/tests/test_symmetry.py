import itertools

import pytest

from pdcodes import (
    WhittenElement,
    act,
    group_elements,
    identity,
    multiply,
    stabilizer,
    symmetry_free_form,
)
from pdcodes.symmetry import (
    MuMismatchError,
    inverse,
    parse_element,
    perm_to_cycles,
)


def test_group_order():
    assert len(list(group_elements(1))) == 4
    assert len(list(group_elements(2))) == 16
    assert len(list(group_elements(3))) == 96


def test_identity_action(trefoil, hopf):
    assert act(identity(1), trefoil) == trefoil
    assert act(identity(2), hopf) == hopf


def test_mirror_action(trefoil, mirror_trefoil):
    mirror = WhittenElement(-1, (-1,), (1,))
    assert act(mirror, trefoil) == mirror_trefoil
    assert act(mirror, mirror_trefoil) == trefoil


def test_action_is_group_action_gamma1(trefoil):
    for g, h in itertools.product(group_elements(1), repeat=2):
        assert act(g, act(h, trefoil)) == act(multiply(g, h), trefoil)


def test_inverses():
    for mu in (1, 2):
        for g in group_elements(mu):
            assert multiply(g, inverse(g)) == identity(mu)
            assert multiply(inverse(g), g) == identity(mu)


def test_hopf_stabilizer(hopf):
    stab = stabilizer(hopf)
    assert WhittenElement(1, (1, 1), (2, 1)) in stab
    assert stab == [identity(2), WhittenElement(1, (1, 1), (2, 1))]


def test_trefoil_stabilizer_trivial(trefoil):
    assert stabilizer(trefoil) == [identity(1)]


def test_mu_mismatch(trefoil):
    with pytest.raises(MuMismatchError):
        act(identity(2), trefoil)


def test_free_form(trefoil, hopf, kinked_trefoil):
    for code in (trefoil, hopf, kinked_trefoil):
        result = symmetry_free_form(code)
        assert stabilizer(result.code) == [identity(code.mu)]
        assert result.sequence.replay() == result.code


def test_free_form_adds_component_indexed_kinks(hopf):
    result = symmetry_free_form(hopf)
    # component k receives k extra crossings
    assert result.code.n == hopf.n + 1 + 2


def test_parse_and_print_elements():
    g = parse_element("(-1; -1, 1; (12))", 2)
    assert g == WhittenElement(-1, (-1, 1), (2, 1))
    assert parse_element(str(g), 2) == g
    assert parse_element("(1; 1; id)", 1) == identity(1)


def test_perm_to_cycles():
    assert perm_to_cycles((1, 2)) == "id"
    assert perm_to_cycles((2, 1)) == "(12)"
    assert perm_to_cycles((2, 3, 1)) == "(123)"
