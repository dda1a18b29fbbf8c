"""Acceptance gate: one test per shipped guarantee, one pass/fail line each.

All comparisons are exact; every randomized check uses a fixed seed so the
suite is deterministic.
"""

import itertools
import random

from pdcodes import (
    NotFound,
    WhittenElement,
    act,
    apply_move,
    canonical_relabel,
    equivalent_bounded,
    faces,
    group_elements,
    identity,
    infer_signs,
    multiply,
    parse,
    serialize,
    stabilizer,
    strip_signs,
    surface_report,
    symmetry_free_form,
)
from pdcodes.core import canonical_key, check
from pdcodes.moves import IrreducibleToEmptyError, apply_move_with_inverse
from pdcodes.notation import FLAVORS
from pdcodes.randomgen import random_code_move_pair, random_valid_code


def _report(criterion, ok, detail):
    line = f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    assert ok, line


def _cyclic_faces(code):
    result = set()
    for face in faces(code):
        signed = tuple((x.c, x.j * x.s) for x in face)
        result.add(
            frozenset(signed[k:] + signed[:k] for k in range(len(signed)))
        )
    return result


def _cyc(*arcs):
    labels = tuple((1, a) for a in arcs)
    return frozenset(labels[k:] + labels[:k] for k in range(len(labels)))


def test_criterion_01_trefoil_faces(trefoil):
    expected = {
        _cyc(1, -4),
        _cyc(-1, -3, -5),
        _cyc(-2, 5),
        _cyc(2, 6, 4),
        _cyc(-6, 3),
    }
    report = surface_report(trefoil)
    ok = (
        _cyclic_faces(trefoil) == expected
        and report.chi == 2
        and report.total_genus == 0
        and report.spherical
    )
    _report(1, ok, "trefoil faces, chi=2, genus 0, spherical")


def test_criterion_02_torus_faces(torus):
    expected = {
        _cyc(1, -4, -6, 3),
        _cyc(2, 6, -3, -5, -1, 4),
        _cyc(5, -2),
    }
    report = surface_report(torus)
    ok = (
        _cyclic_faces(torus) == expected
        and report.chi == 0
        and report.total_genus == 1
        and not report.spherical
    )
    _report(2, ok, "torus-embedded code faces, chi=0, genus 1, not spherical")


def test_criterion_03_two_component_link(two_component_link):
    report = surface_report(two_component_link)
    ok = (
        two_component_link.mu == 2
        and two_component_link.arc_counts == (10, 4)
        and len(report.connected_components) == 1
        and report.chi == 2
        and report.spherical
    )
    _report(3, ok, "7-crossing link validates: mu=2, n=(10,4), connected, chi=2")


def test_criterion_04_mirror_action(trefoil, mirror_trefoil):
    image = act(WhittenElement(-1, (-1,), (1,)), trefoil)
    ok = image == mirror_trefoil
    _report(4, ok, "act((-1,-1), trefoil) equals the mirror trefoil exactly")


def test_criterion_05_hopf_fixed_point(hopf):
    stab = stabilizer(hopf)  # full enumeration of the 16 elements
    ok = WhittenElement(1, (1, 1), (2, 1)) in stab
    _report(5, ok, "(1,1,1,(12)) stabilizes the Hopf code")


def test_criterion_06_symmetry_free_form(trefoil, hopf):
    ok = True
    for code in (trefoil, hopf):
        free = symmetry_free_form(code)
        ok = ok and stabilizer(free.code) == [identity(code.mu)]
    _report(6, ok, "symmetry-free forms of trefoil and Hopf have trivial stabilizer")


def test_criterion_07_group_axioms():
    elements = list(group_elements(2))
    e = identity(2)
    ok = len(elements) == 16
    for g, h, k in itertools.product(elements, repeat=3):
        if multiply(multiply(g, h), k) != multiply(g, multiply(h, k)):
            ok = False
            break
    for g in elements:
        if multiply(g, e) != g or multiply(e, g) != g:
            ok = False
        if not any(
            multiply(g, h) == e and multiply(h, g) == e for h in elements
        ):
            ok = False
    _report(7, ok, "Gamma_2 axioms: 16^3 associativity, identity, inverses")


def test_criterion_08_action_consistency(hopf):
    rng = random.Random(7)
    codes = [hopf]
    while True:
        c = random_valid_code(rng, steps=6)
        if c.mu == 2:
            codes.append(c)
            break
    ok = all(
        act(g, act(h, c)) == act(multiply(g, h), c)
        for g, h in itertools.product(group_elements(2), repeat=2)
        for c in codes
    )
    _report(8, ok, "act(g, act(h, C)) = act(g*h, C) over all 256 Gamma_2 pairs")


def test_criterion_09_move_suite():
    rng = random.Random(42)
    ok = True
    detail = "1000 random moves: valid output, chi/genus kept, inverses exact"
    for trial in range(1000):
        code, move = random_code_move_pair(rng, steps=5, max_crossings=10)
        before = surface_report(code)
        try:
            result, inverse = apply_move_with_inverse(code, move)
        except IrreducibleToEmptyError:
            continue
        after = surface_report(result)
        if check(result.quadruples):
            ok, detail = False, f"trial {trial}: move output fails validation"
            break
        if (before.chi, before.total_genus) != (after.chi, after.total_genus):
            ok, detail = False, f"trial {trial}: chi or genus changed"
            break
        back = apply_move(result, inverse)
        if canonical_key(back) != canonical_key(code):
            ok, detail = False, f"trial {trial}: inverse does not restore the code"
            break
        if move.kind == "R3" and result.n != code.n:
            ok, detail = False, f"trial {trial}: R3 changed the crossing count"
            break
    _report(9, ok, detail)


def test_criterion_10_sign_inference(sample_codes):
    ok = all(
        infer_signs(strip_signs(code)) == code
        for code in sample_codes.values()
    )
    rng = random.Random(5)
    for trial in range(1000):
        code = random_valid_code(rng, steps=5, max_crossings=10)
        if infer_signs(strip_signs(code)) != code:
            ok = False
            break
    _report(10, ok, "infer_signs(strip_signs(C)) = C on all fixtures + 1000 random")


def test_criterion_11_notation_roundtrip(sample_codes):
    ok = all(
        parse(serialize(code, flavor), flavor) == code
        for code in sample_codes.values()
        for flavor in FLAVORS
    )
    _report(11, ok, "parse/serialize identity across all three flavors")


def test_criterion_12_bounded_search(trefoil, kinked_trefoil, mirror_trefoil):
    found = equivalent_bounded(trefoil, kinked_trefoil, 4, 10_000)
    missing = equivalent_bounded(trefoil, mirror_trefoil, 6, 10_000)
    ok = (
        not isinstance(found, NotFound)
        and len(found.moves) == 1
        and canonical_relabel(found.replay()) == canonical_relabel(kinked_trefoil)
        and isinstance(missing, NotFound)
        and missing.reason == "exhausted"
        and missing.visited > 0
        and missing.generated >= missing.visited
        and missing.frontier == 0
    )
    _report(12, ok, "bounded search: 1-move witness found; mirror search exhausts")
