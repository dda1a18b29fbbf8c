import random

import pytest

from pdcodes import (
    Move,
    NotApplicableError,
    NotFound,
    apply_move,
    canonical_relabel,
    enumerate_moves,
    equivalent_bounded,
    r1_loops,
    remove_all_r1_loops,
    validate,
)
from pdcodes.core import canonical_key
from pdcodes.moves import IrreducibleToEmptyError, apply_move_with_inverse
from pdcodes.randomgen import random_code_move_pair


def test_r1a_insert_worked_example(trefoil):
    result = apply_move(trefoil, Move("R1a", "insert", ((1, 1),)))
    assert result == validate(
        ((1, -3, -2, 2), (6, -4, -7, 3), (4, -8, -5, 7), (8, -6, -1, 5))
    )


def test_r1_insert_sites_cover_every_arc(trefoil):
    inserts = [
        m for m in enumerate_moves(trefoil)
        if m.kind in ("R1a", "R1b") and m.direction == "insert"
    ]
    # one R1a and one R1b per arc
    assert len(inserts) == 2 * 6


def test_r2_insert_requires_shared_face(trefoil):
    with pytest.raises(NotApplicableError):
        # arcs 1 and 2 never share a face with the required signs
        apply_move(trefoil, Move("R2", "insert", ((1, 1), (1, 2))))


def test_insert_then_remove_is_identity(trefoil, hopf, torus):
    for code in (trefoil, hopf, torus):
        for move in enumerate_moves(code):
            if move.direction != "insert":
                continue
            bigger, inverse = apply_move_with_inverse(code, move)
            back = apply_move(bigger, inverse)
            assert canonical_key(back) == canonical_key(code)


def test_remove_then_insert_is_identity(kinked_trefoil):
    for move in enumerate_moves(kinked_trefoil):
        if move.direction != "remove":
            continue
        smaller, inverse = apply_move_with_inverse(kinked_trefoil, move)
        back = apply_move(smaller, inverse)
        assert canonical_key(back) == canonical_key(kinked_trefoil)


def test_r3_self_inverse():
    rng = random.Random(1)
    checked = 0
    while checked < 5:
        code, _ = random_code_move_pair(rng, steps=6, max_crossings=8)
        sites = [m for m in enumerate_moves(code) if m.kind == "R3"]
        for move in sites[:1]:
            swapped, inverse = apply_move_with_inverse(code, move)
            assert swapped.n == code.n
            back = apply_move(swapped, inverse)
            assert canonical_key(back) == canonical_key(code)
            checked += 1


def test_loop_stripping(kinked_trefoil, trefoil):
    assert r1_loops(kinked_trefoil)
    stripped = remove_all_r1_loops(kinked_trefoil)
    assert not r1_loops(stripped)
    assert canonical_key(stripped) == canonical_key(trefoil)


def test_stripping_kink_only_code_raises():
    with pytest.raises(IrreducibleToEmptyError):
        remove_all_r1_loops(validate(((1, 2, -2, -1),)))


def test_move_json_roundtrip():
    move = Move("R2", "insert", ((1, 3), (2, 1)))
    assert Move.from_json_dict(move.to_json_dict()) == move


def test_search_finds_single_kink(trefoil, kinked_trefoil):
    outcome = equivalent_bounded(trefoil, kinked_trefoil, 4, 10_000)
    assert not isinstance(outcome, NotFound)
    assert len(outcome.moves) == 1
    assert outcome.replay() == outcome.end
    assert canonical_key(outcome.end) == canonical_key(kinked_trefoil)


def test_search_mirror_trefoil_not_found(trefoil, mirror_trefoil):
    outcome = equivalent_bounded(trefoil, mirror_trefoil, 6, 10_000)
    assert isinstance(outcome, NotFound)
    assert outcome.reason == "exhausted"
    assert outcome.visited > 0


def test_search_budget_stops(trefoil, mirror_trefoil):
    outcome = equivalent_bounded(trefoil, mirror_trefoil, 8, 50)
    assert isinstance(outcome, NotFound)
    assert outcome.reason == "budget"


def test_search_same_code_is_empty_sequence(trefoil):
    outcome = equivalent_bounded(trefoil, trefoil, 3, 100)
    assert not isinstance(outcome, NotFound)
    assert outcome.moves == ()


def test_randomized_moves_preserve_validity_and_surface():
    from pdcodes.surface import surface_report

    rng = random.Random(99)
    for _ in range(50):
        code, move = random_code_move_pair(rng, steps=5, max_crossings=10)
        before = surface_report(code)
        try:
            result = apply_move(code, move)
        except IrreducibleToEmptyError:
            continue
        after = surface_report(result)
        assert (before.chi, before.total_genus) == (after.chi, after.total_genus)
