"""Seeded random walks through move space, for property testing.

Every code produced here is reachable from one of the built-in seed codes
by PD-Moves, hence admissible by construction.
"""

from __future__ import annotations

import random
from typing import List, Optional, Tuple

from .core import PDCode, validate
from .moves import INSERT, IrreducibleToEmptyError, Move, apply_move, enumerate_moves

TREFOIL = (
    (4, -2, -5, 1),
    (2, -6, -3, 5),
    (6, -4, -1, 3),
)
MIRROR_TREFOIL = (
    (6, 3, -1, -4),
    (2, 5, -3, -6),
    (4, 1, -5, -2),
)
HOPF = (
    ((1, 2), (2, -2), (1, -1), (2, 1)),
    ((2, 2), (1, -2), (2, -1), (1, 1)),
)
TORUS = (
    (5, 2, -6, -3),
    (3, -1, -4, 6),
    (1, 4, -2, -5),
)


def seed_codes() -> List[PDCode]:
    return [validate(TREFOIL), validate(HOPF), validate(TORUS)]


def random_move(
    rng: random.Random, code: PDCode, max_crossings: int = 10
) -> Optional[Move]:
    """A uniformly chosen applicable move, biased toward removals when the
    code approaches max_crossings."""
    moves = enumerate_moves(code)
    if code.n + 2 > max_crossings:
        shrinking = [m for m in moves if m.direction != INSERT or m.kind in ("R1a", "R1b")]
        if code.n + 1 > max_crossings:
            shrinking = [m for m in moves if m.direction != INSERT]
        moves = shrinking or moves
    if not moves:
        return None
    return rng.choice(moves)


def random_walk(
    rng: random.Random,
    start: PDCode,
    steps: int,
    max_crossings: int = 10,
) -> PDCode:
    code = start
    for _ in range(steps):
        move = random_move(rng, code, max_crossings)
        if move is None:
            break
        try:
            code = apply_move(code, move)
        except IrreducibleToEmptyError:
            continue
    return code


def random_valid_code(
    rng: random.Random, steps: int = 8, max_crossings: int = 10
) -> PDCode:
    return random_walk(rng, rng.choice(seed_codes()), steps, max_crossings)


def random_code_move_pair(
    rng: random.Random, steps: int = 5, max_crossings: int = 10
) -> Tuple[PDCode, Move]:
    while True:
        code = random_valid_code(rng, steps, max_crossings)
        move = random_move(rng, code, max_crossings)
        if move is not None:
            return code, move
