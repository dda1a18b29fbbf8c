"""Combinatorial Reidemeister rewriting on PD-codes.

Four move families act on codes: two kink insertions/removals (R1a, R1b),
a poke across a 2-cell (R2) and a triangle slide (R3).  Insertions create
fresh arcs strictly between an anchor arc i and its successor; afterwards
every touched component is renumbered back to 1..n preserving cyclic order.
Loop stripping additionally understands the two removal-only kink shapes
(R1c, R1d) that the insertion templates never create but mirror images do.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .core import (
    EdgeLabel,
    PDCode,
    PDError,
    Quadruple,
    canonical_key,
    crossing_sign,
    quad_key,
    successor_arc,
    validate,
)
from .surface import faces

INSERT = "insert"
REMOVE = "remove"
SWAP = "swap"

#: Kinds offered by enumerate_moves.  R1c/R1d exist only as removals used
#: by loop stripping and replay.
MOVE_KINDS = ("R1a", "R1b", "R2", "R3")
LOOP_ONLY_KINDS = ("R1c", "R1d")


class NotApplicableError(PDError):
    """The move does not match the given code."""


class IrreducibleToEmptyError(PDError):
    """Removing the loop would leave a crossingless circle, which PD-codes
    cannot represent."""


@dataclass(frozen=True, order=True)
class Move:
    kind: str
    direction: str
    site: tuple

    def to_json_dict(self):
        def plain(x):
            return [plain(y) for y in x] if isinstance(x, tuple) else x

        return {"kind": self.kind, "direction": self.direction, "site": plain(self.site)}

    @classmethod
    def from_json_dict(cls, data):
        def tup(x):
            return tuple(tup(y) for y in x) if isinstance(x, list) else x

        return cls(data["kind"], data["direction"], tup(data["site"]))


@dataclass(frozen=True)
class MoveSequence:
    """A replayable move path: applying moves[k] to codes[k] yields
    codes[k+1], with codes[0] = start."""

    start: PDCode
    moves: Tuple[Move, ...]
    codes: Tuple[PDCode, ...]

    @property
    def end(self) -> PDCode:
        return self.codes[-1] if self.codes else self.start

    def replay(self) -> PDCode:
        current = self.start
        for move, expected in zip(self.moves, self.codes):
            current = apply_move(current, move)
            if current != expected:
                raise NotApplicableError(f"replay of {move} diverged")
        return current

    def to_json_dict(self):
        from .notation import code_to_json_dict

        return {
            "start": code_to_json_dict(self.start),
            "steps": [
                {**move.to_json_dict(), "resulting_code": code_to_json_dict(code)}
                for move, code in zip(self.moves, self.codes)
            ],
        }


@dataclass(frozen=True)
class NotFound:
    """Search ended without reaching the target; not a proof of
    inequivalence."""

    reason: str  # "exhausted" | "budget"
    visited: int
    expanded: int
    generated: int
    frontier: int

    def to_json_dict(self):
        return {
            "status": "not_found",
            "reason": self.reason,
            "visited": self.visited,
            "expanded": self.expanded,
            "generated": self.generated,
            "frontier": self.frontier,
        }


# ---------------------------------------------------------------------------
# Renumbering machinery


def _insert_numbering(code: PDCode, anchors: List[Tuple[int, int]]):
    """Renumbering for two fresh arcs after each anchor (c, i).

    Returns (fn, news) where fn maps old labels to new ones (redirecting the
    old positive anchor occurrence to the second fresh arc) and
    news[(c, i)] = (i', alpha, beta) in the new numbering.
    """
    per_comp: Dict[int, List[int]] = {}
    for c, i in anchors:
        per_comp.setdefault(c, []).append(i)
    num: Dict[int, Dict[Tuple[int, int], int]] = {}
    for c, islist in per_comp.items():
        keys = [(j, 0) for j in range(1, code.arc_counts[c - 1] + 1)]
        for i in islist:
            keys += [(i, 1), (i, 2)]
        num[c] = {k: r + 1 for r, k in enumerate(sorted(keys))}

    anchor_set = set(anchors)

    def fn(x: EdgeLabel) -> EdgeLabel:
        if x.c not in per_comp:
            return x
        if x.s > 0 and (x.c, x.j) in anchor_set:
            return EdgeLabel(x.c, num[x.c][(x.j, 2)], x.s)
        return EdgeLabel(x.c, num[x.c][(x.j, 0)], x.s)

    news = {
        (c, i): (num[c][(i, 0)], num[c][(i, 1)], num[c][(i, 2)])
        for c, i in anchors
    }
    return fn, news


def _remove_numbering(code: PDCode, removals: List[Tuple[int, int, int, int]]):
    """Renumbering after deleting loop arcs.

    Each removal (c, kept, x, b) deletes arcs x and b of component c and
    redirects the surviving positive occurrence of b to kept.  Returns
    (fn, new_kept) with new_kept[(c, kept)] the kept arc's new number.
    """
    per_comp: Dict[int, set] = {}
    redirect = {}
    for c, kept, x, b in removals:
        per_comp.setdefault(c, set()).update((x, b))
        redirect[(c, b)] = kept
    num: Dict[int, Dict[int, int]] = {}
    for c, gone in per_comp.items():
        survivors = [j for j in range(1, code.arc_counts[c - 1] + 1) if j not in gone]
        num[c] = {j: r + 1 for r, j in enumerate(survivors)}

    def fn(x: EdgeLabel) -> EdgeLabel:
        if x.c not in per_comp:
            return x
        j = x.j
        if x.s > 0 and (x.c, j) in redirect:
            j = redirect[(x.c, j)]
        return EdgeLabel(x.c, num[x.c][j], x.s)

    new_kept = {(c, kept): num[c][kept] for c, kept, _, _ in removals}
    return fn, new_kept


# ---------------------------------------------------------------------------
# Kink (loop) analysis


def _loop_slots(q: Quadruple) -> Optional[Tuple[str, int]]:
    """Detect an adjacent +x/-x loop in a quadruple.

    Returns (kind, loop_arc) where kind reflects the loop's slot pair:
    R1b for slots (0,1), R1c for (1,2), R1a for (2,3), R1d for (3,0).
    """
    for (a, b), kind in (((0, 1), "R1b"), ((1, 2), "R1c"), ((2, 3), "R1a"), ((3, 0), "R1d")):
        if q[a].unsigned() == q[b].unsigned():
            return kind, q[a].j
    return None


def _loop_removal_parts(code: PDCode, qi: int):
    """(kind, c, kept, x, b) for the loop quadruple at index qi."""
    q = code.quadruples[qi]
    hit = _loop_slots(q)
    if hit is None:
        raise NotApplicableError(f"quadruple {qi} contains no loop")
    kind, x = hit
    c = q[0].c
    arcs = {lab.j for lab in q}
    if len(arcs) < 3:
        raise IrreducibleToEmptyError(
            f"removing the loop at quadruple {qi} would empty component {c}"
        )
    others = [lab for lab in q if lab.j != x]
    kept = next(lab.j for lab in others if lab.s > 0)
    b = next(lab.j for lab in others if lab.s < 0)
    return kind, c, kept, x, b


def r1_loops(code: PDCode) -> List[int]:
    """Indices of quadruples containing some arc with both signs."""
    result = []
    for qi, q in enumerate(code.quadruples):
        signs: Dict[Tuple[int, int], set] = {}
        for x in q:
            signs.setdefault(x.unsigned(), set()).add(x.s)
        if any(len(ss) == 2 for ss in signs.values()):
            result.append(qi)
    return result


def strip_r1_loops(code: PDCode) -> Tuple[PDCode, Tuple[Move, ...]]:
    """Remove kinks repeatedly until none remain; returns the reduced code
    and the replayable removal moves."""
    moves = []
    current = code
    while True:
        loops = r1_loops(current)
        if not loops:
            return current, tuple(moves)
        if current.n == 1:
            raise IrreducibleToEmptyError(
                "removing the last loop would empty the code"
            )
        qi = loops[0]
        kind, _, _, _, _ = _loop_removal_parts(current, qi)
        move = Move(kind, REMOVE, (qi,))
        current = apply_move(current, move)
        moves.append(move)


def remove_all_r1_loops(code: PDCode) -> PDCode:
    return strip_r1_loops(code)[0]


# ---------------------------------------------------------------------------
# Move enumeration


def _r3_patterns(code: PDCode, labels: Tuple[Tuple[int, int], ...]):
    """The two printed R3 quadruple triples for arc labels (i, j, k)."""
    (ci, i), (cj, j), (ck, k) = labels

    def lab(c, j, s):
        n_c = code.arc_counts[c - 1]
        return EdgeLabel(c, (j - 1) % n_c + 1, s)

    first = (
        (lab(cj, j - 1, 1), lab(ci, i, 1), lab(cj, j, -1), lab(ci, i + 1, -1)),
        (lab(cj, j, 1), lab(ck, k, -1), lab(cj, j + 1, -1), lab(ck, k - 1, 1)),
        (lab(ck, k, 1), lab(ci, i, -1), lab(ck, k + 1, -1), lab(ci, i - 1, 1)),
    )
    second = (
        (lab(cj, j - 1, 1), lab(ck, k + 1, -1), lab(cj, j, -1), lab(ck, k, 1)),
        (lab(ck, k - 1, 1), lab(ci, i + 1, -1), lab(ck, k, -1), lab(ci, i, 1)),
        (lab(cj, j, 1), lab(ci, i - 1, 1), lab(cj, j + 1, -1), lab(ci, i, -1)),
    )
    return first, second


def _find_r3_sites(code: PDCode, face_list) -> List[Move]:
    sites = []
    quad_set = set(code.quadruples)
    for face in face_list:
        if len(face) != 3:
            continue
        signs = {x.s for x in face}
        if len(signs) != 1:
            continue
        pattern = 1 if face[0].s > 0 else 2
        for r in range(3):
            rotated = face[r:] + face[:r]
            labels = tuple(x.unsigned() for x in rotated)
            first, second = _r3_patterns(code, labels)
            matched = first if pattern == 1 else second
            if all(q in quad_set for q in matched) and len(set(matched)) == 3:
                sites.append(Move("R3", SWAP, labels + (pattern,)))
    return sites


def enumerate_moves(code: PDCode) -> List[Move]:
    """All applicable PD-Moves, deterministically ordered."""
    moves = []

    # Kink insertions at every arc.
    for c in range(1, code.mu + 1):
        for i in range(1, code.arc_counts[c - 1] + 1):
            moves.append(Move("R1a", INSERT, ((c, i),)))
            moves.append(Move("R1b", INSERT, ((c, i),)))

    # Kink removals matching the insertion templates.
    for qi, q in enumerate(code.quadruples):
        hit = _loop_slots(q)
        if hit and hit[0] in ("R1a", "R1b") and len({x.j for x in q}) >= 3:
            moves.append(Move(hit[0], REMOVE, (qi,)))

    # R2 insertions: oppositely oriented label pairs on a common face.
    face_list = faces(code)
    for face in face_list:
        for pos in face:
            if pos.s < 0:
                continue
            for neg in face:
                if neg.s > 0 or neg.unsigned() == pos.unsigned():
                    continue
                moves.append(Move("R2", INSERT, (pos.unsigned(), neg.unsigned())))

    # R2 removals: quadruple pairs matching the poke templates.
    for qi, q1 in enumerate(code.quadruples):
        if crossing_sign(q1) != 1:
            continue
        for qj, q2 in enumerate(code.quadruples):
            if qi == qj or crossing_sign(q2) != -1:
                continue
            if q1[1].unsigned() != q2[1].unsigned():
                continue
            if q1[2].unsigned() != q2[0].unsigned():
                continue
            i_lab, j_lab = q1[3], q1[0]
            alpha, beta = q1[1], q2[3]
            gamma, delta = q1[2], q2[2]
            if len({i_lab.j, alpha.j, beta.j}) < 3 or len({j_lab.j, gamma.j, delta.j}) < 3:
                continue
            if i_lab.c == j_lab.c and len(
                {i_lab.j, alpha.j, beta.j, j_lab.j, gamma.j, delta.j}
            ) < 6:
                continue
            moves.append(Move("R2", REMOVE, (qi, qj)))

    moves += _find_r3_sites(code, face_list)
    moves.sort()
    return moves


# ---------------------------------------------------------------------------
# Move application


def _apply_r1_insert(code: PDCode, move: Move):
    ((c, i),) = move.site
    if not (1 <= c <= code.mu and 1 <= i <= code.arc_counts[c - 1]):
        raise NotApplicableError(f"no arc ({c},{i}) in the code")
    fn, news = _insert_numbering(code, [(c, i)])
    i2, alpha, beta = news[(c, i)]
    if move.kind == "R1a":
        new_quad = (
            EdgeLabel(c, i2, 1),
            EdgeLabel(c, beta, -1),
            EdgeLabel(c, alpha, -1),
            EdgeLabel(c, alpha, 1),
        )
    else:
        new_quad = (
            EdgeLabel(c, alpha, 1),
            EdgeLabel(c, alpha, -1),
            EdgeLabel(c, beta, -1),
            EdgeLabel(c, i2, 1),
        )
    quads = [tuple(fn(x) for x in q) for q in code.quadruples] + [new_quad]
    result = validate(quads)
    inverse = Move(move.kind, REMOVE, (result.quadruples.index(new_quad),))
    return result, inverse


def _apply_r1_remove(code: PDCode, move: Move):
    (qi,) = move.site
    if not 0 <= qi < code.n:
        raise NotApplicableError(f"no quadruple {qi}")
    kind, c, kept, x, b = _loop_removal_parts(code, qi)
    if kind != move.kind:
        raise NotApplicableError(
            f"quadruple {qi} holds an {kind} loop, not {move.kind}"
        )
    if code.n == 1:
        raise IrreducibleToEmptyError("removing the only crossing empties the code")
    fn, new_kept = _remove_numbering(code, [(c, kept, x, b)])
    quads = [
        tuple(fn(lab) for lab in q)
        for k, q in enumerate(code.quadruples)
        if k != qi
    ]
    result = validate(quads)
    inverse = Move(move.kind, INSERT, ((c, new_kept[(c, kept)]),))
    return result, inverse


def _r2_partners(code: PDCode, i_lab: Tuple[int, int], j_lab: Tuple[int, int]):
    """Check the common-face condition for an R2 insertion site."""
    (ci, i), (cj, j) = i_lab, j_lab
    pos = EdgeLabel(ci, i, 1)
    neg = EdgeLabel(cj, j, -1)
    for face in faces(code):
        if pos in face and neg in face:
            return True
    return False


def _apply_r2_insert(code: PDCode, move: Move):
    i_lab, j_lab = move.site
    if i_lab == j_lab:
        raise NotApplicableError("R2 requires two distinct arcs")
    if not _r2_partners(code, i_lab, j_lab):
        raise NotApplicableError(
            f"arcs {i_lab} (+) and {j_lab} (-) do not bound a common 2-cell "
            "with opposite orientations"
        )
    (ci, i), (cj, j) = i_lab, j_lab
    fn, news = _insert_numbering(code, [(ci, i), (cj, j)])
    i2, alpha, beta = news[(ci, i)]
    j2, gamma, delta = news[(cj, j)]
    q1 = (
        EdgeLabel(cj, j2, 1),
        EdgeLabel(ci, alpha, -1),
        EdgeLabel(cj, gamma, -1),
        EdgeLabel(ci, i2, 1),
    )
    q2 = (
        EdgeLabel(cj, gamma, 1),
        EdgeLabel(ci, alpha, 1),
        EdgeLabel(cj, delta, -1),
        EdgeLabel(ci, beta, -1),
    )
    quads = [tuple(fn(x) for x in q) for q in code.quadruples] + [q1, q2]
    result = validate(quads)
    inverse = Move(
        "R2", REMOVE, (result.quadruples.index(q1), result.quadruples.index(q2))
    )
    return result, inverse


def _apply_r2_remove(code: PDCode, move: Move):
    qi, qj = move.site
    if not (0 <= qi < code.n and 0 <= qj < code.n) or qi == qj:
        raise NotApplicableError(f"bad quadruple pair {move.site}")
    q1, q2 = code.quadruples[qi], code.quadruples[qj]
    if (
        crossing_sign(q1) != 1
        or crossing_sign(q2) != -1
        or q1[1].unsigned() != q2[1].unsigned()
        or q1[2].unsigned() != q2[0].unsigned()
    ):
        raise NotApplicableError(f"quadruples {qi},{qj} do not match the R2 templates")
    i_lab, j_lab = q1[3], q1[0]
    alpha, beta = q1[1].j, q2[3].j
    gamma, delta = q1[2].j, q2[2].j
    removals = [
        (i_lab.c, i_lab.j, alpha, beta),
        (j_lab.c, j_lab.j, gamma, delta),
    ]
    if len({i_lab.j, alpha, beta}) < 3 or len({j_lab.j, gamma, delta}) < 3:
        raise IrreducibleToEmptyError(
            "undoing this poke would empty a component"
        )
    if i_lab.c == j_lab.c:
        if len({i_lab.j, alpha, beta, j_lab.j, gamma, delta}) < 6:
            raise NotApplicableError("overlapping arc roles in R2 removal")
        removals = [(i_lab.c, i_lab.j, alpha, beta), (i_lab.c, j_lab.j, gamma, delta)]
    fn, new_kept = _remove_numbering(code, removals)
    quads = [
        tuple(fn(lab) for lab in q)
        for k, q in enumerate(code.quadruples)
        if k not in (qi, qj)
    ]
    result = validate(quads)
    inverse = Move(
        "R2",
        INSERT,
        (
            (i_lab.c, new_kept[(i_lab.c, i_lab.j)]),
            (j_lab.c, new_kept[(j_lab.c, j_lab.j)]),
        ),
    )
    return result, inverse


def _apply_r3(code: PDCode, move: Move):
    *labels, pattern = move.site
    labels = tuple(labels)
    first, second = _r3_patterns(code, labels)
    old, new = (first, second) if pattern == 1 else (second, first)
    quad_set = set(code.quadruples)
    if not all(q in quad_set for q in old) or len(set(old)) != 3:
        raise NotApplicableError(f"R3 triple {labels} (pattern {pattern}) not present")
    quads = [q for q in code.quadruples if q not in set(old)] + list(new)
    result = validate(quads)
    inverse = Move("R3", SWAP, labels + (3 - pattern,))
    return result, inverse


def apply_move_with_inverse(code: PDCode, move: Move) -> Tuple[PDCode, Move]:
    """Apply a move, returning the resulting code and the move undoing it."""
    if move.kind in ("R1a", "R1b"):
        if move.direction == INSERT:
            return _apply_r1_insert(code, move)
        if move.direction == REMOVE:
            return _apply_r1_remove(code, move)
    elif move.kind in LOOP_ONLY_KINDS and move.direction == REMOVE:
        return _apply_r1_remove(code, move)
    elif move.kind == "R2":
        if move.direction == INSERT:
            return _apply_r2_insert(code, move)
        if move.direction == REMOVE:
            return _apply_r2_remove(code, move)
    elif move.kind == "R3" and move.direction == SWAP:
        return _apply_r3(code, move)
    raise NotApplicableError(f"unknown move {move.kind}/{move.direction}")


def apply_move(code: PDCode, move: Move) -> PDCode:
    return apply_move_with_inverse(code, move)[0]


def inverse_move(code: PDCode, move: Move) -> Move:
    return apply_move_with_inverse(code, move)[1]


# ---------------------------------------------------------------------------
# Bounded equivalence search


def _insert_growth(move: Move) -> int:
    if move.direction == INSERT:
        return 1 if move.kind in ("R1a", "R1b") else 2
    if move.kind == "R3":
        return 0
    return -1 if move.kind in ("R1a", "R1b") else -2


def equivalent_bounded(
    a: PDCode, b: PDCode, max_crossings: int, max_codes: int
):
    """Breadth-first search for a PD-Move path from a to b.

    Codes are deduplicated up to cyclic arc relabeling.  Returns a
    MoveSequence on success; otherwise a NotFound carrying the search
    statistics ("exhausted" means the whole bounded space was covered,
    "budget" that max_codes distinct codes were seen first).
    """
    if max_crossings < max(a.n, b.n):
        raise ValueError("max_crossings must be at least max(n_a, n_b)")
    target = canonical_key(b)
    start_key = canonical_key(a)
    if start_key == target:
        return MoveSequence(a, (), ())
    parents: Dict[tuple, Optional[Tuple[tuple, Move, PDCode]]] = {start_key: None}
    queue = deque([(a, start_key)])
    expanded = 0
    generated = 0

    def reconstruct(key):
        moves, codes = [], []
        while parents[key] is not None:
            key, move, child = parents[key]
            moves.append(move)
            codes.append(child)
        return MoveSequence(a, tuple(reversed(moves)), tuple(reversed(codes)))

    while queue:
        current, current_key = queue.popleft()
        expanded += 1
        for move in enumerate_moves(current):
            if current.n + _insert_growth(move) > max_crossings:
                continue
            try:
                child = apply_move(current, move)
            except IrreducibleToEmptyError:
                continue
            generated += 1
            key = canonical_key(child)
            if key in parents:
                continue
            parents[key] = (current_key, move, child)
            if key == target:
                return reconstruct(key)
            if len(parents) >= max_codes:
                return NotFound("budget", len(parents), expanded, generated, len(queue))
            queue.append((child, key))
    return NotFound("exhausted", len(parents), expanded, generated, 0)
