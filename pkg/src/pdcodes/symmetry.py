"""The Whitten group and its intrinsic-symmetry action on PD-codes.

An element (eps0, eps_1..eps_mu, p) of Z_2^(mu+1) x| S_mu acts by permuting
components, mirroring (rotating each quadruple by one slot, direction given
by its crossing sign) and reversing individual components (arc reversal,
a two-slot rotation of crossings whose under strand lies on the reversed
component, and a global sign flip on that component).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, List, Tuple

from .core import EdgeLabel, PDCode, PDError, crossing_sign, validate
from .moves import Move, MoveSequence, apply_move, strip_r1_loops


class MuMismatchError(PDError):
    """Group element and code disagree on the number of components."""


class PostconditionFailedError(PDError):
    """An internally verified postcondition did not hold."""


@dataclass(frozen=True, order=True)
class WhittenElement:
    """(eps0, eps, perm) with perm stored as a 1-based image tuple."""

    eps0: int
    eps: Tuple[int, ...]
    perm: Tuple[int, ...]

    @property
    def mu(self) -> int:
        return len(self.eps)

    def __call__(self, c: int) -> int:
        return self.perm[c - 1]

    def is_identity(self) -> bool:
        return (
            self.eps0 == 1
            and all(e == 1 for e in self.eps)
            and self.perm == tuple(range(1, self.mu + 1))
        )

    def __str__(self):
        eps = ",".join(str(e) for e in self.eps)
        return f"({self.eps0}; {eps}; {perm_to_cycles(self.perm)})"


def identity(mu: int) -> WhittenElement:
    return WhittenElement(1, (1,) * mu, tuple(range(1, mu + 1)))


def multiply(g: WhittenElement, h: WhittenElement) -> WhittenElement:
    """Product (e0 e0', e_i e'_p(i), qp) for g = (e, p), h = (e', q)."""
    if g.mu != h.mu:
        raise MuMismatchError(f"mu mismatch: {g.mu} vs {h.mu}")
    eps0 = g.eps0 * h.eps0
    eps = tuple(g.eps[i] * h.eps[g.perm[i] - 1] for i in range(g.mu))
    perm = tuple(h.perm[g.perm[i] - 1] for i in range(g.mu))
    return WhittenElement(eps0, eps, perm)


def inverse(g: WhittenElement) -> WhittenElement:
    inv_perm = [0] * g.mu
    for i in range(g.mu):
        inv_perm[g.perm[i] - 1] = i + 1
    eps = tuple(g.eps[inv_perm[i] - 1] for i in range(g.mu))
    return WhittenElement(g.eps0, eps, tuple(inv_perm))


def group_elements(mu: int) -> Iterator[WhittenElement]:
    """All 2^(mu+1) mu! elements, lexicographic on (eps0, eps, perm)."""
    elements = [
        WhittenElement(eps0, eps, perm)
        for eps0 in (1, -1)
        for eps in itertools.product((1, -1), repeat=mu)
        for perm in itertools.permutations(range(1, mu + 1))
    ]
    return iter(sorted(elements))


def act(g: WhittenElement, code: PDCode) -> PDCode:
    """Apply a Whitten element to a PD-code.

    Steps, in order: component permutation; mirror (eps0 = -1: rotate
    positive crossings right by one slot, negative ones left); then for each
    reversed component i: arc reversal j -> n_i + 2 - j (fixing 1), a
    two-slot rotation of every crossing whose under strand lies on i, and a
    sign flip on every label of i.
    """
    if g.mu != code.mu:
        raise MuMismatchError(f"mu mismatch: element {g.mu}, code {code.mu}")

    quads = [
        tuple(EdgeLabel(g(x.c), x.j, x.s) for x in q) for q in code.quadruples
    ]
    counts = [0] * code.mu
    for c in range(1, code.mu + 1):
        counts[g(c) - 1] = code.arc_counts[c - 1]

    if g.eps0 == -1:
        rotated = []
        for q in quads:
            if crossing_sign(q) == 1:
                rotated.append((q[3], q[0], q[1], q[2]))
            else:
                rotated.append((q[1], q[2], q[3], q[0]))
        quads = rotated

    for i in range(1, code.mu + 1):
        if g.eps[i - 1] == 1:
            continue
        n_i = counts[i - 1]

        def reverse_arc(j):
            return 1 if j == 1 else n_i + 2 - j

        staged = []
        for q in quads:
            q = tuple(
                EdgeLabel(x.c, reverse_arc(x.j), x.s) if x.c == i else x for x in q
            )
            if q[0].c == i:
                q = (q[2], q[3], q[0], q[1])
            q = tuple(x.negated() if x.c == i else x for x in q)
            staged.append(q)
        quads = staged

    return validate(quads)


def stabilizer(code: PDCode) -> List[WhittenElement]:
    """Elements fixing the code exactly, label for label."""
    return [g for g in group_elements(code.mu) if act(g, code) == code]


@dataclass(frozen=True)
class FreeFormResult:
    code: PDCode
    sequence: MoveSequence


def symmetry_free_form(code: PDCode) -> FreeFormResult:
    """A move-equivalent code with trivial Whitten stabilizer.

    Strips every kink, then adds k kinks to component k (k = 1..mu), each
    on arc 1 of the current labeling.  The trivial-stabilizer postcondition
    is verified by full enumeration.
    """
    current, moves = strip_r1_loops(code)
    moves = list(moves)
    codes = []
    replay = code
    for move in moves:
        replay = apply_move(replay, move)
        codes.append(replay)
    assert replay == current

    for c in range(1, code.mu + 1):
        for _ in range(c):
            move = Move("R1a", "insert", ((c, 1),))
            current = apply_move(current, move)
            moves.append(move)
            codes.append(current)

    stab = stabilizer(current)
    if len(stab) != 1 or not stab[0].is_identity():
        raise PostconditionFailedError(
            f"stabilizer of the adjusted code has {len(stab)} elements"
        )
    return FreeFormResult(current, MoveSequence(code, tuple(moves), tuple(codes)))


# ---------------------------------------------------------------------------
# Text form: "(e0; e1,...,emu; perm-cycles)"


def perm_to_cycles(perm: Tuple[int, ...]) -> str:
    seen = set()
    cycles = []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        x = perm[start - 1]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = perm[x - 1]
        if len(cycle) > 1:
            cycles.append("(" + "".join(str(c) for c in cycle) + ")")
    return "".join(cycles) if cycles else "id"


def _cycles_to_perm(text: str, mu: int) -> Tuple[int, ...]:
    perm = list(range(1, mu + 1))
    if text == "id":
        return tuple(perm)
    chunks = re.findall(r"\(([^()]*)\)", text)
    if not chunks or "".join(f"({c})" for c in chunks) != text.replace(" ", ""):
        raise ValueError(f"bad permutation {text!r}")
    for chunk in chunks:
        if "," in chunk:
            entries = [int(t) for t in chunk.split(",")]
        else:
            entries = [int(ch) for ch in chunk.replace(" ", "")]
        if any(not 1 <= e <= mu for e in entries) or len(set(entries)) != len(entries):
            raise ValueError(f"bad cycle {chunk!r} for mu={mu}")
        for a, b in zip(entries, entries[1:] + entries[:1]):
            perm[a - 1] = b
    return tuple(perm)


def parse_element(text: str, mu: int | None = None) -> WhittenElement:
    """Parse "(e0; e1,...,emu; perm-cycles)", e.g. "(-1; -1; id)"."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")") and body.count(";") == 2:
        body = body[1:-1]
    parts = [p.strip() for p in body.split(";")]
    if len(parts) != 3:
        raise ValueError(f"expected three ';'-separated fields in {text!r}")
    eps0 = int(parts[0])
    eps = tuple(int(t) for t in parts[1].split(",") if t.strip())
    if eps0 not in (1, -1) or any(e not in (1, -1) for e in eps):
        raise ValueError(f"signs must be +-1 in {text!r}")
    if mu is not None and len(eps) != mu:
        raise MuMismatchError(f"element has mu={len(eps)}, expected {mu}")
    perm = _cycles_to_perm(parts[2], len(eps))
    return WhittenElement(eps0, eps, perm)


def element_to_json_dict(g: WhittenElement):
    return {"eps0": g.eps0, "eps": list(g.eps), "perm": list(g.perm), "text": str(g)}
