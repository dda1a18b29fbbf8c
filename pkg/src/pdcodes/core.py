"""Core PD-code data types, the admissibility validator and sign inference.

A PD-code is a set of quadruples of signed arc labels, one quadruple per
crossing, read counterclockwise from the incoming under-edge.  Labels are
pairs (component, arc) with a sign: positive for edges entering a crossing,
negative for edges leaving it.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence, Tuple


class PDError(Exception):
    """Base class for all errors raised by this package."""


class MalformedCodeError(PDError):
    """Input is not even syntactically a collection of 4-label quadruples."""


class EmptyCodeError(MalformedCodeError):
    """Zero-crossing codes are not representable."""


@dataclass(frozen=True)
class Violation:
    """A single failed admissibility clause.

    property_id is one of "P1".."P4" (the four admissibility properties,
    with P3/P4 read cyclically) or "LABELS" for label-range problems.
    quad_index is the offending quadruple's position in the input, or None
    for global violations.
    """

    property_id: str
    quad_index: int | None
    detail: str

    def __str__(self):
        where = "global" if self.quad_index is None else f"quadruple {self.quad_index}"
        return f"{self.property_id} ({where}): {self.detail}"


class ValidationError(PDError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = tuple(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class NoValidSigningError(PDError):
    """No sign assignment makes the unsigned quadruples admissible."""


class AmbiguousSigningError(PDError):
    """More than one admissible signing exists; all candidates are attached."""

    def __init__(self, candidates):
        self.candidates = tuple(candidates)
        super().__init__(f"{len(self.candidates)} admissible signings")


class SingleArcComponentWarning(UserWarning):
    """A component with a single arc; mod-1 consecutiveness is vacuous."""


class EdgeLabel(NamedTuple):
    c: int
    j: int
    s: int

    def negated(self) -> "EdgeLabel":
        return EdgeLabel(self.c, self.j, -self.s)

    def unsigned(self) -> Tuple[int, int]:
        return (self.c, self.j)


Quadruple = Tuple[EdgeLabel, EdgeLabel, EdgeLabel, EdgeLabel]

#: Sign patterns of valid quadruples, keyed by crossing sign.
POSITIVE_PATTERN = (1, -1, -1, 1)
NEGATIVE_PATTERN = (1, 1, -1, -1)


def label_key(label: EdgeLabel):
    """Sort key: component-major, then arc, then sign with + before -."""
    return (label.c, label.j, 0 if label.s > 0 else 1)


def quad_key(quad: Quadruple):
    return tuple(label_key(x) for x in quad)


@dataclass(frozen=True)
class PDCode:
    """An admissible PD-code with quadruples held in canonical order.

    Immutable; equality is set equality of quadruples (the canonical order
    makes that plain tuple equality).
    """

    quadruples: Tuple[Quadruple, ...]
    mu: int
    arc_counts: Tuple[int, ...]

    @property
    def n(self) -> int:
        """Number of crossings."""
        return len(self.quadruples)

    def arc_count(self, c: int) -> int:
        return self.arc_counts[c - 1]

    def labels(self):
        """All unsigned labels (c, j), component-major order."""
        return [
            (c, j)
            for c in range(1, self.mu + 1)
            for j in range(1, self.arc_counts[c - 1] + 1)
        ]

    def signed_labels(self):
        """All 4n signed labels, one per slot occurrence."""
        return [x for q in self.quadruples for x in q]

    def occurrence(self, label: EdgeLabel) -> Tuple[int, int]:
        """(quadruple index, slot) of the unique occurrence of a signed label."""
        for qi, q in enumerate(self.quadruples):
            for k in range(4):
                if q[k] == label:
                    return qi, k
        raise KeyError(label)


def crossing_sign(quad: Quadruple) -> int:
    """+1 for the sign pattern (+,-,-,+), -1 for (+,+,-,-)."""
    pattern = tuple(x.s for x in quad)
    if pattern == POSITIVE_PATTERN:
        return 1
    if pattern == NEGATIVE_PATTERN:
        return -1
    raise ValueError(f"not a valid quadruple sign pattern: {pattern}")


def successor_arc(j: int, n_c: int) -> int:
    """Cyclic successor of arc j in a component with n_c arcs."""
    return j % n_c + 1


def _coerce_label(entry) -> EdgeLabel:
    if isinstance(entry, EdgeLabel):
        return entry
    if isinstance(entry, int):
        if entry == 0:
            raise MalformedCodeError("arc index 0 is forbidden")
        return EdgeLabel(1, abs(entry), 1 if entry > 0 else -1)
    if isinstance(entry, (tuple, list)):
        if len(entry) == 2:
            c, sj = entry
            if not (isinstance(c, int) and isinstance(sj, int)) or c < 1 or sj == 0:
                raise MalformedCodeError(f"bad label {entry!r}")
            return EdgeLabel(c, abs(sj), 1 if sj > 0 else -1)
        if len(entry) == 3:
            c, j, s = entry
            if not all(isinstance(x, int) for x in entry) or c < 1 or j < 1 or s not in (1, -1):
                raise MalformedCodeError(f"bad label {entry!r}")
            return EdgeLabel(c, j, s)
    raise MalformedCodeError(f"bad label {entry!r}")


def _coerce_quadruples(raw) -> Tuple[Quadruple, ...]:
    if isinstance(raw, PDCode):
        return raw.quadruples
    quads = []
    for qi, entry in enumerate(raw):
        entry = tuple(entry)
        if len(entry) != 4:
            raise MalformedCodeError(
                f"quadruple {qi} has {len(entry)} labels, expected 4"
            )
        quads.append(tuple(_coerce_label(x) for x in entry))
    if not quads:
        raise EmptyCodeError("a PD-code must contain at least one quadruple")
    return tuple(quads)


def check(raw) -> list:
    """Return the list of admissibility violations (empty iff valid).

    Accepts quadruples of EdgeLabels, (c, j, s) triples, (c, +-j) pairs or
    signed integers (knot shorthand, normalized to component 1).
    """
    quads = _coerce_quadruples(raw)
    violations = []

    components = sorted({x.c for q in quads for x in q})
    mu = components[-1]
    if components != list(range(1, mu + 1)):
        violations.append(
            Violation("LABELS", None, f"component indices {components} are not 1..{mu}")
        )
        return violations
    arc_counts = [0] * mu
    for q in quads:
        for x in q:
            arc_counts[x.c - 1] = max(arc_counts[x.c - 1], x.j)

    # Property 1: each label twice, once with each sign.
    seen = {}
    for qi, q in enumerate(quads):
        for x in q:
            seen.setdefault(x.unsigned(), []).append(x.s)
    for c in range(1, mu + 1):
        for j in range(1, arc_counts[c - 1] + 1):
            signs = sorted(seen.get((c, j), []))
            if signs != [-1, 1]:
                violations.append(
                    Violation(
                        "P1",
                        None,
                        f"label ({c},{j}) occurs with signs {signs}, expected one + and one -",
                    )
                )
    if sum(arc_counts) != 2 * len(quads):
        violations.append(
            Violation(
                "P1",
                None,
                f"sum of arc counts {sum(arc_counts)} != 2 * {len(quads)} crossings",
            )
        )

    for qi, q in enumerate(quads):
        pattern = tuple(x.s for x in q)
        if pattern not in (POSITIVE_PATTERN, NEGATIVE_PATTERN):
            violations.append(
                Violation(
                    "P2",
                    qi,
                    f"sign pattern {pattern} is neither (+,-,-,+) nor (+,+,-,-)",
                )
            )
            continue
        # Properties 3 and 4, cyclic reading, on the non-adjacent pairs.
        for a, b in ((0, 2), (1, 3)):
            x, y = q[a], q[b]
            if x.c != y.c:
                violations.append(
                    Violation(
                        "P3",
                        qi,
                        f"slots {a},{b} mix components {x.c} and {y.c}",
                    )
                )
                continue
            n_c = arc_counts[x.c - 1]
            pos, neg = (x, y) if x.s > 0 else (y, x)
            if successor_arc(pos.j, n_c) != neg.j:
                if (
                    successor_arc(x.j, n_c) != y.j
                    and successor_arc(y.j, n_c) != x.j
                ):
                    violations.append(
                        Violation(
                            "P3",
                            qi,
                            f"slots {a},{b}: arcs {x.j},{y.j} are not cyclically "
                            f"consecutive mod {n_c}",
                        )
                    )
                else:
                    violations.append(
                        Violation(
                            "P4",
                            qi,
                            f"slots {a},{b}: positive label arc {pos.j} must have its "
                            f"cyclic successor mod {n_c} as partner, got {neg.j}",
                        )
                    )
    return violations


def validate(raw) -> PDCode:
    """Validate quadruples against the four admissibility properties.

    Returns the PDCode on success, raises ValidationError listing every
    violated clause otherwise.
    """
    quads = _coerce_quadruples(raw)
    violations = check(quads)
    if violations:
        raise ValidationError(violations)
    return _assemble(quads)


def _assemble(quads: Iterable[Quadruple]) -> PDCode:
    """Build a PDCode from known-admissible quadruples (canonical ordering)."""
    quads = tuple(sorted(quads, key=quad_key))
    mu = max(x.c for q in quads for x in q)
    arc_counts = [0] * mu
    for q in quads:
        for x in q:
            arc_counts[x.c - 1] = max(arc_counts[x.c - 1], x.j)
    for c, n_c in enumerate(arc_counts, start=1):
        if n_c == 1:
            warnings.warn(
                f"component {c} has a single arc; properties 3-4 are vacuous mod 1",
                SingleArcComponentWarning,
                stacklevel=3,
            )
    return PDCode(quads, mu, tuple(arc_counts))


def strip_signs(code: PDCode):
    """Forget the signs: quadruples of (c, j) pairs in the stored order."""
    return [[x.unsigned() for x in q] for q in code.quadruples]


def infer_signs(unsigned) -> PDCode:
    """Recover the unique admissible signing of unsigned quadruples.

    Slot 0 is the incoming under-edge (+), slot 2 the outgoing under-edge
    (-).  Over-pair signs follow from the cyclic successor rule; residual
    wrap-around ambiguities (two-arc components) are settled by the global
    once-positive-once-negative constraint.
    """
    quads = []
    for qi, entry in enumerate(unsigned):
        entry = tuple(entry)
        if len(entry) != 4:
            raise MalformedCodeError(
                f"quadruple {qi} has {len(entry)} labels, expected 4"
            )
        row = []
        for item in entry:
            if isinstance(item, int):
                if item <= 0:
                    raise MalformedCodeError(f"bad unsigned label {item!r}")
                row.append((1, item))
            elif isinstance(item, (tuple, list)) and len(item) == 2:
                c, j = item
                if not (isinstance(c, int) and isinstance(j, int)) or c < 1 or j < 1:
                    raise MalformedCodeError(f"bad unsigned label {item!r}")
                row.append((c, j))
            else:
                raise MalformedCodeError(f"bad unsigned label {item!r}")
        quads.append(tuple(row))
    if not quads:
        raise EmptyCodeError("a PD-code must contain at least one quadruple")

    mu = max(c for q in quads for c, _ in q)
    arc_counts = [0] * mu
    for q in quads:
        for c, j in q:
            arc_counts[c - 1] = max(arc_counts[c - 1], j)

    # sign[(qi, slot)] in {1, -1, None}; under pair is forced.
    sign = {}
    for qi in range(len(quads)):
        sign[(qi, 0)] = 1
        sign[(qi, 2)] = -1
        sign[(qi, 1)] = None
        sign[(qi, 3)] = None

    occurrences = {}
    for qi, q in enumerate(quads):
        for k, lab in enumerate(q):
            occurrences.setdefault(lab, []).append((qi, k))
    for lab, occ in occurrences.items():
        if len(occ) != 2:
            raise NoValidSigningError(
                f"label {lab} occurs {len(occ)} times, expected 2"
            )

    def over_pair_options(qi):
        (cx, jx), (cy, jy) = quads[qi][1], quads[qi][3]
        if cx != cy:
            raise NoValidSigningError(
                f"quadruple {qi}: over pair mixes components {cx} and {cy}"
            )
        n_c = arc_counts[cx - 1]
        options = []
        if successor_arc(jx, n_c) == jy:
            options.append((1, -1))  # slot1 positive
        if successor_arc(jy, n_c) == jx:
            options.append((-1, 1))  # slot3 positive
        return options

    pending = []
    for qi in range(len(quads)):
        options = over_pair_options(qi)
        if not options:
            raise NoValidSigningError(
                f"quadruple {qi}: neither over-pair orientation satisfies the "
                "successor rule"
            )
        if len(options) == 1:
            s1, s3 = options[0]
            sign[(qi, 1)], sign[(qi, 3)] = s1, s3
        else:
            pending.append(qi)

    def propagate():
        changed = True
        while changed:
            changed = False
            for lab, occ in occurrences.items():
                (a, b) = occ
                sa, sb = sign[a], sign[b]
                if sa is not None and sb is None:
                    sign[b] = -sa
                    changed = True
                elif sb is not None and sa is None:
                    sign[a] = -sb
                    changed = True
                elif sa is not None and sb is not None and sa == sb:
                    return False
            # keep over pairs consistent: slots 1 and 3 carry opposite signs
            for qi in range(len(quads)):
                s1, s3 = sign[(qi, 1)], sign[(qi, 3)]
                if s1 is not None and s3 is None:
                    sign[(qi, 3)] = -s1
                    changed = True
                elif s3 is not None and s1 is None:
                    sign[(qi, 1)] = -s3
                    changed = True
                elif s1 is not None and s3 is not None and s1 == s3:
                    return False
        return True

    if not propagate():
        raise NoValidSigningError("global sign constraints are unsatisfiable")

    free = [qi for qi in pending if sign[(qi, 1)] is None]
    candidates = []
    for choice in itertools.product((1, -1), repeat=len(free)):
        trial = dict(sign)
        for qi, s1 in zip(free, choice):
            trial[(qi, 1)], trial[(qi, 3)] = s1, -s1
        signed = tuple(
            tuple(EdgeLabel(c, j, trial[(qi, k)]) for k, (c, j) in enumerate(q))
            for qi, q in enumerate(quads)
        )
        if not check(signed):
            candidates.append(_assemble(signed))
    unique = []
    for cand in candidates:
        if cand not in unique:
            unique.append(cand)
    if not unique:
        raise NoValidSigningError("no sign assignment satisfies properties 1-4")
    if len(unique) > 1:
        raise AmbiguousSigningError(unique)
    return unique[0]


def _shifted(code: PDCode, shifts: Sequence[int]) -> Tuple[Quadruple, ...]:
    """Quadruples after shifting each component's arc numbering cyclically."""
    counts = code.arc_counts
    return tuple(
        sorted(
            (
                tuple(
                    EdgeLabel(x.c, (x.j - 1 + shifts[x.c - 1]) % counts[x.c - 1] + 1, x.s)
                    for x in q
                )
                for q in code.quadruples
            ),
            key=quad_key,
        )
    )


@lru_cache(maxsize=200_000)
def canonical_key(code: PDCode):
    """Hashable key identifying the code up to cyclic arc relabeling."""
    best = None
    for shifts in itertools.product(*(range(n_c) for n_c in code.arc_counts)):
        key = tuple(quad_key(q) for q in _shifted(code, shifts))
        if best is None or key < best:
            best = key
    return (code.mu, code.arc_counts, best)


def canonical_relabel(code: PDCode) -> PDCode:
    """Lexicographically least code over cyclic shifts of each component's
    arc numbering.  Components and orientations are data and stay fixed."""
    best_key = None
    best = None
    for shifts in itertools.product(*(range(n_c) for n_c in code.arc_counts)):
        quads = _shifted(code, shifts)
        key = tuple(quad_key(q) for q in quads)
        if best_key is None or key < best_key:
            best_key, best = key, quads
    return PDCode(best, code.mu, code.arc_counts)
