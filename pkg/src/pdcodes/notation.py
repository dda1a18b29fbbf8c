"""Parsing and serialization of PD-codes.

Three flavors are supported:

* paper-signed  -- ``{[+4,-2,-5,+1],...}`` with signed labels, written
  ``(c,+-j)`` for links and as bare signed integers for knots;
* knottheory    -- ``PD[X[4,2,5,1],...]`` with a single unsigned global
  arc numbering (component blocks are contiguous);
* json          -- an explicit, flavor-lossless object schema.

Gauss codes are export-only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import List, NamedTuple, Tuple

from .core import (
    EdgeLabel,
    MalformedCodeError,
    PDCode,
    PDError,
    canonical_relabel,
    crossing_sign,
    infer_signs,
    validate,
)

PAPER_SIGNED = "paper"
KNOTTHEORY = "knottheory"
JSON = "json"
FLAVORS = (PAPER_SIGNED, KNOTTHEORY, JSON)


class NotationSyntaxError(PDError):
    def __init__(self, position: int, expected: str):
        self.position = position
        self.expected = expected
        super().__init__(f"syntax error at position {position}: expected {expected}")


class GaussEntry(NamedTuple):
    crossing: int
    passage: str  # "O" | "U"
    sign: int


@dataclass(frozen=True)
class GaussCode:
    """Per component, the cyclic crossing sequence met along the strand."""

    components: Tuple[Tuple[GaussEntry, ...], ...]

    def __str__(self):
        return ";".join(
            "".join(f"({e.passage}{e.crossing}{'+' if e.sign > 0 else '-'})" for e in comp)
            for comp in self.components
        )


# ---------------------------------------------------------------------------
# Paper-signed flavor


class _Scanner:
    def __init__(self, text: str):
        # Unicode minus is accepted on input; output is ASCII only.
        self.text = text.replace("−", "-")
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise NotationSyntaxError(self.pos, repr(ch))
        self.pos += 1

    def integer(self, signed: bool) -> int:
        self.skip_ws()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise NotationSyntaxError(start, "an integer")
        return int(self.text[start : self.pos])

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def _parse_label(sc: _Scanner) -> EdgeLabel:
    if sc.peek() == "(":
        sc.expect("(")
        c = sc.integer(signed=False)
        sc.expect(",")
        sj = sc.integer(signed=True)
        sc.expect(")")
        if c < 1 or sj == 0:
            raise NotationSyntaxError(sc.pos, "a label (c,+-j) with c,j >= 1")
        return EdgeLabel(c, abs(sj), 1 if sj > 0 else -1)
    sj = sc.integer(signed=True)
    if sj == 0:
        raise NotationSyntaxError(sc.pos, "a nonzero signed arc index")
    return EdgeLabel(1, abs(sj), 1 if sj > 0 else -1)


def parse_paper(text: str) -> PDCode:
    sc = _Scanner(text)
    sc.expect("{")
    quads = []
    while True:
        sc.expect("[")
        labels = [_parse_label(sc)]
        for _ in range(3):
            sc.expect(",")
            labels.append(_parse_label(sc))
        sc.expect("]")
        quads.append(tuple(labels))
        if sc.peek() == ",":
            sc.expect(",")
            continue
        break
    sc.expect("}")
    if not sc.at_end():
        raise NotationSyntaxError(sc.pos, "end of input")
    return validate(quads)


def serialize_paper(code: PDCode) -> str:
    if code.mu == 1:
        def fmt(x: EdgeLabel) -> str:
            return f"{'+' if x.s > 0 else '-'}{x.j}"
    else:
        def fmt(x: EdgeLabel) -> str:
            return f"({x.c},{'+' if x.s > 0 else '-'}{x.j})"

    return "{" + ",".join(
        "[" + ",".join(fmt(x) for x in q) + "]" for q in code.quadruples
    ) + "}"


# ---------------------------------------------------------------------------
# KnotTheory flavor (unsigned, global arc numbering in component blocks)


def _global_offsets(code: PDCode) -> List[int]:
    offsets = [0]
    for n_c in code.arc_counts[:-1]:
        offsets.append(offsets[-1] + n_c)
    return offsets


def parse_knottheory(text: str) -> PDCode:
    sc = _Scanner(text)
    for ch in "PD[":
        sc.expect(ch)
    raw = []
    while True:
        for ch in "X[":
            sc.expect(ch)
        row = [sc.integer(signed=False)]
        for _ in range(3):
            sc.expect(",")
            row.append(sc.integer(signed=False))
        sc.expect("]")
        raw.append(row)
        if sc.peek() == ",":
            sc.expect(",")
            continue
        break
    sc.expect("]")
    if not sc.at_end():
        raise NotationSyntaxError(sc.pos, "end of input")

    total = 2 * len(raw)
    counts = {}
    for row in raw:
        for a in row:
            counts[a] = counts.get(a, 0) + 1
    if sorted(counts) != list(range(1, total + 1)) or set(counts.values()) != {2}:
        raise MalformedCodeError(
            f"global arcs must be 1..{total}, each appearing exactly twice"
        )

    # Strand passages link consecutive arcs; the resulting 2-regular graph's
    # cycles are the link components.
    adjacency = {a: set() for a in range(1, total + 1)}
    for row in raw:
        for a, b in ((row[0], row[2]), (row[1], row[3])):
            adjacency[a].add(b)
            adjacency[b].add(a)
    blocks = []
    seen = set()
    for start in range(1, total + 1):
        if start in seen:
            continue
        stack, cycle = [start], set()
        while stack:
            a = stack.pop()
            if a in cycle:
                continue
            cycle.add(a)
            stack.extend(adjacency[a])
        seen |= cycle
        blocks.append(sorted(cycle))
    blocks.sort(key=lambda b: b[0])
    for block in blocks:
        if block != list(range(block[0], block[0] + len(block))):
            raise MalformedCodeError(
                f"component arcs {block} are not a contiguous global block"
            )
    component_of = {}
    offset_of = {}
    for c, block in enumerate(blocks, start=1):
        for a in block:
            component_of[a] = c
            offset_of[a] = block[0] - 1

    unsigned = [
        [(component_of[a], a - offset_of[a]) for a in row] for row in raw
    ]
    return infer_signs(unsigned)


def serialize_knottheory(code: PDCode) -> str:
    offsets = _global_offsets(code)
    return "PD[" + ",".join(
        "X[" + ",".join(str(offsets[x.c - 1] + x.j) for x in q) + "]"
        for q in code.quadruples
    ) + "]"


# ---------------------------------------------------------------------------
# JSON flavor


def code_to_json_dict(code: PDCode):
    return {
        "mu": code.mu,
        "arc_counts": list(code.arc_counts),
        "quadruples": [
            [{"c": x.c, "j": x.j, "s": x.s} for x in q] for q in code.quadruples
        ],
    }


def code_from_json_dict(data) -> PDCode:
    if not isinstance(data, dict) or not {"mu", "arc_counts", "quadruples"} <= set(data):
        raise MalformedCodeError("JSON code must have mu, arc_counts, quadruples")
    quads = []
    for row in data["quadruples"]:
        quads.append(tuple((lab["c"], lab["j"], lab["s"]) for lab in row))
    code = validate(quads)
    if code.mu != data["mu"] or list(code.arc_counts) != list(data["arc_counts"]):
        raise MalformedCodeError(
            "declared mu/arc_counts disagree with the quadruples"
        )
    return code


def parse_json(text: str) -> PDCode:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NotationSyntaxError(exc.pos, "valid JSON") from exc
    return code_from_json_dict(data)


def serialize_json(code: PDCode) -> str:
    return json.dumps(code_to_json_dict(code), separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# Front door


def parse(text: str, flavor: str) -> PDCode:
    if flavor == PAPER_SIGNED:
        return parse_paper(text)
    if flavor == KNOTTHEORY:
        return parse_knottheory(text)
    if flavor == JSON:
        return parse_json(text)
    raise ValueError(f"unknown flavor {flavor!r}")


def serialize(code: PDCode, flavor: str) -> str:
    if flavor == PAPER_SIGNED:
        return serialize_paper(code)
    if flavor == KNOTTHEORY:
        return serialize_knottheory(code)
    if flavor == JSON:
        return serialize_json(code)
    raise ValueError(f"unknown flavor {flavor!r}")


def detect_flavor(text: str) -> str:
    stripped = text.lstrip()
    if stripped.startswith("{") and '"' in stripped.split("\n", 1)[0]:
        return JSON
    if stripped.startswith("PD["):
        return KNOTTHEORY
    return PAPER_SIGNED


# ---------------------------------------------------------------------------
# Gauss export


def to_gauss(code: PDCode) -> GaussCode:
    """Walk each component in arc order, emitting (crossing id, O/U, sign).

    Crossing ids are 1-based canonical quadruple indices, so the output does
    not depend on the input labeling beyond the canonical form.
    """
    code = canonical_relabel(code)
    entries = {}
    for qi, q in enumerate(code.quadruples):
        for k in range(4):
            if q[k].s > 0:
                entries[q[k].unsigned()] = (qi, k)
    components = []
    for c in range(1, code.mu + 1):
        seq = []
        for j in range(1, code.arc_counts[c - 1] + 1):
            qi, k = entries[(c, j)]
            passage = "U" if k == 0 else "O"
            seq.append(GaussEntry(qi + 1, passage, crossing_sign(code.quadruples[qi])))
        components.append(tuple(seq))
    return GaussCode(tuple(components))
