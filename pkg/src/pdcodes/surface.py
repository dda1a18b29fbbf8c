"""Faces, Euler characteristic, genus and diagram reconstruction.

The 4-regular graph underlying a PD-code carries a cyclic ordering of the
edge ends at every vertex (the quadruple itself).  Orbits of the successor
map s(e at slot k) = -(label at slot k+1 mod 4) are the faces of the
associated closed orientable surface.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from .core import EdgeLabel, PDCode, PDError, Quadruple, crossing_sign, label_key


class OrientabilityFailure(PDError):
    """The face boundaries failed the +/- pairing check.

    This indicates a validator bug, never a user error.
    """


class TraceMismatchError(PDError):
    """A component traversal failed to close or skipped arcs."""


Face = Tuple[EdgeLabel, ...]


@dataclass(frozen=True)
class RotationGraph:
    """Edge set plus vertices given as ordered 4-lists of signed edge ends."""

    edges: Tuple[Tuple[int, int], ...]
    vertices: Tuple[Quadruple, ...]


@dataclass(frozen=True)
class SurfaceReport:
    V: int
    E: int
    F: int
    chi: int
    connected_components: Tuple[Tuple[int, ...], ...]
    chi_per_component: Tuple[int, ...]
    genus_per_component: Tuple[int, ...]
    total_genus: int
    spherical: bool
    faces: Tuple[Face, ...]

    def to_json_dict(self):
        return {
            "V": self.V,
            "E": self.E,
            "F": self.F,
            "chi": self.chi,
            "components": [list(part) for part in self.connected_components],
            "genus": list(self.genus_per_component),
            "total_genus": self.total_genus,
            "spherical": self.spherical,
            "faces": [
                [{"c": x.c, "j": x.j, "s": x.s} for x in face] for face in self.faces
            ],
        }


@dataclass(frozen=True)
class DiagramData:
    """Reconstructed link-diagram data: oriented component traversals,
    crossing signs and the rotation system."""

    component_traversals: Tuple[Tuple[int, ...], ...]
    crossing_signs: Tuple[int, ...]
    rotation_system: RotationGraph


def successor_map(code: PDCode) -> Dict[EdgeLabel, EdgeLabel]:
    succ = {}
    for q in code.quadruples:
        for k in range(4):
            succ[q[k]] = q[(k + 1) % 4].negated()
    return succ


def _canonical_rotation(cycle: Tuple[EdgeLabel, ...]) -> Face:
    start = min(range(len(cycle)), key=lambda i: label_key(cycle[i]))
    return cycle[start:] + cycle[:start]


def faces(code: PDCode) -> Tuple[Face, ...]:
    """Orbit partition of all 4n signed labels under the successor map.

    Each face is a cyclic sequence, rotated to start at its least element;
    faces are sorted by that element.
    """
    succ = successor_map(code)
    seen = set()
    result = []
    for start in succ:
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        x = succ[start]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = succ[x]
        result.append(_canonical_rotation(tuple(cycle)))
    result.sort(key=lambda f: label_key(f[0]))
    return tuple(result)


def euler_characteristic(code: PDCode) -> int:
    """Number of successor orbits minus the number of crossings."""
    return len(faces(code)) - code.n


def connected_components(code: PDCode) -> Tuple[Tuple[int, ...], ...]:
    """Partition of quadruple indices by connectivity through shared labels."""
    parent = list(range(code.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    owner = {}
    for qi, q in enumerate(code.quadruples):
        for x in q:
            key = x.unsigned()
            if key in owner:
                ra, rb = find(owner[key]), find(qi)
                parent[ra] = rb
            else:
                owner[key] = qi
    groups = {}
    for qi in range(code.n):
        groups.setdefault(find(qi), []).append(qi)
    return tuple(sorted(tuple(g) for g in groups.values()))


def rotation_graph(code: PDCode) -> RotationGraph:
    return RotationGraph(tuple(code.labels()), code.quadruples)


def surface_report(code: PDCode) -> SurfaceReport:
    face_list = faces(code)

    # Orientability pairing: every unsigned edge once with + and once with -
    # across face boundaries.  Faces partition slot occurrences, so failure
    # here means the validator let a bad code through.
    signs = {}
    for face in face_list:
        for x in face:
            signs.setdefault(x.unsigned(), []).append(x.s)
    for key, ss in signs.items():
        if sorted(ss) != [-1, 1]:
            raise OrientabilityFailure(
                f"edge {key} appears with signs {ss} on face boundaries"
            )

    parts = connected_components(code)
    part_of_quad = {}
    for pi, part in enumerate(parts):
        for qi in part:
            part_of_quad[qi] = pi
    label_part = {}
    for qi, q in enumerate(code.quadruples):
        for x in q:
            label_part[x.unsigned()] = part_of_quad[qi]

    face_counts = [0] * len(parts)
    for face in face_list:
        face_counts[label_part[face[0].unsigned()]] += 1
    chi_per = []
    genus_per = []
    for pi, part in enumerate(parts):
        v = len(part)
        chi_i = face_counts[pi] - v
        if chi_i % 2 != 0 or chi_i > 2:
            raise OrientabilityFailure(
                f"component {pi}: Euler characteristic {chi_i} is not an even "
                "number <= 2"
            )
        chi_per.append(chi_i)
        genus_per.append((2 - chi_i) // 2)

    chi = len(face_list) - code.n
    return SurfaceReport(
        V=code.n,
        E=2 * code.n,
        F=len(face_list),
        chi=chi,
        connected_components=parts,
        chi_per_component=tuple(chi_per),
        genus_per_component=tuple(genus_per),
        total_genus=sum(genus_per),
        spherical=(len(parts) == 1 and chi == 2),
        faces=face_list,
    )


def trace_diagram(code: PDCode) -> DiagramData:
    """Traverse each component through the crossings, entering at a positive
    label and exiting at the non-adjacent slot."""
    entries = {}
    for qi, q in enumerate(code.quadruples):
        for k in range(4):
            if q[k].s > 0:
                entries[q[k].unsigned()] = (qi, k)

    traversals = []
    for c in range(1, code.mu + 1):
        n_c = code.arc_counts[c - 1]
        seq = []
        j = 1
        for _ in range(n_c):
            seq.append(j)
            if (c, j) not in entries:
                raise TraceMismatchError(f"no crossing entered along arc ({c},{j})")
            qi, k = entries[(c, j)]
            out = code.quadruples[qi][(k + 2) % 4]
            if out.c != c or out.s > 0:
                raise TraceMismatchError(
                    f"traversal of ({c},{j}) exits at {out}, expected an outgoing "
                    f"arc of component {c}"
                )
            j = out.j
        if j != 1 or sorted(seq) != list(range(1, n_c + 1)):
            raise TraceMismatchError(
                f"component {c} traversal {seq} does not close over arcs 1..{n_c}"
            )
        traversals.append(tuple(seq))
    return DiagramData(
        component_traversals=tuple(traversals),
        crossing_signs=tuple(crossing_sign(q) for q in code.quadruples),
        rotation_system=rotation_graph(code),
    )
