"""PD-codes as first-class combinatorial objects.

Validation, surface reconstruction (faces, Euler characteristic, genus),
link-diagram recovery, combinatorial Reidemeister rewriting with bounded
equivalence search, and the Whitten-group intrinsic-symmetry action.
"""

from .core import (
    AmbiguousSigningError,
    EdgeLabel,
    EmptyCodeError,
    MalformedCodeError,
    NoValidSigningError,
    PDCode,
    PDError,
    ValidationError,
    Violation,
    canonical_relabel,
    check,
    crossing_sign,
    infer_signs,
    strip_signs,
    validate,
)
from .moves import (
    IrreducibleToEmptyError,
    Move,
    MoveSequence,
    NotApplicableError,
    NotFound,
    apply_move,
    enumerate_moves,
    equivalent_bounded,
    r1_loops,
    remove_all_r1_loops,
)
from .notation import GaussCode, detect_flavor, parse, serialize, to_gauss
from .surface import (
    DiagramData,
    SurfaceReport,
    euler_characteristic,
    faces,
    surface_report,
    trace_diagram,
)
from .symmetry import (
    WhittenElement,
    act,
    group_elements,
    identity,
    multiply,
    stabilizer,
    symmetry_free_form,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousSigningError",
    "DiagramData",
    "EdgeLabel",
    "EmptyCodeError",
    "GaussCode",
    "IrreducibleToEmptyError",
    "MalformedCodeError",
    "Move",
    "MoveSequence",
    "NoValidSigningError",
    "NotApplicableError",
    "NotFound",
    "PDCode",
    "PDError",
    "SurfaceReport",
    "ValidationError",
    "Violation",
    "WhittenElement",
    "act",
    "apply_move",
    "canonical_relabel",
    "check",
    "crossing_sign",
    "detect_flavor",
    "enumerate_moves",
    "equivalent_bounded",
    "euler_characteristic",
    "faces",
    "group_elements",
    "identity",
    "infer_signs",
    "multiply",
    "parse",
    "r1_loops",
    "remove_all_r1_loops",
    "serialize",
    "stabilizer",
    "strip_signs",
    "surface_report",
    "symmetry_free_form",
    "to_gauss",
    "trace_diagram",
    "validate",
]
