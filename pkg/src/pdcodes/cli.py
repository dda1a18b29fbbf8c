"""Command-line front end.

Every subcommand is a thin adapter around one library operation.  Exit
status: 0 on success (a NotFound search outcome is still success), 1 on
domain errors such as inadmissible codes, 2 on usage or syntax errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import warnings

from . import __version__
from .core import (
    PDCode,
    PDError,
    ValidationError,
    canonical_relabel,
)
from .moves import (
    Move,
    NotFound,
    apply_move,
    enumerate_moves,
    equivalent_bounded,
)
from .notation import (
    FLAVORS,
    NotationSyntaxError,
    code_from_json_dict,
    detect_flavor,
    parse,
    serialize,
    to_gauss,
)
from .randomgen import random_valid_code
from .surface import faces, surface_report
from .symmetry import (
    act,
    element_to_json_dict,
    parse_element,
    stabilizer,
    symmetry_free_form,
)

USAGE_ERROR = 2
DOMAIN_ERROR = 1


def _read_source(args) -> str:
    if getattr(args, "in_path", None):
        with open(args.in_path, "r", encoding="utf-8") as fh:
            return fh.read()
    text = getattr(args, "code", None)
    if text is None or text == "-":
        return sys.stdin.read()
    try:
        with open(text, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError:
        return text


def _load_code(text: str, flavor: str | None) -> PDCode:
    return parse(text, flavor or detect_flavor(text))


def _emit(args, payload: dict, text_lines) -> None:
    if args.format == "json":
        print(json.dumps(payload, separators=(",", ":"), sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _label_text(code: PDCode, x) -> str:
    sign = "+" if x.s > 0 else "-"
    return f"{sign}{x.j}" if code.mu == 1 else f"({x.c},{sign}{x.j})"


def cmd_validate(args) -> int:
    text = _read_source(args)
    try:
        code = _load_code(text, args.flavor)
    except ValidationError as exc:
        payload = {
            "valid": False,
            "violations": [
                {
                    "property": v.property_id,
                    "quadruple": v.quad_index,
                    "detail": v.detail,
                }
                for v in exc.violations
            ],
        }
        _emit(args, payload, ["invalid"] + [f"  {v}" for v in exc.violations])
        return DOMAIN_ERROR
    payload = {
        "valid": True,
        "n": code.n,
        "mu": code.mu,
        "arc_counts": list(code.arc_counts),
    }
    _emit(
        args,
        payload,
        [f"valid: n={code.n} mu={code.mu} arcs={list(code.arc_counts)}"],
    )
    return 0


def cmd_info(args) -> int:
    code = _load_code(_read_source(args), args.flavor)
    report = surface_report(code)
    payload = {"n": code.n, "mu": code.mu, "arc_counts": list(code.arc_counts)}
    payload.update(report.to_json_dict())
    lines = [
        f"n={code.n} mu={code.mu} arcs={list(code.arc_counts)}",
        f"V={report.V} E={report.E} F={report.F} chi={report.chi}",
        f"connected components: {len(report.connected_components)}",
        f"genus per component: {list(report.genus_per_component)}",
        f"total genus: {report.total_genus}",
        f"spherical: {report.spherical}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_faces(args) -> int:
    code = _load_code(_read_source(args), args.flavor)
    face_list = faces(code)
    payload = {
        "faces": [[{"c": x.c, "j": x.j, "s": x.s} for x in f] for f in face_list]
    }
    lines = [
        "(" + ",".join(_label_text(code, x) for x in f) + ")" for f in face_list
    ]
    _emit(args, payload, lines)
    return 0


def cmd_convert(args) -> int:
    code = _load_code(_read_source(args), args.flavor)
    print(serialize(code, args.to).rstrip("\n"))
    return 0


def cmd_gauss(args) -> int:
    code = _load_code(_read_source(args), args.flavor)
    gauss = to_gauss(code)
    payload = {
        "components": [
            [{"crossing": e.crossing, "passage": e.passage, "sign": e.sign} for e in comp]
            for comp in gauss.components
        ]
    }
    _emit(args, payload, [str(gauss)])
    return 0


def cmd_canonicalize(args) -> int:
    code = _load_code(_read_source(args), args.flavor)
    print(serialize(canonical_relabel(code), args.to).rstrip("\n"))
    return 0


def cmd_moves(args) -> int:
    code = _load_code(_read_source(args), args.flavor)
    move_list = enumerate_moves(code)
    payload = {"moves": [m.to_json_dict() for m in move_list]}
    lines = [f"{m.kind} {m.direction} at {m.site}" for m in move_list]
    _emit(args, payload, lines)
    return 0


def cmd_apply(args) -> int:
    if args.sequence:
        with open(args.sequence, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        code = code_from_json_dict(data["start"])
        for step in data["steps"]:
            code = apply_move(code, Move.from_json_dict(step))
            expected = code_from_json_dict(step["resulting_code"])
            if code != expected:
                raise PDError("sequence replay diverged from the recorded code")
        print(serialize(code, args.to).rstrip("\n"))
        return 0
    if not args.move:
        print("pd apply: provide --move or --sequence", file=sys.stderr)
        return USAGE_ERROR
    code = _load_code(_read_source(args), args.flavor)
    move = Move.from_json_dict(json.loads(args.move))
    result = apply_move(code, move)
    print(serialize(result, args.to).rstrip("\n"))
    return 0


def cmd_equiv(args) -> int:
    code_a = _load_code(_read_source_value(args.code_a), args.flavor)
    code_b = _load_code(_read_source_value(args.code_b), args.flavor)
    outcome = equivalent_bounded(code_a, code_b, args.max_crossings, args.max_codes)
    if isinstance(outcome, NotFound):
        payload = outcome.to_json_dict()
        lines = [
            f"not found ({outcome.reason}): visited={outcome.visited} "
            f"expanded={outcome.expanded} generated={outcome.generated} "
            f"frontier={outcome.frontier}"
        ]
    else:
        payload = {"status": "found", "sequence": outcome.to_json_dict()}
        lines = [f"found: {len(outcome.moves)} moves"] + [
            f"  {m.kind} {m.direction} at {m.site}" for m in outcome.moves
        ]
    _emit(args, payload, lines)
    return 0


def _read_source_value(value: str) -> str:
    if value == "-":
        return sys.stdin.read()
    try:
        with open(value, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError:
        return value


def cmd_act(args) -> int:
    code = _load_code(_read_source(args), args.flavor)
    element = parse_element(args.gamma, code.mu)
    print(serialize(act(element, code), args.to).rstrip("\n"))
    return 0


def cmd_stabilizer(args) -> int:
    code = _load_code(_read_source(args), args.flavor)
    stab = stabilizer(code)
    payload = {"order": len(stab), "elements": [element_to_json_dict(g) for g in stab]}
    _emit(args, payload, [str(g) for g in stab])
    return 0


def cmd_free_form(args) -> int:
    code = _load_code(_read_source(args), args.flavor)
    result = symmetry_free_form(code)
    print(serialize(result.code, args.to).rstrip("\n"))
    return 0


def cmd_batch(args) -> int:
    with open(args.in_path, "r", encoding="utf-8") as fh:
        table = json.load(fh)
    rows = []
    for entry in table:
        name = entry["name"]
        text = entry["notation"]
        flavor = entry.get("flavor") or detect_flavor(
            text if isinstance(text, str) else json.dumps(text)
        )
        if not isinstance(text, str):
            text = json.dumps(text)
        code = parse(text, flavor)
        report = surface_report(code)
        rows.append(
            {
                "name": name,
                "n": code.n,
                "mu": code.mu,
                "chi": report.chi,
                "genus": report.total_genus,
                "spherical": report.spherical,
                "stabilizer": len(stabilizer(code)),
            }
        )
    out = open(args.report, "w", newline="", encoding="utf-8") if args.report else sys.stdout
    try:
        writer = csv.DictWriter(
            out, fieldnames=["name", "n", "mu", "chi", "genus", "spherical", "stabilizer"]
        )
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    finally:
        if args.report:
            out.close()
    return 0


def cmd_random(args) -> int:
    rng = random.Random(args.seed)
    code = random_valid_code(rng, steps=args.steps, max_crossings=args.max_crossings)
    print(serialize(code, args.to).rstrip("\n"))
    return 0


def _add_code_arg(sub, positional=True):
    if positional:
        sub.add_argument(
            "code",
            nargs="?",
            help="code text or a path to it; '-' or omitted reads stdin",
        )
    sub.add_argument("--in", dest="in_path", help="read the code from this file")
    sub.add_argument("--flavor", choices=FLAVORS, help="force the input flavor")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pd", description="PD-code validation, surfaces, moves and symmetries"
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--format", choices=("text", "json"), default="text", help="report format"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    for name, fn in (
        ("validate", cmd_validate),
        ("info", cmd_info),
        ("faces", cmd_faces),
        ("moves", cmd_moves),
        ("stabilizer", cmd_stabilizer),
        ("gauss", cmd_gauss),
    ):
        p = sub.add_parser(name)
        _add_code_arg(p)
        p.set_defaults(fn=fn)

    for name, fn in (
        ("convert", cmd_convert),
        ("canonicalize", cmd_canonicalize),
        ("act", cmd_act),
        ("free-form", cmd_free_form),
    ):
        p = sub.add_parser(name)
        _add_code_arg(p)
        p.add_argument("--to", choices=FLAVORS, default="paper", help="output flavor")
        if name == "act":
            p.add_argument(
                "--gamma", required=True, help='Whitten element, e.g. "(-1; -1; id)"'
            )
        p.set_defaults(fn=fn)

    p = sub.add_parser("apply")
    _add_code_arg(p)
    p.add_argument("--move", help="a single move as JSON")
    p.add_argument("--sequence", help="a MoveSequence JSON file to replay")
    p.add_argument("--to", choices=FLAVORS, default="paper")
    p.set_defaults(fn=cmd_apply)

    p = sub.add_parser("equiv")
    p.add_argument("code_a")
    p.add_argument("code_b")
    p.add_argument("--flavor", choices=FLAVORS)
    p.add_argument("--max-crossings", type=int, required=True)
    p.add_argument("--max-codes", type=int, default=10_000)
    p.set_defaults(fn=cmd_equiv)

    p = sub.add_parser("batch")
    p.add_argument("--in", dest="in_path", required=True, help="JSON code table")
    p.add_argument("--report", help="CSV report path (default stdout)")
    p.set_defaults(fn=cmd_batch)

    p = sub.add_parser("random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=8)
    p.add_argument("--max-crossings", type=int, default=10)
    p.add_argument("--to", choices=FLAVORS, default="paper")
    p.set_defaults(fn=cmd_random)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return args.fn(args)
    except NotationSyntaxError as exc:
        print(f"pd: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (PDError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"pd: {exc}", file=sys.stderr)
        return DOMAIN_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
