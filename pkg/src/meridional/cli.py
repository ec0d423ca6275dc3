"""Command line front end.

Exit codes: 0 clean, 1 domain violation (invalid assembly, unparsable
trace, nothing found), 2 unreadable or malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import descriptor, morse
from .assembler import (MalformedAssembly, Violation, knot_check, surface_invariants,
                        validate_assembly)
from .enumeration import NotFound, SearchSpec, find_construction
from .torus import ManifoldSpec

OK, VIOLATION, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load(path: str):
    try:
        a = descriptor.load(_read(path))
        validate_assembly(a)  # surfaces structural problems early
        return a
    except (descriptor.DescriptorError, MalformedAssembly) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _report_violations(args, bad: list[Violation]) -> int:
    _emit(args, {"valid": False, "violations": [
        {"code": v.code, "piece": v.piece, "detail": str(v)} for v in bad]},
        "\n".join(str(v) for v in bad))
    return VIOLATION


def _summary(rep) -> str:
    genus = "/".join(str(c.genus) for c in rep.components)
    boundary = "/".join(str(c.boundary_circles) for c in rep.components)
    return f"genus {genus}, boundary {boundary}"


def cmd_validate(args) -> int:
    a = _load(args.descriptor)
    bad = validate_assembly(a)
    if bad:
        return _report_violations(args, bad)
    rep = surface_invariants(a)
    text = f"valid; {_summary(rep)}"
    if not rep.connected:
        text += f" ({len(rep.components)} components)"
    _emit(args, {"valid": True, "violations": []}, text)
    return OK


def cmd_invariants(args) -> int:
    a = _load(args.descriptor)
    bad = validate_assembly(a)
    if bad:
        return _report_violations(args, bad)
    rep = surface_invariants(a)
    knot = knot_check(a)
    lines = [f"components: {len(rep.components)}, {_summary(rep)}",
             "chi: " + "/".join(str(c.chi) for c in rep.components),
             f"knot: {'single' if knot.is_single_knot else 'broken'}"
             + (", (1,1)" if knot.is_one_one else "")]
    payload = {"components": [{"chi": c.chi, "genus": c.genus, "boundary": c.boundary_circles}
                              for c in rep.components],
               "total_boundary": rep.total_boundary, "connected": rep.connected,
               "single_knot": knot.is_single_knot, "one_one": knot.is_one_one}
    _emit(args, payload, "\n".join(lines))
    return OK


def cmd_trace(args) -> int:
    a = _load(args.descriptor)
    bad = validate_assembly(a)
    if bad:
        return _report_violations(args, bad)
    sys.stdout.write(morse.format_trace(morse.trace(a)))
    return OK


def cmd_recognize(args) -> int:
    try:
        tr = morse.parse_trace(_read(args.trace))
    except morse.TraceFormatError as exc:
        raise InputError(f"{args.trace}: {exc}") from exc
    try:
        sk = morse.recognize(tr, args.bottom, args.top)
    except morse.ParseError as exc:
        print(f"not a piece decomposition: {exc}")
        return VIOLATION
    text = "\n".join([
        "types: " + " ".join(sk.types),
        f"r: {sk.r}",
        "placement: " + " | ".join(" ".join(map(str, p)) or "-" for p in sk.placement),
    ])
    _emit(args, {"types": list(sk.types), "r": sk.r,
                 "placement": [list(p) for p in sk.placement]}, text)
    return OK


def cmd_search(args) -> int:
    spec = SearchSpec(args.manifold, args.genus, args.boundary, args.max_r,
                      args.max_pieces, args.max_coeff, args.max_crossings)
    try:
        a = find_construction(spec)
    except NotFound as exc:
        print(str(exc), file=sys.stderr)
        return VIOLATION
    if args.json:
        print(json.dumps(descriptor.to_dict(a), sort_keys=True))
    else:
        sys.stdout.write(descriptor.serialize(a))
    return OK


def _manifold(text: str) -> ManifoldSpec:
    try:
        return ManifoldSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meridional",
        description="Build and check (1,1)-knots with meridional surfaces from pieces.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, help_ in (("validate", cmd_validate, "list violated conditions"),
                              ("invariants", cmd_invariants, "genus, boundary and chi"),
                              ("trace", cmd_trace, "level-by-level Morse trace")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("descriptor")
        p.set_defaults(func=func)

    p = sub.add_parser("recognize", help="recover the piece skeleton from a trace")
    p.add_argument("trace")
    p.add_argument("--bottom", choices=("annuli", "disks"), required=True,
                   help="how the surface ends in the lower solid torus")
    p.add_argument("--top", choices=("annuli", "disks"), required=True)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("search", help="find an assembly with given genus and boundary")
    p.add_argument("--manifold", type=_manifold, required=True, help="S3, S1xS2 or L(p,q)")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--boundary", type=int, required=True, help="number of boundary circles")
    p.add_argument("--max-r", type=int, default=3)
    p.add_argument("--max-pieces", type=int, default=5)
    p.add_argument("--max-coeff", type=int, default=5)
    p.add_argument("--max-crossings", type=int, default=6)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
