"""Text and JSON forms of an assembly.

Text form::

    meridional-descriptor 1
    manifold S3
    r 1
    gamma 2,3 0,1
    piece B
      annulus_winding 3
      lower_cert 3/1
      crossing 1 0 2 +
    piece C
      ...

Every piece field may be given as ``key value``; omitted fields take their
defaults, unknown keys are rejected.  ``#`` starts a comment.
"""
from __future__ import annotations

import dataclasses
import json

from .assembler import Assembly
from .pieces import PIECE_TYPES, Crossing, Piece
from .torus import ManifoldSpec, Slope, TwoBridgeFraction

HEADER = "meridional-descriptor"
VERSION = 1


class DescriptorError(ValueError):
    pass


def _piece_fields(cls) -> list[dataclasses.Field]:
    return [f for f in dataclasses.fields(cls) if f.name not in ("r", "crossings")]


def _field_kind(f: dataclasses.Field) -> str:
    if f.name.endswith("_cert"):
        return "cert"
    if isinstance(f.default, bool):
        return "bool"
    return "int"


def _format_value(kind: str, value) -> str:
    if value is None:
        return "none"
    if kind == "bool":
        return "true" if value else "false"
    return str(value)


def _parse_value(kind: str, text: str):
    if text == "none":
        if kind == "bool":
            raise ValueError("a flag cannot be none")
        return None
    if kind == "cert":
        return TwoBridgeFraction.parse(text)
    if kind == "bool":
        if text not in ("true", "false"):
            raise ValueError(f"expected true or false, got {text!r}")
        return text == "true"
    return int(text)


def serialize(a: Assembly) -> str:
    lines = [f"{HEADER} {VERSION}", f"manifold {a.manifold}", f"r {a.r}",
             "gamma " + " ".join(str(g) for g in a.gamma)]
    for p in a.pieces:
        lines.append(f"piece {p.kind}")
        for f in _piece_fields(type(p)):
            lines.append(f"  {f.name} {_format_value(_field_kind(f), getattr(p, f.name))}")
        for c in sorted(p.crossings, key=lambda c: c.rank):
            side = "+" if c.side == 1 else "-"
            tail = f" {c.winding}" if c.winding else ""
            lines.append(f"  crossing {c.rank} {c.arc} {c.position} {side}{tail}")
    return "\n".join(lines) + "\n"


def _parse_crossing(words: list[str]) -> Crossing:
    if len(words) not in (4, 5) or words[3] not in ("+", "-"):
        raise ValueError("expected 'crossing RANK ARC POSITION +|- [WINDING]'")
    rank, arc, pos = (int(w) for w in words[:3])
    winding = int(words[4]) if len(words) == 5 else 0
    return Crossing(rank, arc, pos, 1 if words[3] == "+" else -1, winding)


def parse(text: str) -> Assembly:
    rows = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((n, line.split()))
    if not rows or rows[0][1][0] != HEADER:
        raise DescriptorError(f"missing '{HEADER} {VERSION}' header")
    if rows[0][1][1:] != [str(VERSION)]:
        raise DescriptorError(f"unsupported descriptor version {' '.join(rows[0][1][1:])!r}")

    head: dict = {}
    pieces: list[tuple[str, dict, list]] = []
    for n, words in rows[1:]:
        key, args = words[0], words[1:]
        try:
            if key == "piece":
                if len(args) != 1 or args[0] not in PIECE_TYPES:
                    raise ValueError(f"unknown piece type {' '.join(args)!r}")
                pieces.append((args[0], {}, []))
            elif pieces:
                kind, fields, crossings = pieces[-1]
                if key == "crossing":
                    crossings.append(_parse_crossing(args))
                    continue
                spec = {f.name: f for f in _piece_fields(PIECE_TYPES[kind])}
                if key not in spec:
                    raise ValueError(f"unknown field {key!r} for a type {kind} piece")
                if key in fields or len(args) != 1:
                    raise ValueError(f"field {key!r} needs exactly one value, once")
                fields[key] = _parse_value(_field_kind(spec[key]), args[0])
            elif key in ("manifold", "r", "gamma"):
                if key in head:
                    raise ValueError(f"duplicate {key!r}")
                if key == "manifold":
                    head[key] = ManifoldSpec.parse(" ".join(args))
                elif key == "r":
                    (value,) = args
                    head[key] = int(value)
                else:
                    head[key] = tuple(Slope.parse(w) for w in args)
            else:
                raise ValueError(f"unknown key {key!r}")
        except ValueError as exc:
            raise DescriptorError(f"line {n}: {exc}") from exc

    for key in ("manifold", "r", "gamma"):
        if key not in head:
            raise DescriptorError(f"missing {key!r}")
    if not pieces:
        raise DescriptorError("no pieces")
    built = []
    for kind, fields, crossings in pieces:
        built.append(PIECE_TYPES[kind](r=head["r"], crossings=tuple(crossings), **fields))
    return Assembly(head["manifold"], head["gamma"], tuple(built), head["r"])


# -- JSON ----------------------------------------------------------------

def _piece_to_dict(p: Piece) -> dict:
    out = {"type": p.kind}
    for f in _piece_fields(type(p)):
        value = getattr(p, f.name)
        out[f.name] = str(value) if isinstance(value, TwoBridgeFraction) else value
    out["crossings"] = [[c.rank, c.arc, c.position, c.side, c.winding]
                        for c in sorted(p.crossings, key=lambda c: c.rank)]
    return out


def to_dict(a: Assembly) -> dict:
    return {
        "version": VERSION,
        "manifold": str(a.manifold),
        "r": a.r,
        "gamma": [[g.m, g.l] for g in a.gamma],
        "pieces": [_piece_to_dict(p) for p in a.pieces],
    }


def from_dict(d: dict) -> Assembly:
    try:
        if d.get("version") != VERSION:
            raise ValueError(f"unsupported version {d.get('version')!r}")
        extra = set(d) - {"version", "manifold", "r", "gamma", "pieces"}
        if extra:
            raise ValueError(f"unknown keys {sorted(extra)}")
        r = int(d["r"])
        pieces = []
        for pd in d["pieces"]:
            pd = dict(pd)
            cls = PIECE_TYPES[pd.pop("type")]
            crossings = tuple(Crossing(*row) for row in pd.pop("crossings", []))
            spec = {f.name: f for f in _piece_fields(cls)}
            unknown = set(pd) - set(spec)
            if unknown:
                raise ValueError(f"unknown piece fields {sorted(unknown)}")
            fields = {k: (TwoBridgeFraction.parse(v) if _field_kind(spec[k]) == "cert" and v is not None else v)
                      for k, v in pd.items()}
            pieces.append(cls(r=r, crossings=crossings, **fields))
        return Assembly(ManifoldSpec.parse(d["manifold"]),
                        tuple(Slope(*g) for g in d["gamma"]), tuple(pieces), r)
    except (KeyError, TypeError, ValueError) as exc:
        raise DescriptorError(str(exc)) from exc


def load(text: str) -> Assembly:
    """Parse either form; JSON is recognised by its leading brace."""
    if text.lstrip().startswith("{"):
        try:
            return from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"bad JSON: {exc}") from exc
    return parse(text)
