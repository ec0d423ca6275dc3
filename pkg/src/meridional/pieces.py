"""The six piece types and their per-piece conditions.

Combinatorial model
-------------------
At the essential level of a piece the surface meets the Heegaard torus in
``P`` parallel essential curves (``P = 2r`` for types A-E, ``P = r`` for F),
numbered ``1..P``.  They cut the torus into ``P`` annular regions arranged
cyclically; region ``j`` lies between curve ``j`` and curve ``j + 1`` (indices
mod ``P``, region 0 between curve ``P`` and curve 1).

Each of the two straight arcs of the knot starts in a fixed region and walks
through the regions; a crossing at position ``i`` with ``side=+1`` moves the
arc from region ``i - 1`` into region ``i``, ``side=-1`` moves it back.

Nested families (the punctured annuli of types A/B/C and the annuli of types
B/D/E) pair position ``i`` with ``2r + 1 - i``: the depth-1 sheet owns the two
curves around region ``r``, the depth-``r`` sheet the outermost pair.  The
far family of types A/B/D is rotated by ``offset``; its innermost region is
therefore ``r + offset``.

Each piece is read from its "start" end (the trivial disk D_1 for A/B/C, the
maximum of the knot for D/E/F) towards its "end"; crossing ranks increase in
that direction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import ClassVar

from .torus import TwoBridgeFraction, is_nontrivial_two_bridge

PANTS, ANNULUS, DISK = "pants", "annulus", "disk"
SHEET_CHI = {PANTS: -1, ANNULUS: 0, DISK: 1}


class MalformedPiece(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    """One intersection point x_i of the knot with the surface."""

    rank: int
    arc: int
    position: int
    side: int
    winding: int = 0


@dataclass(frozen=True, kw_only=True)
class Piece:
    r: int
    crossings: tuple[Crossing, ...] = ()

    kind: ClassVar[str] = "?"
    # sheet shape of the start family and the end family
    start_sheet: ClassVar[str] = PANTS
    end_sheet: ClassVar[str] = PANTS
    # D/E/F carry a closed knot t; A/B/C carry arcs ending on D_1
    closed_knot: ClassVar[bool] = False

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def positions(self) -> int:
        return 2 * self.r

    @property
    def start_region(self) -> int:
        return self.r % self.positions

    @property
    def end_offset(self) -> int:
        return getattr(self, "offset", 0)

    @property
    def target_region(self) -> int | None:
        """Region the arcs must reach at the end, when it is forced."""
        if self.end_sheet == DISK:
            return None
        return (self.r + self.end_offset) % self.positions

    def arcs(self) -> tuple[list[Crossing], list[Crossing]]:
        ordered = sorted(self.crossings, key=lambda c: c.rank)
        return ([c for c in ordered if c.arc == 0],
                [c for c in ordered if c.arc == 1])

    def placement(self) -> tuple[int, ...]:
        return tuple(c.position for c in sorted(self.crossings, key=lambda c: c.rank))


@dataclass(frozen=True, kw_only=True)
class PieceA(Piece):
    kind: ClassVar[str] = "A"
    lower_cert: TwoBridgeFraction | None = None
    upper_cert: TwoBridgeFraction | None = None
    disjoint_wrap: int | None = None
    offset: int = 0
    reflect: bool = False
    no_slide_start: bool = False
    no_slide_end: bool = False


@dataclass(frozen=True, kw_only=True)
class PieceB(Piece):
    kind: ClassVar[str] = "B"
    end_sheet: ClassVar[str] = ANNULUS
    annulus_winding: int = 2
    lower_cert: TwoBridgeFraction | None = None
    min_cert: TwoBridgeFraction | None = None
    disjoint_wrap: int | None = None
    offset: int = 0
    reflect: bool = False
    no_slide_start: bool = False
    no_slide_end: bool = False


@dataclass(frozen=True, kw_only=True)
class PieceC(Piece):
    kind: ClassVar[str] = "C"
    end_sheet: ClassVar[str] = DISK
    lower_cert: TwoBridgeFraction | None = None
    no_slide_start: bool = False

    @property
    def min_endpoint_disks(self) -> tuple[int, int] | None:
        arc0, arc1 = self.arcs()
        if not arc0 or not arc1:
            return None
        return arc0[-1].position, arc1[-1].position


@dataclass(frozen=True, kw_only=True)
class PieceD(Piece):
    kind: ClassVar[str] = "D"
    start_sheet: ClassVar[str] = ANNULUS
    end_sheet: ClassVar[str] = ANNULUS
    closed_knot: ClassVar[bool] = True
    winding_a: int = 2
    winding_b: int = 2
    max_cert: TwoBridgeFraction | None = None
    min_cert: TwoBridgeFraction | None = None
    disjoint_wrap: int | None = None
    offset: int = 0
    reflect: bool = False
    no_slide_start: bool = False
    no_slide_end: bool = False


@dataclass(frozen=True, kw_only=True)
class PieceE(Piece):
    kind: ClassVar[str] = "E"
    start_sheet: ClassVar[str] = ANNULUS
    end_sheet: ClassVar[str] = DISK
    closed_knot: ClassVar[bool] = True
    winding_a: int = 2
    max_cert: TwoBridgeFraction | None = None
    no_slide_start: bool = False

    @property
    def min_endpoint_disks(self) -> tuple[int, int] | None:
        ends = _extremum_subarc_ends(self, at_end=True)
        return None if ends is None else (ends[0].position, ends[1].position)


@dataclass(frozen=True, kw_only=True)
class PieceF(Piece):
    kind: ClassVar[str] = "F"
    start_sheet: ClassVar[str] = DISK
    end_sheet: ClassVar[str] = DISK
    closed_knot: ClassVar[bool] = True

    @property
    def positions(self) -> int:
        return self.r

    @property
    def start_region(self) -> int:
        return 0

    @property
    def min_endpoint(self):
        return _extremum_subarc_ends(self, at_end=True)

    @property
    def max_endpoint(self):
        return _extremum_subarc_ends(self, at_end=False)


PIECE_TYPES: dict[str, type[Piece]] = {
    cls.kind: cls for cls in (PieceA, PieceB, PieceC, PieceD, PieceE, PieceF)
}

# Condition identifiers by role.  Roles absent from a type do not apply.
CONDITIONS: dict[str, dict[str, str]] = {
    "A": {"start_cert": "2.2.1(1)", "start_slide": "2.2.1(2)", "returns": "2.2.1(3)",
          "end_cert": "2.2.1(4)", "end_slide": "2.2.1(5)", "disjoint": "2.2.1(6)"},
    "B": {"start_cert": "2.3.1(1)", "start_slide": "2.3.1(2)", "returns": "2.3.1(3)",
          "end_cert": "2.3.1(4)", "end_slide": "2.3.1(5)", "disjoint": "2.3.1(6)"},
    "C": {"start_cert": "2.4.1(1)", "start_slide": "2.4.1(2)", "returns": "2.4.1(3)",
          "end_disks": "2.4.1(4)", "must_intersect": "C-must-intersect"},
    "D": {"start_cert": "2.5.1(1)", "start_slide": "2.5.1(2)", "returns": "2.5.1(3)",
          "end_cert": "2.5.1(4)", "end_slide": "2.5.1(5)", "disjoint": "2.5.1(6)"},
    "E": {"start_cert": "2.6.1(1)", "start_slide": "2.6.1(2)", "returns": "2.6.1(3)",
          "end_disks": "2.6.1(4)"},
    "F": {"returns": "2.7.1(1)", "end_disks": "2.7.1(2)"},
}
ARC_CONTINUITY = "arc-continuity"
WINDING = "winding-≥2"

_CERT_FIELDS = {
    "A": ("lower_cert", "upper_cert"),
    "B": ("lower_cert", "min_cert"),
    "C": ("lower_cert", None),
    "D": ("max_cert", "min_cert"),
    "E": ("max_cert", None),
    "F": (None, None),
}
_WINDING_FIELDS = {"B": ("annulus_winding",), "D": ("winding_a", "winding_b"),
                   "E": ("winding_a",)}


def certificates(p: Piece) -> tuple[TwoBridgeFraction | None, TwoBridgeFraction | None]:
    start, end = _CERT_FIELDS[p.kind]
    return (getattr(p, start) if start else None, getattr(p, end) if end else None)


def windings(p: Piece) -> dict[str, int]:
    return {name: getattr(p, name) for name in _WINDING_FIELDS.get(p.kind, ())}


def check_structure(p: Piece) -> None:
    """Raise MalformedPiece unless the piece data is structurally sound."""
    if p.r < 1:
        raise MalformedPiece(f"r must be >= 1, got {p.r}")
    ranks = sorted(c.rank for c in p.crossings)
    if ranks != list(range(1, p.n + 1)):
        raise MalformedPiece(f"height ranks must be distinct and consecutive from 1, got {ranks}")
    for c in p.crossings:
        if c.arc not in (0, 1):
            raise MalformedPiece(f"arc id must be 0 or 1, got {c.arc}")
        if not 1 <= c.position <= p.positions:
            raise MalformedPiece(f"position {c.position} outside 1..{p.positions}")
        if c.side not in (1, -1):
            raise MalformedPiece(f"side must be +1 or -1, got {c.side}")
    wrap = getattr(p, "disjoint_wrap", None)
    if wrap is not None and p.crossings:
        raise MalformedPiece("disjoint_wrap is only meaningful when the knot misses the surface")
    trajectories(p)


def trajectories(p: Piece) -> tuple[list[int], list[int]]:
    """Regions visited by each arc, starting region included.

    Raises MalformedPiece when an arc crosses a curve that does not bound
    the region it currently occupies.
    """
    P = p.positions
    out = []
    for arc in p.arcs():
        region = p.start_region
        visited = [region]
        for c in arc:
            before = (c.position - 1) % P if c.side == 1 else c.position % P
            if region != before:
                raise MalformedPiece(
                    f"arc {c.arc} at rank {c.rank} is in region {region} and cannot "
                    f"cross curve {c.position} with side {c.side:+d}")
            region = (region + c.side) % P
            visited.append(region)
        out.append(visited)
    return out[0], out[1]


def _regions_at_ranks(p: Piece) -> dict[int, list[int]]:
    # region of each arc just after each rank (rank 0 = start)
    P = p.positions
    regions = [p.start_region, p.start_region]
    table = {0: list(regions)}
    for c in sorted(p.crossings, key=lambda c: c.rank):
        regions[c.arc] = (regions[c.arc] + c.side) % P
        table[c.rank] = list(regions)
    return table


def _is_parallel_return(p: Piece, first: Crossing, second: Crossing, table) -> bool:
    if first.position != second.position or first.side == second.side:
        return False
    if second.winding == 0:
        return True
    # a declared winding only separates the two points if the other arc
    # shares the region somewhere between them
    P = p.positions
    region = (first.position - (1 if first.side == -1 else 0)) % P
    other = 1 - first.arc
    return not any(table[k][other] == region for k in range(first.rank, second.rank))


def _crossing_order(p: Piece) -> list[tuple[Crossing, int, int]]:
    """Crossings in the order the closed knot meets them, starting at the
    maximum: arc 0 downwards, then arc 1 upwards.  Each entry carries the
    side of the sheet before and after the crossing along that traversal."""
    arc0, arc1 = p.arcs()
    seq = [(c, -c.side, c.side) for c in arc0]
    seq += [(c, c.side, -c.side) for c in reversed(arc1)]
    return seq


def _extremum_subarc_ends(p: Piece, at_end: bool):
    """Endpoints of the component of t minus the surface containing the
    minimum (``at_end``) or the maximum, as (u, v, after_u, before_v)."""
    seq = _crossing_order(p)
    if not seq:
        return None
    arc0 = p.arcs()[0]
    if at_end:
        i = len(arc0) - 1 if arc0 else len(seq) - 1
    else:
        i = len(seq) - 1
    u, _, after_u = seq[i]
    v, before_v, _ = seq[(i + 1) % len(seq)]
    return u, v, after_u, before_v


def _ends_on_distinct_disks(p: Piece, at_end: bool, allow_sides: bool) -> bool:
    if not p.closed_knot:
        arc0, arc1 = p.arcs()
        return bool(arc0 and arc1) and arc0[-1].position != arc1[-1].position
    ends = _extremum_subarc_ends(p, at_end)
    if ends is None:
        return False
    u, v, after_u, before_v = ends
    if not allow_sides:
        return u.position != v.position
    if u is v:
        return True
    return u.position != v.position or after_u != before_v


def _slide_ok(a: list[Crossing], b: list[Crossing], pick: int, flag: bool) -> bool:
    if not a or not b or flag:
        return True
    return a[pick].position != b[pick].position


def validate_piece(p: Piece, check_windings: bool = True) -> list[str]:
    """Identifiers of the violated conditions; an empty list means valid."""
    check_structure(p)
    cond = CONDITIONS[p.kind]
    found: list[str] = []

    def flag(role_or_code: str):
        code = cond.get(role_or_code, role_or_code)
        if code not in found:
            found.append(code)

    arc0, arc1 = p.arcs()
    reg0, reg1 = trajectories(p)
    end0, end1 = reg0[-1], reg1[-1]
    target = p.target_region

    if p.kind == "A":
        if end0 != target or end1 != target:
            flag(ARC_CONTINUITY)
    elif end0 != end1:
        flag(ARC_CONTINUITY)

    if check_windings and any(w < 2 for w in windings(p).values()):
        flag(WINDING)

    start_cert, end_cert = certificates(p)
    for role, cert in (("start_cert", start_cert), ("end_cert", end_cert)):
        if cert is not None and not is_nontrivial_two_bridge(cert):
            flag(role)

    if not p.crossings:
        if p.kind == "C":
            return [cond["must_intersect"]] + [c for c in found if c != ARC_CONTINUITY]
        if "disjoint" in cond:
            wrap = getattr(p, "disjoint_wrap")
            if wrap is None or wrap < 2:
                flag("disjoint")
            if target is not None and end0 == end1 and end0 != target:
                flag("disjoint")
        if "end_disks" in cond:
            flag("end_disks")
        return found

    if "start_cert" in cond and start_cert is None:
        flag("start_cert")
    if "end_cert" in cond:
        if end_cert is None:
            flag("end_cert")
        if p.kind in ("B", "D") and end0 == end1 and end0 != target:
            flag("end_cert")

    if "start_slide" in cond and not _slide_ok(arc0, arc1, 0, p.no_slide_start):
        flag("start_slide")
    if "end_slide" in cond and not _slide_ok(arc0, arc1, -1, p.no_slide_end):
        flag("end_slide")

    table = _regions_at_ranks(p)
    for arc in (arc0, arc1):
        if any(_is_parallel_return(p, a, b, table) for a, b in zip(arc, arc[1:])):
            flag("returns")

    if p.kind in ("C", "E"):
        if not _ends_on_distinct_disks(p, at_end=True, allow_sides=False):
            flag("end_disks")
    elif p.kind == "F":
        if not (_ends_on_distinct_disks(p, True, True) and _ends_on_distinct_disks(p, False, True)):
            flag("end_disks")
    return found


def nested_depth(position: int, r: int, offset: int = 0) -> int:
    """Depth of the nested sheet owning ``position`` in a family rotated by
    ``offset`` (depth 1 = innermost pair)."""
    i = (position - 1 - offset) % (2 * r) + 1
    return r + 1 - i if i <= r else i - r


@dataclass(frozen=True)
class FragmentReport:
    chi: int
    bottom_interface_circles: int
    top_interface_circles: int
    meridian_boundaries: int
    ownership: dict[str, dict[int, tuple[str, int]]]
    sheets: dict[tuple[str, int], str] = field(default_factory=dict)


def _family(p: Piece, family: str) -> tuple[dict, dict]:
    shape = p.start_sheet if family == "start" else p.end_sheet
    P = p.positions
    if shape == DISK:
        owner = {i: (family, i) for i in range(1, P + 1)}
    else:
        off = p.end_offset if family == "end" else 0
        owner = {i: (family, nested_depth(i, p.r, off)) for i in range(1, P + 1)}
    sheets = {sid: shape for sid in owner.values()}
    return owner, sheets


def fragment_report(p: Piece) -> FragmentReport:
    check_structure(p)
    start_owner, start_sheets = _family(p, "start")
    end_owner, end_sheets = _family(p, "end")
    sheets = {**start_sheets, **end_sheets}
    chi = sum(SHEET_CHI[s] for s in sheets.values()) - p.n
    bottom = p.r if p.start_sheet == PANTS else 0
    top = p.r if p.end_sheet == PANTS else 0
    return FragmentReport(
        chi=chi,
        bottom_interface_circles=bottom,
        top_interface_circles=top,
        meridian_boundaries=p.n,
        ownership={"start": start_owner, "end": end_owner},
        sheets=sheets,
    )
