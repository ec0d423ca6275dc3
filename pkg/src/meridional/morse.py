"""Level-by-level record of how the surface meets the Heegaard tori T_t.

A trace lists, from R_0 up to R_1, the saddles of the surface (S1, S2 and
the forbidden S3, S4), the points where the knot crosses the surface (X) and
the interface marks (IF) where the essential slope changes.

Serialized form, one event per line::

    meridional-trace 1
    initial 2 2,3 0
    1 X(1)
    2 S2
    3 IF 2,1
    4 S1
    final 2 2,1 0

``initial``/``final`` give essential count, essential slope (``-`` if
unknown) and trivial count.  The slope after ``IF`` is optional.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .assembler import Assembly, InvalidAssembly, validate_assembly
from .torus import Slope

SADDLES = ("S1", "S2", "S3", "S4")
KINDS = SADDLES + ("X", "IF")


class TraceViolation(ValueError):
    """A trace step that no surface in the construction can produce."""

    def __init__(self, rank: int, rule: str):
        self.rank, self.rule = rank, rule
        super().__init__(f"rank {rank}: {rule}")


class TraceFormatError(ValueError):
    pass


class ParseError(ValueError):
    """The trace does not decompose into pieces."""


@dataclass(frozen=True)
class LevelState:
    essential_count: int
    essential_slope: Slope | None
    trivial_count: int


@dataclass(frozen=True)
class MorseEvent:
    kind: str
    rank: int
    position: int | None = None
    slope: Slope | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")
        if (self.kind == "X") != (self.position is not None):
            raise ValueError("exactly the crossing events carry a position")


@dataclass(frozen=True)
class MorseTrace:
    initial: LevelState
    events: tuple[MorseEvent, ...]
    final: LevelState

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))


@dataclass(frozen=True)
class Skeleton:
    types: tuple[str, ...]
    r: int
    placement: tuple[tuple[int, ...], ...]


def skeleton(a: Assembly) -> Skeleton:
    return Skeleton(a.types, a.r, a.global_placement())


def trace(a: Assembly) -> MorseTrace:
    bad = validate_assembly(a)
    if bad:
        raise InvalidAssembly(bad)
    events: list[MorseEvent] = []

    def emit(kind, position=None, slope=None):
        events.append(MorseEvent(kind, len(events) + 1, position, slope))

    placement = a.global_placement()
    count = a.pieces[0].positions
    for j, positions in enumerate(placement):
        if j > 0:
            for _ in range(a.r):
                emit("S2")
            emit("IF", slope=a.gamma[j])
            for _ in range(a.r):
                emit("S1")
        for pos in positions:
            emit("X", position=pos)
    return MorseTrace(LevelState(count, a.gamma[0], 0), events,
                      LevelState(count, a.gamma[-1], 0))


def step(state: LevelState, event: MorseEvent, pending: Slope | None = None):
    """Apply one event; returns (new state, pending slope)."""
    e, slope, t = state.essential_count, state.essential_slope, state.trivial_count
    if event.kind in ("S3", "S4"):
        raise TraceViolation(event.rank, f"saddle-type-{event.kind[1]}")
    if event.kind == "S2":
        if e < 2:
            raise TraceViolation(event.rank, "no-essential-pair")
        e, t = e - 2, t + 1
        if e == 0:
            slope = None
    elif event.kind == "S1":
        if t < 1:
            raise TraceViolation(event.rank, "no-trivial-curve")
        if e == 0:
            slope = pending
        e, t = e + 2, t - 1
    elif event.kind == "IF":
        if e != 0:
            raise TraceViolation(event.rank, "interface-with-essential-curves")
        pending = event.slope
    else:
        if t > 0:
            raise TraceViolation(event.rank, "crossing-at-trivial-level")
        if not 1 <= event.position <= e:
            raise TraceViolation(event.rank, "position-out-of-range")
    if t > 0 and e % 2:
        raise TraceViolation(event.rank, "odd-essential-count")
    return LevelState(e, slope, t), pending


def replay(tr: MorseTrace) -> LevelState:
    """Run the events from the initial state, checking every level.

    Raises TraceViolation at the first impossible step or when the result
    disagrees with the recorded final state.
    """
    state, pending = tr.initial, None
    last_rank = 0
    for event in tr.events:
        if event.rank <= last_rank:
            raise TraceViolation(event.rank, "rank-order")
        last_rank = event.rank
        state, pending = step(state, event, pending)
    fin = tr.final
    same = (state.essential_count == fin.essential_count
            and state.trivial_count == fin.trivial_count
            and (state.essential_slope is None or fin.essential_slope is None
                 or state.essential_slope == fin.essential_slope))
    if not same:
        raise TraceViolation(last_rank + 1, "final-state-mismatch")
    return state


def _runs(kinds: list[str]) -> list[tuple[str, int]]:
    runs: list[tuple[str, int]] = []
    for k in kinds:
        if runs and runs[-1][0] == k:
            runs[-1] = (k, runs[-1][1] + 1)
        else:
            runs.append((k, 1))
    return runs


def recognize(tr: MorseTrace, bottom_kind: str, top_kind: str) -> Skeleton:
    """Recover piece types, r and crossing placement from a trace.

    ``bottom_kind``/``top_kind`` ("annuli" or "disks") say how the surface
    ends in R_0 and R_1.
    """
    for kind in (bottom_kind, top_kind):
        if kind not in ("annuli", "disks"):
            raise ValueError(f"endpoint kind must be 'annuli' or 'disks', got {kind!r}")
    saddles = [e.kind for e in tr.events if e.kind in SADDLES]
    if saddles and saddles[0] == "S1":
        raise ParseError("the first saddle above R_0 must join two essential curves (S2)")
    try:
        replay(tr)
    except TraceViolation as exc:
        raise ParseError(str(exc)) from exc

    count = tr.initial.essential_count
    if not saddles:
        kinds = (bottom_kind, top_kind)
        if kinds == ("annuli", "annuli"):
            types = ("D",)
        elif kinds == ("disks", "disks"):
            types = ("F",)
        else:
            types = ("E",)
        if types != ("F",) and count % 2:
            raise ParseError(f"odd essential count {count} at the essential level")
        r = count if types == ("F",) else count // 2
        if r < 1:
            raise ParseError("no essential curves")
        return Skeleton(types, r, (tuple(e.position for e in tr.events if e.kind == "X"),))

    runs = _runs(saddles)
    r = runs[0][1]
    if count != 2 * r:
        raise ParseError(f"initial essential count {count} does not match r={r}")
    if len(runs) % 2 or any(run != (("S2", "S1")[i % 2], r) for i, run in enumerate(runs)):
        raise ParseError(f"saddles do not group into blocks of {r} S2 followed by {r} S1")

    placement: list[list[int]] = [[]]
    inside_block = False
    for e in tr.events:
        if e.kind == "S2" and not inside_block:
            inside_block = True
            placement.append([])
        elif e.kind == "S1":
            inside_block = False
        elif e.kind == "IF" and not inside_block:
            raise ParseError(f"rank {e.rank}: interface mark outside a saddle block")
        elif e.kind == "X":
            placement[-1].append(e.position)
    ends = {"annuli": "B", "disks": "C"}
    types = (ends[bottom_kind],) + ("A",) * (len(placement) - 2) + (ends[top_kind],)
    return Skeleton(types, r, tuple(tuple(p) for p in placement))


# -- text form -----------------------------------------------------------

HEADER = "meridional-trace 1"


def _format_state(tag: str, s: LevelState) -> str:
    slope = str(s.essential_slope) if s.essential_slope is not None else "-"
    return f"{tag} {s.essential_count} {slope} {s.trivial_count}"


def format_trace(tr: MorseTrace) -> str:
    lines = [HEADER, _format_state("initial", tr.initial)]
    for e in tr.events:
        if e.kind == "X":
            body = f"X({e.position})"
        elif e.kind == "IF" and e.slope is not None:
            body = f"IF {e.slope}"
        else:
            body = e.kind
        lines.append(f"{e.rank} {body}")
    lines.append(_format_state("final", tr.final))
    return "\n".join(lines) + "\n"


def _parse_state(words: list[str], lineno: int) -> LevelState:
    if len(words) != 4:
        raise TraceFormatError(f"line {lineno}: expected '{words[0]} COUNT SLOPE TRIVIAL'")
    try:
        slope = None if words[2] == "-" else Slope.parse(words[2])
        return LevelState(int(words[1]), slope, int(words[3]))
    except ValueError as exc:
        raise TraceFormatError(f"line {lineno}: {exc}") from exc


_EVENT = re.compile(r"(\d+)\s+(S[1-4]|X\((\d+)\)|IF)(?:\s+(\S+))?")


def parse_trace(text: str) -> MorseTrace:
    lines = [(n, ln.split("#", 1)[0].strip()) for n, ln in enumerate(text.splitlines(), 1)]
    lines = [(n, ln) for n, ln in lines if ln]
    if not lines or lines[0][1] != HEADER:
        raise TraceFormatError(f"expected header {HEADER!r}")
    initial = final = None
    events = []
    for n, ln in lines[1:]:
        words = ln.split()
        if words[0] == "initial":
            initial = _parse_state(words, n)
            continue
        if words[0] == "final":
            final = _parse_state(words, n)
            continue
        if final is not None:
            raise TraceFormatError(f"line {n}: event after the final state")
        m = _EVENT.fullmatch(ln)
        if not m:
            if any(w.lower() in ("max", "min", "maximum", "minimum") for w in words):
                raise TraceFormatError(
                    f"line {n}: extrema of the knot are not trace events")
            raise TraceFormatError(f"line {n}: cannot parse event {ln!r}")
        rank, token, pos, extra = int(m[1]), m[2], m[3], m[4]
        if token == "IF":
            try:
                slope = Slope.parse(extra) if extra else None
            except ValueError as exc:
                raise TraceFormatError(f"line {n}: {exc}") from exc
            events.append(MorseEvent("IF", rank, slope=slope))
        elif extra:
            raise TraceFormatError(f"line {n}: unexpected {extra!r}")
        elif pos is not None:
            events.append(MorseEvent("X", rank, position=int(pos)))
        else:
            events.append(MorseEvent(token, rank))
    if initial is None or final is None:
        raise TraceFormatError("trace needs both an initial and a final line")
    return MorseTrace(initial, events, final)
