import dataclasses

import pytest
from hypothesis import given, strategies as st

from meridional.pieces import (ARC_CONTINUITY, PIECE_TYPES, WINDING, Crossing, MalformedPiece,
                               PieceA, PieceB, PieceC, PieceD, PieceE, PieceF, fragment_report,
                               nested_depth, trajectories, validate_piece)
from meridional.torus import TREFOIL, TwoBridgeFraction

T = TREFOIL
UNKNOT = TwoBridgeFraction(1, 0)


def X(rank, arc, pos, side, winding=0):
    return Crossing(rank, arc, pos, side, winding)


# arc 0 once round in one direction, arc 1 once round in the other (r=1)
FULL = (X(1, 0, 2, 1), X(2, 0, 1, 1), X(3, 1, 1, -1), X(4, 1, 2, -1))


@st.composite
def walks(draw, kind=None, max_r=3, max_steps=4):
    """Structurally sound pieces: each arc a random walk between regions."""
    kind = kind or draw(st.sampled_from(sorted(PIECE_TYPES)))
    cls = PIECE_TYPES[kind]
    r = draw(st.integers(1, max_r))
    probe = cls(r=r)
    P = probe.positions
    crossings = []
    steps = [draw(st.lists(st.sampled_from([1, -1]), max_size=max_steps)) for _ in range(2)]
    order = draw(st.permutations([0] * len(steps[0]) + [1] * len(steps[1])))
    regions = [probe.start_region] * 2
    for rank, arc in enumerate(order, start=1):
        side = steps[arc].pop(0)
        region = regions[arc]
        pos = region % P + 1 if side == 1 else (region or P)
        crossings.append(X(rank, arc, pos, side))
        regions[arc] = (region + side) % P
    return cls(r=r, crossings=tuple(crossings))


def test_c_without_crossings():
    assert validate_piece(PieceC(r=1, lower_cert=T)) == ["C-must-intersect"]
    assert validate_piece(PieceC(r=1, lower_cert=UNKNOT)) == ["C-must-intersect", "2.4.1(1)"]


def test_b_winding_one():
    assert validate_piece(PieceB(r=1, annulus_winding=1, lower_cert=T, min_cert=T,
                                 disjoint_wrap=2)) == [WINDING]


def test_figure_one_shape_is_valid():
    # one crossing per arc, on the two different annuli; the far family is
    # rotated by one so that both arcs end inside its innermost disk
    a = PieceA(r=1, lower_cert=T, upper_cert=T, offset=1,
               crossings=(X(1, 0, 2, 1), X(2, 1, 1, -1)))
    assert validate_piece(a) == []


def test_offset_decides_arc_continuity():
    a = PieceA(r=1, lower_cert=T, upper_cert=T, offset=0,
               crossings=(X(1, 0, 2, 1), X(2, 1, 1, -1)))
    assert validate_piece(a) == [ARC_CONTINUITY]


VALID = {
    "A": PieceA(r=1, lower_cert=T, upper_cert=T, crossings=FULL),
    "B": PieceB(r=1, lower_cert=T, min_cert=T, crossings=FULL),
    "C": PieceC(r=1, lower_cert=T, crossings=(X(1, 0, 2, 1), X(2, 1, 1, -1))),
    "D": PieceD(r=1, max_cert=T, min_cert=T, crossings=FULL),
    "E": PieceE(r=1, max_cert=T, crossings=(X(1, 0, 2, 1), X(2, 1, 1, -1))),
    "F": PieceF(r=1, crossings=(X(1, 0, 1, 1),)),
}

# (piece type, field, broken value, expected sole violation)
SINGLE_FIELD_BREAKS = [
    ("A", "lower_cert", None, "2.2.1(1)"), ("A", "upper_cert", UNKNOT, "2.2.1(4)"),
    ("B", "lower_cert", UNKNOT, "2.3.1(1)"), ("B", "min_cert", None, "2.3.1(4)"),
    ("B", "annulus_winding", 1, WINDING),
    ("C", "lower_cert", None, "2.4.1(1)"),
    ("D", "max_cert", None, "2.5.1(1)"), ("D", "min_cert", UNKNOT, "2.5.1(4)"),
    ("D", "winding_b", 0, WINDING),
    ("E", "max_cert", UNKNOT, "2.6.1(1)"), ("E", "winding_a", 1, WINDING),
]


@pytest.mark.parametrize("kind", sorted(VALID))
def test_reference_pieces_are_valid(kind):
    assert validate_piece(VALID[kind]) == []


@pytest.mark.parametrize("kind,name,value,code", SINGLE_FIELD_BREAKS)
def test_single_field_breaks_one_clause(kind, name, value, code):
    broken = dataclasses.replace(VALID[kind], **{name: value})
    assert validate_piece(broken) == [code]
    # restoring the field restores validity
    fixed = dataclasses.replace(broken, **{name: getattr(VALID[kind], name)})
    assert validate_piece(fixed) == []


@pytest.mark.parametrize("kind", ["A", "B", "D"])
def test_no_slide_flags_never_hurt(kind):
    p = dataclasses.replace(VALID[kind], no_slide_start=True, no_slide_end=True)
    assert validate_piece(p) == []


@pytest.mark.parametrize("kind,code", [("A", "2.2.1(6)"), ("B", "2.3.1(6)"), ("D", "2.5.1(6)")])
def test_disjoint_wrap(kind, code):
    base = dataclasses.replace(VALID[kind], crossings=(), disjoint_wrap=2)
    assert validate_piece(base) == []
    assert validate_piece(dataclasses.replace(base, disjoint_wrap=1)) == [code]
    assert validate_piece(dataclasses.replace(base, disjoint_wrap=None)) == [code]


def test_parallel_return_needs_winding_and_company():
    arc0 = (X(1, 1, 2, 1), X(2, 0, 2, 1), X(3, 1, 2, -1, 1), X(4, 1, 1, -1))
    c = PieceC(r=1, lower_cert=T, crossings=arc0)
    assert "2.4.1(3)" not in validate_piece(c)
    # without the winding the return is parallel
    plain = tuple(dataclasses.replace(x, winding=0) for x in arc0)
    assert "2.4.1(3)" in validate_piece(dataclasses.replace(c, crossings=plain))
    # with the winding but the other arc elsewhere it is parallel too
    late = (X(1, 1, 2, 1), X(2, 1, 2, -1, 1), X(3, 1, 1, -1), X(4, 0, 2, 1))
    assert "2.4.1(3)" in validate_piece(dataclasses.replace(c, crossings=late))


def test_f_extremal_subarcs():
    # the same crossing bounds both ends of the only subarc
    assert validate_piece(VALID["F"]) == []
    # one arc crossing the same disk twice in one direction wraps round S1
    assert validate_piece(PieceF(r=1, crossings=(X(1, 0, 1, 1), X(2, 0, 1, 1)))) == []
    # both arcs meet the disk from the side of the minimum
    same = PieceF(r=1, crossings=(X(1, 0, 1, 1), X(2, 1, 1, 1)))
    assert validate_piece(same) == ["2.7.1(2)"]
    assert validate_piece(PieceF(r=2)) == ["2.7.1(2)"]


@pytest.mark.parametrize("crossings,match", [
    ((X(1, 0, 2, 1), X(1, 1, 1, -1)), "ranks"),
    ((X(1, 0, 3, 1),), "position"),
    ((X(1, 2, 1, 1),), "arc"),
    ((X(1, 0, 1, 0),), "side"),
    ((X(1, 0, 1, 1),), "cannot cross"),
])
def test_malformed(crossings, match):
    with pytest.raises(MalformedPiece, match=match):
        validate_piece(PieceA(r=1, crossings=crossings))


def test_wrap_with_crossings_is_malformed():
    with pytest.raises(MalformedPiece):
        validate_piece(dataclasses.replace(VALID["A"], disjoint_wrap=2))


def test_fragment_examples():
    a = PieceA(r=2, crossings=(X(1, 0, 3, 1), X(2, 0, 4, 1), X(3, 1, 2, -1)))
    rep = fragment_report(a)
    assert (rep.chi, rep.bottom_interface_circles, rep.top_interface_circles,
            rep.meridian_boundaries) == (-7, 2, 2, 3)
    d = fragment_report(PieceD(r=1, crossings=(X(1, 0, 2, 1), X(2, 0, 1, 1))))
    assert (d.chi, d.bottom_interface_circles, d.top_interface_circles,
            d.meridian_boundaries) == (-2, 0, 0, 2)
    f = fragment_report(VALID["F"])
    assert (f.chi, f.meridian_boundaries) == (1, 1)


CHI = {"A": lambda r, n: -2 * r - n, "B": lambda r, n: -r - n, "C": lambda r, n: r - n,
       "D": lambda r, n: -n, "E": lambda r, n: 2 * r - n, "F": lambda r, n: 2 * r - n}


@given(walks())
def test_fragment_chi_formula(p):
    rep = fragment_report(p)
    assert rep.chi == CHI[p.kind](p.r, p.n)
    assert rep.meridian_boundaries == p.n
    if p.closed_knot:
        assert (rep.chi + p.n) % 2 == 0


@given(walks())
def test_ownership_pairs_mirror_positions(p):
    rep = fragment_report(p)
    for family in ("start", "end"):
        owner = rep.ownership[family]
        shape = p.start_sheet if family == "start" else p.end_sheet
        counts = {}
        for sid in owner.values():
            counts[sid] = counts.get(sid, 0) + 1
        if shape == "disk":
            assert set(counts.values()) == {1}
        else:
            assert set(counts.values()) == {2}
    start = rep.ownership["start"]
    for i in range(1, 2 * p.r + 1):
        if p.start_sheet != "disk":
            assert start[i] == start[2 * p.r + 1 - i]


@given(st.integers(1, 6), st.integers(-20, 20), st.data())
def test_nested_depth_is_rotated_mirror(r, offset, data):
    i = data.draw(st.integers(1, 2 * r))
    d = nested_depth(i, r, offset)
    assert 1 <= d <= r
    mirror = (2 * r + 1 - (i - offset) - 1) % (2 * r) + 1 + offset
    assert nested_depth((mirror - 1) % (2 * r) + 1, r, offset) == d
    assert nested_depth(i, r, offset + 2 * r) == d


@given(walks())
def test_trajectories_step_by_one(p):
    P = p.positions
    for regs in trajectories(p):
        for a, b in zip(regs, regs[1:]):
            assert (b - a) % P in (1, P - 1) or P == 1


@given(walks())
def test_validation_is_deterministic_and_known_codes(p):
    codes = validate_piece(p)
    assert codes == validate_piece(p)
    assert len(codes) == len(set(codes))
