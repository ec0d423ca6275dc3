"""Regenerate the descriptor fixtures under tests/fixtures.

Each file in violations/ breaks exactly one numbered condition of an
otherwise valid assembly; valid/ holds the unbroken reference shapes.
The script refuses to write a fixture whose report is not exactly the
intended identifier.
"""
import argparse
from pathlib import Path

from meridional.assembler import Assembly, validate_assembly
from meridional.descriptor import parse, serialize
from meridional.pieces import Crossing as X, PieceA, PieceB, PieceC, PieceD, PieceE, PieceF
from meridional.torus import TREFOIL as T, ManifoldSpec, Slope, TwoBridgeFraction

S3, L52, S1S2 = ManifoldSpec.s3(), ManifoldSpec.lens(5, 2), ManifoldSpec.s1xs2()
UNKNOT = TwoBridgeFraction(1, 0)

# arc 0 once round one way, arc 1 once round the other (r=1)
FULL = (X(1, 0, 2, 1), X(2, 0, 1, 1), X(3, 1, 1, -1), X(4, 1, 2, -1))
ONE_EACH = (X(1, 0, 2, 1), X(2, 1, 1, -1))
# both arcs leave through annulus 2; the far family is rotated to match
SAME_FIRST = dict(offset=1, crossings=(X(1, 0, 2, 1), X(2, 1, 2, 1)))
# same first disk, but a winding return lets arc 1 arrive from the other side
WIND_FIRST = (X(1, 1, 2, 1), X(2, 0, 2, 1), X(3, 1, 2, -1, 1), X(4, 1, 1, -1))
RETURN = (X(1, 0, 2, 1), X(2, 0, 2, -1))
RETURN_DISK = (X(1, 0, 2, 1), X(2, 0, 2, -1), X(3, 0, 2, 1), X(4, 1, 1, -1))
SAME_LAST = (X(1, 1, 1, -1), X(2, 1, 2, -1), X(3, 1, 2, 1, 1), X(4, 0, 2, 1))


def a_piece(lower=T, upper=T, **kw):
    return PieceA(r=1, lower_cert=lower, upper_cert=upper, **kw)


def b_piece(winding, lower=T, minimum=T, **kw):
    return PieceB(r=1, annulus_winding=winding, lower_cert=lower, min_cert=minimum, **kw)


def c_piece(crossings=ONE_EACH, lower=T):
    return PieceC(r=1, lower_cert=lower, crossings=crossings)


def d_piece(top=T, bottom=T, **kw):
    return PieceD(r=1, winding_a=3, winding_b=2, max_cert=top, min_cert=bottom, **kw)


def e_piece(crossings, top=T):
    return PieceE(r=1, winding_a=5, max_cert=top, crossings=crossings)


def cac(middle):
    return Assembly(S3, (Slope(1, 0), Slope(2, 3), Slope(0, 1)), (c_piece(), middle, c_piece()), 1)


def bc(b=None, c=None):
    return Assembly(S3, (Slope(2, 3), Slope(0, 1)),
                    (b or b_piece(3, disjoint_wrap=2), c or c_piece()), 1)


def single(m, gamma, piece):
    return Assembly(m, (gamma,), (piece,), piece.r)


def bb(gamma, w0, w1):
    return Assembly(S3, tuple(Slope(*g) for g in gamma),
                    (b_piece(w0, disjoint_wrap=2), b_piece(w1, disjoint_wrap=2)), 1)


VIOLATIONS = {
    "2.2.1(1)": cac(a_piece(lower=None, crossings=FULL)),
    "2.2.1(2)": cac(a_piece(no_slide_end=True, **SAME_FIRST)),
    "2.2.1(3)": cac(a_piece(crossings=RETURN)),
    "2.2.1(4)": cac(a_piece(upper=UNKNOT, crossings=FULL)),
    "2.2.1(5)": cac(a_piece(no_slide_start=True, **SAME_FIRST)),
    "2.2.1(6)": cac(a_piece(disjoint_wrap=1)),
    "2.3.1(1)": bc(b_piece(3, lower=None, crossings=FULL)),
    "2.3.1(2)": bc(b_piece(3, no_slide_end=True, **SAME_FIRST)),
    "2.3.1(3)": bc(b_piece(3, crossings=RETURN)),
    "2.3.1(4)": bc(b_piece(3, minimum=None, crossings=FULL)),
    "2.3.1(5)": bc(b_piece(3, no_slide_start=True, **SAME_FIRST)),
    "2.3.1(6)": bc(b_piece(3, disjoint_wrap=1)),
    "2.4.1(1)": bc(c=c_piece(lower=None)),
    "2.4.1(2)": bc(c=c_piece(WIND_FIRST)),
    "2.4.1(3)": bc(c=c_piece(RETURN_DISK)),
    "2.4.1(4)": bc(c=c_piece(SAME_LAST)),
    "2.5.1(1)": single(S3, Slope(2, 3), d_piece(top=None, crossings=FULL)),
    "2.5.1(2)": single(S3, Slope(2, 3), d_piece(no_slide_end=True, **SAME_FIRST)),
    "2.5.1(3)": single(S3, Slope(2, 3), d_piece(crossings=RETURN)),
    "2.5.1(4)": single(S3, Slope(2, 3), d_piece(bottom=UNKNOT, crossings=FULL)),
    "2.5.1(5)": single(S3, Slope(2, 3), d_piece(no_slide_start=True, **SAME_FIRST)),
    "2.5.1(6)": single(S3, Slope(2, 3), d_piece(disjoint_wrap=1)),
    "2.6.1(1)": single(L52, Slope(1, 0), e_piece(ONE_EACH, top=None)),
    "2.6.1(2)": single(L52, Slope(1, 0), e_piece(WIND_FIRST)),
    "2.6.1(3)": single(L52, Slope(1, 0), e_piece(RETURN_DISK)),
    "2.6.1(4)": single(L52, Slope(1, 0), e_piece(SAME_LAST)),
    "2.7.1(1)": single(S1S2, Slope(1, 0), PieceF(r=3, crossings=(
        X(1, 0, 3, -1), X(2, 0, 3, 1), X(3, 0, 3, -1), X(4, 1, 1, 1), X(5, 1, 2, 1)))),
    "2.7.1(2)": single(S1S2, Slope(1, 0), PieceF(r=1)),
    "2.8.1(1)": bb([(2, 1), (-2, 1)], 1, 2),
    "2.8.1(2)": bb([(1, 2), (2, 3)], 2, 2),
    "2.8.1(3)": bb([(1, 2), (-1, 2)], 2, 1),
}

VALID = {
    "CAC": cac(a_piece(crossings=FULL)),
    "BC": bc(),
    "D": single(S3, Slope(2, 3), d_piece(crossings=FULL)),
    "E": single(L52, Slope(1, 0), e_piece(ONE_EACH)),
    "F": single(S1S2, Slope(1, 0), PieceF(r=1, crossings=(X(1, 0, 1, 1),))),
    "BAB": Assembly(S3, (Slope(1, 2), Slope(-1, 2), Slope(2, 3)),
                    (b_piece(2, disjoint_wrap=2), a_piece(crossings=FULL),
                     b_piece(2, disjoint_wrap=2)), 1),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).parents[1] / "tests" / "fixtures")
    args = ap.parse_args()
    (args.out / "violations").mkdir(parents=True, exist_ok=True)
    (args.out / "valid").mkdir(parents=True, exist_ok=True)
    for code, a in VIOLATIONS.items():
        got = [v.code for v in validate_assembly(a)]
        if got != [code]:
            raise SystemExit(f"{code}: reports {got}")
        assert parse(serialize(a)) == a
        name = code.replace("(", "_").replace(")", "")
        (args.out / "violations" / f"{name}.txt").write_text(
            f"# violates {code} only\n" + serialize(a))
    for name, a in VALID.items():
        if validate_assembly(a):
            raise SystemExit(f"{name} is not valid")
        (args.out / "valid" / f"{name}.txt").write_text(serialize(a))
    print(f"wrote {len(VIOLATIONS)} violation and {len(VALID)} valid descriptors to {args.out}")


if __name__ == "__main__":
    main()
