from fractions import Fraction
from math import floor, gcd

import pytest
from hypothesis import given, strategies as st

from meridional.torus import (LAMBDA, ManifoldSpec, Slope, TwoBridgeFraction, ZeroVector,
                              canonicalize, delta, is_nontrivial_two_bridge,
                              two_bridge_equivalent)


def lattice_points_in_cell(v, w):
    """Integer points in the half-open parallelogram spanned by v and w.

    Each one is an intersection of the two straight closed curves on R^2/Z^2,
    so this counts |v . w| geometrically rather than by the determinant.
    """
    det = v[0] * w[1] - v[1] * w[0]
    if det == 0:
        return 0
    xs = [0, v[0], w[0], v[0] + w[0]]
    ys = [0, v[1], w[1], v[1] + w[1]]
    count = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            a = Fraction(x * w[1] - y * w[0], det)
            b = Fraction(v[0] * y - v[1] * x, det)
            if 0 <= a < 1 and 0 <= b < 1:
                count += 1
    return count


coprime = st.tuples(st.integers(-6, 6), st.integers(-6, 6)).filter(
    lambda t: t != (0, 0) and gcd(*t) == 1)


@pytest.mark.parametrize("a,b,expected", [((1, 0), (1, 0), 0), ((1, 0), (0, 1), 1), ((2, 1), (1, 2), 3)])
def test_delta_examples(a, b, expected):
    assert delta(canonicalize(*a), canonicalize(*b)) == expected


@given(coprime, coprime)
def test_delta_matches_lattice_count(a, b):
    assert delta(canonicalize(*a), canonicalize(*b)) == lattice_points_in_cell(a, b)


@given(coprime, coprime)
def test_delta_symmetric_and_sign_blind(a, b):
    s, t = canonicalize(*a), canonicalize(*b)
    assert delta(s, t) == delta(t, s)
    assert delta(s, s) == 0


@pytest.mark.parametrize("raw,expected", [((2, 4), (1, 2)), ((-1, 0), (1, 0)), ((-3, -6), (1, 2))])
def test_canonicalize_examples(raw, expected):
    assert canonicalize(*raw) == Slope(*expected)


def test_zero_vector_rejected():
    with pytest.raises(ZeroVector):
        canonicalize(0, 0)


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 5))
def test_canonicalize_idempotent_and_scale_free(m, l, k):
    if (m, l) == (0, 0):
        return
    s = canonicalize(m, l)
    assert canonicalize(s.m, s.l) == s
    assert canonicalize(-k * m, -k * l) == s


def test_slope_text_round_trip():
    assert Slope.parse(str(Slope(-2, 3))) == Slope(-2, 3)
    assert Slope.parse("(4,-2)") == Slope(-2, 1)


def test_manifold_meridians():
    assert ManifoldSpec.s3().mu_M == Slope(0, 1)
    assert ManifoldSpec.s1xs2().mu_M == LAMBDA
    lens = ManifoldSpec.parse("L(5,2)")
    assert lens.mu_M == Slope(2, 5)
    assert delta(lens.lambda_M, lens.mu_M) == 5
    assert delta(ManifoldSpec.s3().lambda_M, ManifoldSpec.s3().mu_M) == 1
    assert str(lens) == "L(5,2)"


@pytest.mark.parametrize("bad", ["L(4,2)", "L(1,0)", "T2", "L(5)"])
def test_bad_manifolds(bad):
    with pytest.raises(ValueError):
        ManifoldSpec.parse(bad)


@pytest.mark.parametrize("p,q,expected", [(1, 0, False), (3, 1, True), (5, 3, True)])
def test_nontrivial_two_bridge(p, q, expected):
    assert is_nontrivial_two_bridge(TwoBridgeFraction(p, q)) is expected


@pytest.mark.parametrize("p,q", [(4, 1), (5, 0), (1, 1), (9, 3)])
def test_invalid_fractions(p, q):
    with pytest.raises(ValueError):
        TwoBridgeFraction(p, q)


def continued_fraction(p, q):
    """Odd-length expansion of p/q with positive partial quotients."""
    terms = []
    while q:
        terms.append(p // q)
        p, q = q, p - (p // q) * q
    if len(terms) % 2 == 0:
        terms[-1] -= 1
        terms.append(1)
    return terms


def evaluate(terms):
    value = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        value = a + 1 / value
    return value


def reversed_partner(p, q):
    """The fraction whose continued fraction is that of p/q read backwards;
    it describes the same 2-bridge knot seen from the other end."""
    value = evaluate(list(reversed(continued_fraction(p, q))))
    assert value.numerator == p
    return value.denominator % p


@pytest.mark.parametrize("a,b,expected", [((3, 1), (3, 1), True), ((5, 2), (5, 3), True),
                                           ((5, 2), (7, 2), False), ((7, 2), (7, 4), True),
                                           ((7, 2), (7, 3), False)])
def test_equivalence_examples(a, b, expected):
    assert two_bridge_equivalent(TwoBridgeFraction(*a), TwoBridgeFraction(*b)) is expected


@given(st.sampled_from([p for p in range(3, 40, 2)]), st.data())
def test_equivalence_matches_continued_fraction_reversal(p, data):
    q = data.draw(st.sampled_from([q for q in range(1, p) if gcd(p, q) == 1]))
    partner = reversed_partner(p, q)
    assert two_bridge_equivalent(TwoBridgeFraction(p, q), TwoBridgeFraction(p, partner))
    # the class of q is exactly {q, partner}
    for other in range(1, p):
        if gcd(p, other) == 1:
            assert two_bridge_equivalent(TwoBridgeFraction(p, q), TwoBridgeFraction(p, other)) \
                == (other in (q, partner))
    assert floor(evaluate(continued_fraction(p, q))) == p // q
