"""Exact arithmetic for slopes on the Heegaard torus, the three genus-1
ambient manifolds, and 2-bridge knot fractions.

Coordinates are fixed once and for all: ``lambda_M`` (the curve bounding a
disk in the lower solid torus) is ``(1, 0)``, so every slope is a coprime
pair ``(m, l)`` in that basis.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd


class ZeroVector(ValueError):
    """Raised when a slope is requested for the pair (0, 0)."""


@dataclass(frozen=True, order=True)
class Slope:
    m: int
    l: int

    def __post_init__(self):
        if (self.m, self.l) == (0, 0):
            raise ZeroVector("(0, 0) is not a slope")
        if gcd(abs(self.m), abs(self.l)) != 1:
            raise ValueError(f"({self.m},{self.l}) is not primitive")
        if not (self.l > 0 or (self.l == 0 and self.m == 1)):
            raise ValueError(f"({self.m},{self.l}) is not in canonical form")

    def __str__(self):
        return f"{self.m},{self.l}"

    @classmethod
    def parse(cls, text: str) -> "Slope":
        m, l = (int(x) for x in text.strip().strip("()").split(","))
        return canonicalize(m, l)


def canonicalize(raw_m: int, raw_l: int) -> Slope:
    if raw_m == 0 and raw_l == 0:
        raise ZeroVector("(0, 0) is not a slope")
    g = gcd(abs(raw_m), abs(raw_l))
    m, l = raw_m // g, raw_l // g
    if l < 0 or (l == 0 and m < 0):
        m, l = -m, -l
    return Slope(m, l)


def delta(a: Slope, b: Slope) -> int:
    """Minimal geometric intersection number of two slopes."""
    return abs(a.m * b.l - a.l * b.m)


LAMBDA = Slope(1, 0)


@dataclass(frozen=True)
class ManifoldSpec:
    """S3, S1xS2 or the lens space L(p, q), as a genus-1 Heegaard splitting."""

    kind: str
    p: int = 0
    q: int = 0

    def __post_init__(self):
        if self.kind == "L":
            if self.p < 2 or not 0 < self.q < self.p or gcd(self.p, self.q) != 1:
                raise ValueError(f"invalid lens space L({self.p},{self.q})")
        elif self.kind in ("S3", "S1xS2"):
            if self.p or self.q:
                raise ValueError(f"{self.kind} takes no parameters")
        else:
            raise ValueError(f"unknown manifold kind {self.kind!r}")

    @classmethod
    def s3(cls):
        return cls("S3")

    @classmethod
    def s1xs2(cls):
        return cls("S1xS2")

    @classmethod
    def lens(cls, p: int, q: int):
        return cls("L", p, q)

    @classmethod
    def parse(cls, text: str) -> "ManifoldSpec":
        text = text.strip()
        if text in ("S3", "S1xS2"):
            return cls(text)
        match = re.fullmatch(r"L\(\s*(\d+)\s*,\s*(\d+)\s*\)", text)
        if not match:
            raise ValueError(f"cannot parse manifold {text!r}")
        return cls.lens(int(match[1]), int(match[2]))

    def __str__(self):
        return f"L({self.p},{self.q})" if self.kind == "L" else self.kind

    @property
    def lambda_M(self) -> Slope:
        return LAMBDA

    @property
    def mu_M(self) -> Slope:
        if self.kind == "S3":
            return Slope(0, 1)
        if self.kind == "S1xS2":
            return LAMBDA
        return canonicalize(self.q, self.p)


@dataclass(frozen=True)
class TwoBridgeFraction:
    """The 2-bridge knot b(p, q); p odd so that it is a knot, not a link."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.p % 2 == 0:
            raise ValueError(f"p must be odd and positive, got {self.p}")
        if self.p == 1:
            if self.q != 0:
                raise ValueError("b(1, q) requires q = 0")
        elif not 0 < self.q < self.p or gcd(self.p, self.q) != 1:
            raise ValueError(f"invalid 2-bridge fraction {self.p}/{self.q}")

    def __str__(self):
        return f"{self.p}/{self.q}"

    @classmethod
    def parse(cls, text: str) -> "TwoBridgeFraction":
        p, q = text.split("/")
        return cls(int(p), int(q))


UNKNOT = TwoBridgeFraction(1, 0)
TREFOIL = TwoBridgeFraction(3, 1)


def is_nontrivial_two_bridge(f: TwoBridgeFraction) -> bool:
    return f.p >= 3


def two_bridge_equivalent(f1: TwoBridgeFraction, f2: TwoBridgeFraction) -> bool:
    """Schubert: b(p, q) = b(p, q') iff q' = q^{+1 or -1} mod p."""
    if f1.p != f2.p:
        return False
    p = f1.p
    return (f2.q - f1.q) % p == 0 or (f1.q * f2.q - 1) % p == 0
