"""Bounded search for assemblies with prescribed surface invariants.

Search order is lexicographic in (r, number of pieces, slope sequence,
mid-level offsets, crossing configuration), so the first hit is canonical.

Inside one piece each arc is a non-backtracking walk around the cycle of
regions, so an arc is fully described by a direction and a length.  Walks
that turn back would run parallel to a sheet and are never needed for a
witness.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .assembler import Assembly, gluing_graph, surface_invariants, validate_assembly
from .pieces import (PIECE_TYPES, SHEET_CHI, Crossing, Piece, validate_piece)
from .torus import TREFOIL, ManifoldSpec, Slope, canonicalize, delta


@dataclass(frozen=True)
class SearchSpec:
    manifold: ManifoldSpec
    target_genus: int
    target_boundary: int
    max_r: int = 3
    max_pieces: int = 5
    max_slope_coeff: int = 5
    max_crossings: int = 6

    def __post_init__(self):
        if self.target_genus < 0 or self.target_boundary < 0:
            raise ValueError("target genus and boundary must be non-negative")
        for name in ("max_r", "max_pieces", "max_slope_coeff"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_crossings < 0:
            raise ValueError("max_crossings must be non-negative")


class NotFound(LookupError):
    """No assembly within the bounds.  ``structural`` marks queries the
    piece grammar rules out independently of the bounds."""

    def __init__(self, spec: SearchSpec, structural: bool = False):
        self.spec, self.structural = spec, structural
        why = "ruled out by the piece grammar" if structural else "search bounds exhausted"
        super().__init__(f"no construction for genus {spec.target_genus}, "
                         f"boundary {spec.target_boundary} in {spec.manifold}: {why}")


# -- slopes --------------------------------------------------------------

def slope_candidates(m: ManifoldSpec, max_coeff: int) -> list[Slope]:
    found = {m.lambda_M, m.mu_M}
    for l in range(0, max_coeff + 1):
        for k in range(-max_coeff, max_coeff + 1):
            try:
                found.add(canonicalize(k, l))
            except ValueError:
                pass
    return sorted(found, key=lambda s: (abs(s.m) + s.l, s.l, s.m))


def _sequences(m: ManifoldSpec, n: int, max_coeff: int, first=None, last=None):
    """DFS over gamma_0..gamma_n in candidate order.  ``first``/``last``
    restrict the ends: True forces lambda_M/mu_M, False forbids it."""
    lam, mu = m.lambda_M, m.mu_M
    cands = slope_candidates(m, max_coeff)

    def ok_first(g):
        if first is not None and (g == lam) != first:
            return False
        return g == lam or delta(g, lam) >= 2

    def ok_last(g):
        if last is not None and (g == mu) != last:
            return False
        return g == mu or delta(g, mu) >= 2

    def extend(prefix):
        if len(prefix) == n + 1:
            if ok_last(prefix[-1]):
                yield tuple(prefix)
            return
        for g in cands:
            if not prefix:
                if not ok_first(g):
                    continue
            elif delta(prefix[-1], g) < 2:
                continue
            yield from extend(prefix + [g])

    return extend([])


def slope_sequences(m: ManifoldSpec, n: int, max_coeff: int) -> list[tuple[Slope, ...]]:
    """All gamma_0..gamma_n within the bound that satisfy the slope conditions."""
    if n < 1 or max_coeff < 1:
        raise ValueError("need n >= 1 and max_coeff >= 1")
    return list(_sequences(m, n, max_coeff))


def sequence_ok(m: ManifoldSpec, gamma) -> bool:
    lam, mu = m.lambda_M, m.mu_M
    return ((gamma[0] == lam or delta(gamma[0], lam) >= 2)
            and all(delta(a, b) >= 2 for a, b in zip(gamma, gamma[1:]))
            and (gamma[-1] == mu or delta(gamma[-1], mu) >= 2))


def layouts(m: ManifoldSpec, k: int, max_coeff: int) -> list[tuple[tuple[str, ...], tuple[Slope, ...]]]:
    """(types, gamma) for every admissible piece pattern with k pieces,
    using the lexicographically first slope sequence of each pattern."""
    lam, mu = m.lambda_M, m.mu_M
    out = []
    if k == 1:
        cands = slope_candidates(m, max_coeff)
        for g in cands:
            if g not in (lam, mu) and delta(g, lam) >= 2 and delta(g, mu) >= 2:
                out.append((("D",), (g,)))
                break
        if m.kind == "L":
            out += [(("E",), (g,)) for g in sorted({lam, mu}, key=cands.index)]
        if m.kind == "S1xS2":
            out.append((("F",), (lam,)))
    else:
        for first_c, last_c in itertools.product((False, True), repeat=2):
            seq = next(_sequences(m, k - 1, max_coeff, first_c, last_c), None)
            if seq is not None:
                types = ("C" if first_c else "B",) + ("A",) * (k - 2) + ("C" if last_c else "B",)
                out.append((types, seq))
    cands = slope_candidates(m, max_coeff)
    out.sort(key=lambda tg: [cands.index(g) for g in tg[1]])
    return out


# -- pieces --------------------------------------------------------------

def _walk(start: int, P: int, direction: int, length: int, arc: int, first_rank: int):
    out, region = [], start
    for step in range(length):
        if direction == 1:
            pos = region % P + 1
        else:
            pos = region if region else P
        out.append(Crossing(first_rank + step, arc, pos, direction))
        region = (region + direction) % P
    return out


def piece_windings(types, gamma, m: ManifoldSpec) -> list[dict]:
    lam, mu = m.lambda_M, m.mu_M
    out = []
    for j, kind in enumerate(types):
        if kind == "B":
            core = lam if j == 0 else mu
            out.append({"annulus_winding": delta(gamma[j], core)})
        elif kind == "D":
            out.append({"winding_a": delta(gamma[0], lam), "winding_b": delta(gamma[0], mu)})
        elif kind == "E":
            core = mu if gamma[0] == lam else lam
            out.append({"winding_a": delta(gamma[0], core)})
        else:
            out.append({})
    return out


def make_piece(kind: str, r: int, crossings=(), offset: int = 0, **extra) -> Piece:
    """A piece with the minimal certificates filled in."""
    cls = PIECE_TYPES[kind]
    fields = dict(extra)
    for name in ("lower_cert", "upper_cert", "min_cert", "max_cert"):
        if name in cls.__dataclass_fields__:
            fields.setdefault(name, TREFOIL)
    if "offset" in cls.__dataclass_fields__:
        fields["offset"] = offset
    if "disjoint_wrap" in cls.__dataclass_fields__ and not crossings:
        fields.setdefault("disjoint_wrap", 2)
    return cls(r=r, crossings=tuple(crossings), **fields)


@lru_cache(maxsize=None)
def local_configs(kind: str, r: int, offset: int, max_n: int,
                  wind: tuple = ()) -> tuple[Piece, ...]:
    """Valid pieces built from two non-backtracking arcs, by crossing count."""
    probe = make_piece(kind, r, offset=offset, **dict(wind))
    P, start = probe.positions, probe.start_region
    found = []
    for total in range(max_n + 1):
        for k0 in range(total + 1):
            k1 = total - k0
            for d0 in ((1, -1) if k0 else (1,)):
                for d1 in ((1, -1) if k1 else (1,)):
                    xs = _walk(start, P, d0, k0, 0, 1) + _walk(start, P, d1, k1, 1, k0 + 1)
                    piece = make_piece(kind, r, xs, offset, **dict(wind))
                    if not validate_piece(piece, check_windings=False):
                        found.append(piece)
    return tuple(found)


def _offset_choices(kind: str, r: int) -> range:
    return range(2 * r) if "offset" in PIECE_TYPES[kind].__dataclass_fields__ else range(1)


def _components(a: Assembly):
    """(root of each sheet's component, closed chi per root, owner lookup)."""
    uf, shapes, reports = gluing_graph(a)
    chi: dict = {}
    for sid, shape in shapes.items():
        root = uf.find(sid)
        chi[root] = chi.get(root, 0) + SHEET_CHI[shape]

    def owner(j: int, position: int):
        return uf.find((j, *reports[j].ownership["start"][position]))

    return chi, owner


@dataclass(frozen=True)
class Frame:
    """Everything fixed before crossings are chosen."""

    manifold: ManifoldSpec
    types: tuple[str, ...]
    gamma: tuple[Slope, ...]
    r: int
    offsets: tuple[int, ...]

    def assembly(self, pieces) -> Assembly:
        return Assembly(self.manifold, self.gamma, tuple(pieces), self.r)

    def configs(self, max_n: int) -> list[tuple[Piece, ...]]:
        winds = piece_windings(self.types, self.gamma, self.manifold)
        return [local_configs(kind, self.r, off, max_n, tuple(sorted(w.items())))
                for kind, off, w in zip(self.types, self.offsets, winds)]


def frames(m: ManifoldSpec, r: int, k: int, max_coeff: int) -> Iterator[Frame]:
    for types, gamma in layouts(m, k, max_coeff):
        for offsets in itertools.product(*(_offset_choices(t, r) for t in types)):
            yield Frame(m, types, gamma, r, offsets)


def _combos(configs, total: int) -> Iterator[tuple[Piece, ...]]:
    """Piece choices whose crossing counts add up to exactly ``total``."""
    if not configs:
        if total == 0:
            yield ()
        return
    head, rest = configs[0], configs[1:]
    for piece in head:
        if piece.n > total:
            break
        for tail in _combos(rest, total - piece.n):
            yield (piece,) + tail


def find_construction(s: SearchSpec) -> Assembly:
    if s.manifold.kind == "S3" and s.target_genus == 0:
        # planar pieces need type E, which only exists in lens spaces
        raise NotFound(s, structural=True)
    for r in range(1, s.max_r + 1):
        for k in range(1, s.max_pieces + 1):
            for frame in frames(s.manifold, r, k, s.max_slope_coeff):
                bare = frame.assembly(make_piece(t, r, offset=o)
                                      for t, o in zip(frame.types, frame.offsets))
                chi, owner = _components(bare)
                want = {root for root, x in chi.items() if (2 - x) == 2 * s.target_genus}
                if not want:
                    continue
                configs = frame.configs(s.max_crossings)
                for total in range(s.max_crossings + 1):
                    for pieces in _combos(configs, total):
                        hits = {}
                        for j, p in enumerate(pieces):
                            for c in p.crossings:
                                root = owner(j, c.position)
                                hits[root] = hits.get(root, 0) + 1
                        if not any(hits.get(root, 0) == s.target_boundary for root in want):
                            continue
                        a = frame.assembly(pieces)
                        if not validate_assembly(a):
                            return a
    raise NotFound(s)


def iter_family(m: ManifoldSpec, max_r: int, max_pieces: int, max_crossings: int,
                max_coeff: int = 5) -> Iterator[Assembly]:
    """Every assembly of the bounded search space (one slope sequence per
    piece pattern), valid or not at the assembly level."""
    for r in range(1, max_r + 1):
        for k in range(1, max_pieces + 1):
            for frame in frames(m, r, k, max_coeff):
                configs = frame.configs(max_crossings)
                for total in range(max_crossings + 1):
                    for pieces in _combos(configs, total):
                        yield frame.assembly(pieces)


def classify_genus1(a: Assembly) -> str:
    rep = surface_invariants(a)
    if rep.connected and rep.components[0].genus == 1:
        return "+".join(sorted(a.types))
    return "not-genus-1"
