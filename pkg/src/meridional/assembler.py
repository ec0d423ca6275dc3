"""Gluing pieces into a (manifold, knot, surface) datum.

Pieces are listed from the lower solid torus R_0 to the upper one R_1.  In a
multi-piece assembly the first piece (type B or C) is read upside down: its
start end (the nested trivial disks) faces the second piece and its solid
torus is R_0.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .pieces import (ANNULUS, ARC_CONTINUITY, DISK, PANTS, SHEET_CHI, MalformedPiece,
                     Piece, check_structure, fragment_report, trajectories,
                     validate_piece, windings)
from .torus import ManifoldSpec, Slope, delta

PIECE_PATTERN = "piece-pattern"
F_MANIFOLD = "F-requires-S1xS2"
E_MANIFOLD = "E-requires-lens"
WINDING_MISMATCH = "winding-mismatch"

DESCRIPTIONS = {
    "2.2.1(1)": "no certificate that the first subarc is unslidable onto A_1 (non-trivial 2-bridge knot required)",
    "2.2.1(2)": "both arcs first meet the surface on the same vertical annulus",
    "2.2.1(3)": "a subarc returns through the same vertical annulus and is parallel to it",
    "2.2.1(4)": "no certificate for the last subarc against A_1'",
    "2.2.1(5)": "both arcs last meet the surface on the same vertical annulus",
    "2.2.1(6)": "knot misses the surface but wraps fewer than 2 times",
    "2.3.1(1)": "no certificate that the first subarc is unslidable onto A_1",
    "2.3.1(2)": "both arcs first meet the surface on the same vertical annulus",
    "2.3.1(3)": "a subarc returns through the same sheet and is parallel to it",
    "2.3.1(4)": "minimum not inside N_2 or its certificate is trivial",
    "2.3.1(5)": "both arcs meet the surface last on the same vertical annulus next to the minimum",
    "2.3.1(6)": "knot misses the surface but wraps fewer than 2 times (or A_i is not glued to A_i')",
    "2.4.1(1)": "no certificate that the first subarc is unslidable onto A_1",
    "2.4.1(2)": "both arcs first meet the surface on the same vertical annulus",
    "2.4.1(3)": "a subarc returns through the same disk and is parallel to it",
    "2.4.1(4)": "the subarc through the minimum does not end on two different disks",
    "2.5.1(1)": "maximum certificate against A_1 is missing or trivial",
    "2.5.1(2)": "both arcs leave the maximum through the same vertical annulus",
    "2.5.1(3)": "a subarc returns through the same annulus and is parallel to it",
    "2.5.1(4)": "minimum not inside N_2 or its certificate is trivial",
    "2.5.1(5)": "both arcs reach the minimum through the same vertical annulus",
    "2.5.1(6)": "knot misses the surface but wraps fewer than 2 times (or A_i is not glued to A_i')",
    "2.6.1(1)": "maximum certificate against A_1 is missing or trivial",
    "2.6.1(2)": "both arcs leave the maximum through the same vertical annulus",
    "2.6.1(3)": "a subarc returns through the same sheet and is parallel to it",
    "2.6.1(4)": "the subarc through the minimum does not end on two different disks",
    "2.7.1(1)": "a subarc returns through the same disk and is parallel to it",
    "2.7.1(2)": "an extremal subarc ends on the same disk from the same side",
    "2.8.1(1)": "gamma_0 is neither lambda_M nor at distance >= 2 from it",
    "2.8.1(2)": "consecutive slopes meet fewer than 2 times",
    "2.8.1(3)": "gamma_n is neither mu_M nor at distance >= 2 from it",
    "C-must-intersect": "the knot must meet the surface of a type C piece",
    "winding-≥2": "an annulus goes fewer than 2 times longitudinally around its solid torus",
    ARC_CONTINUITY: "the arcs do not join into a single closed knot",
    PIECE_PATTERN: "piece types do not match the slope sequence",
    F_MANIFOLD: "a type F piece only lives in S1xS2",
    E_MANIFOLD: "a type E piece only lives in a lens space",
    WINDING_MISMATCH: "declared winding disagrees with the slope data",
}


class MalformedAssembly(ValueError):
    pass


class InvalidAssembly(ValueError):
    def __init__(self, violations):
        self.violations = violations
        super().__init__("assembly violates " + ", ".join(v.code for v in violations))


class BoundExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Violation:
    code: str
    piece: int | None = None
    detail: str = ""

    def __str__(self):
        where = f" [piece {self.piece}]" if self.piece is not None else ""
        text = self.detail or DESCRIPTIONS.get(self.code, "")
        return f"{self.code}{where}: {text}"


@dataclass(frozen=True)
class Assembly:
    manifold: ManifoldSpec
    gamma: tuple[Slope, ...]
    pieces: tuple[Piece, ...]
    r: int

    def __post_init__(self):
        object.__setattr__(self, "gamma", tuple(self.gamma))
        object.__setattr__(self, "pieces", tuple(self.pieces))

    @property
    def types(self) -> tuple[str, ...]:
        return tuple(p.kind for p in self.pieces)

    @property
    def mid_offsets(self) -> tuple[tuple[int, bool], ...]:
        return tuple((getattr(p, "offset", 0), getattr(p, "reflect", False))
                     for p in self.pieces)

    def flipped(self, j: int) -> bool:
        """Whether piece j is read against the R_0 -> R_1 direction."""
        if len(self.pieces) > 1:
            return j == 0
        if self.pieces[0].kind == "E":
            # annuli (the start family) sit in R_1 when gamma_0 bounds in R_0
            return self.gamma[0] == self.manifold.lambda_M
        return False

    def global_placement(self) -> tuple[tuple[int, ...], ...]:
        """Crossing positions of each piece in R_0 -> R_1 order."""
        out = []
        for j, p in enumerate(self.pieces):
            seq = p.placement()
            out.append(tuple(reversed(seq)) if self.flipped(j) else seq)
        return tuple(out)


def check_assembly_structure(a: Assembly) -> None:
    if not a.pieces:
        raise MalformedAssembly("an assembly needs at least one piece")
    if len(a.gamma) != len(a.pieces):
        raise MalformedAssembly(
            f"{len(a.pieces)} pieces need {len(a.pieces)} slopes, got {len(a.gamma)}")
    if a.r < 1:
        raise MalformedAssembly(f"r must be >= 1, got {a.r}")
    for j, p in enumerate(a.pieces):
        if p.r != a.r:
            raise MalformedAssembly(f"piece {j} has r={p.r}, assembly has r={a.r}")
        try:
            check_structure(p)
        except MalformedPiece as exc:
            raise MalformedAssembly(f"piece {j}: {exc}") from exc


def _pattern_violations(a: Assembly) -> list[Violation]:
    lam, mu = a.manifold.lambda_M, a.manifold.mu_M
    types = a.types
    g0, gn = a.gamma[0], a.gamma[-1]
    if len(types) == 1:
        kind = types[0]
        if kind == "F":
            if a.manifold.kind != "S1xS2":
                return [Violation(F_MANIFOLD, 0)]
            ok = g0 == lam == mu
        elif kind == "E":
            if a.manifold.kind != "L":
                return [Violation(E_MANIFOLD, 0)]
            ok = (g0 == lam) != (g0 == mu)
        elif kind == "D":
            ok = g0 != lam and g0 != mu
        else:
            ok = False
        return [] if ok else [Violation(PIECE_PATTERN, 0, f"single piece of type {kind} for gamma_0={g0}")]
    bad = []
    expected_first = "C" if g0 == lam else "B"
    expected_last = "C" if gn == mu else "B"
    if types[0] != expected_first:
        bad.append(Violation(PIECE_PATTERN, 0, f"first piece must be {expected_first}"))
    if types[-1] != expected_last:
        bad.append(Violation(PIECE_PATTERN, len(types) - 1, f"last piece must be {expected_last}"))
    for j, kind in enumerate(types[1:-1], start=1):
        if kind != "A":
            bad.append(Violation(PIECE_PATTERN, j, "middle pieces must be of type A"))
    return bad


def expected_windings(a: Assembly) -> dict[int, dict[str, int]]:
    """Winding of each annulus family, read off the slopes."""
    lam, mu = a.manifold.lambda_M, a.manifold.mu_M
    out = {}
    for j, p in enumerate(a.pieces):
        if p.kind == "B":
            core = lam if j == 0 else mu
            out[j] = {"annulus_winding": delta(a.gamma[j], core)}
        elif p.kind == "D":
            out[j] = {"winding_a": delta(a.gamma[0], lam), "winding_b": delta(a.gamma[0], mu)}
        elif p.kind == "E":
            core = mu if a.gamma[0] == lam else lam
            out[j] = {"winding_a": delta(a.gamma[0], core)}
    return out


def validate_assembly(a: Assembly) -> list[Violation]:
    check_assembly_structure(a)
    found: list[Violation] = []
    seen: set[tuple[str, int | None]] = set()

    def add(v: Violation):
        if (v.code, v.piece) not in seen:
            seen.add((v.code, v.piece))
            found.append(v)

    pattern = _pattern_violations(a)
    for v in pattern:
        add(v)

    if not pattern:
        lam, mu = a.manifold.lambda_M, a.manifold.mu_M
        g = a.gamma
        if not (g[0] == lam or delta(g[0], lam) >= 2):
            add(Violation("2.8.1(1)", None, f"delta({g[0]}, lambda_M={lam}) = {delta(g[0], lam)}"))
        for i in range(len(g) - 1):
            d = delta(g[i], g[i + 1])
            if d < 2:
                add(Violation("2.8.1(2)", None, f"delta(gamma_{i}={g[i]}, gamma_{i + 1}={g[i + 1]}) = {d} < 2"))
        if not (g[-1] == mu or delta(g[-1], mu) >= 2):
            add(Violation("2.8.1(3)", None, f"delta({g[-1]}, mu_M={mu}) = {delta(g[-1], mu)}"))
        for j, wanted in expected_windings(a).items():
            declared = windings(a.pieces[j])
            for name, value in wanted.items():
                if declared[name] != value:
                    add(Violation(WINDING_MISMATCH, j, f"{name} = {declared[name]}, slopes give {value}"))

    for j, p in enumerate(a.pieces):
        for code in validate_piece(p, check_windings=False):
            add(Violation(code, j))

    if not pattern and not knot_check(a).is_single_knot:
        if not any(v.code == ARC_CONTINUITY for v in found):
            add(Violation(ARC_CONTINUITY))
    return found


# -- knot ---------------------------------------------------------------

@dataclass(frozen=True)
class KnotReport:
    is_single_knot: bool
    is_one_one: bool | None


_TRIVIAL_END = {"A": ("start", "end"), "B": ("start",), "C": ("start",)}


def knot_check(a: Assembly) -> KnotReport:
    """Join the straight arcs of all pieces and test for one closed curve
    with exactly one maximum and one minimum."""
    check_assembly_structure(a)
    adj: dict[tuple, list[tuple]] = {}

    def link(u, v):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    extrema = 0
    for j, p in enumerate(a.pieces):
        reg0, reg1 = trajectories(p)
        for arc in (0, 1):
            link((j, arc, "start"), (j, arc, "end"))
        if p.closed_knot:
            link((j, 0, "start"), (j, 1, "start"))
            extrema += 1
        if p.kind != "A":
            extrema += 1
            if reg0[-1] == reg1[-1]:
                link((j, 0, "end"), (j, 1, "end"))
        if p.kind == "A":
            for arc, reg in ((0, reg0), (1, reg1)):
                if reg[-1] != p.target_region:
                    # the arc ends away from D_1' and cannot be continued
                    adj[(j, arc, "end")].append(("dangling", j, arc))

    for j in range(len(a.pieces) - 1):
        upper = "start" if a.flipped(j) else "end"
        lower = "end" if a.flipped(j + 1) else "start"
        if (upper in _TRIVIAL_END.get(a.pieces[j].kind, ())
                and lower in _TRIVIAL_END.get(a.pieces[j + 1].kind, ())):
            for arc in (0, 1):
                link((j, arc, upper), (j + 1, arc, lower))

    if any(len(nbrs) != 2 for nbrs in adj.values()):
        return KnotReport(False, None)
    start = next(iter(adj))
    stack, seen = [start], {start}
    while stack:
        for v in adj[stack.pop()]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    if len(seen) != len(adj):
        return KnotReport(False, None)
    return KnotReport(True, extrema == 2)


# -- surface invariants --------------------------------------------------

@dataclass(frozen=True)
class Component:
    chi: int
    boundary_circles: int
    genus: int


@dataclass(frozen=True)
class SurfaceReport:
    components: tuple[Component, ...]
    total_boundary: int
    connected: bool
    orientable: bool = True


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


def gluing_graph(a: Assembly):
    """Sheets of all pieces joined along their shared circles.

    Returns (union-find, sheet shapes, reports); sheet ids are
    ``(piece, family, index)``.
    """
    uf = _UnionFind()
    shapes = {}
    reports = [fragment_report(p) for p in a.pieces]
    for j, rep in enumerate(reports):
        for (family, idx), shape in rep.sheets.items():
            shapes[(j, family, idx)] = shape
            uf.find((j, family, idx))
        for pos, (family, idx) in rep.ownership["start"].items():
            other = rep.ownership["end"][pos]
            uf.union((j, family, idx), (j, *other))
    for j in range(len(a.pieces) - 1):
        upper = "start" if a.flipped(j) else "end"
        lower = "end" if a.flipped(j + 1) else "start"
        for depth in range(1, a.r + 1):
            uf.union((j, upper, depth), (j + 1, lower, depth))
    return uf, shapes, reports


def closed_components(a: Assembly) -> dict:
    """Component root -> closed-up chi (before knot punctures)."""
    uf, shapes, _ = gluing_graph(a)
    chi = Counter()
    for sid, shape in shapes.items():
        chi[uf.find(sid)] += SHEET_CHI[shape]
    return dict(chi)


def surface_invariants(a: Assembly) -> SurfaceReport:
    bad = validate_assembly(a)
    if bad:
        raise InvalidAssembly(bad)
    uf, shapes, reports = gluing_graph(a)
    order: list = []
    chi = Counter()
    for sid, shape in shapes.items():
        root = uf.find(sid)
        if root not in chi:
            order.append(root)
        chi[root] += SHEET_CHI[shape]
    punctures = Counter()
    for j, (p, rep) in enumerate(zip(a.pieces, reports)):
        for c in p.crossings:
            punctures[uf.find((j, *rep.ownership["start"][c.position]))] += 1
    comps = []
    for root in order:
        x, b = chi[root] - punctures[root], punctures[root]
        comps.append(Component(chi=x, boundary_circles=b, genus=(2 - x - b) // 2))
    total = sum(punctures.values())
    return SurfaceReport(tuple(comps), total, len(comps) == 1)


# -- independent Euler characteristic oracle -----------------------------

class _CellComplex:
    """Explicit cell structure: every boundary circle has two vertices and
    two edges; circles are identified cell by cell."""

    def __init__(self, budget: int):
        self.budget = budget
        self.n_vertices = 0
        self.edges: list[tuple[int, int]] = []
        self.faces: list[int] = []  # one boundary vertex per face
        self.vertex_parent: list[int] = []
        self.edge_parent: list[int] = []

    def _spend(self):
        if self.n_vertices + len(self.edges) + len(self.faces) > self.budget:
            raise BoundExceeded(f"cell budget of {self.budget} exceeded")

    def vertex(self) -> int:
        self.n_vertices += 1
        self.vertex_parent.append(self.n_vertices - 1)
        self._spend()
        return self.n_vertices - 1

    def edge(self, u: int, v: int) -> int:
        self.edges.append((u, v))
        self.edge_parent.append(len(self.edges) - 1)
        self._spend()
        return len(self.edges) - 1

    def face(self, v: int):
        self.faces.append(v)
        self._spend()

    def circle(self):
        v0, v1 = self.vertex(), self.vertex()
        return (v0, v1), (self.edge(v0, v1), self.edge(v1, v0))

    @staticmethod
    def _root(parent, x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def identify(self, c1, c2):
        for parent, xs, ys in ((self.vertex_parent, c1[0], c2[0]),
                               (self.edge_parent, c1[1], c2[1])):
            for x, y in zip(xs, ys):
                rx, ry = self._root(parent, x), self._root(parent, y)
                if rx != ry:
                    parent[ry] = rx

    def components(self) -> list[int]:
        """Euler characteristic per connected component."""
        vroot = [self._root(self.vertex_parent, v) for v in range(self.n_vertices)]
        adj: dict[int, set[int]] = {}
        for u, v in self.edges:
            a, b = vroot[u], vroot[v]
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        label: dict[int, int] = {}
        for v in sorted(set(vroot)):
            if v in label:
                continue
            label[v] = v
            stack = [v]
            while stack:
                x = stack.pop()
                for y in adj.get(x, ()):
                    if y not in label:
                        label[y] = v
                        stack.append(y)
        counts: dict[int, list[int]] = {}
        for v in set(vroot):
            counts.setdefault(label[v], [0, 0, 0])[0] += 1
        for e in set(self._root(self.edge_parent, e) for e in range(len(self.edges))):
            counts[label[vroot[self.edges[e][0]]]][1] += 1
        for v in self.faces:
            counts[label[vroot[v]]][2] += 1
        return [(V - E + F) for V, E, F in (counts[k] for k in sorted(counts))]


def _build_sheet(cx: _CellComplex, shape: str, n_circles: int):
    circles = [cx.circle() for _ in range(n_circles)]
    if shape == DISK:
        cx.face(circles[0][0][0])
    elif shape == ANNULUS:
        (a0, a1), (b0, b1) = circles[0][0], circles[1][0]
        cx.edge(a0, b0)
        cx.edge(a1, b1)
        cx.face(a0)
        cx.face(a1)
    else:
        # pair of pants = two hexagons glued along three seams
        for k in range(3):
            cx.edge(circles[k][0][0], circles[(k + 1) % 3][0][1])
        cx.face(circles[0][0][0])
        cx.face(circles[0][0][1])
    return circles


def _puncture(cx: _CellComplex, anchor: int):
    w = cx.vertex()
    cx.edge(w, w)
    cx.edge(anchor, w)


def _family_circles(p: Piece, family: str) -> dict[int, list[int]]:
    """Positions bounding each sheet of one family, found by walking
    outward from the region the family is centred on."""
    P = p.positions
    shape = p.start_sheet if family == "start" else p.end_sheet
    if shape == DISK:
        return {pos: [pos] for pos in range(1, P + 1)}
    centre = p.start_region if family == "start" else p.target_region
    sheets = {}
    left, right = centre, centre + 1  # curves bounding the centre region
    for depth in range(1, p.r + 1):
        sheets[depth] = [(left - 1) % P + 1, (right - 1) % P + 1]
        left, right = left - 1, right + 1
    return sheets


def cell_complex_chi(a: Assembly, max_cells: int = 200_000) -> list[int]:
    """Euler characteristic of every component, counted cell by cell."""
    bad = validate_assembly(a)
    if bad:
        raise InvalidAssembly(bad)
    cx = _CellComplex(max_cells)
    copies: dict[tuple, list] = {}
    anchors_to_puncture = []
    last = len(a.pieces) - 1
    for j, p in enumerate(a.pieces):
        if len(a.pieces) == 1:
            below, above = None, None
        else:
            below, above = (j - 1 if j > 0 else None), (j if j < last else None)
        # interface index reached by each family's trivial circles
        trivial_at = {}
        if a.flipped(j):
            trivial_at["start"] = above
        else:
            trivial_at["start"], trivial_at["end"] = below, above
        anchors = {}
        for family in ("start", "end"):
            shape = p.start_sheet if family == "start" else p.end_sheet
            for idx, positions in _family_circles(p, family).items():
                n_circles = len(positions) + (1 if shape == PANTS else 0)
                circles = _build_sheet(cx, shape, n_circles)
                for pos, circ in zip(positions, circles):
                    copies.setdefault(("mid", j, pos), []).append(circ)
                    anchors[(family, pos)] = circ[0][0]
                if shape == PANTS:
                    copies.setdefault(("trivial", trivial_at[family], idx), []).append(circles[-1])
        for c in p.crossings:
            anchors_to_puncture.append(anchors[("end", c.position)])
    for key, circs in copies.items():
        if len(circs) != 2:
            raise MalformedAssembly(f"circle {key} has {len(circs)} sides")
        cx.identify(*circs)
    for anchor in anchors_to_puncture:
        _puncture(cx, anchor)
    return cx.components()
