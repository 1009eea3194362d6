"""Combinatorial ideal triangulations.

A triangle is a clockwise triple of edge labels ``(e0, e1, e2)`` together
with its corners ``(v0, v1, v2)``: edge ``e_i`` runs from ``v_i`` to
``v_{i+1}``. A self-folded triangle shows up as ``(loop, inner, inner)``.
Edge labels are 1-based, interior edges first, boundary edges after.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .seeds import ExchangeSeed


class TaggedFlipRequired(ValueError):
    pass


def expected_arc_count(genus: int, punctures: int, boundary_components: int,
                       boundary_marked: int) -> int:
    """Number of edges (arcs plus boundary segments) in any ideal triangulation."""
    return 3 * (2 * genus - 2 + punctures + boundary_components) + 2 * boundary_marked


@dataclass(frozen=True)
class Triangulation:
    n_interior: int
    n_boundary: int
    triangles: tuple[tuple[int, int, int], ...]
    corners: tuple[tuple[str, str, str], ...]
    punctures: tuple[str, ...] = ()
    topology: tuple[int, int, int, int] | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "triangles", tuple(tuple(t) for t in self.triangles))
        object.__setattr__(self, "corners", tuple(tuple(c) for c in self.corners))
        object.__setattr__(self, "punctures", tuple(self.punctures))
        self.validate()

    @property
    def n(self) -> int:
        return self.n_interior + self.n_boundary

    @property
    def interior(self) -> tuple[int, ...]:
        return tuple(range(1, self.n_interior + 1))

    @property
    def boundary(self) -> tuple[int, ...]:
        return tuple(range(self.n_interior + 1, self.n + 1))

    def validate(self) -> None:
        if len(self.triangles) != len(self.corners):
            raise ValueError("every triangle needs a corner triple")
        slots = Counter(e for t in self.triangles for e in t)
        for e in range(1, self.n + 1):
            want = 2 if e <= self.n_interior else 1
            if slots[e] != want:
                raise ValueError(f"edge {e} fills {slots[e]} triangle slots, expected {want}")
        extra = set(slots) - set(range(1, self.n + 1))
        if extra:
            raise ValueError(f"unknown edge labels {sorted(extra)}")
        ends = self.endpoints()  # raises on inconsistent corners
        for e, (a, b) in ends.items():
            if e > self.n_interior and (a in self.punctures or b in self.punctures):
                raise ValueError(f"boundary edge {e} ends at a puncture")
        if self.topology is not None and expected_arc_count(*self.topology) != self.n:
            raise ValueError(f"edge count {self.n} does not match topology {self.topology}")

    def endpoints(self) -> dict[int, tuple[str, str]]:
        """Unordered endpoint pair of every edge, checked for consistency."""
        ends: dict[int, tuple[str, str]] = {}
        for t, c in zip(self.triangles, self.corners):
            for i in range(3):
                pair = tuple(sorted((c[i], c[(i + 1) % 3])))
                e = t[i]
                if ends.setdefault(e, pair) != pair:
                    raise ValueError(f"edge {e} has inconsistent endpoints {ends[e]} and {pair}")
        return ends

    @property
    def self_folded(self) -> tuple[tuple[int, int], ...]:
        """(inner edge, encircling loop) pairs."""
        out = []
        for t in self.triangles:
            counts = Counter(t)
            if len(counts) == 2:
                inner = next(e for e, m in counts.items() if m == 2)
                loop = next(e for e, m in counts.items() if m == 1)
                out.append((inner, loop))
        return tuple(out)

    @property
    def puncture_incidence(self) -> dict[str, dict[int, int]]:
        """puncture -> {interior edge index (0-based): multiplicity}.

        Normally the multiplicity is the number of ends of the edge at the
        puncture. Around a self-folded triangle the encircling loop counts
        once at its base point and -1 at the enclosed puncture; these are
        the weights that make the Casimir sums flip-invariant.
        """
        inc: dict[str, dict[int, int]] = {p: {} for p in self.punctures}
        ends = self.endpoints()
        for e, (a, b) in sorted(ends.items()):
            if e > self.n_interior:
                continue
            for v in (a, b):
                if v in inc:
                    inc[v][e - 1] = inc[v].get(e - 1, 0) + 1
        for inner, loop in self.self_folded:
            base = ends[loop][0]
            enclosed = next(v for v in ends[inner] if v != base)
            if base in inc:
                inc[base][loop - 1] = 1
            if enclosed in inc:
                inc[enclosed][loop - 1] = -1
        return inc


def _pi(T: Triangulation) -> dict[int, int]:
    folded = dict(T.self_folded)
    return {e: folded.get(e, e) for e in range(1, T.n + 1)}


def b_matrix(T: Triangulation) -> tuple[tuple[int, ...], ...]:
    """Exchange matrix: +1 for each clockwise-consecutive pair in a triangle.

    Self-folded triangles contribute nothing and their inner edges borrow
    the rows of the encircling loop.
    """
    n = T.n
    pi = _pi(T)
    B = [[0] * n for _ in range(n)]
    for t in T.triangles:
        if len(set(t)) < 3:
            continue
        for i in range(3):
            a, b = t[i], t[(i + 1) % 3]
            for alpha in range(1, n + 1):
                if pi[alpha] != a:
                    continue
                for beta in range(1, n + 1):
                    if pi[beta] == b:
                        B[alpha - 1][beta - 1] += 1
                        B[beta - 1][alpha - 1] -= 1
    return tuple(map(tuple, B))


def b_from_triangulation(T: Triangulation) -> ExchangeSeed:
    if T.n_interior == 0:
        raise ValueError("a triangulation without interior edges has no unfrozen index")
    return ExchangeSeed(b_matrix(T), T.n_interior)


def _rotate_to(tri: tuple, cor: tuple, edge: int) -> tuple[tuple, tuple]:
    i = tri.index(edge)
    return tri[i:] + tri[:i], cor[i:] + cor[:i]


def flip(T: Triangulation, alpha: int) -> Triangulation:
    """Flip the interior edge ``alpha``, keeping its label on the new arc."""
    if not 1 <= alpha <= T.n_interior:
        raise ValueError(f"edge {alpha} is not an interior edge")
    if any(inner == alpha for inner, _ in T.self_folded):
        raise TaggedFlipRequired(
            f"edge {alpha} is the inner edge of a self-folded triangle; tagged flip required, unsupported")
    idx = [i for i, t in enumerate(T.triangles) if alpha in t]
    if len(idx) != 2:
        raise ValueError(f"edge {alpha} is not shared by two distinct triangles")
    i1, i2 = idx
    (_, a, b), (r, p, q) = _rotate_to(T.triangles[i1], T.corners[i1], alpha)
    (_, c, d), (p2, r2, s) = _rotate_to(T.triangles[i2], T.corners[i2], alpha)
    # quadrilateral P Q R S clockwise, old diagonal PR, new diagonal QS
    if {p2, r2} != {r, p}:
        raise ValueError(f"triangles around edge {alpha} disagree on its endpoints")
    new1, cor1 = (alpha, b, c), (s, q, r)
    new2, cor2 = (alpha, d, a), (q, s, p)
    tris = list(T.triangles)
    cors = list(T.corners)
    tris[i1], cors[i1] = new1, cor1
    tris[i2], cors[i2] = new2, cor2
    return Triangulation(T.n_interior, T.n_boundary, tuple(tris), tuple(cors),
                         T.punctures, T.topology, T.name)


# --- fixtures -----------------------------------------------------------------
#
# Each fixture is transcribed from a drawing. Triangles are listed in the
# orientation that reproduces the matrices quoted alongside the drawings
# (b12 = -2 for the annulus, b62 = -2 for genus two, the sign table for the
# sphere); see the decisions ledger for how each orientation was pinned.

def annulus_dehn() -> Triangulation:
    # p: marked point on the outer boundary, q: on the inner one.
    # 1, 2: the two arcs joining p and q; 3: inner boundary, 4: outer boundary.
    return Triangulation(
        n_interior=2, n_boundary=2,
        triangles=((1, 3, 2), (1, 4, 2)),
        corners=(("p", "q", "q"), ("q", "p", "p")),
        topology=(0, 0, 2, 2), name="annulus_dehn")


def sphere4() -> Triangulation:
    # punctures A and B each meet four arcs, L and R two each.
    return Triangulation(
        n_interior=6, n_boundary=0,
        triangles=((4, 2, 3), (6, 5, 4), (3, 2, 1), (6, 1, 5)),
        corners=(("A", "B", "L"), ("A", "R", "B"), ("A", "L", "B"), ("R", "A", "B")),
        punctures=("A", "B", "L", "R"),
        topology=(0, 4, 0, 0), name="sphere4")


def genus2() -> Triangulation:
    # octagon with sides 2,3,2,3,5,4,5,4 glued to a once-punctured genus two
    # surface; 1, 6, 7, 8, 9 are diagonals. Arcs 2 and 6 cross the curve C.
    return Triangulation(
        n_interior=9, n_boundary=0,
        triangles=((6, 3, 2), (7, 2, 6), (1, 3, 7), (4, 8, 1), (5, 9, 8), (9, 4, 5)),
        corners=(("o",) * 3,) * 6,
        punctures=("o",),
        topology=(2, 1, 0, 0), name="genus2")


def ideal_triangle() -> Triangulation:
    return Triangulation(
        n_interior=0, n_boundary=3,
        triangles=((1, 2, 3),), corners=(("a", "b", "c"),),
        topology=(0, 0, 1, 3), name="triangle")


def square() -> Triangulation:
    """Disc with four marked points cut by the diagonal 1."""
    return Triangulation(
        n_interior=1, n_boundary=4,
        triangles=((1, 2, 3), (1, 4, 5)),
        corners=(("a", "c", "b"), ("c", "a", "d")),
        topology=(0, 0, 1, 4), name="square")


_BUILTIN = {
    "annulus_dehn": annulus_dehn,
    "sphere4": sphere4,
    "sphere4_pa": sphere4,
    "genus2": genus2,
    "genus2_dehn": genus2,
    "square": square,
    "triangle": ideal_triangle,
}


def builtin_triangulation(name: str) -> Triangulation:
    try:
        return _BUILTIN[name]()
    except KeyError:
        raise ValueError(f"unknown triangulation {name!r}; known: {sorted(_BUILTIN)}") from None


def builtin_names() -> list[str]:
    return sorted(_BUILTIN)
