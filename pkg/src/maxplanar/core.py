"""Immutable maximal-planar-graph (triangulation) model and incidence queries.

Vertices are 1-based ints. An edge is a sorted pair ``(u, v)`` with ``u < v``;
a face is a sorted triple ``(a, b, c)``. A triangulation stores the full face
set of a combinatorial sphere embedding together with an edge -> (face, face)
index. Values are immutable after construction: every transformation returns
a new value, so replaying and comparing move sequences is plain equality.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    DuplicateFace,
    EdgeNotPresent,
    EulerViolation,
    FaceNotPresent,
    InvalidTriangulation,
    NoPath,
    NonManifoldEdge,
    NotPlanar,
    SizeMismatch,
    TooSmall,
    VertexOutOfRange,
)
from .planarity import is_planar

Vertex = int
Edge = tuple[int, int]          # always stored with u < v
Face = tuple[int, int, int]     # always stored sorted


def edge(u: int, v: int) -> Edge:
    """Canonical (sorted) edge between two distinct vertices."""
    if u == v:
        raise InvalidTriangulation(f"loop edge at vertex {u}")
    return (u, v) if u < v else (v, u)


def face(a: int, b: int, c: int) -> Face:
    """Canonical (sorted) face on three distinct vertices."""
    f = tuple(sorted((a, b, c)))
    if f[0] == f[1] or f[1] == f[2]:
        raise InvalidTriangulation(f"face {(a, b, c)} has repeated corners")
    return f  # type: ignore[return-value]


def face_edges(f: Face) -> tuple[Edge, Edge, Edge]:
    a, b, c = f
    return (a, b), (a, c), (b, c)


@dataclass(frozen=True)
class WeightedInstance:
    """Nonnegative edge weights over vertices 1..n.

    Pairs absent from ``weights`` have implicit weight 0, so every
    triangulation on the same vertex set is a feasible solution and its
    weight is the sum over its edges. Weights are exact rationals; decimal
    input strings convert without rounding.
    """

    n: int
    weights: dict[Edge, Fraction]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("instance needs at least one vertex")
        for e, w in self.weights.items():
            u, v = e
            if not (1 <= u < v <= self.n):
                raise ValueError(f"edge {e} is not canonical within 1..{self.n}")
            if w < 0:
                raise ValueError(f"negative weight {w} on edge {e}")

    @classmethod
    def from_edges(cls, n: int, items: Iterable[tuple[int, int, object]] | Mapping[Edge, object]) -> "WeightedInstance":
        """Build an instance, coercing weights to exact ``Fraction`` values."""
        if isinstance(items, Mapping):
            items = [(u, v, w) for (u, v), w in items.items()]
        weights: dict[Edge, Fraction] = {}
        for u, v, w in items:
            e = edge(u, v)
            if e in weights:
                raise ValueError(f"edge {e} listed twice")
            weights[e] = Fraction(str(w)) if isinstance(w, float) else Fraction(w)
        return cls(n, weights)

    def weight_of(self, e: Edge) -> Fraction:
        return self.weights.get(edge(*e), Fraction(0))

    def max_weight(self) -> Fraction:
        return max(self.weights.values(), default=Fraction(0))

    def positive_edges(self) -> list[tuple[Edge, Fraction]]:
        """Edges of strictly positive weight, heaviest first, lexicographic ties."""
        pos = [(e, w) for e, w in self.weights.items() if w > 0]
        pos.sort(key=lambda item: (-item[1], item[0]))
        return pos

    def __add__(self, other: "WeightedInstance") -> "WeightedInstance":
        if self.n != other.n:
            raise SizeMismatch(f"cannot add instances on {self.n} and {other.n} vertices")
        summed = dict(self.weights)
        for e, w in other.weights.items():
            summed[e] = summed.get(e, Fraction(0)) + w
        return WeightedInstance(self.n, summed)


@dataclass(frozen=True)
class Triangulation:
    """A maximal planar graph with an explicit (validated) face set."""

    n: int
    edges: frozenset[Edge]
    faces: frozenset[Face]
    edge_faces: dict[Edge, tuple[Face, Face]] = field(compare=False, repr=False)

    # -- construction ------------------------------------------------------

    @classmethod
    def _from_faces(cls, n: int, faces_in: Iterable[Iterable[int]]) -> "Triangulation":
        """Structural construction: counts and edge/face incidence only.

        Does not run the independent planarity test; `build_triangulation`
        does. Move operations use this path because the update rules preserve
        validity, which the test suite re-checks via full validation.
        """
        if n < 4:
            raise TooSmall(f"a triangulation needs n >= 4, got n={n}")
        face_list = []
        for raw in faces_in:
            corners = tuple(raw)
            if len(corners) != 3:
                raise InvalidTriangulation(f"face {corners} does not have 3 corners")
            for v in corners:
                if not (1 <= v <= n):
                    raise VertexOutOfRange(f"vertex {v} outside 1..{n} in face {corners}")
            face_list.append(face(*corners))
        if not face_list:
            raise InvalidTriangulation("empty face list")
        faces_set = frozenset(face_list)
        if len(faces_set) != len(face_list):
            dupes = sorted({f for f in face_list if face_list.count(f) > 1})
            raise DuplicateFace(f"duplicate faces: {dupes}")
        if len(faces_set) != 2 * n - 4:
            raise EulerViolation(f"expected {2 * n - 4} faces for n={n}, got {len(faces_set)}")

        incidence: dict[Edge, list[Face]] = {}
        for f in faces_set:
            for e in face_edges(f):
                incidence.setdefault(e, []).append(f)
        if len(incidence) != 3 * n - 6:
            raise EulerViolation(f"expected {3 * n - 6} edges for n={n}, got {len(incidence)}")
        edge_faces: dict[Edge, tuple[Face, Face]] = {}
        for e, fs in incidence.items():
            if len(fs) != 2:
                raise NonManifoldEdge(f"edge {e} lies on {len(fs)} faces, expected 2")
            fs.sort()
            edge_faces[e] = (fs[0], fs[1])
        return cls(n, frozenset(incidence), faces_set, edge_faces)

    # -- full validation ---------------------------------------------------

    def validate(self) -> "Triangulation":
        """Re-run every invariant, including the independent planarity test.

        Returns self so calls can be chained. Raises a subclass of
        `InvalidTriangulation` on any violation.
        """
        adjacency: dict[int, set[int]] = {v: set() for v in range(1, self.n + 1)}
        for u, v in self.edges:
            adjacency[u].add(v)
            adjacency[v].add(u)
        # connectivity (a disconnected graph can never carry 3n-6 planar edges)
        seen = {1}
        queue = deque([1])
        while queue:
            x = queue.popleft()
            for y in adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != self.n:
            raise NotPlanar(f"graph is disconnected ({len(seen)} of {self.n} vertices reachable)")
        # each vertex link must be one closed cycle; catches pinched spheres
        for v in range(1, self.n + 1):
            self._link_cycle(v)
        if not is_planar(self.n, self.edges):
            raise NotPlanar("edge set fails the planarity test")
        return self

    # -- incidence queries -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def f(self) -> int:
        return len(self.faces)

    def degree(self, v: Vertex) -> int:
        self._check_vertex(v)
        return sum(1 for u, w in self.edges if u == v or w == v)

    def neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        self._check_vertex(v)
        out = {u if w == v else w for u, w in self.edges if u == v or w == v}
        return tuple(sorted(out))

    def faces_of_edge(self, e: Edge) -> tuple[Face, Face]:
        """The two faces on either side of an edge, lexicographic order."""
        e = edge(*e)
        try:
            return self.edge_faces[e]
        except KeyError:
            raise EdgeNotPresent(f"edge {e} not in graph") from None

    def opposite_vertices(self, e: Edge) -> tuple[Vertex, Vertex]:
        """The third corners of the two faces of ``e`` (the other diagonal)."""
        f1, f2 = self.faces_of_edge(e)
        e = edge(*e)
        (c,) = set(f1) - set(e)
        (d,) = set(f2) - set(e)
        return (c, d) if c < d else (d, c)

    def link_of_vertex(self, v: Vertex) -> tuple[Vertex, ...]:
        """Neighbors of ``v`` in the cyclic order induced by its faces.

        The cycle is normalized to start at the smallest neighbor and run
        toward the smaller of its two link-neighbors.
        """
        return self._link_cycle(v)

    def dual_graph(self) -> dict[Face, tuple[Face, ...]]:
        """Face adjacency: two faces are neighbors iff they share an edge."""
        out: dict[Face, tuple[Face, ...]] = {}
        for f in sorted(self.faces):
            nbrs = []
            for e in face_edges(f):
                f1, f2 = self.edge_faces[e]
                nbrs.append(f2 if f1 == f else f1)
            out[f] = tuple(sorted(nbrs))
        return out

    def weight(self, instance: WeightedInstance) -> Fraction:
        """Total instance weight of this graph's edges (absent pairs count 0)."""
        if instance.n != self.n:
            raise SizeMismatch(f"graph has n={self.n}, instance has n={instance.n}")
        total = Fraction(0)
        for e in self.edges:
            w = instance.weights.get(e)
            if w is not None:
                total += w
        return total

    def canonical_key(self) -> bytes:
        """Sorted edge-list serialization; equal keys iff equal edge sets.

        The face set of a maximal planar graph is determined by its edges,
        so faces are deliberately not part of the key.
        """
        return ",".join(f"{u}-{v}" for u, v in sorted(self.edges)).encode("ascii")

    # -- helpers -----------------------------------------------------------

    def _check_vertex(self, v: Vertex) -> None:
        if not (1 <= v <= self.n):
            raise VertexOutOfRange(f"vertex {v} outside 1..{self.n}")

    def _link_cycle(self, v: Vertex) -> tuple[Vertex, ...]:
        self._check_vertex(v)
        around: dict[int, list[int]] = {}
        for f in self.faces:
            if v in f:
                x, y = (c for c in f if c != v)
                around.setdefault(x, []).append(y)
                around.setdefault(y, []).append(x)
        if not around or any(len(nbrs) != 2 for nbrs in around.values()):
            raise NonManifoldEdge(f"faces around vertex {v} do not form a single cycle")
        start = min(around)
        prev, cur = start, min(around[start])
        cycle = [start]
        while cur != start:
            cycle.append(cur)
            a, b = around[cur]
            prev, cur = cur, (b if a == prev else a)
        if len(cycle) != len(around):
            raise NonManifoldEdge(f"faces around vertex {v} do not form a single cycle")
        return tuple(cycle)

    def __repr__(self) -> str:
        return f"Triangulation(n={self.n}, m={self.m}, f={self.f})"


def build_triangulation(n: int, faces_in: Iterable[Iterable[int]]) -> Triangulation:
    """Construct and fully validate a triangulation from its face list.

    Edges are derived as the union of face edges. Rejects any input whose
    counts, incidences, links, connectivity, or planarity are off.
    """
    return Triangulation._from_faces(n, faces_in).validate()


def stacked_triangulation(n: int) -> Triangulation:
    """The canonical start triangulation on 1..n.

    K4 on {1,2,3,4}; each vertex k = 5..n is inserted into the face
    {1, 2, k-1} of the previous step. Vertices 1 and 2 end up adjacent to
    everything and 3..n form a path, which later canonicalization exploits.
    """
    if n < 4:
        raise TooSmall(f"stacked triangulation needs n >= 4, got n={n}")
    faces_set = {(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)}
    for k in range(5, n + 1):
        host = (1, 2, k - 1)
        faces_set.remove(host)
        faces_set.update({(1, 2, k), (1, k - 1, k), (2, k - 1, k)})
    return build_triangulation(n, sorted(faces_set))


@dataclass(frozen=True)
class DualPath:
    """A walk f_0, ..., f_s in the dual: consecutive faces share an edge."""

    faces: tuple[Face, ...]

    @property
    def length(self) -> int:
        """Number of steps s (0 for a single-face path)."""
        return len(self.faces) - 1

    def __iter__(self):
        return iter(self.faces)


def _dual_bfs(
    G: Triangulation,
    src: Face,
    targets: frozenset[Face],
    avoid: Vertex | None,
) -> list[Face] | None:
    """Shortest dual path from ``src`` to any target face.

    Faces other than ``src`` and the reached target must not contain
    ``avoid`` (when given). Neighbor expansion follows each face's edges in
    sorted order, which fixes the tie-break deterministically. Returns None
    when no such path exists.
    """
    if src in targets:
        return [src]
    parent: dict[Face, Face] = {src: src}
    queue = deque([src])
    while queue:
        f = queue.popleft()
        for e in face_edges(f):
            f1, f2 = G.edge_faces[e]
            nxt = f2 if f1 == f else f1
            if nxt in parent:
                continue
            if nxt in targets:
                path = [nxt, f]
                while path[-1] != src:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            if avoid is not None and avoid in nxt:
                continue
            parent[nxt] = f
            queue.append(nxt)
    return None


def dual_shortest_path(
    G: Triangulation,
    src: Face,
    dst: Face,
    avoid: Vertex | None = None,
) -> DualPath:
    """Shortest face sequence from src to dst in the dual graph.

    Interior faces must not contain ``avoid`` when it is given; src and dst
    are exempt. Raises `NoPath` when the constraint disconnects the pair,
    which signals callers to fall back to an unconstrained path.
    """
    src = face(*src)
    dst = face(*dst)
    for f in (src, dst):
        if f not in G.faces:
            raise FaceNotPresent(f"face {f} not in graph")
    path = _dual_bfs(G, src, frozenset([dst]), avoid)
    if path is None:
        raise NoPath(f"no dual path from {src} to {dst} avoiding vertex {avoid}")
    return DualPath(tuple(path))
