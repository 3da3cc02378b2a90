"""Planarity predicates and maximum spanning trees.

These are the independent oracles the rest of the package is validated
against, so they deliberately share no code with the face-based model:
planarity is delegated to networkx's left-right test and the spanning tree
is a plain Kruskal over descending weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable

import networkx as nx

from .errors import Disconnected

if TYPE_CHECKING:  # pragma: no cover
    from .core import Edge, WeightedInstance


def is_planar(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    """True iff the simple graph on 1..n with the given edges is planar."""
    G = nx.Graph()
    G.add_nodes_from(range(1, n + 1))
    G.add_edges_from(edges)
    return nx.check_planarity(G, counterexample=False)[0]


def is_maximal_planar(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    """True iff the edge set is planar, connected, and has exactly 3n-6 edges."""
    edge_set = {tuple(sorted(e)) for e in edges}
    if n < 3 or len(edge_set) != 3 * n - 6:
        return False
    G = nx.Graph()
    G.add_nodes_from(range(1, n + 1))
    G.add_edges_from(edge_set)
    return nx.is_connected(G) and nx.check_planarity(G, counterexample=False)[0]


def planar_faces(n: int, edges: Iterable[tuple[int, int]]) -> list[tuple[int, int, int]]:
    """Triangular face set of a maximal planar edge set, from a fresh embedding.

    Maximal planar graphs are 3-connected, so the face set is unique and this
    is deterministic regardless of how the embedding was computed.
    """
    G = nx.Graph()
    G.add_nodes_from(range(1, n + 1))
    G.add_edges_from(edges)
    ok, embedding = nx.check_planarity(G)
    if not ok:
        raise ValueError("edge set is not planar")
    faces: set[tuple[int, int, int]] = set()
    visited: set[tuple[int, int]] = set()
    for half_edge in embedding.edges():
        if half_edge in visited:
            continue
        cycle = embedding.traverse_face(*half_edge, mark_half_edges=visited)
        if len(cycle) != 3:
            raise ValueError(f"non-triangular face {cycle}; edge set is not maximal planar")
        faces.add(tuple(sorted(cycle)))
    return sorted(faces)


@dataclass(frozen=True)
class SpanningTree:
    """A spanning tree on vertices 1..n (n-1 edges, connected, acyclic)."""

    n: int
    edges: frozenset["Edge"]

    def __post_init__(self):
        if len(self.edges) != self.n - 1:
            raise ValueError(f"{len(self.edges)} edges cannot span {self.n} vertices")
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise ValueError(f"edge {(u, v)} is not canonical within 1..{self.n}")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError(f"edge {(u, v)} closes a cycle")
            parent[ru] = rv

    @classmethod
    def path(cls, n: int) -> "SpanningTree":
        return cls(n, frozenset((i, i + 1) for i in range(1, n)))

    def total_weight(self, instance: "WeightedInstance") -> Fraction:
        return sum((instance.weight_of(e) for e in self.edges), Fraction(0))


def maximum_spanning_tree(instance: "WeightedInstance", zero_fill: bool = True) -> SpanningTree:
    """Spanning tree of maximum total weight, deterministic under ties.

    Greedy over edges sorted by descending weight then lexicographically.
    With ``zero_fill`` (the default) every absent pair is available at weight
    0, so a tree always exists; without it only the instance's explicit edges
    are used and `Disconnected` is raised when they cannot span 1..n.
    """
    n = instance.n
    weights = dict(instance.weights)
    if zero_fill:
        for u in range(1, n + 1):
            for v in range(u + 1, n + 1):
                weights.setdefault((u, v), Fraction(0))
    candidates = sorted(weights.items(), key=lambda item: (-item[1], item[0]))

    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen: list[Edge] = []
    for e, _w in candidates:
        u, v = e
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.append(e)
            if len(chosen) == n - 1:
                break
    if len(chosen) != n - 1:
        raise Disconnected("edge set does not span all vertices (zero_fill disabled)")
    return SpanningTree(n, frozenset(chosen))
