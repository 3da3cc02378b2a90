"""Local moves on triangulations and sequences of them.

Two moves exist: edge substitution (remove an edge, insert the uniquely
determined replacement) and vertex relocation (delete a degree-3 vertex,
reinsert it into another face). Both return new values; inputs are never
mutated. `relocation_as_flips` compiles a relocation into the equivalent
pair-of-flips sequence, and `transform` produces a flips-only sequence
between any two triangulations on the same vertex set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from . import flipgraph
from .core import (
    Edge,
    Face,
    Triangulation,
    Vertex,
    _dual_bfs,
    edge,
    face,
    stacked_triangulation,
)
from .errors import (
    DegreeNot3,
    FaceNotPresent,
    InternalContradiction,
    MaxplanarError,
    SearchExhausted,
    SizeMismatch,
    TooSmall,
)


@dataclass(frozen=True)
class Move:
    """A tagged move record: either a flip of an edge or a relocation."""

    kind: str  # "flip" | "relocate"
    edge: Edge | None = None
    vertex: Vertex | None = None
    face: Face | None = None

    @classmethod
    def flip(cls, e: Edge) -> "Move":
        return cls("flip", edge=edge(*e))

    @classmethod
    def relocate(cls, u: Vertex, f: Face) -> "Move":
        return cls("relocate", vertex=u, face=face(*f))

    def __str__(self) -> str:
        if self.kind == "flip":
            return f"flip {self.edge[0]}-{self.edge[1]}"
        return f"relocate {self.vertex} -> {self.face}"


@dataclass(frozen=True)
class MoveSequence:
    """An ordered list of moves, applicable left to right."""

    moves: tuple[Move, ...] = ()

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self) -> Iterator[Move]:
        return iter(self.moves)

    def __getitem__(self, i):
        return self.moves[i]

    def __add__(self, other: "MoveSequence") -> "MoveSequence":
        return MoveSequence(self.moves + other.moves)


def flip_added_edge(G: Triangulation, e: Edge) -> Edge:
    """The edge that substituting ``e`` would insert, without building the result.

    First case: the missing diagonal of the 4-cycle around ``e``. Second case
    (diagonal already present): the replacement determined by the faces of
    that diagonal, which is never an existing edge (six vertices carrying it
    would embed a K3,3).
    """
    if G.n < 5:
        raise TooSmall("edge substitution needs n >= 5")
    c, d = G.opposite_vertices(e)
    cd = edge(c, d)
    if cd not in G.edges:
        return cd
    e2 = edge(*G.opposite_vertices(cd))
    if e2 in G.edges:
        raise InternalContradiction(f"replacement edge {e2} already present; graph cannot be planar")
    return e2


def edge_substitute(G: Triangulation, e: Edge) -> tuple[Triangulation, Edge]:
    """Remove edge ``e`` and insert its replacement; returns (graph, new edge).

    Face bookkeeping follows the two update rules exactly; in the second case
    the removed and inserted face sets may overlap (when an endpoint of the
    substituted edge coincides with an endpoint of the replacement), and the
    overlap cancels to a no-op.
    """
    if G.n < 5:
        raise TooSmall("edge substitution needs n >= 5")
    e = edge(*e)
    f1, f2 = G.faces_of_edge(e)
    a, b = e
    c, d = G.opposite_vertices(e)
    cd = edge(c, d)
    if cd not in G.edges:
        removed = {f1, f2}
        added = {face(a, c, d), face(b, c, d)}
        new_edge = cd
    else:
        g1, g2 = G.faces_of_edge(cd)
        e_star, f_star = G.opposite_vertices(cd)
        new_edge = edge(e_star, f_star)
        if new_edge in G.edges:
            raise InternalContradiction(
                f"replacement edge {new_edge} already present; graph cannot be planar"
            )
        removed = {f1, f2, g1, g2}
        added = {
            face(a, c, d),
            face(b, c, d),
            face(c, e_star, f_star),
            face(d, e_star, f_star),
        }
    H = Triangulation._from_faces(G.n, (G.faces - removed) | added)
    if H.edges != (G.edges - {e}) | {new_edge}:
        raise InternalContradiction(f"flip of {e} produced an inconsistent edge set")
    return H, new_edge


def _relocation_args(G: Triangulation, u: Vertex, f: Face) -> tuple[Face, tuple[int, int, int]]:
    if G.n < 5:
        raise TooSmall("vertex relocation needs n >= 5")
    link = G.link_of_vertex(u)
    if len(link) != 3:
        raise DegreeNot3(f"vertex {u} has degree {len(link)}, relocation needs degree 3")
    f = face(*f)
    if f not in G.faces:
        raise FaceNotPresent(f"face {f} not in graph")
    return f, tuple(sorted(link))


def vertex_relocate(G: Triangulation, u: Vertex, f: Face) -> Triangulation:
    """Delete degree-3 vertex ``u`` (its three faces merge) and reinsert it in ``f``.

    Relocating into a face already containing ``u`` is the identity.
    """
    f, (a, b, c) = _relocation_args(G, u, f)
    if u in f:
        return G
    p, q, r = f
    removed = {face(a, b, u), face(b, c, u), face(a, c, u), f}
    added = {face(a, b, c), face(p, q, u), face(q, r, u), face(p, r, u)}
    H = Triangulation._from_faces(G.n, (G.faces - removed) | added)
    expected = (G.edges - {edge(a, u), edge(b, u), edge(c, u)}) | {
        edge(p, u),
        edge(q, u),
        edge(r, u),
    }
    if H.edges != expected:
        raise InternalContradiction(f"relocation of {u} produced an inconsistent edge set")
    return H


def relocation_as_flips(G: Triangulation, u: Vertex, f: Face) -> MoveSequence:
    """Compile a vertex relocation into an equivalent sequence of flips.

    Walks a shortest dual path from ``f`` to a face at ``u`` whose interior
    avoids ``u`` (falling back to truncating an unconstrained path at its
    first face incident to ``u``). Each step flips the edge shared by the
    last two path faces and then the edge from ``u`` to its third neighbor,
    which moves ``u`` one face closer. Applying the result to ``G`` equals
    ``vertex_relocate(G, u, f)`` in both edge set and face set, and the
    sequence has exactly twice the path length many flips.
    """
    f, _link = _relocation_args(G, u, f)
    if u in f:
        return MoveSequence(())
    u_faces = frozenset(g for g in G.faces if u in g)
    path = _dual_bfs(G, f, u_faces, avoid=u)
    if path is None:
        # constrained dual is disconnected; any dual path truncated at its
        # first face incident to u satisfies the same induction
        path = _dual_bfs(G, f, u_faces, avoid=None)
        if path is None:
            raise InternalContradiction("dual graph is disconnected")
    for i, g in enumerate(path):
        if u in g:
            path = path[: i + 1]
            break

    moves: list[Move] = []
    H = G
    while True:
        tail, prev = path[-1], path[-2]
        shared = tuple(sorted(set(tail) & set(prev)))
        if len(shared) != 2 or u in shared or u not in tail or u in prev:
            raise InternalContradiction(f"malformed dual path step {prev} -> {tail}")
        a, b = shared
        link = H.link_of_vertex(u)
        (c,) = (x for x in link if x != a and x != b)
        H, _ = edge_substitute(H, (a, b))
        H, _ = edge_substitute(H, edge(c, u))
        moves.append(Move.flip((a, b)))
        moves.append(Move.flip(edge(c, u)))
        if len(path) == 2:
            break
        x, y = sorted(set(path[-2]) & set(path[-3]))
        path = path[:-2] + [face(x, y, u)]

    if H != vertex_relocate(G, u, f):
        raise InternalContradiction("compiled flip sequence does not reproduce the relocation")
    return MoveSequence(tuple(moves))


def apply_move(G: Triangulation, move: Move) -> Triangulation:
    if move.kind == "flip":
        return edge_substitute(G, move.edge)[0]
    if move.kind == "relocate":
        return vertex_relocate(G, move.vertex, move.face)
    raise ValueError(f"unknown move kind {move.kind!r}")


def apply_sequence(G: Triangulation, seq: MoveSequence, validate: bool = True) -> Triangulation:
    """Left-to-right fold of a move sequence.

    With ``validate`` (the default) every intermediate graph is fully
    re-validated, including the planarity test. A failing move raises its own
    error annotated with the move index.
    """
    H = G
    for i, move in enumerate(seq):
        try:
            H = apply_move(H, move)
            if validate:
                H.validate()
        except MaxplanarError as err:
            raise type(err)(f"move {i} ({move}): {err}") from err
    return H


def invert_sequence(G: Triangulation, seq: MoveSequence) -> MoveSequence:
    """A sequence mapping ``apply_sequence(G, seq)`` back to ``G``.

    The inverse of a flip is the flip naming the edge the forward flip added;
    the inverse of a relocation puts the vertex back into the face its removal
    created (an identity relocation inverts to itself).
    """
    H = G
    inverses: list[Move] = []
    for i, move in enumerate(seq):
        try:
            if move.kind == "flip":
                H, added = edge_substitute(H, move.edge)
                inverses.append(Move.flip(added))
            else:
                f, (a, b, c) = _relocation_args(H, move.vertex, move.face)
                if move.vertex in f:
                    inverses.append(move)
                else:
                    inverses.append(Move.relocate(move.vertex, face(a, b, c)))
                    H = vertex_relocate(H, move.vertex, f)
        except MaxplanarError as err:
            raise type(err)(f"move {i} ({move}): {err}") from err
    return MoveSequence(tuple(reversed(inverses)))


# ---------------------------------------------------------------------------
# transform: flips-only sequence between arbitrary triangulations
# ---------------------------------------------------------------------------


def transform(G: Triangulation, H: Triangulation, depth: int = 3) -> MoveSequence:
    """A flips-only sequence whose application maps ``G`` to ``H`` exactly.

    For n <= 8 a bidirectional breadth-first search over the labeled flip
    graph yields a sequence of minimal length. For larger n both graphs are
    flipped into the stacked form (vertex 1 adjacent to everything, then
    vertex 2, then the remaining path sorted), and G's sequence is
    concatenated with the inverse of H's; ``depth`` bounds the search for
    degree-raising flip sequences and can be raised if `SearchExhausted`
    is reported.
    """
    if G.n != H.n:
        raise SizeMismatch(f"graphs have n={G.n} and n={H.n}")
    if G.edges == H.edges:
        if G.faces != H.faces:
            raise InternalContradiction("equal edge sets with different face sets")
        return MoveSequence(())
    if G.n <= 8:
        flips = flipgraph.shortest_flip_path(G, H)
        seq = MoveSequence(tuple(Move.flip(e) for e in flips))
    else:
        seq_G, end_G = _canonical_sequence(G, depth)
        seq_H, end_H = _canonical_sequence(H, depth)
        if end_G != end_H:
            raise InternalContradiction("canonicalization reached different endpoints")
        back = invert_sequence(H, MoveSequence(tuple(seq_H)))
        seq = MoveSequence(tuple(seq_G)) + back
    if apply_sequence(G, seq, validate=False) != H:
        raise InternalContradiction("transform sequence does not reach the target graph")
    return seq


def _canonical_sequence(G: Triangulation, depth: int) -> tuple[list[Move], Triangulation]:
    """Flips carrying ``G`` to the stacked triangulation on its vertex set."""
    moves: list[Move] = []
    H = _raise_to_dominant(G, 1, depth, moves)
    H = _fan_polygon_at_2(H, moves)
    H = _sort_path(H, moves)
    target = stacked_triangulation(G.n)
    if H != target:
        raise InternalContradiction("canonicalization did not reach the stacked form")
    return moves, H


def _improving_flip(G: Triangulation, v: Vertex) -> Edge | None:
    """Lexicographically first single flip that adds an edge at ``v``."""
    for e in sorted(G.edges):
        if v not in e and v in flip_added_edge(G, e):
            return e
    return None


def _raise_to_dominant(G: Triangulation, v: Vertex, depth: int, moves: list[Move]) -> Triangulation:
    """Flip until ``v`` is adjacent to every other vertex.

    Usually a single flip of a link edge of ``v`` gains a neighbor; when none
    does, a breadth-first search over flip sequences of length at most
    ``depth`` finds a preparatory combination. Raises `SearchExhausted` when
    no bounded sequence improves, in which case the caller may raise the
    depth bound.
    """
    H = G
    while H.degree(v) < H.n - 1:
        direct = _improving_flip(H, v)
        if direct is not None:
            H, _ = edge_substitute(H, direct)
            moves.append(Move.flip(direct))
            continue
        base = H.degree(v)
        found: tuple[Edge, ...] | None = None
        seen = {H.edges}
        frontier: list[tuple[Triangulation, tuple[Edge, ...]]] = [(H, ())]
        for _level in range(depth):
            nxt: list[tuple[Triangulation, tuple[Edge, ...]]] = []
            for T, flips in frontier:
                for e in sorted(T.edges):
                    T2, _ = edge_substitute(T, e)
                    if T2.edges in seen:
                        continue
                    seen.add(T2.edges)
                    trail = flips + (e,)
                    if T2.degree(v) > base:
                        found = trail
                        break
                    nxt.append((T2, trail))
                if found:
                    break
            if found:
                break
            frontier = nxt
        if found is None:
            raise SearchExhausted(
                f"no flip sequence of length <= {depth} raises degree({v}); retry with a larger depth"
            )
        for e in found:
            H, _ = edge_substitute(H, e)
            moves.append(Move.flip(e))
    return H


def _fan_polygon_at_2(G: Triangulation, moves: list[Move]) -> Triangulation:
    """With vertex 1 dominant, flip polygon diagonals until 2 is dominant too.

    The faces avoiding vertex 1 triangulate the polygon spanned by 1's link.
    Flipping a diagonal on a triangle at vertex 2 whose far face avoids both
    1 and 2 adds an edge from 2, and one such diagonal exists until every
    polygon triangle touches 2.
    """
    H = G
    while H.degree(2) < H.n - 1:
        candidates = []
        for g in H.faces:
            if 2 not in g or 1 in g:
                continue
            x, y = (v for v in g if v != 2)
            d = edge(x, y)
            h1, h2 = H.faces_of_edge(d)
            other = h2 if h1 == g else h1
            if 1 not in other and 2 not in other:
                candidates.append(d)
        if not candidates:
            raise InternalContradiction("no fanning flip available but vertex 2 is not dominant")
        d = min(candidates)
        H2, added = edge_substitute(H, d)
        if added[0] != 2 or H2.degree(1) != H.n - 1:
            raise InternalContradiction(f"fanning flip of {d} did not extend vertex 2")
        H = H2
        moves.append(Move.flip(d))
    return H


def _path_order(G: Triangulation) -> list[Vertex]:
    """With 1 and 2 both dominant: the order of 3..n along their shared path."""
    cycle = G.link_of_vertex(1)
    if cycle[0] != 2:
        raise InternalContradiction("vertex 2 missing from the link of vertex 1")
    return list(cycle[1:])


def _sort_path(G: Triangulation, moves: list[Move]) -> Triangulation:
    """With 1 and 2 dominant, sort the path over 3..n into ascending order.

    The path order is adjusted element by element: a single path-edge flip
    rotates the cyclic order, relocating the (degree-3) front vertex reinserts
    it next to its predecessor, and one refanning flip restores vertex 2. All
    relocations are emitted as flips, so the whole sequence stays flips-only.
    """
    H = G
    pathv = _path_order(H)
    m = len(pathv)

    def check_path() -> None:
        # every consecutive pair must be an edge; the closing pair must not
        for x, y in zip(pathv, pathv[1:]):
            if edge(x, y) not in H.edges:
                raise InternalContradiction(f"path pair {(x, y)} lost its edge")
        if edge(pathv[0], pathv[-1]) in H.edges:
            raise InternalContradiction("path endpoints are adjacent; order bookkeeping broke")

    def rotate_to_front(k: Vertex) -> None:
        nonlocal H, pathv
        j = pathv.index(k)
        if j == 0:
            return
        e = edge(pathv[j - 1], pathv[j])
        H, _ = edge_substitute(H, e)
        moves.append(Move.flip(e))
        pathv = pathv[j:] + pathv[:j]

    for k in range(4, H.n + 1):
        i = pathv.index(k - 1)
        cyc_nbrs = {pathv[(i - 1) % m], pathv[(i + 1) % m]}
        if k >= 5 and k - 2 not in cyc_nbrs:
            raise InternalContradiction(f"sorted run broke at {k - 1}")
        if k in cyc_nbrs:
            continue  # already next to its predecessor in cyclic order
        rotate_to_front(k)
        i = pathv.index(k - 1)
        if not 2 <= i <= m - 2:
            raise InternalContradiction(f"unexpected position {i} for {k - 1}")
        if k == 4:
            t = pathv[i + 1]
        else:
            t = pathv[i + 1] if pathv[i - 1] == k - 2 else pathv[i - 1]
        # reinsert k between k-1 and t; the relocation is compiled to flips
        seq = relocation_as_flips(H, k, face(1, k - 1, t))
        moves.extend(seq)
        H = apply_sequence(H, seq, validate=False)
        rest = pathv[1:]
        pos = min(rest.index(k - 1), rest.index(t))
        pathv = rest[: pos + 1] + [k] + rest[pos + 1 :]
        H = _fan_polygon_at_2(H, moves)
        check_path()

    # make {3, n} the missing pair so the cycle opens into the path 3..n
    closing = edge(3, H.n)
    if closing in H.edges:
        H, _ = edge_substitute(H, closing)
        moves.append(Move.flip(closing))
        j = pathv.index(3) if pathv.index(3) > pathv.index(H.n) else pathv.index(H.n)
        pathv = pathv[j:] + pathv[:j]
        check_path()
    return H
