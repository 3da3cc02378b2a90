"""Fast traversal of the labeled flip graph.

States are encoded as frozensets of integer face codes (6 bits per vertex,
so ids up to 63) with the edge set as the deduplication key: a maximal
planar edge set determines the graph, so equal edge sets mean equal states.
Every state is produced by flipping a validated start triangulation, and the
flip closure is exercised against independent brute-force enumeration in the
test suite.
"""

from __future__ import annotations

from collections import deque

from .core import Edge, Triangulation, stacked_triangulation
from .errors import BudgetExceeded, InternalContradiction


def _ecode(u: int, v: int) -> int:
    return (u << 6) | v if u < v else (v << 6) | u


def _fcode(a: int, b: int, c: int) -> int:
    if a > b:
        a, b = b, a
    if b > c:
        b, c = c, b
        if a > b:
            a, b = b, a
    return (a << 12) | (b << 6) | c


def _third(fcode: int, u: int, v: int) -> int:
    return (fcode >> 12) + ((fcode >> 6) & 63) + (fcode & 63) - u - v


def encode_state(G: Triangulation) -> tuple[frozenset[int], frozenset[int]]:
    """(face codes, edge codes) of a triangulation; requires n <= 63."""
    if G.n > 63:
        raise BudgetExceeded(f"flip-graph engine supports n <= 63, got n={G.n}")
    faces = frozenset(_fcode(a, b, c) for a, b, c in G.faces)
    edges = frozenset(_ecode(u, v) for u, v in G.edges)
    return faces, edges


def decode_faces(faces: frozenset[int]) -> list[tuple[int, int, int]]:
    return sorted((f >> 12, (f >> 6) & 63, f & 63) for f in faces)


def to_triangulation(faces: frozenset[int], n: int) -> Triangulation:
    return Triangulation._from_faces(n, decode_faces(faces))


def _build_index(faces: frozenset[int]) -> dict[int, tuple[int, int]]:
    """edge code -> its two incident face codes."""
    first: dict[int, int] = {}
    pairs: dict[int, tuple[int, int]] = {}
    for f in faces:
        a, b, c = f >> 12, (f >> 6) & 63, f & 63
        for e in ((a << 6) | b, (a << 6) | c, (b << 6) | c):
            g = first.pop(e, None)
            if g is None:
                first[e] = f
            else:
                pairs[e] = (g, f)
    if first:
        raise InternalContradiction("an edge has fewer than two incident faces")
    return pairs


def _added_code(index: dict[int, tuple[int, int]], edges: frozenset[int], e: int) -> int:
    """Edge code inserted by flipping ``e``; pure probe, no state built."""
    u, v = e >> 6, e & 63
    f1, f2 = index[e]
    c = _third(f1, u, v)
    d = _third(f2, u, v)
    cd = _ecode(c, d)
    if cd not in edges:
        return cd
    g1, g2 = index[cd]
    x = _third(g1, c, d)
    y = _third(g2, c, d)
    new = _ecode(x, y)
    if new in edges:
        raise InternalContradiction("replacement edge already present; state is corrupt")
    return new


def _flip_faces(
    faces: frozenset[int], index: dict[int, tuple[int, int]], e: int, added: int
) -> frozenset[int]:
    """Face set after flipping ``e``; overlap between removed and inserted
    faces (coincident second-case corners) cancels via symmetric difference."""
    u, v = e >> 6, e & 63
    f1, f2 = index[e]
    c = _third(f1, u, v)
    d = _third(f2, u, v)
    if added == _ecode(c, d):
        delta = {f1, f2, _fcode(u, c, d), _fcode(v, c, d)}
    else:
        g1, g2 = index[_ecode(c, d)]
        x, y = added >> 6, added & 63
        delta = {f1, f2, g1, g2} ^ {
            _fcode(u, c, d),
            _fcode(v, c, d),
            _fcode(c, x, y),
            _fcode(d, x, y),
        }
    return faces ^ delta


_CLOSURE_CACHE: dict[int, list[frozenset[int]]] = {}


def closure(n: int, budget: int | None = None) -> list[frozenset[int]]:
    """All labeled triangulations on 1..n as face-code sets, in the
    deterministic discovery order of a flip-closure BFS from the stacked
    triangulation. Cached per n; raises `BudgetExceeded` past ``budget``."""
    states = _CLOSURE_CACHE.get(n)
    if states is None and n == 4:
        faces0, _ = encode_state(stacked_triangulation(4))
        states = _CLOSURE_CACHE[4] = [faces0]  # K4 admits no flips
    if states is None:
        faces0, edges0 = encode_state(stacked_triangulation(n))
        seen = {edges0}
        states = [faces0]
        queue = deque([faces0])
        aborted = False
        while queue:
            faces = queue.popleft()
            index = _build_index(faces)
            edges = frozenset(index)
            for e in sorted(index):
                added = _added_code(index, edges, e)
                new_edges = edges ^ frozenset((e, added))
                if new_edges in seen:
                    continue
                seen.add(new_edges)
                new_faces = _flip_faces(faces, index, e, added)
                states.append(new_faces)
                queue.append(new_faces)
                if budget is not None and len(states) > budget:
                    aborted = True
                    break
            if aborted:
                break
        if aborted:
            raise BudgetExceeded(f"flip closure at n={n} exceeds budget {budget}")
        _CLOSURE_CACHE[n] = states
    if budget is not None and len(states) > budget:
        raise BudgetExceeded(f"flip closure at n={n} has {len(states)} states, budget {budget}")
    return states


def shortest_flip_path(G: Triangulation, H: Triangulation) -> list[Edge]:
    """A minimum-length list of flip edges carrying G's edge set to H's.

    Bidirectional breadth-first search; both sides expand whole levels, and
    the search stops once the best meeting node is provably optimal. Tie
    breaking is deterministic (sorted edge expansion, smallest meeting key).
    """
    facesG, edgesG = encode_state(G)
    facesH, edgesH = encode_state(H)
    if edgesG == edgesH:
        return []

    # key -> (faces, parent key or None, flip code, added code)
    rec_a: dict[frozenset[int], tuple] = {edgesG: (facesG, None, 0, 0)}
    rec_b: dict[frozenset[int], tuple] = {edgesH: (facesH, None, 0, 0)}
    dist_a = {edgesG: 0}
    dist_b = {edgesH: 0}
    front_a = [edgesG]
    front_b = [edgesH]
    rad_a = rad_b = 0
    meets: dict[frozenset[int], int] = {}

    def expand(front, rec, dist, other_dist, radius):
        new_front = []
        for key in front:
            faces = rec[key][0]
            index = _build_index(faces)
            for e in sorted(index):
                added = _added_code(index, key, e)
                nk = key ^ frozenset((e, added))
                if nk in rec:
                    continue
                rec[nk] = (_flip_faces(faces, index, e, added), key, e, added)
                dist[nk] = radius + 1
                new_front.append(nk)
                if nk in other_dist:
                    meets[nk] = radius + 1 + other_dist[nk]
        return new_front

    while True:
        if meets and min(meets.values()) <= rad_a + rad_b:
            break
        if not front_a and not front_b:
            raise InternalContradiction("flip graph exhausted without meeting; inputs corrupt")
        if front_a and (not front_b or len(front_a) <= len(front_b)):
            front_a = expand(front_a, rec_a, dist_a, dist_b, rad_a)
            rad_a += 1
        else:
            front_b = expand(front_b, rec_b, dist_b, dist_a, rad_b)
            rad_b += 1

    best_total = min(meets.values())
    meet = min(
        (k for k, t in meets.items() if t == best_total),
        key=lambda k: tuple(sorted(k)),
    )

    flips: list[int] = []
    key = meet
    while rec_a[key][1] is not None:
        flips.append(rec_a[key][2])
        key = rec_a[key][1]
    flips.reverse()
    key = meet
    while rec_b[key][1] is not None:
        flips.append(rec_b[key][3])  # reversing a flip names the edge it added
        key = rec_b[key][1]
    return [(code >> 6, code & 63) for code in flips]
