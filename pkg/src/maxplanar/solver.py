"""Exact and heuristic solvers for the maximum-weight planar subgraph problem.

Solutions are maximal planar graphs on the instance's vertex set: absent
pairs weigh 0, so every triangulation is feasible and the optimum over
triangulations equals the optimum over planar subgraphs. The exact solver
enumerates the flip closure at small n; the heuristics are the spanning-tree
greedy construction and flip-based local search.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import flipgraph
from .core import Edge, Triangulation, WeightedInstance, edge
from .errors import (
    BudgetExceeded,
    NoFeasible,
    SizeMismatch,
    TooSmall,
    VertexCountOutOfRange,
)
from .moves import Move, MoveSequence, edge_substitute, flip_added_edge
from .planarity import SpanningTree, is_planar, maximum_spanning_tree, planar_faces

ENUM_MIN_N = 4
ENUM_MAX_N = 9
DEFAULT_OPTIMA_CAP = 100_000

_PATH_WEIGHT_2 = tuple((i, i + 1) for i in range(1, 8))
_UNIT_WEIGHT_1 = (
    (1, 3), (1, 4), (1, 5), (1, 8),
    (2, 5), (2, 6), (2, 8),
    (3, 6), (3, 8),
    (4, 6), (4, 7),
    (5, 7),
)


def counterexample_instance() -> WeightedInstance:
    """The built-in 8-vertex instance: weight 2 on the path 1-2-...-8 and
    weight 1 on twelve further pairs, everything else 0."""
    items = [(u, v, 2) for u, v in _PATH_WEIGHT_2]
    items += [(u, v, 1) for u, v in _UNIT_WEIGHT_1]
    return WeightedInstance.from_edges(8, items)


def counterexample_optimal_edges() -> frozenset[Edge]:
    """Edge set of a weight-24 triangulation for the built-in instance.

    It keeps six of the seven weight-2 path edges (dropping {7, 8}) plus all
    twelve weight-1 pairs, 18 edges in total.
    """
    edges = {e for e in _PATH_WEIGHT_2 if e != (7, 8)}
    edges.update(_UNIT_WEIGHT_1)
    return frozenset(edges)


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a solver run.

    best_graphs holds every optimum found (exact solver, up to ``cap``) or
    the single final graph (heuristics); each listed graph attains
    best_weight exactly.
    """

    method: str
    best_weight: Fraction
    best_graphs: tuple[Triangulation, ...]
    explored: int
    seed: int | None = None
    trace: MoveSequence | None = None
    cap: int | None = None
    optima_capped: bool = False

    def __post_init__(self):
        if self.explored < len(self.best_graphs):
            raise ValueError("explored count below the number of reported optima")


def _check_enum_range(n: int) -> None:
    if not ENUM_MIN_N <= n <= ENUM_MAX_N:
        raise VertexCountOutOfRange(
            f"exhaustive enumeration supports {ENUM_MIN_N} <= n <= {ENUM_MAX_N}, got n={n}"
        )


def enumerate_triangulations(n: int, budget: int | None = None) -> Iterator[Triangulation]:
    """Every labeled triangulation on 1..n exactly once, in deterministic
    flip-closure discovery order. ``budget`` caps the closure size."""
    _check_enum_range(n)
    states = flipgraph.closure(n, budget)

    def gen():
        for st in states:
            yield flipgraph.to_triangulation(st, n)

    return gen()


def count_triangulations(n: int, budget: int | None = None) -> int:
    _check_enum_range(n)
    return len(flipgraph.closure(n, budget))


def _weight_tables(W: WeightedInstance) -> tuple[int, dict[int, int]]:
    """Common denominator and per-face integer weight table.

    Summing the face table over a state counts every edge twice, so the
    state weight is that sum divided by two; all-integer arithmetic keeps
    comparisons exact.
    """
    denom = math.lcm(*(w.denominator for w in W.weights.values())) if W.weights else 1
    wint = {}
    for (u, v), w in W.weights.items():
        wint[(u << 6) | v] = int(w * denom)
    fw: dict[int, int] = {}
    for a in range(1, W.n + 1):
        for b in range(a + 1, W.n + 1):
            wab = wint.get((a << 6) | b, 0)
            for c in range(b + 1, W.n + 1):
                fw[(a << 12) | (b << 6) | c] = (
                    wab + wint.get((a << 6) | c, 0) + wint.get((b << 6) | c, 0)
                )
    return denom, fw


def _forced_face_sets(forced: frozenset[Edge], n: int) -> list[frozenset[int]]:
    """For each forced edge, the face codes that could carry it; a state
    contains the edge iff it contains one of those faces."""
    out = []
    for u, v in sorted(forced):
        candidates = frozenset(
            flipgraph._fcode(u, v, t) for t in range(1, n + 1) if t != u and t != v
        )
        out.append(candidates)
    return out


def _score_chunk(args) -> tuple[int, list[frozenset[int]], int, bool]:
    states, fw, forced_sets, cap = args
    best = -1
    optima: list[frozenset[int]] = []
    feasible = 0
    capped = False
    for state in states:
        if forced_sets and not all(state & fs for fs in forced_sets):
            continue
        feasible += 1
        score = sum(fw[f] for f in state) // 2
        if score > best:
            best = score
            optima = [state]
            capped = False
        elif score == best:
            if len(optima) < cap:
                optima.append(state)
            else:
                capped = True
    return best, optima, feasible, capped


def exact_mwpsp(
    W: WeightedInstance,
    forced: frozenset[Edge] | set[Edge] | tuple[Edge, ...] = frozenset(),
    cap: int = DEFAULT_OPTIMA_CAP,
    workers: int = 1,
    budget: int | None = None,
) -> SolveReport:
    """Exhaustive optimum over all triangulations on 1..n (4 <= n <= 9).

    With ``forced`` given, only triangulations containing every forced edge
    compete; `NoFeasible` is raised when none does. All optima are retained
    up to ``cap`` (reported and flagged when hit). ``workers`` > 1 shards
    the scoring across processes with a deterministic merge.
    """
    _check_enum_range(W.n)
    forced = frozenset(edge(u, v) for u, v in forced)
    for u, v in forced:
        if not (1 <= u < v <= W.n):
            raise VertexCountOutOfRange(f"forced edge {(u, v)} outside 1..{W.n}")
    states = flipgraph.closure(W.n, budget)
    denom, fw = _weight_tables(W)
    forced_sets = _forced_face_sets(forced, W.n)

    if workers <= 1 or len(states) < 1024:
        best, optima, feasible, capped = _score_chunk((states, fw, forced_sets, cap))
    else:
        chunk_size = max(1, len(states) // (workers * 4))
        chunks = [states[i : i + chunk_size] for i in range(0, len(states), chunk_size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_score_chunk, [(c, fw, forced_sets, cap) for c in chunks]))
        best = max(r[0] for r in results)
        feasible = sum(r[2] for r in results)
        optima = []
        capped = False
        for r_best, r_optima, _r_feasible, r_capped in results:
            if r_best != best:
                continue
            capped = capped or r_capped
            for state in r_optima:
                if len(optima) < cap:
                    optima.append(state)
                else:
                    capped = True
    if feasible == 0:
        raise NoFeasible("forced edges exclude every triangulation")

    graphs = [flipgraph.to_triangulation(st, W.n) for st in optima]
    graphs.sort(key=lambda g: g.canonical_key())
    return SolveReport(
        method="exact",
        best_weight=Fraction(best, denom),
        best_graphs=tuple(graphs),
        explored=len(states),
        cap=cap,
        optima_capped=capped,
    )


def verify_proposition4(W: WeightedInstance, T: SpanningTree) -> bool:
    """True iff no optimum of the exhaustive search contains every tree edge."""
    if W.n != T.n:
        raise SizeMismatch(f"instance has n={W.n}, tree has n={T.n}")
    report = exact_mwpsp(W)
    if report.optima_capped:
        raise BudgetExceeded(
            "optima retention was capped; cannot certify a claim over all optima"
        )
    return all(not T.edges <= g.edges for g in report.best_graphs)


def mst_greedy(W: WeightedInstance) -> Triangulation:
    """Greedy construction: maximum spanning tree, then heaviest-first edge
    additions whenever planarity survives, zero-weight pairs included, until
    the graph is maximal planar. The result always contains the tree."""
    if W.n < 4:
        raise TooSmall(f"construction needs n >= 4, got n={W.n}")
    n = W.n
    tree = maximum_spanning_tree(W)
    chosen = set(tree.edges)
    target = 3 * n - 6
    remaining = [
        (u, v)
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if (u, v) not in chosen
    ]
    remaining.sort(key=lambda e: (-W.weight_of(e), e))
    for e in remaining:
        if len(chosen) == target:
            break
        if is_planar(n, chosen | {e}):
            chosen.add(e)
    # a single greedy pass reaches 3n-6: planarity is monotone, so a pair
    # rejected once can never become addable later
    return Triangulation._from_faces(n, planar_faces(n, chosen)).validate()


@dataclass(frozen=True)
class AnnealSchedule:
    """Geometric cooling: start at ``t0`` (default: the instance's maximum
    edge weight), multiply by ``ratio`` per sweep, one sweep = one proposal
    per graph edge, stop after ``sweeps`` sweeps."""

    t0: float | None = None
    ratio: float = 0.95
    sweeps: int = 60


def local_search(
    G0: Triangulation,
    W: WeightedInstance,
    policy: str = "steepest",
    seed: int = 0,
    schedule: AnnealSchedule | None = None,
) -> SolveReport:
    """Flip-based local improvement from a starting triangulation.

    ``steepest`` applies the best positive-gain flip (lexicographic ties),
    ``first`` the first positive-gain flip in canonical edge order; both stop
    at a flip-local optimum. ``anneal`` runs seeded simulated annealing over
    random flips and returns the best graph seen, with the trace truncated at
    that point so replaying it from G0 reproduces the reported graph.
    """
    if G0.n != W.n:
        raise SizeMismatch(f"graph has n={G0.n}, instance has n={W.n}")
    if G0.n < 5:
        raise TooSmall("local search needs n >= 5 (no flips exist below that)")
    if policy in ("steepest", "first", "first-improvement"):
        return _hill_climb(G0, W, steepest=policy == "steepest")
    if policy == "anneal":
        return _anneal(G0, W, seed, schedule or AnnealSchedule())
    raise ValueError(f"unknown policy {policy!r}")


def _hill_climb(G0: Triangulation, W: WeightedInstance, steepest: bool) -> SolveReport:
    H = G0
    weight = G0.weight(W)
    trace: list[Move] = []
    visited = {H.canonical_key()}
    while True:
        chosen = None
        for e in sorted(H.edges):
            delta = W.weight_of(flip_added_edge(H, e)) - W.weight_of(e)
            if delta > 0 and (chosen is None or delta > chosen[0]):
                chosen = (delta, e)
                if not steepest:
                    break
        if chosen is None:
            break
        delta, e = chosen
        H, _ = edge_substitute(H, e)
        trace.append(Move.flip(e))
        weight += delta
        visited.add(H.canonical_key())
    return SolveReport(
        method="local-steepest" if steepest else "local-first",
        best_weight=weight,
        best_graphs=(H,),
        explored=len(visited),
        trace=MoveSequence(tuple(trace)),
    )


def _anneal(G0: Triangulation, W: WeightedInstance, seed: int, sched: AnnealSchedule) -> SolveReport:
    rng = random.Random(seed)
    t0 = sched.t0 if sched.t0 is not None else float(W.max_weight())
    if t0 <= 0:
        t0 = 1.0
    H = G0
    weight = G0.weight(W)
    best_graph, best_weight, best_len = H, weight, 0
    accepted: list[Move] = []
    visited = {H.canonical_key()}
    edge_list = sorted(H.edges)
    m = len(edge_list)
    for sweep in range(sched.sweeps):
        temp = t0 * sched.ratio**sweep
        for _ in range(m):
            e = edge_list[rng.randrange(m)]
            delta = W.weight_of(flip_added_edge(H, e)) - W.weight_of(e)
            if delta < 0 and rng.random() >= math.exp(float(delta) / temp):
                continue
            H, _ = edge_substitute(H, e)
            accepted.append(Move.flip(e))
            weight += delta
            visited.add(H.canonical_key())
            edge_list = sorted(H.edges)
            if weight > best_weight:
                best_graph, best_weight, best_len = H, weight, len(accepted)
    return SolveReport(
        method="anneal",
        best_weight=best_weight,
        best_graphs=(best_graph,),
        explored=len(visited),
        seed=seed,
        trace=MoveSequence(tuple(accepted[:best_len])),
    )
