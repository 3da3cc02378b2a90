"""Parsers and serializers for the package's file formats.

Instance files are plain text ("n N" then "u v w" lines); triangulations,
move sequences, and solve reports are JSON. Weights travel as decimal
strings and are kept exact, so weight comparisons in reports are never
subject to rounding. serialize(parse(x)) is the identity on values.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .core import Edge, Triangulation, WeightedInstance, build_triangulation, edge
from .errors import DuplicateEdge, IndexOutOfRange, ParseError
from .moves import Move, MoveSequence
from .solver import SolveReport


# -- exact decimal weights --------------------------------------------------


def parse_weight(token: str, line: int | None = None) -> Fraction:
    try:
        w = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad weight {token!r}", line) from None
    if w < 0:
        raise ParseError(f"negative weight {token!r}", line)
    return w


def format_weight(w: Fraction) -> str:
    """Exact decimal string when one exists (it always does for parsed
    decimal input); falls back to p/q otherwise."""
    if w.denominator == 1:
        return str(w.numerator)
    den = w.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{w.numerator}/{w.denominator}"
    shift = max(twos, fives)
    digits = w.numerator * 10**shift // w.denominator
    text = str(digits).rjust(shift + 1, "0")
    return f"{text[:-shift]}.{text[-shift:]}"


# -- weighted instances ------------------------------------------------------


def parse_instance(text: str) -> WeightedInstance:
    """Parse the instance format: first line "n N", then "u v w" lines with
    1 <= u < v <= N; blank lines and '#' comments are ignored."""
    n: int | None = None
    weights: dict[Edge, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "n" or not fields[1].isdigit():
                raise ParseError(f"expected 'n <count>', got {line!r}", lineno)
            n = int(fields[1])
            if n < 1:
                raise ParseError("vertex count must be positive", lineno)
            continue
        if len(fields) != 3:
            raise ParseError(f"expected 'u v w', got {line!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"bad vertex ids in {line!r}", lineno) from None
        if u >= v:
            raise ParseError(f"edges require u < v, got {u} {v}", lineno)
        if not (1 <= u and v <= n):
            raise IndexOutOfRange(f"edge {u} {v} outside 1..{n}", lineno)
        if (u, v) in weights:
            raise DuplicateEdge(f"edge {u} {v} listed twice", lineno)
        weights[(u, v)] = parse_weight(fields[2], lineno)
    if n is None:
        raise ParseError("missing 'n <count>' header")
    return WeightedInstance(n, weights)


def format_instance(W: WeightedInstance) -> str:
    lines = [f"n {W.n}"]
    for (u, v), w in sorted(W.weights.items()):
        lines.append(f"{u} {v} {format_weight(w)}")
    return "\n".join(lines) + "\n"


# -- triangulations ----------------------------------------------------------


def parse_triangulation(text: str) -> Triangulation:
    """Parse and fully validate {"n": ..., "faces": [[a, b, c], ...]}."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"bad JSON: {err}") from None
    if not isinstance(obj, dict) or "n" not in obj or "faces" not in obj:
        raise ParseError('expected an object with "n" and "faces"')
    if not isinstance(obj["n"], int) or not isinstance(obj["faces"], list):
        raise ParseError('"n" must be an int and "faces" a list')
    return build_triangulation(obj["n"], obj["faces"])


def triangulation_obj(G: Triangulation) -> dict[str, Any]:
    return {"n": G.n, "faces": [list(f) for f in sorted(G.faces)]}


def format_triangulation(G: Triangulation) -> str:
    return json.dumps(triangulation_obj(G))


# -- move sequences ----------------------------------------------------------


def moves_obj(seq: MoveSequence) -> list[dict[str, Any]]:
    out: list[dict[str, Any]] = []
    for mv in seq:
        if mv.kind == "flip":
            out.append({"op": "flip", "edge": list(mv.edge)})
        else:
            out.append({"op": "relocate", "vertex": mv.vertex, "face": list(mv.face)})
    return out


def format_moves(seq: MoveSequence) -> str:
    return json.dumps(moves_obj(seq))


def parse_moves(text: str) -> MoveSequence:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"bad JSON: {err}") from None
    if not isinstance(obj, list):
        raise ParseError("expected a JSON list of move records")
    moves = []
    for i, rec in enumerate(obj):
        if not isinstance(rec, dict) or "op" not in rec:
            raise ParseError(f"move {i}: not a tagged record")
        if rec["op"] == "flip":
            u, v = rec["edge"]
            moves.append(Move.flip((u, v)))
        elif rec["op"] == "relocate":
            a, b, c = rec["face"]
            moves.append(Move.relocate(rec["vertex"], (a, b, c)))
        else:
            raise ParseError(f"move {i}: unknown op {rec['op']!r}")
    return MoveSequence(tuple(moves))


# -- solve reports -----------------------------------------------------------


def report_obj(report: SolveReport, max_graphs: int | None = None) -> dict[str, Any]:
    graphs = report.best_graphs
    if max_graphs is not None:
        graphs = graphs[:max_graphs]
    return {
        "method": report.method,
        "seed": report.seed,
        "best_weight": format_weight(report.best_weight),
        "best_graphs": [triangulation_obj(g) for g in graphs],
        "explored": report.explored,
        "cap": report.cap,
        "optima_capped": report.optima_capped,
        "trace": moves_obj(report.trace) if report.trace is not None else None,
    }


def format_report(report: SolveReport, max_graphs: int | None = None) -> str:
    return json.dumps(report_obj(report, max_graphs), indent=2)


def parse_report(text: str) -> SolveReport:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"bad JSON: {err}") from None
    for key in ("method", "best_weight", "best_graphs", "explored"):
        if key not in obj:
            raise ParseError(f"report is missing {key!r}")
    graphs = tuple(
        build_triangulation(g["n"], g["faces"]) for g in obj["best_graphs"]
    )
    trace = None
    if obj.get("trace") is not None:
        trace = parse_moves(json.dumps(obj["trace"]))
    return SolveReport(
        method=obj["method"],
        best_weight=parse_weight(str(obj["best_weight"])),
        best_graphs=graphs,
        explored=obj["explored"],
        seed=obj.get("seed"),
        trace=trace,
        cap=obj.get("cap"),
        optima_capped=bool(obj.get("optima_capped", False)),
    )


# -- forced-edge lists and DOT export ----------------------------------------


def parse_edge_list(text: str, n: int) -> frozenset[Edge]:
    """Plain text "u v" lines (comments and blanks ignored); used for
    forced-edge files."""
    out: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"bad vertex ids in {line!r}", lineno) from None
        if u == v:
            raise ParseError(f"loop edge {u} {v}", lineno)
        if not (1 <= min(u, v) and max(u, v) <= n):
            raise IndexOutOfRange(f"edge {u} {v} outside 1..{n}", lineno)
        e = edge(u, v)
        if e in out:
            raise DuplicateEdge(f"edge {u} {v} listed twice", lineno)
        out.add(e)
    return frozenset(out)


def export_dot(G: Triangulation) -> str:
    """Graph-description text for offline rendering: vertices, edges, and
    one comment line per face. Ordering is deterministic."""
    lines = [
        "graph triangulation {",
        f"  // n={G.n} m={G.m} f={G.f}",
        "  node [shape=circle];",
    ]
    lines.extend(f"  {v};" for v in range(1, G.n + 1))
    lines.extend(f"  {u} -- {v};" for u, v in sorted(G.edges))
    lines.extend(f"  // face {a} {b} {c}" for a, b, c in sorted(G.faces))
    lines.append("}")
    return "\n".join(lines) + "\n"
