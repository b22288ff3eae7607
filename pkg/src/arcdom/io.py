"""Line-oriented text formats for models, weights and solutions.

Model::

    c comment
    p ca <n>
    a <id> <start> <end>        ids 1..n, positions 0..2n-1, all distinct

Weights (missing entries read as 1/1)::

    vw <id> <p>/<q>
    ew <id1> <id2> <p>/<q>      either weight may be ``inf``

Solution::

    s OPTIMAL <p>/<q>    |    s INFEASIBLE
    v <id>               |    e <id1> <id2>

All ids in files are 1-based; the library is 0-based.
"""
from __future__ import annotations

from fractions import Fraction

from .arc_model import CircularArcModel
from .errors import KindMismatch, ParseError
from .graph_core import Solution
from .weights import EDGE, INF, VERTEX, WeightMap, edge_key, format_weight

FORMAT_LINE = "c format 1"


def _columns(raw: str):
    toks = []
    col = 0
    for part in raw.split(" "):
        if part:
            toks.append((col + 1, part))
        col += len(part) + 1
    return toks


def _tokens(text: str):
    """Yield ``(line_no, [(column, token), ...])`` for non-blank, non-comment lines."""
    for no, raw in enumerate(text.splitlines(), start=1):
        toks = _columns(raw)
        if not toks or toks[0][1] == "c":
            continue
        yield no, toks


def _int(tok, line) -> int:
    col, s = tok
    try:
        return int(s)
    except ValueError:
        raise ParseError(f"expected an integer, got {s!r}", line, col) from None


def _arity(toks, k, line, shape):
    if len(toks) != k:
        col = toks[min(len(toks), k) - 1][0] if toks else 1
        raise ParseError(f"expected '{shape}'", line, col)


def parse_model(text: str) -> CircularArcModel:
    n = None
    arcs: dict[int, tuple[int, int]] = {}
    used: dict[int, int] = {}
    for line, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split(" ")
        if n is not None and len(parts) == 4 and parts[0] == "a":
            # fast path for well-formed arc lines; anything odd falls through
            try:
                ident, s, t = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                ident = 0
            if (
                0 < ident <= n
                and ident not in arcs
                and 0 <= s < 2 * n
                and 0 <= t < 2 * n
                and s != t
                and s not in used
                and t not in used
            ):
                used[s] = used[t] = line
                arcs[ident] = (s, t)
                continue
        toks = _columns(raw)
        if not toks or toks[0][1] == "c":
            continue
        tag = toks[0][1]
        if tag == "p":
            _arity(toks, 3, line, "p ca <n>")
            if n is not None:
                raise ParseError("second header", line, 1)
            if toks[1][1] != "ca":
                raise ParseError(f"unknown problem line type {toks[1][1]!r}", line, toks[1][0])
            n = _int(toks[2], line)
            if n < 1:
                raise ParseError("a model needs at least one arc", line, toks[2][0])
        elif tag == "a":
            if n is None:
                raise ParseError("arc before the 'p ca <n>' header", line, 1)
            _arity(toks, 4, line, "a <id> <start> <end>")
            ident, s, t = (_int(tk, line) for tk in toks[1:])
            if not 1 <= ident <= n:
                raise ParseError(f"arc id {ident} outside 1..{n}", line, toks[1][0])
            if ident in arcs:
                raise ParseError(f"arc {ident} given twice", line, toks[1][0])
            if s == t:
                raise ParseError(f"arc {ident} starts and ends at {s}", line, toks[3][0])
            for tk, pos in ((toks[2], s), (toks[3], t)):
                if not 0 <= pos < 2 * n:
                    raise ParseError(f"position {pos} outside 0..{2 * n - 1}", line, tk[0])
                if pos in used:
                    raise ParseError(f"position {pos} already used on line {used[pos]}", line, tk[0])
                used[pos] = line
            arcs[ident] = (s, t)
        else:
            raise ParseError(f"unknown line type {tag!r}", line, toks[0][0])
    if n is None:
        raise ParseError("missing 'p ca <n>' header")
    if len(arcs) != n:
        missing = min(set(range(1, n + 1)) - set(arcs))
        raise ParseError(f"arc {missing} missing ({len(arcs)} of {n} given)")
    return CircularArcModel([arcs[i] for i in range(1, n + 1)])


def emit_model(model: CircularArcModel) -> str:
    lines = [FORMAT_LINE, f"p ca {model.n}"]
    lines += [f"a {i + 1} {s} {t}" for i, (s, t) in enumerate(model.pairs)]
    return "\n".join(lines) + "\n"


def _weight(tok, line):
    col, s = tok
    if s == "inf":
        return INF
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad weight {s!r}", line, col) from None


def parse_weights(text: str, kind: str, model: CircularArcModel) -> WeightMap:
    """Weights for the graph of ``model``; ids are checked against it and
    absent keys default to 1."""
    vals = {}
    for line, toks in _tokens(text):
        tag = toks[0][1]
        if tag == "vw":
            if kind != VERTEX:
                raise KindMismatch(f"line {line}: vertex weight in an edge-weighted instance")
            _arity(toks, 3, line, "vw <id> <p>/<q>")
            v = _int(toks[1], line)
            if not 1 <= v <= model.n:
                raise ParseError(f"vertex id {v} outside 1..{model.n}", line, toks[1][0])
            key = v - 1
        elif tag == "ew":
            if kind != EDGE:
                raise KindMismatch(f"line {line}: edge weight in a vertex-weighted instance")
            _arity(toks, 4, line, "ew <id1> <id2> <p>/<q>")
            u, v = _int(toks[1], line), _int(toks[2], line)
            key = edge_key(u - 1, v - 1)
            if not (1 <= u <= model.n and 1 <= v <= model.n and u != v and model.intersects(u - 1, v - 1)):
                raise ParseError(f"({u}, {v}) is not an edge", line, toks[1][0])
        else:
            raise ParseError(f"unknown line type {tag!r}", line, toks[0][0])
        if key in vals:
            raise ParseError("weight given twice", line, toks[1][0])
        vals[key] = _weight(toks[-1], line)
    return WeightMap(kind, vals, Fraction(1))


def emit_weights(w: WeightMap, keys=None) -> str:
    """Explicit entries only, in key order (or for ``keys`` when given)."""
    keys = sorted(w.values) if keys is None else list(keys)
    lines = [FORMAT_LINE]
    for k in keys:
        if w.kind == VERTEX:
            lines.append(f"vw {k + 1} {format_weight(w[k])}")
        else:
            u, v = edge_key(*k)
            lines.append(f"ew {u + 1} {v + 1} {format_weight(w[k])}")
    return "\n".join(lines) + "\n"


def parse_instance(model_text: str, weight_text: str | None, kind: str):
    model = parse_model(model_text)
    return model, parse_weights(weight_text or "", kind, model)


def emit_solution(sol: Solution) -> str:
    if not sol.feasible:
        return "s INFEASIBLE\n"
    lines = [f"s OPTIMAL {format_weight(sol.value)}"]
    if sol.kind == VERTEX:
        lines += [f"v {v + 1}" for v in sol.members]
    else:
        lines += [f"e {u + 1} {v + 1}" for u, v in sol.members]
    return "\n".join(lines) + "\n"


def parse_solution_members(text: str, kind: str) -> list:
    """Members of a solution block; status and comment lines are skipped."""
    out = []
    for line, toks in _tokens(text):
        tag = toks[0][1]
        if tag == "s":
            continue
        if tag == "v" and kind == VERTEX:
            _arity(toks, 2, line, "v <id>")
            out.append(_int(toks[1], line) - 1)
        elif tag == "e" and kind == EDGE:
            _arity(toks, 3, line, "e <id1> <id2>")
            out.append((_int(toks[1], line) - 1, _int(toks[2], line) - 1))
        elif tag in ("v", "e"):
            raise KindMismatch(f"line {line}: '{tag}' member in a {kind} solution")
        else:
            raise ParseError(f"unknown line type {tag!r}", line, toks[0][0])
    return out
