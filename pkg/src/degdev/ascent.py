"""Monotone edge rewriting that drives a connected graph to a split-family terminal.

Moves, each re-deriving the degree partition from scratch:

* ``remove_down``: delete a non-bridge edge with both ends at or below average;
* ``add_up``: join two non-adjacent vertices above average;
* ``rewire``: move one end of a bridge inside the down set onto an up vertex;
* ``complete_cs`` / ``prune_s1``: the terminal completion or pruning of a split graph.

Every move recomputes ``n * s`` and raises :class:`MonotonicityError` if the
guaranteed increase fails to happen.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from degdev.graph import (
    Edge,
    Graph,
    GraphError,
    cut_edges,
    degree_partition,
    is_connected,
    scaled_deviation,
)


class AscentError(RuntimeError):
    """A move broke its contract. Carries the offending graph."""

    def __init__(self, message: str, graph: Graph):
        super().__init__(message)
        self.graph = graph


class MonotonicityError(AscentError):
    pass


class PreconditionError(GraphError):
    pass


@dataclass(frozen=True)
class AscentAction:
    kind: str
    detail: tuple


@dataclass(frozen=True)
class AscentStep:
    action: AscentAction
    n_s_before: int
    n_s_after: int


@dataclass(frozen=True)
class TerminalFamily:
    kind: str  # "complete_split" | "pendant_split" | "unchanged"
    k: int
    clique: frozenset[int] = frozenset()


@dataclass
class AscentTrace:
    start: Graph
    steps: list[AscentStep] = field(default_factory=list)
    terminal: Graph | None = None
    terminal_family: TerminalFamily | None = None

    def graphs(self) -> list[Graph]:
        """Replay the trace and return every intermediate graph, start and terminal included."""
        out = [self.start]
        g = self.start
        for step in self.steps:
            g = apply_action(g, step.action)
            out.append(g)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "action", "detail", "n_s_before", "n_s_after"])
        for i, st in enumerate(self.steps):
            w.writerow([i, st.action.kind, _detail(st.action.detail), st.n_s_before, st.n_s_after])
        return buf.getvalue()


def _detail(detail: tuple) -> str:
    if detail and isinstance(detail[0], tuple):
        return " ".join(f"{u}-{v}" for u, v in detail)
    return "-".join(str(x) for x in detail)


def apply_action(g: Graph, action: AscentAction) -> Graph:
    kind, d = action.kind, action.detail
    if kind in ("remove_down", "bootstrap"):
        return g.remove_edge(*d)
    if kind == "add_up":
        return g.add_edge(*d)
    if kind == "rewire":
        kept, dropped, w = d
        return g.remove_edge(kept, dropped).add_edge(kept, w)
    if kind == "complete_cs":
        for u, v in d:
            g = g.add_edge(u, v)
        return g
    if kind == "prune_s1":
        for u, v in d:
            g = g.remove_edge(u, v)
        return g
    raise ValueError(f"unknown action {kind!r}")


def _norm(e: Edge) -> Edge:
    u, v = e
    return (u, v) if u < v else (v, u)


def _require_irregular_connected(g: Graph) -> None:
    if g.n < 3:
        raise PreconditionError(f"need n >= 3, got {g.n}")
    if not is_connected(g):
        raise PreconditionError("disconnected input")
    if g.is_regular():
        raise PreconditionError("regular input")


def _strict(before: int, g2: Graph, what: str) -> int:
    after = scaled_deviation(g2)
    if after <= before:
        raise MonotonicityError(f"{what}: n*s went {before} -> {after}", g2)
    return after


def remove_down_edge(g: Graph, e: Edge) -> Graph:
    _require_irregular_connected(g)
    e = _norm(e)
    if e not in degree_partition(g).e_down:
        raise PreconditionError(f"{e} not in E_down")
    if e in cut_edges(g):
        raise PreconditionError(f"{e} is a cut edge")
    g2 = g.remove_edge(*e)
    _strict(scaled_deviation(g), g2, f"remove_down {e}")
    return g2


def add_up_edge(g: Graph, pair: Edge) -> Graph:
    _require_irregular_connected(g)
    pair = _norm(pair)
    if g.has_edge(*pair):
        raise PreconditionError(f"{pair} already adjacent")
    if pair not in degree_partition(g).non_edges_up:
        raise PreconditionError(f"{pair} not in non_edges_up")
    g2 = g.add_edge(*pair)
    _strict(scaled_deviation(g), g2, f"add_up {pair}")
    return g2


def _find_rewire(g: Graph, e: Edge, v_up: frozenset[int]) -> tuple[int, int, int] | None:
    u, v = e
    for kept, dropped in ((u, v), (v, u)):
        base = g.remove_edge(kept, dropped)
        for w in sorted(v_up):
            if g.has_edge(kept, w):
                continue
            if is_connected(base.add_edge(kept, w)):
                return kept, dropped, w
    return None


def rewire_cut_edge(g: Graph, e: Edge) -> tuple[Graph, int]:
    """Replace bridge ``uv`` by ``uw`` (or ``vu`` by ``vw``) with ``w`` above average.

    Returns the rewired graph and ``w``. The scaled deviation must rise by exactly ``2n``.
    """
    g2, move = _rewire(g, e)
    return g2, move[2]


def _rewire(g: Graph, e: Edge) -> tuple[Graph, tuple[int, int, int]]:
    _require_irregular_connected(g)
    e = _norm(e)
    part = degree_partition(g)
    if e not in part.e_down:
        raise PreconditionError(f"{e} not in E_down")
    if e not in cut_edges(g):
        raise PreconditionError(f"{e} is not a cut edge")
    move = _find_rewire(g, e, part.v_up)
    if move is None:
        raise AscentError(f"no connectedness factor for bridge {e}", g)
    kept, dropped, w = move
    g2 = g.remove_edge(kept, dropped).add_edge(kept, w)
    before, after = scaled_deviation(g), scaled_deviation(g2)
    if after - before != 2 * g.n:
        raise MonotonicityError(f"rewire {e}->{w}: n*s went {before} -> {after}, expected +{2 * g.n}", g2)
    return g2, move


def _split_sides(g: Graph) -> tuple[list[int], list[int]]:
    part = degree_partition(g)
    clique, stable = sorted(part.v_up), sorted(part.v_down)
    if part.non_edges_up:
        raise PreconditionError("V_up is not a clique")
    if part.e_down:
        raise PreconditionError("V_down is not a stable set")
    return clique, stable


def _terminal(g: Graph) -> tuple[Graph, TerminalFamily, AscentAction | None]:
    if g.is_complete():
        return g, TerminalFamily("unchanged", g.n, frozenset(range(g.n))), None
    clique, stable = _split_sides(g)
    k, cset = len(clique), frozenset(clique)
    missing = [(min(u, v), max(u, v)) for v in stable for u in clique if not g.has_edge(u, v)]
    if not missing:
        return g, TerminalFamily("complete_split", k, cset), None
    if all(g.degree(v) == 1 for v in stable):
        return g, TerminalFamily("pendant_split", k, cset), None
    if len(stable) > len(clique):
        action = AscentAction("complete_cs", tuple(sorted(missing)))
        return apply_action(g, action), TerminalFamily("complete_split", k, cset), action
    # keep each stable vertex's lowest-numbered anchor
    extra = tuple(sorted(
        (min(u, v), max(u, v)) for v in stable for u in g.neighbors(v)[1:]
    ))
    action = AscentAction("prune_s1", extra)
    return apply_action(g, action), TerminalFamily("pendant_split", k, cset), action


def terminal_step(g: Graph) -> tuple[Graph, TerminalFamily]:
    """Complete a split graph to CS(n, k) or prune it to S^1(n, k)."""
    if not is_connected(g):
        raise PreconditionError("disconnected input")
    g2, fam, action = _terminal(g)
    if action is not None:
        before, after = scaled_deviation(g), scaled_deviation(g2)
        if action.kind == "complete_cs" and after <= before:
            raise MonotonicityError(f"complete_cs: n*s went {before} -> {after}", g2)
        if action.kind == "prune_s1" and after < before:
            raise MonotonicityError(f"prune_s1: n*s went {before} -> {after}", g2)
    return g2, fam


def _next_move(g: Graph) -> AscentAction | None:
    part = degree_partition(g)
    if part.e_down:
        bridges = cut_edges(g)
        for e in part.e_down:
            if e not in bridges:
                return AscentAction("remove_down", e)
    if part.non_edges_up:
        return AscentAction("add_up", part.non_edges_up[0])
    if part.e_down:
        # every remaining down edge is a bridge
        e = part.e_down[0]
        move = _find_rewire(g, e, part.v_up)
        if move is None:
            raise AscentError(f"no connectedness factor for bridge {e}", g)
        return AscentAction("rewire", move)
    return None


def ascend(g: Graph) -> AscentTrace:
    """Run the rewriting to a terminal, asserting each move's contract."""
    if g.n < 3:
        raise PreconditionError(f"need n >= 3, got {g.n}")
    if not is_connected(g):
        raise PreconditionError("disconnected input")
    trace = AscentTrace(start=g)
    cur = scaled_deviation(g)
    if g.is_regular() and not g.is_complete():
        bridges = cut_edges(g)
        e = next(e for e in g.edges() if e not in bridges)
        g = g.remove_edge(*e)
        after = _strict(cur, g, f"bootstrap {e}")
        trace.steps.append(AscentStep(AscentAction("bootstrap", e), cur, after))
        cur = after
    limit = 4 * g.n ** 3
    while not g.is_complete():
        action = _next_move(g)
        if action is None:
            break
        g2 = apply_action(g, action)
        if not is_connected(g2):
            raise AscentError(f"{action.kind} {action.detail} disconnected the graph", g2)
        if action.kind == "rewire":
            after = scaled_deviation(g2)
            if after - cur != 2 * g.n:
                raise MonotonicityError(f"rewire {action.detail}: n*s went {cur} -> {after}", g2)
        else:
            after = _strict(cur, g2, f"{action.kind} {action.detail}")
        trace.steps.append(AscentStep(action, cur, after))
        g, cur = g2, after
        if len(trace.steps) > limit:
            raise AscentError(f"trace exceeded {limit} steps", g)
    terminal, fam, action = _terminal(g)
    if action is not None:
        after = scaled_deviation(terminal)
        if action.kind == "complete_cs" and after <= cur or action.kind == "prune_s1" and after < cur:
            raise MonotonicityError(f"{action.kind}: n*s went {cur} -> {after}", terminal)
        if not is_connected(terminal):
            raise AscentError(f"{action.kind} disconnected the graph", terminal)
        trace.steps.append(AscentStep(action, cur, after))
    trace.terminal = terminal
    trace.terminal_family = fam
    return trace
