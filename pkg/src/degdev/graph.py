"""Immutable simple graphs on bit-array adjacency, with exact degree statistics.

Vertices are ``0..n-1``. Each vertex stores its neighbourhood as a Python
``int`` used as a bit set, so ``n`` is not capped by a machine word.

The degree deviation ``s(G) = sum_v |deg(v) - 2m/n|`` is carried as the
integer ``n * s(G) = sum_v |n deg(v) - 2m|`` so that every comparison
against the average degree is tie-exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

Edge = tuple[int, int]


class GraphError(ValueError):
    """Invalid graph construction or an operation applied outside its domain."""


def pair_index(i: int, j: int) -> int:
    """Bit position of the pair ``{i, j}`` in the upper-triangle edge mask.

    Pairs are ordered column by column, ``(0,1), (0,2), (1,2), (0,3), ...``,
    which is also the bit order used by graph6.
    """
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


def pairs(n: int) -> list[Edge]:
    """All vertex pairs in edge-mask bit order."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    m: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        full = (1 << self.n) - 1
        total = 0
        for v, row in enumerate(self.adj):
            if row & ~full or row < 0:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in _bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
            total += row.bit_count()
        object.__setattr__(self, "m", total // 2)

    @classmethod
    def _from_rows(cls, n: int, adj: tuple[int, ...]) -> Graph:
        # Skips the O(m) symmetry check; callers must build symmetric, loop-free rows.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        object.__setattr__(g, "m", sum(row.bit_count() for row in adj) // 2)
        return g

    @classmethod
    def from_mask(cls, n: int, mask: int) -> Graph:
        adj = [0] * n
        for b, (i, j) in enumerate(pairs(n)):
            if mask >> b & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        return cls(n, tuple(adj))

    def to_mask(self) -> int:
        mask = 0
        for u, v in self.edges():
            mask |= 1 << pair_index(u, v)
        return mask

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[Edge]:
        """Edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def add_edge(self, u: int, v: int) -> Graph:
        self._check_pair(u, v)
        if self.has_edge(u, v):
            raise GraphError(f"edge ({u}, {v}) already present")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))

    def remove_edge(self, u: int, v: int) -> Graph:
        self._check_pair(u, v)
        if not self.has_edge(u, v):
            raise GraphError(f"edge ({u}, {v}) not present")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj))

    def relabel(self, perm: Iterable[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n)):
            raise GraphError(f"not a permutation of 0..{self.n - 1}: {perm}")
        return make_graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def _check_pair(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise GraphError(f"pair ({u}, {v}) out of range for n={self.n}")
        if u == v:
            raise GraphError(f"pair ({u}, {v}) is a self-loop")


def make_graph(n: int, edges: Iterable[Edge]) -> Graph:
    """Build a graph, rejecting out-of-range vertices, loops and duplicate pairs."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"edge ({u}, {v}) is a self-loop")
        if adj[u] >> v & 1:
            raise GraphError(f"edge ({u}, {v}) is a duplicate")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def scaled_deviation(g: Graph) -> int:
    """``n * s(g)``, an exact non-negative integer."""
    if g.n < 1:
        raise GraphError("degree deviation needs at least one vertex")
    two_m = 2 * g.m
    return sum(abs(g.n * d - two_m) for d in g.degrees())


def deviation(g: Graph) -> Fraction:
    """``s(g)`` as an exact rational."""
    return Fraction(scaled_deviation(g), g.n)


@dataclass(frozen=True)
class DegreePartition:
    v_down: frozenset[int]
    v_up: frozenset[int]
    e_down: tuple[Edge, ...]
    non_edges_up: tuple[Edge, ...]


def degree_partition(g: Graph) -> DegreePartition:
    """Split vertices at the average degree; a vertex exactly at average is "down"."""
    if g.n < 1:
        raise GraphError("degree partition needs at least one vertex")
    two_m = 2 * g.m
    up_bits = 0
    for v, d in enumerate(g.degrees()):
        if g.n * d > two_m:
            up_bits |= 1 << v
    v_up = frozenset(_bits(up_bits))
    v_down = frozenset(range(g.n)) - v_up
    e_down = tuple((u, v) for u, v in g.edges() if u in v_down and v in v_down)
    up_sorted = sorted(v_up)
    non_edges_up = tuple(
        (u, v)
        for a, u in enumerate(up_sorted)
        for v in up_sorted[a + 1:]
        if not g.has_edge(u, v)
    )
    return DegreePartition(v_down, v_up, e_down, non_edges_up)


def reachable(g: Graph, source: int = 0) -> int:
    """Bit set of vertices reachable from ``source``."""
    seen = 1 << source
    frontier = seen
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph) -> bool:
    if g.n < 1:
        raise GraphError("connectivity of the null graph is undefined")
    return reachable(g) == (1 << g.n) - 1


def cut_edges(g: Graph) -> frozenset[Edge]:
    """Bridges of a connected graph by iterative depth-first low-link."""
    if not is_connected(g):
        raise GraphError("cut_edges requires a connected graph")
    disc = [-1] * g.n
    low = [0] * g.n
    bridges = set()
    counter = 0
    disc[0] = low[0] = counter
    # frames: (vertex, parent, remaining-neighbour bits)
    stack = [(0, -1, g.adj[0])]
    while stack:
        v, parent, todo = stack[-1]
        if todo:
            w = (todo & -todo).bit_length() - 1
            stack[-1] = (v, parent, todo & (todo - 1))
            if w == parent:
                continue
            if disc[w] < 0:
                counter += 1
                disc[w] = low[w] = counter
                stack.append((w, v, g.adj[w]))
            else:
                low[v] = min(low[v], disc[w])
            continue
        stack.pop()
        if parent >= 0:
            low[parent] = min(low[parent], low[v])
            if low[v] > disc[parent]:
                bridges.add((min(v, parent), max(v, parent)))
    return frozenset(bridges)
