"""Degree-count identities and deviation formulas for chemical graphs (max degree 4).

The formulas take counts rather than graphs, so they can be checked against
any source of counts: graph sweeps, the random sampler, or Pruefer codes.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from degdev.graph import Graph, GraphError, is_connected, make_graph, scaled_deviation

MAX_DEGREE = 4
MAX_ATTEMPTS = 10_000


class InfeasibleError(GraphError):
    pass


@dataclass(frozen=True)
class ChemicalCounts:
    n1: int
    n2: int
    n3: int
    n4: int
    n: int
    c: int


def degree_counts(g: Graph) -> ChemicalCounts:
    if g.n < 2:
        raise GraphError("need n >= 2")
    if not is_connected(g):
        raise GraphError("disconnected graph")
    deg = g.degrees()
    if max(deg) > MAX_DEGREE:
        raise GraphError(f"not a chemical graph: max degree {max(deg)}")
    counts = [deg.count(i) for i in range(1, MAX_DEGREE + 1)]
    return ChemicalCounts(*counts, n=g.n, c=g.m - g.n + 1)


def n1_n2_from_identity(c: int, n: int, n3: int, n4: int) -> tuple[int, int]:
    n1 = 2 - 2 * c + n3 + 2 * n4
    n2 = 2 * c + n - 2 - 2 * n3 - 3 * n4
    if n1 < 0 or n2 < 0 or n3 < 0 or n4 < 0:
        raise InfeasibleError(f"infeasible degree-count combination c={c} n={n} n3={n3} n4={n4}")
    return n1, n2


def s_chemical_tree(n: int, n3: int, n4: int) -> Fraction:
    if n < 2:
        raise InfeasibleError("need n >= 2")
    n1_n2_from_identity(0, n, n3, n4)
    return Fraction(4 * (n - 2), n) + Fraction(n - 2, n) * (2 * n3 + 4 * n4)


def s_unicyclic_chemical(n3: int, n4: int) -> Fraction:
    if n3 < 0 or n4 < 0:
        raise InfeasibleError(f"negative counts n3={n3} n4={n4}")
    return Fraction(2 * n3 + 4 * n4)


def s_chemical(n: int, c: int, n3: int, n4: int) -> Fraction:
    """Deviation of an (n, c)-chemical graph with ``c >= 2``.

    Below ``n > 2c - 2`` the average degree is under 3, so degree-3 vertices sit
    above it; otherwise only degree-4 vertices do.
    """
    if c < 2:
        raise InfeasibleError(f"c={c}: use the tree or unicyclic formula")
    if c > n + 1:
        raise InfeasibleError(f"c={c} exceeds n+1={n + 1}")
    n1_n2_from_identity(c, n, n3, n4)
    if n > 2 * c - 2:
        return Fraction((2 * n - 4 * c + 4) * n3 + (4 * n - 4 * c + 4) * n4, n)
    return Fraction(4 * (n - c + 1) * n4, n)


def s_from_counts(counts: ChemicalCounts) -> Fraction:
    """Dispatch to the formula matching the cyclomatic number."""
    if counts.c == 0:
        return s_chemical_tree(counts.n, counts.n3, counts.n4)
    if counts.c == 1:
        return s_unicyclic_chemical(counts.n3, counts.n4)
    return s_chemical(counts.n, counts.c, counts.n3, counts.n4)


def is_feasible(n: int, c: int) -> bool:
    m = n + c - 1
    return n >= 3 and c >= 0 and m <= min(MAX_DEGREE * n // 2, n * (n - 1) // 2)


def random_chemical_graph(n: int, c: int, seed: int) -> Graph:
    """Connected graph with ``n + c - 1`` edges and max degree 4, reproducible from ``seed``.

    Grows a random tree by attachment under the degree cap, then adds ``c``
    edges uniformly among eligible non-adjacent pairs; restarts on dead ends.
    """
    if not is_feasible(n, c):
        raise InfeasibleError(f"no connected chemical graph with n={n}, c={c}")
    rng = random.Random(seed)
    for _ in range(MAX_ATTEMPTS):
        g = _attempt(n, c, rng)
        if g is not None:
            return g
    raise GraphError(f"sampler gave up after {MAX_ATTEMPTS} attempts (n={n}, c={c})")


def _attempt(n: int, c: int, rng: random.Random) -> Graph | None:
    order = list(range(n))
    rng.shuffle(order)
    deg = [0] * n
    edges = set()
    for idx in range(1, n):
        v = order[idx]
        open_ = [u for u in order[:idx] if deg[u] < MAX_DEGREE]
        u = rng.choice(open_)
        edges.add((min(u, v), max(u, v)))
        deg[u] += 1
        deg[v] += 1
    for _ in range(c):
        open_ = [v for v in range(n) if deg[v] < MAX_DEGREE]
        cand = [e for e in itertools.combinations(open_, 2) if e not in edges]
        if not cand:
            return None
        u, v = rng.choice(cand)
        edges.add((u, v))
        deg[u] += 1
        deg[v] += 1
    return make_graph(n, sorted(edges))


def check_graph(g: Graph) -> str | None:
    """Every degree-count identity and formula on one chemical graph; a message on failure."""
    counts = degree_counts(g)
    n1, n2 = 2 - 2 * counts.c + counts.n3 + 2 * counts.n4, 2 * counts.c + counts.n - 2 - 2 * counts.n3 - 3 * counts.n4
    if (n1, n2) != (counts.n1, counts.n2):
        return f"count identity: observed (n1,n2)=({counts.n1},{counts.n2}), identity gives ({n1},{n2})"
    if counts.c > counts.n + 1:
        return f"cyclomatic number {counts.c} exceeds n+1"
    observed = Fraction(scaled_deviation(g), g.n)
    predicted = s_from_counts(counts)
    if observed != predicted:
        return f"deviation: observed {observed}, formula gives {predicted} for {counts}"
    if counts.c == 0:
        floor = 4 * (g.n - 2)
        ns = scaled_deviation(g)
        if ns < floor or (ns == floor) != (max(g.degrees()) <= 2):
            return f"tree lower bound: n*s={ns}, bound {floor}, max degree {max(g.degrees())}"
    if counts.c >= 2 and g.n == 2 * counts.c - 2:
        a = Fraction((2 * g.n - 4 * counts.c + 4) * counts.n3 + (4 * g.n - 4 * counts.c + 4) * counts.n4, g.n)
        b = Fraction(4 * (g.n - counts.c + 1) * counts.n4, g.n)
        if a != b:
            return f"branch formulas disagree at n = 2c - 2: {a} vs {b}"
    return None


def check_counts_vectorised(n: int, degrees: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Boolean mask of rows (connected chemical graphs) where some identity or formula fails.

    Works in ``n * s`` integer units throughout.
    """
    cnt = [(degrees == i).sum(axis=1) for i in range(1, MAX_DEGREE + 1)]
    n1, n2, n3, n4 = cnt
    c = m - n + 1
    bad = (n1 != 2 - 2 * c + n3 + 2 * n4) | (n2 != 2 * c + n - 2 - 2 * n3 - 3 * n4) | (c > n + 1)
    ns = np.abs(n * degrees - 2 * m[:, None]).sum(axis=1)
    tree = 4 * (n - 2) + (n - 2) * (2 * n3 + 4 * n4)
    uni = n * (2 * n3 + 4 * n4)
    low = (2 * n - 4 * c + 4) * n3 + (4 * n - 4 * c + 4) * n4
    high = 4 * (n - c + 1) * n4
    predicted = np.where(c == 0, tree, np.where(c == 1, uni, np.where(n > 2 * c - 2, low, high)))
    bad |= ns != predicted
    is_tree = c == 0
    path = degrees.max(axis=1) <= 2
    bad |= is_tree & ((ns < 4 * (n - 2)) | ((ns == 4 * (n - 2)) != path))
    boundary = (c >= 2) & (n == 2 * c - 2)
    bad |= boundary & (low != high)
    return bad


def prufer_tree_degrees(n: int, chunk: int = 1 << 20):
    """Degree arrays of all labeled trees on ``n >= 2`` vertices, in chunks, via Pruefer codes."""
    if n < 2:
        raise GraphError("need n >= 2")
    if n == 2:
        yield np.ones((1, 2), dtype=np.int64)
        return
    total = n ** (n - 2)
    powers = n ** np.arange(n - 2, dtype=np.int64)
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // powers) % n
        deg = np.ones((idx.size, n), dtype=np.int64)
        for col in range(n - 2):
            np.add.at(deg, (np.arange(idx.size), digits[:, col]), 1)
        yield deg


@dataclass
class TreeBoundSummary:
    n: int
    chemical_trees: int
    paths: int
    minimum_n_s: int


def verify_tree_bound(n: int) -> TreeBoundSummary | str:
    """Lower bound ``n*s >= 4(n-2)`` over every labeled chemical tree, equality only on paths.

    Returns a failure message instead of a summary if some tree breaks it.
    """
    trees = paths = 0
    minimum = None
    for deg in prufer_tree_degrees(n):
        deg = deg[deg.max(axis=1) <= MAX_DEGREE]
        ns = np.abs(n * deg - 2 * (n - 1)).sum(axis=1)
        is_path = deg.max(axis=1) <= 2
        floor = 4 * (n - 2)
        if (ns < floor).any() or ((ns == floor) != is_path).any():
            bad = int(np.flatnonzero((ns < floor) | ((ns == floor) != is_path))[0])
            return f"tree bound fails for degree sequence {deg[bad].tolist()}"
        trees += deg.shape[0]
        paths += int(is_path.sum())
        lo = int(ns.min()) if ns.size else None
        minimum = lo if minimum is None else min(minimum, lo)
    return TreeBoundSummary(n, trees, paths, minimum)


def sample_seeds(seed: int, n: int, c: int, samples: int) -> list[int]:
    return np.random.SeedSequence([seed, n, c]).generate_state(samples, dtype=np.uint64).tolist()


@dataclass
class ChemicalReport:
    exhaustive_graphs: int = 0
    sampled_graphs: int = 0
    trees_checked: int = 0
    high_branch: int = 0
    low_branch: int = 0
    failure: str | None = None
    witness: Graph | None = None


def verify_exhaustive(n_max: int, report: ChemicalReport) -> ChemicalReport:
    """All connected chemical graphs with ``2 <= n <= n_max`` from the mask sweep."""
    from degdev.enumeration import sweep_blocks

    for n in range(2, n_max + 1):
        def visit(blk, n=n):
            if report.failure:
                return
            chem = blk.degrees.max(axis=1) <= MAX_DEGREE
            deg, m, masks = blk.degrees[chem], blk.m[chem], blk.masks[chem]
            bad = check_counts_vectorised(n, deg, m)
            if bad.any():
                g = Graph.from_mask(n, int(masks[np.flatnonzero(bad)[0]]))
                report.failure, report.witness = check_graph(g) or "vectorised check failed", g
                return
            c = m - n + 1
            report.exhaustive_graphs += int(chem.sum())
            report.high_branch += int(((c >= 2) & (n <= 2 * c - 2)).sum())
            report.low_branch += int(((c >= 2) & (n > 2 * c - 2)).sum())
        sweep_blocks(n, visit)
        if report.failure:
            break
    return report


def verify_sampled(n_min: int, n_max: int, c_min: int, c_max: int, samples: int, seed: int,
                   report: ChemicalReport) -> ChemicalReport:
    for n in range(max(3, n_min), n_max + 1):
        for c in range(c_min, min(c_max, n + 1) + 1):
            if not is_feasible(n, c):
                continue
            for s in sample_seeds(seed, n, c, samples):
                g = random_chemical_graph(n, c, s)
                problem = check_graph(g)
                if problem is not None:
                    report.failure, report.witness = problem, g
                    return report
                report.sampled_graphs += 1
                if c >= 2:
                    if n > 2 * c - 2:
                        report.low_branch += 1
                    else:
                        report.high_branch += 1
    return report


def verify_chemical(n_min: int = 3, n_max: int = 20, c_min: int = 0, c_max: int = 21,
                    samples: int = 1000, seed: int = 0, exhaustive_n: int = 7,
                    tree_n: int = 9) -> ChemicalReport:
    """Exhaustive sweep, random samples, and the Pruefer tree-bound check."""
    report = ChemicalReport()
    verify_exhaustive(exhaustive_n, report)
    if report.failure:
        return report
    verify_sampled(n_min, n_max, c_min, c_max, samples, seed, report)
    if report.failure:
        return report
    for n in range(2, tree_n + 1):
        res = verify_tree_bound(n)
        if isinstance(res, str):
            report.failure = res
            return report
        report.trees_checked += res.chemical_trees
    return report
