"""Exhaustive sweeps over labeled connected graphs, encoded as upper-triangle edge masks.

The mask space ``[0, 2^(n(n-1)/2))`` is cut into contiguous blocks. Each block
is processed with vectorised numpy bit arithmetic and reduced to a partial
result; partials merge associatively, so serial and threaded sweeps agree.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

from degdev.ascent import AscentError, AscentTrace, ascend
from degdev.families import (
    Discrepancy,
    closed_form_rows,
    complete_split,
    optimal_k_complete_split,
    optimum_rows,
    s_complete_split,
)
from degdev.formats import format_edge_list
from degdev.graph import Graph, GraphError, is_connected, pairs, scaled_deviation
from degdev.measures import sandwich, spectral_radius_batch

MAX_N = 8
EXPERIMENTAL_N = 9
BLOCK = 1 << 20
CHECKPOINT_EVERY = 1 << 30

# labeled connected graphs on n vertices, n = 1..8
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 4, 4: 38, 5: 728, 6: 26704, 7: 1866256, 8: 251548592}


def _check_n(n: int, experimental: bool) -> None:
    top = EXPERIMENTAL_N if experimental else MAX_N
    if not 1 <= n <= top:
        raise GraphError(f"n={n} outside supported range 1..{top}")


@dataclass
class Block:
    """Connected graphs found in one mask range."""

    n: int
    masks: np.ndarray    # (B,) int64
    degrees: np.ndarray  # (B, n) int64
    m: np.ndarray        # (B,) int64

    @property
    def scaled(self) -> np.ndarray:
        return np.abs(self.n * self.degrees - 2 * self.m[:, None]).sum(axis=1)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((len(self.masks), self.n, self.n))
        for b, (i, j) in enumerate(pairs(self.n)):
            bit = (self.masks >> b) & 1
            a[:, i, j] = a[:, j, i] = bit
        return a


def connected_block(n: int, start: int, stop: int) -> Block:
    masks = np.arange(start, stop, dtype=np.int64)
    deg = np.zeros((n, masks.size), dtype=np.int64)
    adj = np.zeros((n, masks.size), dtype=np.int64)
    for b, (i, j) in enumerate(pairs(n)):
        bit = (masks >> b) & 1
        deg[i] += bit
        deg[j] += bit
        adj[i] |= bit << j
        adj[j] |= bit << i
    m = deg.sum(axis=0) // 2
    if n > 1:
        keep = (m >= n - 1) & (deg.min(axis=0) > 0)
        masks, deg, adj, m = masks[keep], deg[:, keep], adj[:, keep], m[keep]
    full = (1 << n) - 1
    seen = np.ones(masks.size, dtype=np.int64)
    for _ in range(n - 1):
        nxt = seen.copy()
        for v in range(n):
            nxt |= np.where((seen >> v) & 1 == 1, adj[v], 0)
        if np.array_equal(nxt, seen):
            break
        seen = nxt
    keep = seen == full
    return Block(n, masks[keep], deg[:, keep].T.copy(), m[keep])


def _ranges(total: int, block: int, start: int = 0) -> list[tuple[int, int]]:
    return [(lo, min(lo + block, total)) for lo in range(start, total, block)]


def enumerate_connected(n: int, experimental: bool = False) -> Iterator[Graph]:
    """Every labeled connected graph on ``n`` vertices, in increasing mask order."""
    _check_n(n, experimental)
    total = 1 << (n * (n - 1) // 2)
    for lo, hi in _ranges(total, BLOCK):
        for mask in connected_block(n, lo, hi).masks.tolist():
            yield Graph.from_mask(n, mask)


def count_connected(n: int, experimental: bool = False) -> int:
    _check_n(n, experimental)
    total = 1 << (n * (n - 1) // 2)
    return sum(connected_block(n, lo, hi).masks.size for lo, hi in _ranges(total, BLOCK))


@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


@lru_cache(maxsize=4096)
def canonical_mask(n: int, mask: int) -> int:
    """Smallest edge mask over all vertex relabelings."""
    perms = _perm_table(n)
    out = np.zeros(len(perms), dtype=np.int64)
    for b, (i, j) in enumerate(pairs(n)):
        if mask >> b & 1:
            pi, pj = perms[:, i], perms[:, j]
            hi, lo = np.maximum(pi, pj), np.minimum(pi, pj)
            out |= np.left_shift(1, hi * (hi - 1) // 2 + lo)
    return int(out.min())


@dataclass(frozen=True)
class Partial:
    best: int
    witnesses: tuple[int, ...]

    def merge(self, other: Partial) -> Partial:
        if self.best > other.best:
            return self
        if other.best > self.best:
            return other
        return Partial(self.best, tuple(sorted(self.witnesses + other.witnesses)))


EMPTY = Partial(-1, ())


def _max_block(n: int, lo: int, hi: int) -> Partial:
    blk = connected_block(n, lo, hi)
    if blk.masks.size == 0:
        return EMPTY
    s = blk.scaled
    best = int(s.max())
    return Partial(best, tuple(blk.masks[s == best].tolist()))


def write_checkpoint(path: Path, n: int, next_mask: int, part: Partial) -> None:
    tmp = Path(str(path) + ".tmp")
    tmp.write_text(" ".join(map(str, [n, next_mask, part.best, *part.witnesses])) + "\n")
    tmp.replace(path)


def read_checkpoint(path: Path) -> tuple[int, int, Partial]:
    fields = [int(x) for x in Path(path).read_text().split()]
    if len(fields) < 3:
        raise GraphError(f"malformed checkpoint {path}")
    n, nxt, best, *wit = fields
    return n, nxt, Partial(best, tuple(wit))


def sweep_max(
    n: int,
    threads: int = 1,
    experimental: bool = False,
    checkpoint: Path | None = None,
    checkpoint_every: int = CHECKPOINT_EVERY,
) -> Partial:
    """Maximum ``n * s`` over connected graphs and every labeled mask attaining it."""
    _check_n(n, experimental)
    total = 1 << (n * (n - 1) // 2)
    start, acc = 0, EMPTY
    if checkpoint is not None and Path(checkpoint).exists():
        cn, start, acc = read_checkpoint(checkpoint)
        if cn != n:
            raise GraphError(f"checkpoint is for n={cn}, not n={n}")
    block = min(BLOCK, checkpoint_every)
    segments = _ranges(total, checkpoint_every, start)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        for seg_lo, seg_hi in segments:
            parts = pool.map(lambda r: _max_block(n, *r), _ranges(seg_hi, block, seg_lo))
            for p in parts:
                acc = acc.merge(p)
            if checkpoint is not None:
                write_checkpoint(checkpoint, n, seg_hi, acc)
    return acc


@dataclass(frozen=True)
class ExtremalReport:
    n: int
    max_scaled_deviation: int
    labeled_witness_count: int
    witnesses_up_to_iso: tuple[int, ...]  # canonical masks
    expected: int
    optimal_k: tuple[int, ...]
    conjecture_holds: bool

    def witness_graphs(self) -> list[Graph]:
        return [Graph.from_mask(self.n, m) for m in self.witnesses_up_to_iso]

    def csv_row(self) -> list:
        return [
            self.n, self.max_scaled_deviation, self.expected, self.labeled_witness_count,
            len(self.witnesses_up_to_iso), "true" if self.conjecture_holds else "false",
        ]


REPORT_HEADER = ["n", "max_n_s", "expected_n_s", "labeled_witnesses", "iso_witnesses", "conjecture_holds"]


def report_csv(reports: list[ExtremalReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_HEADER)
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


def max_deviation(n: int, threads: int = 1, experimental: bool = False,
                  checkpoint: Path | None = None, expected_override: int | None = None) -> ExtremalReport:
    if n < 3:
        raise GraphError(f"need n >= 3, got {n}")
    part = sweep_max(n, threads=threads, experimental=experimental, checkpoint=checkpoint)
    canon = tuple(sorted({canonical_mask(n, w) for w in part.witnesses}))
    ks = optimal_k_complete_split(n)
    expected = n * s_complete_split(n, ks[0])
    assert expected.denominator == 1
    expected = int(expected) if expected_override is None else expected_override
    cs_canon = {canonical_mask(n, complete_split(n, k).to_mask()) for k in ks}
    holds = part.best == expected and set(canon) <= cs_canon
    return ExtremalReport(n, part.best, len(part.witnesses), canon, expected, ks, holds)


@dataclass(frozen=True)
class VerificationFailure:
    context: str
    witness: Graph
    details: str
    report: ExtremalReport | None = None

    def describe(self) -> str:
        return f"FAIL [{self.context}] {self.details}\n{format_edge_list(self.witness)}"


def verify_conjecture(n: int, threads: int = 1, experimental: bool = False,
                      checkpoint: Path | None = None,
                      expected_override: int | None = None) -> ExtremalReport | VerificationFailure:
    rep = max_deviation(n, threads, experimental, checkpoint, expected_override)
    if rep.conjecture_holds:
        return rep
    ks = set(rep.optimal_k)
    cs_canon = {canonical_mask(n, complete_split(n, k).to_mask()) for k in ks}
    odd = [c for c in rep.witnesses_up_to_iso if c not in cs_canon]
    witness = Graph.from_mask(n, odd[0] if odd else rep.witnesses_up_to_iso[0])
    return VerificationFailure(
        "maximum over connected graphs",
        witness,
        f"n={n}: observed max n*s={rep.max_scaled_deviation}, expected {rep.expected} "
        f"attained only by CS(n,k) for k in {sorted(ks)}; {len(odd)} other witness classes",
        rep,
    )


@dataclass
class AscentSummary:
    n: int
    graphs: int = 0
    steps: int = 0
    max_trace_length: int = 0
    terminal_counts: dict[str, int] = field(default_factory=dict)
    action_counts: dict[str, int] = field(default_factory=dict)


def check_trace(tr: AscentTrace, bound: int) -> str | None:
    """Reason the trace violates an ascent invariant, or ``None``."""
    n = tr.start.n
    if len(tr.steps) > 4 * n ** 3:
        return f"{len(tr.steps)} steps exceeds 4n^3"
    graphs = tr.graphs()
    if graphs[-1] != tr.terminal:
        return "replayed trace does not reach the recorded terminal"
    prev = scaled_deviation(tr.start)
    for st, g in zip(tr.steps, graphs[1:]):
        if st.n_s_before != prev or st.n_s_after != scaled_deviation(g):
            return f"step {st.action} records wrong n*s"
        delta = st.n_s_after - st.n_s_before
        kind = st.action.kind
        if kind == "rewire" and delta != 2 * n:
            return f"rewire changed n*s by {delta}, not {2 * n}"
        if kind in ("bootstrap", "remove_down", "add_up", "complete_cs") and delta <= 0:
            return f"{kind} changed n*s by {delta}"
        if kind == "prune_s1" and delta < 0:
            return f"prune_s1 changed n*s by {delta}"
        if not is_connected(g):
            return f"{kind} produced a disconnected graph"
        prev = st.n_s_after
    fam, term = tr.terminal_family, tr.terminal
    clique = fam.clique
    stable = [v for v in range(n) if v not in clique]
    if fam.kind == "unchanged":
        if not term.is_complete() or tr.steps:
            return "unchanged terminal that is not the complete input"
    else:
        if any(not term.has_edge(u, v) for u, v in itertools.combinations(sorted(clique), 2)):
            return "terminal clique side is not a clique"
        if any(term.has_edge(u, v) for u, v in itertools.combinations(stable, 2)):
            return "terminal stable side is not stable"
        if fam.kind == "complete_split":
            if canonical_mask(n, term.to_mask()) != canonical_mask(n, complete_split(n, fam.k).to_mask()):
                return f"terminal is not isomorphic to CS({n},{fam.k})"
        elif any(term.degree(v) != 1 for v in stable):
            return "pendant terminal has a stable vertex of degree != 1"
    if scaled_deviation(term) > bound:
        return f"terminal n*s={scaled_deviation(term)} exceeds best complete split {bound}"
    return None


def verify_ascent(n: int, samples: int | None = None, seed: int = 0) -> AscentSummary | VerificationFailure:
    """Ascend every connected graph, or ``samples`` uniformly drawn connected labeled graphs."""
    if not 3 <= n <= 7:
        raise GraphError(f"verify_ascent supports 3 <= n <= 7, got {n}")
    bound = int(n * s_complete_split(n, optimal_k_complete_split(n)[0]))
    if samples is None:
        graphs: Iterator[Graph] = enumerate_connected(n)
    else:
        rng = random.Random(seed)
        nbits = n * (n - 1) // 2

        def _sampled():
            # rejection sampling over masks keeps the draw uniform on connected graphs
            drawn = 0
            while drawn < samples:
                g = Graph.from_mask(n, rng.getrandbits(nbits))
                if is_connected(g):
                    drawn += 1
                    yield g
        graphs = _sampled()
    summary = AscentSummary(n)
    for g in graphs:
        try:
            tr = ascend(g)
        except AscentError as exc:
            return VerificationFailure("ascent move contract", exc.graph, str(exc))
        problem = check_trace(tr, bound)
        if problem is not None:
            return VerificationFailure("ascent trace invariant", g, problem)
        summary.graphs += 1
        summary.steps += len(tr.steps)
        summary.max_trace_length = max(summary.max_trace_length, len(tr.steps))
        kind = tr.terminal_family.kind
        summary.terminal_counts[kind] = summary.terminal_counts.get(kind, 0) + 1
        for st in tr.steps:
            summary.action_counts[st.action.kind] = summary.action_counts.get(st.action.kind, 0) + 1
    return summary


@dataclass
class SpectralSummary:
    n: int
    graphs: int
    worst_lower_slack: float
    worst_upper_slack: float
    max_albertson: int


def verify_spectral_bounds(n: int, tolerance: float = 1e-6, block: int = 1 << 17) -> SpectralSummary | VerificationFailure:
    """Spectral sandwich and the Albertson cap ``irr < 4n^3/27`` over all connected graphs."""
    _check_n(n, False)
    if n < 2:
        raise GraphError("need at least one edge")
    total = 1 << (n * (n - 1) // 2)
    count, lo_slack, up_slack, max_irr = 0, math.inf, math.inf, 0
    edge_list = pairs(n)
    for lo, hi in _ranges(total, block):
        blk = connected_block(n, lo, hi)
        if blk.masks.size == 0:
            continue
        mu = spectral_radius_batch(blk.adjacency(), tolerance=min(tolerance * 1e-3, 1e-9))
        s_all = blk.scaled
        irr = np.zeros(blk.masks.size, dtype=np.int64)
        for b, (i, j) in enumerate(edge_list):
            bit = (blk.masks >> b) & 1
            irr += bit * np.abs(blk.degrees[:, i] - blk.degrees[:, j])
        s = s_all / n
        two_m = 2 * blk.m
        lower = s * s / (2 * n * n * np.sqrt(two_m))
        gap = mu - two_m / n
        upper = np.sqrt(s)
        bad = (lower > gap + tolerance) | (gap > upper + tolerance) | (27 * irr >= 4 * n ** 3)
        if bad.any():
            idx = int(np.flatnonzero(bad)[0])
            rep = sandwich(n, int(blk.m[idx]), int(s_all[idx]), float(mu[idx]), tolerance)
            g = Graph.from_mask(n, int(blk.masks[idx]))
            return VerificationFailure("spectral sandwich / Albertson cap", g, f"{rep!r}, irr={int(irr[idx])}")
        lo_slack = min(lo_slack, float((gap - lower).min()))
        up_slack = min(up_slack, float((upper - gap).min()))
        count += blk.masks.size
        max_irr = max(max_irr, int(irr.max()))
    return SpectralSummary(n, count, lo_slack, up_slack, max_irr)


def sweep_blocks(n: int, fn: Callable[[Block], None], block: int = BLOCK) -> None:
    """Call ``fn`` on every block of connected graphs on ``n`` vertices."""
    _check_n(n, False)
    total = 1 << (n * (n - 1) // 2)
    for lo, hi in _ranges(total, block):
        fn(connected_block(n, lo, hi))


def verify_closed_forms(closed_n_max: int = 12, n_max: int = 30) -> list[Discrepancy]:
    """Discrepancy rows: closed forms for ``n <= closed_n_max``, optima and gaps for ``n <= n_max``."""
    return closed_form_rows(range(3, closed_n_max + 1)) + optimum_rows(range(3, n_max + 1))
