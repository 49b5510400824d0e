"""Irregularity measures and the spectral sandwich check on the degree deviation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate

import numpy as np

from degdev.graph import Graph, GraphError, is_connected, scaled_deviation

MAX_ITER = 100_000


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, estimate: float):
        super().__init__(message)
        self.estimate = estimate


def albertson_irregularity(g: Graph) -> int:
    deg = g.degrees()
    return sum(abs(deg[u] - deg[v]) for u, v in g.edges())


def total_irregularity(g: Graph) -> int:
    """Sum of |deg(u) - deg(v)| over unordered vertex pairs, via sorted prefix sums."""
    deg = sorted(g.degrees())
    prefix = [0, *accumulate(deg)]
    # after sorting, deg[i] exceeds each of deg[0..i-1] by deg[i] - deg[j]
    return sum(i * d - prefix[i] for i, d in enumerate(deg))


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1.0
    return a


def spectral_radius(g: Graph, tolerance: float = 1e-9, max_iter: int = MAX_ITER) -> float:
    """Largest adjacency eigenvalue by power iteration from the all-ones vector.

    Iterates with ``A + I`` so the Perron root is strictly dominant even for
    bipartite graphs, where ``-mu`` is also an eigenvalue of ``A``. Stops once
    successive Rayleigh quotients differ by less than ``tolerance``.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if not is_connected(g):
        raise GraphError("spectral_radius requires a connected graph")
    if g.m == 0:
        return 0.0
    a = adjacency_matrix(g)
    x = np.ones(g.n) / math.sqrt(g.n)
    prev = float(x @ a @ x)
    for _ in range(max_iter):
        y = a @ x + x
        x = y / np.linalg.norm(y)
        rq = float(x @ a @ x)
        if abs(rq - prev) < tolerance:
            return rq
        prev = rq
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps", prev)


def spectral_radius_batch(a: np.ndarray, tolerance: float = 1e-9, max_iter: int = MAX_ITER) -> np.ndarray:
    """Vectorised :func:`spectral_radius` over a stack of adjacency matrices ``(B, n, n)``."""
    b, n, _ = a.shape
    x = np.full((b, n), 1.0 / math.sqrt(n))
    prev = np.einsum("bi,bij,bj->b", x, a, x)
    out = np.empty(b)
    active = np.arange(b)
    for _ in range(max_iter):
        if active.size == 0:
            return out
        aa = a[active]
        xa = x[active]
        y = np.einsum("bij,bj->bi", aa, xa) + xa
        y /= np.linalg.norm(y, axis=1, keepdims=True)
        rq = np.einsum("bi,bi->b", y, np.einsum("bij,bj->bi", aa, y))
        done = np.abs(rq - prev[active]) < tolerance
        out[active[done]] = rq[done]
        x[active] = y
        prev[active] = rq
        active = active[~done]
    raise ConvergenceError(
        f"{active.size} power iterations did not converge in {max_iter} steps",
        float(prev[active[0]]),
    )


@dataclass(frozen=True)
class SpectralBoundReport:
    mu: float
    average_degree: Fraction
    lower: float
    gap: float
    upper: float
    holds: bool


def sandwich(n: int, m: int, n_s: int, mu: float, tolerance: float) -> SpectralBoundReport:
    """Check ``s^2 / (2 n^2 sqrt(2m)) <= mu - 2m/n <= sqrt(s)`` within a symmetric band."""
    s = n_s / n
    avg = Fraction(2 * m, n)
    lower = s * s / (2 * n * n * math.sqrt(2 * m))
    gap = mu - float(avg)
    upper = math.sqrt(s)
    holds = lower <= gap + tolerance and gap <= upper + tolerance
    return SpectralBoundReport(mu, avg, lower, gap, upper, holds)


def nikiforov_bounds(g: Graph, tolerance: float = 1e-6) -> SpectralBoundReport:
    if g.m < 1:
        raise GraphError("spectral bounds need at least one edge")
    mu = spectral_radius(g, tolerance=min(tolerance * 1e-3, 1e-9))
    return sandwich(g.n, g.m, scaled_deviation(g), mu, tolerance)
