"""Split-graph families, their closed-form deviations, and optimal clique sizes.

Closed forms are checked against direct computation on constructed graphs;
the literature versions (``printed_*``) are kept alongside so that every
divergence can be written to a discrepancy report instead of trusted.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from degdev.graph import Graph, GraphError, deviation, make_graph


class Attachment(enum.Enum):
    BALANCED = "balanced"
    CONCENTRATED = "concentrated"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class AttachmentPattern:
    mode: Attachment = Attachment.BALANCED
    explicit_anchors: tuple[int, ...] | None = None

    def anchors(self, n: int, k: int) -> tuple[int, ...]:
        """Clique anchor for each stable vertex ``k..n-1``, in order."""
        if self.mode is Attachment.BALANCED:
            return tuple(i % k for i in range(n - k))
        if self.mode is Attachment.CONCENTRATED:
            return (0,) * (n - k)
        anchors = self.explicit_anchors
        if anchors is None or len(anchors) != n - k:
            raise GraphError(f"explicit attachment needs {n - k} anchors, got {anchors!r}")
        for a in anchors:
            if not 0 <= a < k:
                raise GraphError(f"anchor {a} is not a clique vertex (clique is 0..{k - 1})")
        return tuple(anchors)


BALANCED = AttachmentPattern(Attachment.BALANCED)
CONCENTRATED = AttachmentPattern(Attachment.CONCENTRATED)


def explicit(anchors: Sequence[int]) -> AttachmentPattern:
    return AttachmentPattern(Attachment.EXPLICIT, tuple(anchors))


def complete_split(n: int, k: int) -> Graph:
    """CS(n, k): clique ``0..k-1`` joined to every vertex of the stable set ``k..n-1``."""
    if not 0 <= k <= n:
        raise GraphError(f"clique size k={k} out of range 0..{n}")
    full, clique = (1 << n) - 1, (1 << k) - 1
    rows = tuple(full & ~(1 << v) if v < k else clique for v in range(n))
    return Graph._from_rows(n, rows)


def pendant_split(n: int, k: int, attachment: AttachmentPattern = BALANCED) -> Graph:
    """S^1(n, k): clique ``0..k-1``; every stable vertex hangs off one clique anchor."""
    if not 1 <= k <= n - 1:
        raise GraphError(f"clique size k={k} out of range 1..{n - 1}")
    anchors = attachment.anchors(n, k)
    clique = (1 << k) - 1
    rows = [clique & ~(1 << v) for v in range(k)] + [1 << a for a in anchors]
    for i, a in enumerate(anchors):
        rows[a] |= 1 << (k + i)
    return Graph._from_rows(n, tuple(rows))


def make_path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return make_graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def s_complete_split(n: int, k: int) -> Fraction:
    if n < 1 or not 0 <= k <= n:
        raise GraphError(f"clique size k={k} out of range 0..{n}")
    return Fraction(2 * k * (n - k) * (n - 1 - k), n)


def balanced_is_valid(n: int, k: int) -> bool:
    """No clique vertex of balanced S^1(n, k) falls strictly below the average degree."""
    two_m = k * (k - 1) + 2 * (n - k)
    return n * (k - 1 + (n - k) // k) >= two_m


def s_pendant_split(n: int, k: int) -> Fraction:
    if n < 2 or not 1 <= k <= n - 1:
        raise GraphError(f"clique size k={k} out of range 1..{n - 1}")
    if not balanced_is_valid(n, k):
        raise GraphError(f"balanced S1({n},{k}) has a clique vertex below average degree")
    return Fraction(2 * (k * k - 3 * k + n) * (n - k), n)


def printed_s_complete_split(n: int, k: int) -> Fraction:
    return Fraction(n, 2) * k * (n - k) * (n - 1 - k)


def printed_s_pendant_split(n: int, k: int) -> Fraction:
    return Fraction(2, n) * (3 * k - k * k - n) * (n - k)


def _argmax(values: dict[int, Fraction]) -> tuple[int, ...]:
    best = max(values.values())
    return tuple(sorted(k for k, v in values.items() if v == best))


def optimal_k_complete_split(n: int) -> tuple[int, ...]:
    if n < 3:
        raise GraphError(f"need n >= 3, got {n}")
    return _argmax({k: s_complete_split(n, k) for k in range(1, n)})


def pendant_range(n: int) -> range:
    # clique sizes strictly between 1 and n - 1
    return range(2, n - 1)


def optimal_k_pendant_split(n: int) -> tuple[int, ...]:
    if n < 4:
        raise GraphError(f"need n >= 4, got {n}")
    return _argmax({k: s_pendant_split(n, k) for k in pendant_range(n) if balanced_is_valid(n, k)})


def printed_optimal_k_complete_split(n: int) -> tuple[int, ...]:
    r = n % 3
    if r == 0:
        return (n // 3,)
    if r == 1:
        return ((n - 1) // 3,)
    return ((n - 2) // 3, (n + 1) // 3)


def printed_optimal_k_pendant_split(n: int) -> tuple[int, ...]:
    if n == 5:
        return (1, 2)
    r = n % 3
    if r == 0:
        return (2 * n // 3,)
    if r == 1:
        return (2 * (n - 1) // 3,)
    return (2 * (n + 1) // 3,)


def printed_family_gap(n: int) -> Fraction:
    r = n % 3
    if r == 0:
        return Fraction(2 * n, 9)
    if r == 1:
        return Fraction(2, 9) * Fraction((n + 2) ** 2 - 18, n)
    return Fraction(2, 9) * Fraction((n + 4) * (n - 2), n)


@dataclass(frozen=True)
class FamilyComparison:
    n: int
    lam: Fraction
    mu: Fraction
    difference: Fraction
    lambda_witness_k: tuple[int, ...]
    mu_witness_k: tuple[int, ...]
    printed_difference: Fraction

    @property
    def agrees_with_print(self) -> bool:
        return self.difference == self.printed_difference


def compare_family_maxima(n: int) -> FamilyComparison:
    """Best complete split (k in 1..n-2) against best balanced pendant split."""
    if n < 4:
        raise GraphError(f"need n >= 4, got {n}")
    cs = {k: s_complete_split(n, k) for k in range(1, n - 1)}
    s1 = {k: s_pendant_split(n, k) for k in pendant_range(n) if balanced_is_valid(n, k)}
    lam_k, mu_k = _argmax(cs), _argmax(s1)
    lam, mu = cs[lam_k[0]], s1[mu_k[0]]
    return FamilyComparison(n, lam, mu, lam - mu, lam_k, mu_k, printed_family_gap(n))


def _partitions(total: int, parts: int, cap: int | None = None):
    """Non-increasing tuples of exactly ``parts`` non-negative ints summing to ``total``."""
    cap = total if cap is None else cap
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, cap), -1, -1):
        if first * parts < total:
            break
        for rest in _partitions(total - first, parts - 1, first):
            yield (first, *rest)


def max_pendant_split_any_attachment(n: int, k: int) -> tuple[Fraction, tuple[int, ...]]:
    """Largest s over all S^1(n, k), whatever the attachment; returns (s, pendant counts)."""
    if not 1 <= k <= n - 1:
        raise GraphError(f"clique size k={k} out of range 1..{n - 1}")
    two_m = k * (k - 1) + 2 * (n - k)
    best, arg = Fraction(-1), ()
    for counts in _partitions(n - k, k):
        n_s = sum(abs(n * (k - 1 + c) - two_m) for c in counts) + (n - k) * abs(n - two_m)
        if n_s > best * n:
            best, arg = Fraction(n_s, n), counts
    return best, arg


@dataclass(frozen=True)
class Discrepancy:
    context: str
    n: int
    k: str
    paper_value: str
    computed_value: str

    @property
    def agrees(self) -> bool:
        return self.paper_value == self.computed_value


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _kset(ks: Iterable[int]) -> str:
    return ";".join(str(k) for k in ks)


def closed_form_rows(n_values: Iterable[int]) -> list[Discrepancy]:
    """Literature formulas against direct computation on constructed graphs."""
    rows = []
    for n in n_values:
        for k in range(0, n + 1):
            rows.append(Discrepancy(
                "complete_split_closed_form", n, str(k),
                _frac(printed_s_complete_split(n, k)), _frac(deviation(complete_split(n, k))),
            ))
        for k in range(1, n):
            if n >= 4 and balanced_is_valid(n, k):
                rows.append(Discrepancy(
                    "pendant_split_closed_form", n, str(k),
                    _frac(printed_s_pendant_split(n, k)), _frac(deviation(pendant_split(n, k))),
                ))
    return rows


def optimum_rows(n_values: Iterable[int]) -> list[Discrepancy]:
    rows = []
    for n in n_values:
        if n >= 3:
            rows.append(Discrepancy(
                "complete_split_optimal_k", n, "",
                _kset(printed_optimal_k_complete_split(n)), _kset(optimal_k_complete_split(n)),
            ))
        if n >= 4:
            rows.append(Discrepancy(
                "pendant_split_optimal_k", n, "",
                _kset(printed_optimal_k_pendant_split(n)), _kset(optimal_k_pendant_split(n)),
            ))
            cmp = compare_family_maxima(n)
            rows.append(Discrepancy(
                "family_gap", n, "", _frac(cmp.printed_difference), _frac(cmp.difference),
            ))
    return rows


def discrepancy_csv(rows: Iterable[Discrepancy]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["context", "n", "k", "paper_value", "computed_value"])
    for r in rows:
        w.writerow([r.context, r.n, r.k, r.paper_value, r.computed_value])
    return buf.getvalue()
