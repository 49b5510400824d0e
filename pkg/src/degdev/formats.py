"""Edge-list text format and graph6 encoding.

Edge list::

    <n> <m>
    <u> <v>        (m lines, 0 <= u < v < n)

Lines starting with ``#`` are comments and are skipped on input.
"""

from __future__ import annotations

from fractions import Fraction

from degdev.graph import Graph, GraphError, make_graph, pairs


class FormatError(GraphError):
    """Malformed edge-list or graph6 input."""


def _ints(line: str, lineno: int, count: int) -> list[int]:
    parts = line.split(" ")
    if len(parts) != count or not all(p.isdigit() for p in parts):
        raise FormatError(f"line {lineno}: expected {count} non-negative integers, got {line!r}")
    return [int(p) for p in parts]


def parse_edge_list(text: str) -> Graph:
    lines = [
        (i, ln.rstrip("\r"))
        for i, ln in enumerate(text.split("\n"), start=1)
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise FormatError("empty edge list")
    lineno, header = lines[0]
    n, m = _ints(header, lineno, 2)
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"header declares m={m} but {len(body)} edge lines follow")
    edges = []
    for lineno, ln in body:
        u, v = _ints(ln, lineno, 2)
        if u >= v:
            raise FormatError(f"line {lineno}: need u < v, got ({u}, {v})")
        if v >= n:
            raise FormatError(f"line {lineno}: vertex {v} out of range for n={n}")
        edges.append((u, v))
    try:
        return make_graph(n, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc


def format_edge_list(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def _n_bytes(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def to_graph6(g: Graph) -> str:
    bits = [1 if g.has_edge(i, j) else 0 for i, j in pairs(g.n)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(
        63 + int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6)
    )
    return (_n_bytes(g.n) + body).decode("ascii")


def from_graph6(line: str) -> Graph:
    data = line.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    raw = data.encode("ascii")
    if not raw or any(c < 63 or c > 126 for c in raw):
        raise FormatError(f"not a graph6 string: {line!r}")
    vals = [c - 63 for c in raw]
    if vals[0] < 63:
        n, rest = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] < 63:
        n, rest = (vals[1] << 12) | (vals[2] << 6) | vals[3], vals[4:]
    elif len(vals) >= 8:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        rest = vals[8:]
    else:
        raise FormatError(f"truncated graph6 size field: {line!r}")
    nbits = n * (n - 1) // 2
    if len(rest) != (nbits + 5) // 6:
        raise FormatError(f"graph6 body has {len(rest)} bytes, expected {(nbits + 5) // 6} for n={n}")
    edges = []
    for b, (i, j) in enumerate(pairs(n)):
        if rest[b // 6] >> (5 - b % 6) & 1:
            edges.append((i, j))
    return make_graph(n, edges)


def read_graph(text: str) -> Graph:
    """Parse an edge list, or a graph6 line when the first content line is not numeric."""
    for ln in text.split("\n"):
        s = ln.strip()
        if not s or s.startswith("#"):
            continue
        if s[0].isdigit():
            return parse_edge_list(text)
        return from_graph6(s)
    raise FormatError("no graph found in input")


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"
