"""Text formats: edge lists, graph6, coloring files and rooted-forest files.

Edge list::

    n m
    u v        (m lines, 0 <= u < v < n)

Coloring file: ``n`` lines, line ``i`` holds the positive color of vertex ``i``.
Forest file: a ``roots u1 u2 ...`` line followed by an edge list.
"""

from __future__ import annotations

from pathlib import Path

from .errors import FormatError
from .graph import ForestSpec, Graph, ProperColoring


def write_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"line {lineno}: expected an integer, got {tok!r}") from None


def read_edgelist(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty edge list")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError("first line must be 'n m'")
    n, m = (_parse_int(t, 1) for t in head)
    if n < 0 or m < 0:
        raise FormatError("n and m must be nonnegative")
    if len(lines) - 1 != m:
        raise FormatError(f"header declares {m} edges, found {len(lines) - 1} lines")
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'u v'")
        u, v = (_parse_int(t, lineno) for t in parts)
        if not 0 <= u < v < n:
            raise FormatError(f"line {lineno}: need 0 <= u < v < n, got {u} {v}")
        edges.append((u, v))
    try:
        return Graph(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# graph6 -----------------------------------------------------------------


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def write_graph6(g: Graph) -> bytes:
    """graph6 encoding without header or trailing newline."""
    out = bytearray(_encode_n(g.n))
    rows = g.rows
    acc = nbits = 0
    for j in range(1, g.n):
        row = rows[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def read_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data or any(not 63 <= b <= 126 for b in data):
        raise FormatError("graph6 bytes must lie in 63..126")
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) > 1 and data[1] != 126:
        if len(data) < 4:
            raise FormatError("truncated graph6 size field")
        n = sum((data[k] - 63) << s for k, s in zip((1, 2, 3), (12, 6, 0)))
        pos = 4
    else:
        if len(data) < 8:
            raise FormatError("truncated graph6 size field")
        n = sum((data[k] - 63) << s for k, s in zip(range(2, 8), (30, 24, 18, 12, 6, 0)))
        pos = 8
    nbits = n * (n - 1) // 2
    body = data[pos:]
    if len(body) != (nbits + 5) // 6:
        raise FormatError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    if nbits % 6 and (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1):
        raise FormatError("nonzero padding bits in graph6 body")
    return Graph(n, edges)


# colorings and forests ----------------------------------------------------


def write_coloring(c: ProperColoring) -> str:
    return "".join(f"{x}\n" for x in c.colors)


def read_coloring(text: str, g: Graph) -> ProperColoring:
    vals = [_parse_int(t, i + 1) for i, t in enumerate(ln for ln in text.splitlines() if ln.strip())]
    try:
        return ProperColoring(g, vals)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_forest(text: str) -> ForestSpec:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].split()[0] != "roots":
        raise FormatError("forest file must start with a 'roots ...' line")
    roots = tuple(_parse_int(t, 1) for t in lines[0].split()[1:])
    g = read_edgelist("\n".join(lines[1:]))
    try:
        return ForestSpec(g.n, tuple(g.edges()), roots)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_forest(spec: ForestSpec) -> str:
    head = "roots " + " ".join(map(str, spec.roots)) + "\n"
    return head + write_edgelist(spec.graph())


def load_graph(path: str | Path) -> Graph:
    """Read a graph file, sniffing graph6 (single token) vs edge list."""
    raw = Path(path).read_bytes()
    text = raw.decode("ascii", errors="strict").strip()
    if len(text.split()) == 1:
        return read_graph6(text)
    return read_edgelist(text)
