"""Graph file formats: canonical edge-list text and graph6 strings.

Edge-list format: first line ``p <n> <m>``, then m lines ``e <u> <v>`` with
0-indexed endpoints.  The writer always emits canonical form (u < v, lines
sorted by (u, v)); the parser accepts edges in any order but rejects
duplicates, self-loops, and count mismatches.  A graph's digest is the
sha256 of its canonical edge-list bytes.
"""

from __future__ import annotations

import hashlib

from .errors import FormatError, SizeLimitError
from .graph import Graph


def write_edge_list(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    n = None
    m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if n is not None:
                raise FormatError(f"line {lineno}: duplicate header")
            if len(tok) != 3:
                raise FormatError(f"line {lineno}: header must be 'p <n> <m>'")
            try:
                n, m = int(tok[1]), int(tok[2])
            except ValueError as exc:
                raise FormatError(f"line {lineno}: bad header numbers") from exc
        elif tok[0] == "e":
            if n is None:
                raise FormatError(f"line {lineno}: edge before header")
            if len(tok) != 3:
                raise FormatError(f"line {lineno}: edge must be 'e <u> <v>'")
            try:
                u, v = int(tok[1]), int(tok[2])
            except ValueError as exc:
                raise FormatError(f"line {lineno}: bad edge endpoints") from exc
            edges.append((u, v) if u < v else (v, u))
        else:
            raise FormatError(f"line {lineno}: unknown record '{tok[0]}'")
    if n is None:
        raise FormatError("missing 'p <n> <m>' header")
    if m != len(edges):
        raise FormatError(f"header declares {m} edges, found {len(edges)}")
    try:
        return Graph.from_edges(n, edges)
    except Exception as exc:
        raise FormatError(str(exc)) from exc


def graph_digest(g: Graph) -> str:
    return hashlib.sha256(write_edge_list(g).encode("ascii")).hexdigest()


def read_graph_file(path: str) -> Graph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_edge_list(fh.read())


def write_graph_file(g: Graph, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(write_edge_list(g))


# -- graph6 ------------------------------------------------------------------
#
# Standard 6-bit encoding: N(n) = chr(n + 63) for n <= 62, then the upper
# triangle x(0,1), x(0,2), x(1,2), x(0,3), ... packed big-endian into 6-bit
# groups, each + 63.

_G6_MAX = 62


def to_graph6(g: Graph) -> str:
    if g.n > _G6_MAX:
        raise SizeLimitError(f"graph6 writer supports n <= {_G6_MAX}")
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return "".join(chars)


def from_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise FormatError("empty graph6 string")
    if ord(s[0]) == 126:
        raise FormatError("long-form graph6 (n >= 63) not supported")
    n = ord(s[0]) - 63
    if n < 0 or n > _G6_MAX:
        raise FormatError(f"bad graph6 order byte {s[0]!r}")
    need = (n * (n - 1) // 2 + 5) // 6
    body = s[1:]
    if len(body) != need:
        raise FormatError(f"graph6 body length {len(body)}, expected {need}")
    bits = []
    for ch in body:
        val = ord(ch) - 63
        if val < 0 or val > 63:
            raise FormatError(f"bad graph6 byte {ch!r}")
        bits.extend((val >> k) & 1 for k in range(5, -1, -1))
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph.from_edges(n, edges)
