"""Immutable simple-graph representation and structural primitives.

Vertices are dense integer labels 0..n-1.  Graphs are immutable: every
"mutation" (vertex deletion, rewiring) produces a new Graph, so certificates
can reference vertex sets of the original object safely.  All operations are
deterministic: adjacency is kept sorted and ties are broken toward the
smallest label.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InvalidParameterError


class Graph:
    """Simple undirected graph with vertices 0..n-1 and frozenset adjacency."""

    __slots__ = ("n", "m", "_adj", "_masks")

    def __init__(self, n: int, adj: Sequence[frozenset]):
        # internal constructor; use from_edges / from_adjacency
        self.n = n
        self._adj = tuple(adj)
        deg_sum = sum(len(s) for s in self._adj)
        if deg_sum % 2 != 0:
            raise InvalidParameterError("adjacency is not symmetric: odd degree sum")
        self.m = deg_sum // 2
        self._masks = None

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise InvalidParameterError("vertex count must be nonnegative")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InvalidParameterError(f"self-loop at {u}")
            if v in adj[u]:
                raise InvalidParameterError(f"duplicate edge ({u},{v})")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, [frozenset(s) for s in adj])

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        n = len(adj)
        sets = [frozenset(s) for s in adj]
        for u, s in enumerate(sets):
            if u in s:
                raise InvalidParameterError(f"self-loop at {u}")
            for v in s:
                if not 0 <= v < n:
                    raise InvalidParameterError(f"neighbor {v} out of range")
                if u not in sets[v]:
                    raise InvalidParameterError(f"asymmetric adjacency at ({u},{v})")
        return cls(n, sets)

    # -- queries -----------------------------------------------------------

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def vertices(self) -> range:
        return range(self.n)

    def edges(self):
        """Yield edges as (u, v) with u < v, in sorted order."""
        for u in range(self.n):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield (u, v)

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(len(s) for s in self._adj))

    def min_degree(self) -> int:
        return min((len(s) for s in self._adj), default=0)

    def adjacency_masks(self) -> tuple[int, ...]:
        """Per-vertex neighbor bitmasks (arbitrary n; Python big ints)."""
        if self._masks is None:
            self._masks = tuple(
                sum(1 << v for v in s) for s in self._adj
            )
        return self._masks

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._adj == other._adj
        )

    def __hash__(self):
        return hash((self.n, self._adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Bipartition:
    """A 2-coloring certificate: every edge of the covered subgraph crosses parts.

    Component roots (smallest label per connected component) sit in part 0,
    so the labeling is reproducible.
    """

    part_of: dict
    parts: tuple[frozenset, frozenset]

    def part(self, v: int) -> int:
        return self.part_of[v]

    @property
    def support(self) -> frozenset:
        return self.parts[0] | self.parts[1]

    def verify(self, g: Graph) -> bool:
        sup = self.support
        if self.parts[0] & self.parts[1]:
            return False
        for v in sup:
            pv = self.part_of[v]
            for w in g.neighbors(v):
                if w in sup and self.part_of[w] == pv:
                    return False
        return True


@dataclass(frozen=True)
class VertexMap:
    """Bidirectional label map attached to an induced subgraph."""

    to_sub: dict
    to_orig: tuple


@dataclass(frozen=True)
class BlockDecomposition:
    """Biconnected components, cut vertices, and the block-cut tree.

    ``blocks`` partitions the edge set; bridges appear as 2-vertex blocks and
    isolated vertices as singleton blocks (so every vertex is covered).  The
    block-cut tree is given as (block index, cut vertex) incidences.
    """

    blocks: tuple[frozenset, ...]
    cut_vertices: frozenset
    tree_edges: tuple[tuple[int, int], ...]

    def blocks_at(self, cut: int) -> tuple[int, ...]:
        return tuple(b for b, c in self.tree_edges if c == cut)

    def cuts_in(self, block_index: int) -> tuple[int, ...]:
        return tuple(c for b, c in self.tree_edges if b == block_index)

    def block_containing(self, vertices: Iterable[int]) -> Optional[int]:
        """Index of a block containing all given vertices, or None."""
        want = frozenset(vertices)
        for i, b in enumerate(self.blocks):
            if want <= b:
                return i
        return None


def connected_components(g: Graph, restrict_to: Optional[Iterable[int]] = None):
    """Components as frozensets, ordered by smallest contained label."""
    allowed = set(g.vertices()) if restrict_to is None else set(restrict_to)
    seen = set()
    comps = []
    for root in sorted(allowed):
        if root in seen:
            continue
        comp = {root}
        seen.add(root)
        dq = deque([root])
        while dq:
            x = dq.popleft()
            for y in g.neighbors(x):
                if y in allowed and y not in seen:
                    seen.add(y)
                    comp.add(y)
                    dq.append(y)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph, restrict_to: Optional[Iterable[int]] = None) -> bool:
    allowed = set(g.vertices()) if restrict_to is None else set(restrict_to)
    if not allowed:
        return True
    return len(connected_components(g, allowed)[0]) == len(allowed)


def is_bipartite(
    g: Graph, restrict_to: Optional[Iterable[int]] = None
) -> Optional[Bipartition]:
    """2-color the (induced) graph; None iff an odd cycle exists.

    The smallest label of each connected component gets part 0.
    """
    allowed = set(g.vertices()) if restrict_to is None else set(restrict_to)
    color = {}
    for root in sorted(allowed):
        if root in color:
            continue
        color[root] = 0
        dq = deque([root])
        while dq:
            x = dq.popleft()
            cx = color[x]
            for y in g.neighbors(x):
                if y not in allowed:
                    continue
                if y not in color:
                    color[y] = 1 - cx
                    dq.append(y)
                elif color[y] == cx:
                    return None
    p0 = frozenset(v for v, c in color.items() if c == 0)
    p1 = frozenset(v for v, c in color.items() if c == 1)
    return Bipartition(part_of=color, parts=(p0, p1))


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, VertexMap]:
    """Compact relabeled induced subgraph plus the label map."""
    keep_sorted = sorted(set(keep))
    for v in keep_sorted:
        if not 0 <= v < g.n:
            raise InvalidParameterError(f"vertex {v} not in graph")
    to_sub = {v: i for i, v in enumerate(keep_sorted)}
    keep_set = set(keep_sorted)
    adj = [
        frozenset(to_sub[w] for w in g.neighbors(v) if w in keep_set)
        for v in keep_sorted
    ]
    return Graph(len(keep_sorted), adj), VertexMap(to_sub=to_sub, to_orig=tuple(keep_sorted))


def blocks(g: Graph, restrict_to: Optional[Iterable[int]] = None) -> BlockDecomposition:
    """Biconnected components via iterative Hopcroft-Tarjan.

    Blocks are listed sorted by their minimum contained vertex label.
    """
    allowed = set(g.vertices()) if restrict_to is None else set(restrict_to)
    disc = {}
    low = {}
    parent = {}
    stack = []          # edge stack
    raw_blocks = []
    cuts = set()
    timer = 0

    for root in sorted(allowed):
        if root in disc:
            continue
        if not any(w in allowed for w in g.neighbors(root)):
            disc[root] = timer
            timer += 1
            raw_blocks.append(frozenset([root]))
            continue
        root_children = 0
        disc[root] = low[root] = timer
        timer += 1
        work = [(root, iter(sorted(g.neighbors(root))))]
        while work:
            x, it = work[-1]
            advanced = False
            for y in it:
                if y not in allowed:
                    continue
                if y not in disc:
                    parent[y] = x
                    if x == root:
                        root_children += 1
                    disc[y] = low[y] = timer
                    timer += 1
                    stack.append((x, y))
                    work.append((y, iter(sorted(g.neighbors(y)))))
                    advanced = True
                    break
                elif y != parent.get(x) and disc[y] < disc[x]:
                    stack.append((x, y))
                    if disc[y] < low[x]:
                        low[x] = disc[y]
            if advanced:
                continue
            work.pop()
            if work:
                p = work[-1][0]
                if low[x] < low[p]:
                    low[p] = low[x]
                if low[x] >= disc[p]:
                    # p separates x's subtree: pop one block, (p, x) inclusive
                    comp = set()
                    while True:
                        u, v = stack.pop()
                        comp.add(u)
                        comp.add(v)
                        if (u, v) == (p, x):
                            break
                    raw_blocks.append(frozenset(comp))
                    if p != root or root_children > 1:
                        cuts.add(p)

    order = sorted(range(len(raw_blocks)), key=lambda i: min(raw_blocks[i]))
    blist = tuple(raw_blocks[i] for i in order)
    tree = []
    for i, b in enumerate(blist):
        for c in sorted(b & cuts):
            tree.append((i, c))
    return BlockDecomposition(
        blocks=blist, cut_vertices=frozenset(cuts), tree_edges=tuple(tree)
    )


def is_2_connected(g: Graph, restrict_to: Optional[Iterable[int]] = None) -> bool:
    """True iff the (induced) graph has >= 3 vertices, is connected, and has
    no cut vertex."""
    allowed = set(g.vertices()) if restrict_to is None else set(restrict_to)
    if len(allowed) < 3:
        return False
    if not is_connected(g, allowed):
        return False
    dec = blocks(g, allowed)
    return len(dec.blocks) == 1
