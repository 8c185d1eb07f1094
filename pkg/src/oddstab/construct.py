"""Deterministic builders for the named graph families, plus seeded samplers.

"Suspending" a graph onto another glues them at a single shared vertex.  The
extremal family member is the balanced complete bipartite graph with a
clique suspended at a vertex of its smaller part; the clique is always
identified with the lowest-labeled vertex of that part (part 0 on ties), so
constructions are byte-for-byte reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .cycles import find_cycle_exact
from .errors import InvalidParameterError
from .graph import Graph, induced_subgraph, is_bipartite


def turan(n: int, r: int) -> Graph:
    """Complete r-partite graph on n vertices with near-equal parts.

    Larger parts come first; part 0 contains vertex 0.
    """
    if r < 1 or r > n:
        raise InvalidParameterError(f"need 1 <= r <= n, got r={r}, n={n}")
    q, rem = divmod(n, r)
    sizes = [q + 1] * rem + [q] * (r - rem)
    part_id = []
    for i, s in enumerate(sizes):
        part_id.extend([i] * s)
    adj = []
    starts = []
    acc = 0
    for s in sizes:
        starts.append(acc)
        acc += s
    all_mask = frozenset(range(n))
    for v in range(n):
        i = part_id[v]
        own = frozenset(range(starts[i], starts[i] + sizes[i]))
        adj.append(all_mask - own)
    return Graph(n, adj)


def suspend_clique(base: Graph, attach: int, clique_size: int) -> Graph:
    """New graph: ``base`` plus a clique of ``clique_size`` sharing ``attach``."""
    if clique_size < 1:
        raise InvalidParameterError("clique size must be >= 1")
    n0 = base.n
    extra = clique_size - 1
    edges = list(base.edges())
    new_vs = list(range(n0, n0 + extra))
    for i, v in enumerate(new_vs):
        edges.append((attach, v))
        for w in new_vs[i + 1 :]:
            edges.append((v, w))
    return Graph.from_edges(n0 + extra, edges)


def bipartite_turan_with_clique(n_bip: int, q: int) -> Graph:
    """T_{n_bip,2} with K_q suspended at the lowest vertex of the smaller part."""
    base = turan(n_bip, 2)
    # turan puts the larger part first; the smaller part starts at ceil(n/2)
    smaller_start = (n_bip + 1) // 2
    attach = smaller_start if n_bip % 2 == 1 else 0
    return suspend_clique(base, attach, q)


def extremal_suspension(n: int, r: int) -> Graph:
    """The edge/spectral extremal construction on n vertices for family index r.

    A balanced complete bipartite graph on n-r+1 vertices with K_r suspended
    at a smaller-part vertex.  Edge count: floor((n-r+1)^2/4) + C(r,2).
    """
    if r < 2 or n < r + 2:
        raise InvalidParameterError(f"need r >= 2 and n >= r+2, got n={n}, r={r}")
    return bipartite_turan_with_clique(n - r + 1, r)


def star_suspension_family(n: int, r: int) -> Graph:
    """The maximizer with exactly r-2 vertices outside the bipartite core:
    T_{n-r+2,2} with K_{r-1} suspended at a smaller-part vertex."""
    if r < 3 or n < r + 2:
        raise InvalidParameterError(f"need r >= 3 and n >= r+2, got n={n}, r={r}")
    return bipartite_turan_with_clique(n - r + 2, r - 1)


def c5_blowup(a: int, b: int, c: int) -> Graph:
    """Blow up a 5-cycle into independent sets of sizes 1, 1, a, b, c (in
    cycle order).  Triangle-free and non-bipartite."""
    if min(a, b, c) < 1:
        raise InvalidParameterError("all blow-up sizes must be >= 1")
    sizes = [1, 1, a, b, c]
    starts = []
    acc = 0
    for s in sizes:
        starts.append(acc)
        acc += s
    parts = [list(range(starts[i], starts[i] + sizes[i])) for i in range(5)]
    edges = []
    for i in range(5):
        j = (i + 1) % 5
        for u in parts[i]:
            for v in parts[j]:
                edges.append((u, v) if u < v else (v, u))
    return Graph.from_edges(acc, edges)


@dataclass(frozen=True)
class Piece:
    """A suspended piece: its vertices outside the core, plus the attach vertex."""

    outside: frozenset
    attach: int


@dataclass(frozen=True)
class SuspensionSpec:
    """Ground truth for a sampled suspension-family member.

    The member graph is a bipartite core plus vertex-disjoint pieces, each
    sharing exactly one vertex (the attach vertex) with the core.
    """

    core_vertices: frozenset
    pieces: tuple

    @property
    def outside_count(self) -> int:
        return sum(len(p.outside) for p in self.pieces)

    def core_graph(self, g: Graph):
        return induced_subgraph(g, self.core_vertices)

    def piece_graph(self, g: Graph, i: int):
        p = self.pieces[i]
        return induced_subgraph(g, set(p.outside) | {p.attach})

    def validate(self, g: Graph) -> bool:
        if is_bipartite(g, self.core_vertices) is None:
            return False
        seen = set()
        for p in self.pieces:
            if p.attach not in self.core_vertices:
                return False
            if p.outside & self.core_vertices:
                return False
            if p.outside & seen:
                return False
            seen |= p.outside
            # the piece meets the core only at its attach vertex
            for v in p.outside:
                for w in g.neighbors(v):
                    if w in self.core_vertices and w != p.attach:
                        return False
        covered = self.core_vertices | seen
        return covered == frozenset(g.vertices())


def random_gnr_member(
    n: int,
    r: int,
    seed: int,
    p: float = 0.7,
    exact_outside: bool = False,
    forbid_cycle: Optional[object] = None,
) -> tuple[Graph, SuspensionSpec]:
    """Seeded sampler for the suspension family with at most r-2 outside
    vertices.

    Core: a random balanced bipartite graph on n-t vertices with cross-edge
    probability ``p``, repaired to be connected with min degree >= 2 by extra
    uniform cross edges.  The t <= r-2 outside vertices are grouped into
    random connected pieces, each attached at one random core vertex.  With
    ``exact_outside`` the sampler pins t = r-2; with ``forbid_cycle`` each
    piece is resampled until it avoids that cycle length, so the member graph
    is certifiably free of it (core cycles are even, piece cycles stay inside
    their piece).
    """
    if r < 3 or n < r:
        raise InvalidParameterError(f"need n >= r >= 3, got n={n}, r={r}")
    if not 0.0 < p <= 1.0:
        raise InvalidParameterError("edge probability must be in (0, 1]")
    rng = random.Random(seed)
    t = r - 2 if exact_outside else rng.randint(0, r - 2)
    if n - t < 4:
        t = max(0, n - 4)
    nc = n - t
    labels = list(range(n))
    rng.shuffle(labels)
    core = sorted(labels[:nc])
    outside = sorted(labels[nc:])

    half = nc // 2
    core_shuffled = core[:]
    rng.shuffle(core_shuffled)
    side0 = sorted(core_shuffled[:half])
    side1 = sorted(core_shuffled[half:])
    side0_set = set(side0)

    adj = [set() for _ in range(n)]

    def add(u, v):
        adj[u].add(v)
        adj[v].add(u)

    for u in side0:
        for v in side1:
            if rng.random() < p:
                add(u, v)

    # repair: min cross degree >= 2 within the core
    for x in core:
        other = side1 if x in side0_set else side0
        while len(adj[x]) < 2:
            add(x, other[rng.randrange(len(other))])

    # repair: connect the core with random cross edges between components
    core_set = set(core)
    while True:
        comp = {core[0]}
        stack = [core[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in core_set and y not in comp:
                    comp.add(y)
                    stack.append(y)
        if len(comp) == len(core):
            break
        rest = sorted(core_set - comp)
        a = rng.choice(sorted(comp))
        pool = [y for y in rest if (y in side0_set) != (a in side0_set)]
        if not pool:
            a = rng.choice(rest)
            pool = [y for y in sorted(comp) if (y in side0_set) != (a in side0_set)]
        add(a, rng.choice(pool))

    pieces = []
    remaining = outside[:]
    rng.shuffle(remaining)
    while remaining:
        size = rng.randint(1, len(remaining))
        chunk = sorted(remaining[:size])
        remaining = remaining[size:]
        attach = rng.choice(core)
        for u, v in _random_piece_edges(rng, chunk, attach, forbid_cycle):
            add(u, v)
        pieces.append(Piece(outside=frozenset(chunk), attach=attach))

    g = Graph.from_adjacency(adj)
    spec = SuspensionSpec(core_vertices=frozenset(core), pieces=tuple(pieces))
    assert spec.validate(g)
    return g, spec


def _random_piece_edges(rng, chunk, attach, forbid_cycle):
    """Random connected piece on chunk + attach; resampled (with decaying
    density) until it avoids every forbidden cycle length.  The final
    fallback is the plain random tree, which is acyclic."""
    forbidden = ()
    if forbid_cycle is not None:
        forbidden = (
            tuple(forbid_cycle) if isinstance(forbid_cycle, (tuple, list))
            else (forbid_cycle,)
        )
    verts = [attach] + chunk
    tries = 0
    extra_p = 0.4
    while True:
        es = set()
        for i, v in enumerate(verts[1:], start=1):
            w = verts[rng.randrange(i)]
            es.add((v, w) if v < w else (w, v))
        tree = set(es)
        if tries < 60:
            for i in range(len(verts)):
                for j in range(i + 1, len(verts)):
                    u, v = verts[i], verts[j]
                    e = (u, v) if u < v else (v, u)
                    if e not in es and rng.random() < extra_p:
                        es.add(e)
        else:
            return tree
        if not forbidden:
            return es
        relabel = {v: i for i, v in enumerate(sorted(verts))}
        gsmall = Graph.from_edges(
            len(verts), sorted((relabel[u], relabel[v]) for u, v in es)
        )
        if not any(find_cycle_exact(gsmall, L).found for L in forbidden):
            return es
        tries += 1
        extra_p = max(0.1, extra_p * 0.8)
