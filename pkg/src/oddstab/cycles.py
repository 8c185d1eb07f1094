"""Exact-length cycle and path search, greedy paths in dense bipartite graphs.

Exact fixed-length cycle detection is NP-hard in general, so the search is
budgeted: a definitive "none" is only reported when the bounded DFS exhausted
the space.  Structure-aware shortcuts (bipartite blocks have no odd cycles, a
cycle lives inside one block) keep the common cases cheap.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import ConstructionError, InvalidParameterError, PreconditionError
from .graph import Bipartition, Graph, blocks, is_bipartite

FOUND = "found"
NONE = "none"
BUDGET = "budget"

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class CycleWitness:
    """Vertex sequence v_1..v_L; the cycle closes v_L -> v_1."""

    vertices: tuple

    @property
    def length(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class PathWitness:
    """Vertex sequence of a simple path; order = #vertices, length = order-1."""

    vertices: tuple

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class CycleSearchResult:
    status: str                       # "found" | "none" | "budget"
    witness: Optional[CycleWitness]
    expansions: int

    @property
    def found(self) -> bool:
        return self.status == FOUND


def verify_cycle(g: Graph, w: CycleWitness, length: int) -> bool:
    vs = w.vertices
    if len(vs) != length or length < 3:
        return False
    if len(set(vs)) != len(vs):
        return False
    if any(not 0 <= v < g.n for v in vs):
        return False
    for i in range(len(vs)):
        if not g.has_edge(vs[i], vs[(i + 1) % len(vs)]):
            return False
    return True


def verify_path(g: Graph, w: PathWitness) -> bool:
    vs = w.vertices
    if len(vs) < 1:
        return False
    if len(set(vs)) != len(vs):
        return False
    if any(not 0 <= v < g.n for v in vs):
        return False
    return all(g.has_edge(vs[i], vs[i + 1]) for i in range(len(vs) - 1))


def _normalize_cycle(vs: list) -> tuple:
    """Rotate so the smallest vertex is first, orient toward smaller second."""
    i = vs.index(min(vs))
    rot = vs[i:] + vs[:i]
    if len(rot) > 2 and rot[-1] < rot[1]:
        rot = [rot[0]] + rot[1:][::-1]
    return tuple(rot)


def find_cycle_exact(
    g: Graph, length: int, budget: int = DEFAULT_BUDGET
) -> CycleSearchResult:
    """Search for a cycle of exactly ``length`` vertices.

    Returns a verified witness when found; status "none" is definitive only
    when every DFS root exhausted within the expansion budget.  Roots are
    canonical: only cycles whose smallest vertex equals the root are explored.
    """
    if length < 3:
        raise InvalidParameterError("cycle length must be >= 3")
    if length > g.n:
        return CycleSearchResult(NONE, None, 0)

    expansions = 0
    odd = length % 2 == 1
    dec = blocks(g)
    for block in dec.blocks:
        if len(block) < length:
            continue
        if odd and is_bipartite(g, block) is not None:
            continue
        allowed_all = sorted(block)
        for root in allowed_all:
            allowed = frozenset(v for v in block if v >= root)
            if len(allowed) < length:
                continue
            # distances back to root within the allowed set, for pruning
            dist = {root: 0}
            dq = deque([root])
            while dq:
                x = dq.popleft()
                for y in g.neighbors(x):
                    if y in allowed and y not in dist:
                        dist[y] = dist[x] + 1
                        dq.append(y)
            path = [root]
            on_path = {root}
            iters = [iter(sorted(g.neighbors(root)))]
            while iters:
                if expansions >= budget:
                    return CycleSearchResult(BUDGET, None, expansions)
                depth = len(path) - 1
                advanced = False
                for y in iters[-1]:
                    expansions += 1
                    if expansions >= budget:
                        return CycleSearchResult(BUDGET, None, expansions)
                    if y not in allowed or y in on_path:
                        continue
                    rem = length - 1 - (depth + 1)
                    d = dist.get(y)
                    if d is None or d > rem + 1:
                        continue
                    if rem == 0:
                        if g.has_edge(y, root):
                            cyc = _normalize_cycle(path + [y])
                            w = CycleWitness(cyc)
                            assert verify_cycle(g, w, length)
                            return CycleSearchResult(FOUND, w, expansions)
                        continue
                    path.append(y)
                    on_path.add(y)
                    iters.append(iter(sorted(g.neighbors(y))))
                    advanced = True
                    break
                if not advanced:
                    iters.pop()
                    on_path.discard(path.pop())
    return CycleSearchResult(NONE, None, expansions)


def shortest_odd_cycle(g: Graph, restrict_to: Optional[Iterable[int]] = None
                       ) -> Optional[CycleWitness]:
    """Shortest odd cycle of the (induced) graph, None when bipartite.

    Per-root BFS: a minimum same-level non-tree edge over all roots closes a
    shortest odd cycle; tree paths to its endpoints are trimmed at their
    lowest common ancestor.
    """
    allowed = set(g.vertices()) if restrict_to is None else set(restrict_to)
    best: Optional[list] = None
    for root in sorted(allowed):
        dist = {root: 0}
        par = {root: None}
        dq = deque([root])
        while dq:
            x = dq.popleft()
            if best is not None and dist[x] * 2 + 1 >= len(best):
                break
            for y in sorted(g.neighbors(x)):
                if y not in allowed:
                    continue
                if y not in dist:
                    dist[y] = dist[x] + 1
                    par[y] = x
                    dq.append(y)
                elif dist[y] == dist[x] and y != x:
                    cyc = _extract_bfs_cycle(par, x, y)
                    if best is None or len(cyc) < len(best):
                        best = cyc
    if best is None:
        return None
    w = CycleWitness(_normalize_cycle(best))
    assert verify_cycle(g, w, len(best)) and len(best) % 2 == 1
    return w


def _extract_bfs_cycle(par: dict, x: int, y: int) -> list:
    px, py = [x], [y]
    while par[px[-1]] is not None:
        px.append(par[px[-1]])
    while par[py[-1]] is not None:
        py.append(par[py[-1]])
    sx, sy = set(px), set(py)
    # lowest common ancestor = first shared vertex along either root path
    lca = next(v for v in px if v in sy)
    cx = px[: px.index(lca) + 1]
    cy = py[: py.index(lca)]
    del sx, sy
    return cx + cy[::-1]


def lengthen_odd_cycle(
    g: Graph,
    w: CycleWitness,
    target: int,
    restrict_to: Optional[Iterable[int]] = None,
) -> Optional[CycleWitness]:
    """Grow an odd cycle by repeated +2 edge-detours until ``target`` length.

    Each step replaces a cycle edge (x, y) by a detour x-a-b-y through two
    unused vertices (smallest labels first).  Works whenever the host graph is
    dense around the cycle; returns None if some step finds no detour.
    """
    if target % 2 != len(w.vertices) % 2:
        raise InvalidParameterError("target parity must match the cycle parity")
    allowed = set(g.vertices()) if restrict_to is None else set(restrict_to)
    cur = list(w.vertices)
    while len(cur) < target:
        used = set(cur)
        grown = None
        for i in range(len(cur)):
            x, y = cur[i], cur[(i + 1) % len(cur)]
            for a in sorted(g.neighbors(x)):
                if a not in allowed or a in used:
                    continue
                cand = (g.neighbors(a) & g.neighbors(y)) - used - {a}
                cand = {b for b in cand if b in allowed}
                if cand:
                    b = min(cand)
                    grown = cur[: i + 1] + [a, b] + cur[i + 1 :]
                    break
            if grown:
                break
        if grown is None:
            return None
        cur = grown
    out = CycleWitness(_normalize_cycle(cur))
    assert verify_cycle(g, out, target)
    return out


def greedy_bipartite_path(
    g: Graph,
    bip: Bipartition,
    u: int,
    v: int,
    order: int,
    avoid: frozenset = frozenset(),
) -> PathWitness:
    """Greedy u-v path of exactly ``order`` vertices inside a dense bipartite
    (sub)graph.

    Walks the support of ``bip``: extend step by step with the smallest
    admissible label, alternating parts; the final step picks a common
    neighbor of the last interior vertex and v.  Requires min degree within
    the support strictly above 2/5 of the support size, and path parity
    matching the parts (same part: odd order; different parts: even order).
    """
    sup = bip.support
    if u == v or u not in sup or v not in sup:
        raise PreconditionError("endpoints must be distinct vertices of the support")
    nsup = len(sup)
    for w in sup:
        if 5 * len(g.neighbors(w) & sup) <= 2 * nsup:
            raise PreconditionError(
                f"degree hypothesis fails at vertex {w}: need d > 2n/5 within support"
            )
    same = bip.part(u) == bip.part(v)
    if same and (order % 2 == 0 or order < 3):
        raise PreconditionError("same-part endpoints need odd order >= 3")
    if not same and (order % 2 == 1 or order < 2):
        raise PreconditionError("cross-part endpoints need even order >= 2")
    if order == 2:
        if not g.has_edge(u, v):
            raise ConstructionError("order-2 path requested but endpoints not adjacent")
        return PathWitness((u, v))

    used = {u, v} | set(avoid)
    path = [u]
    part_of = bip.part_of
    for _ in range(order - 3):
        want = 1 - part_of[path[-1]]
        cand = [
            w
            for w in g.neighbors(path[-1])
            if w in sup and w not in used and part_of[w] == want
        ]
        if not cand:
            raise ConstructionError(
                f"greedy extension emptied at step {len(path)} from {path[-1]}"
            )
        nxt = min(cand)
        path.append(nxt)
        used.add(nxt)
    cand = [
        w
        for w in (g.neighbors(path[-1]) & g.neighbors(v))
        if w in sup and w not in used
    ]
    if not cand:
        raise ConstructionError(
            f"no unused common neighbor of {path[-1]} and {v} for the closing step"
        )
    path.append(min(cand))
    path.append(v)
    witness = PathWitness(tuple(path))
    assert verify_path(g, witness) and witness.order == order
    return witness


def girth(g: Graph) -> float:
    """Length of a shortest cycle; math.inf for forests.  BFS per vertex."""
    best = math.inf
    for root in g.vertices():
        dist = {root: 0}
        par = {root: None}
        dq = deque([root])
        while dq:
            x = dq.popleft()
            if 2 * dist[x] >= best:
                break
            for y in g.neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    par[y] = x
                    dq.append(y)
                elif par[x] != y:
                    cand = dist[x] + dist[y] + 1
                    if cand < best:
                        best = cand
    return best


def _longest_cycle_exact(g: Graph) -> int:
    """Exact circumference via per-root subset DP (canonical smallest root)."""
    masks = g.adjacency_masks()
    best = 0
    n = g.n
    for root in range(n):
        hi = 0
        for v in range(root, n):
            hi |= 1 << v
        # paths start at root, use vertices >= root only
        start = 1 << root
        frontier = {start: start}
        size = 1
        while frontier:
            size += 1
            nxt: dict = {}
            for sub, ends in frontier.items():
                e = ends
                while e:
                    b = e & -e
                    e ^= b
                    x = b.bit_length() - 1
                    nbrs = masks[x] & hi & ~sub
                    while nbrs:
                        nb = nbrs & -nbrs
                        nbrs ^= nb
                        y = nb.bit_length() - 1
                        key = sub | nb
                        if masks[y] & start and size >= 3 and size > best:
                            best = size
                        prev = nxt.get(key, 0)
                        if not prev & nb:
                            nxt[key] = prev | nb
            frontier = nxt
    return best


def _longest_cycle_sampled(g: Graph, budget: int) -> int:
    """Greedy DFS lower bound on the circumference."""
    best = 0
    expansions = 0
    for root in g.vertices():
        path = [root]
        on_path = {root}
        iters = [iter(sorted(g.neighbors(root), key=lambda w: -g.degree(w)))]
        while iters and expansions < budget:
            advanced = False
            for y in iters[-1]:
                expansions += 1
                if y in on_path:
                    continue
                path.append(y)
                on_path.add(y)
                iters.append(iter(sorted(g.neighbors(y), key=lambda w: -g.degree(w))))
                if g.has_edge(y, root) and len(path) >= 3 and len(path) > best:
                    best = len(path)
                advanced = True
                break
            if not advanced:
                iters.pop()
                on_path.discard(path.pop())
        if expansions >= budget:
            break
    return best


CIRCUMFERENCE_EXACT_LIMIT = 16


def circumference_lower_bound(g: Graph, budget: int = 100_000) -> int:
    """Longest cycle length: exact for n <= 16, else a sampled lower bound.

    Returns 0 for acyclic graphs.
    """
    if g.n <= CIRCUMFERENCE_EXACT_LIMIT:
        return _longest_cycle_exact(g)
    return _longest_cycle_sampled(g, budget)


def path_order_table(g: Graph, source: int, max_order: int,
                     restrict_to: Optional[Iterable[int]] = None) -> dict:
    """For each target, the set of achievable simple-path orders <= max_order.

    Exhaustive subset DP; exponential in max_order, intended for small
    verification instances.
    """
    allowed = set(g.vertices()) if restrict_to is None else set(restrict_to)
    if source not in allowed:
        raise InvalidParameterError("source outside the allowed set")
    masks = g.adjacency_masks()
    hi = 0
    for v in allowed:
        hi |= 1 << v
    out: dict = {source: {1}}
    frontier = {1 << source: 1 << source}
    order = 1
    while frontier and order < max_order:
        order += 1
        nxt: dict = {}
        for sub, ends in frontier.items():
            e = ends
            while e:
                b = e & -e
                e ^= b
                x = b.bit_length() - 1
                nbrs = masks[x] & hi & ~sub
                while nbrs:
                    nb = nbrs & -nbrs
                    nbrs ^= nb
                    y = nb.bit_length() - 1
                    out.setdefault(y, set()).add(order)
                    key = sub | nb
                    nxt[key] = nxt.get(key, 0) | nb
        frontier = nxt
    return out
