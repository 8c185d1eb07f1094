"""Ground-truth engine: exhaustive small-graph enumeration, exact chromatic
number, brute-force extremal records, and a stochastic spectral
counterexample search.

Enumeration is canonical-augmentation style: level v+1 graphs arise by
attaching a new vertex to every level-v representative with every neighbor
subset, deduplicated by a canonical form (degree-partition refinement with
individualization branching and a symmetric-cell shortcut).  Hereditary
restrictions (forbidden-cycle-freeness) and edge-count pruning cut the tree:
a level-v class is extended only while its best possible completion can still
reach the current lower bound, which is sound along minimum-degree deletion
chains.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from .construct import c5_blowup, extremal_suspension, turan
from .cycles import find_cycle_exact
from .errors import InvalidParameterError, SizeLimitError
from .graph import Graph
from .graphio import to_graph6
from .spectral import lambda_dense, spectral_radius, suspension_lambda_quotient

ENUM_LIMIT = 10

#: non-isomorphic simple graphs on 1..10 vertices
KNOWN_GRAPH_COUNTS = (1, 2, 4, 11, 34, 156, 1044, 12346, 274668, 12005168)


# -- canonical forms ---------------------------------------------------------


def _refine(masks, cells):
    while True:
        cell_masks = [sum(1 << v for v in c) for c in cells]
        new = []
        changed = False
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            buckets: dict = {}
            for v in c:
                sig = tuple((masks[v] & cm).bit_count() for cm in cell_masks)
                buckets.setdefault(sig, []).append(v)
            if len(buckets) == 1:
                new.append(c)
            else:
                changed = True
                for sig in sorted(buckets):
                    new.append(buckets[sig])
        cells = new
        if not changed:
            return cells


def _cells_fully_symmetric(masks, cells):
    """True when every non-singleton cell induces a complete or empty graph
    and has identical outside neighborhoods, so any within-cell order is an
    automorphism."""
    for c in cells:
        if len(c) == 1:
            continue
        cm = sum(1 << v for v in c)
        ext0 = None
        for v in c:
            inside = masks[v] & cm
            if inside != 0 and inside != cm ^ (1 << v):
                return False
            ext = masks[v] & ~cm
            if ext0 is None:
                ext0 = ext
            elif ext != ext0:
                return False
    return True


def _key_from_perm(masks, perm):
    key = 0
    idx = 0
    for j in range(1, len(perm)):
        mj = masks[perm[j]]
        for i in range(j):
            if (mj >> perm[i]) & 1:
                key |= 1 << idx
            idx += 1
    return key


def _canon_search(masks, cells):
    cells = _refine(masks, cells)
    if all(len(c) == 1 for c in cells):
        return _key_from_perm(masks, [c[0] for c in cells])
    if _cells_fully_symmetric(masks, cells):
        return _key_from_perm(masks, [v for c in cells for v in sorted(c)])
    i = next(idx for idx, c in enumerate(cells) if len(c) > 1)
    best = None
    for v in cells[i]:
        child = cells[:i] + [[v], [w for w in cells[i] if w != v]] + cells[i + 1 :]
        k = _canon_search(masks, child)
        if best is None or k < best:
            best = k
    return best


def canonical_key(n: int, masks) -> int:
    """Canonical labeling key: upper-triangle edge bits, minimized over the
    refinement/branching search.  Equal keys iff isomorphic."""
    if n <= 1:
        return 0
    order = sorted(range(n), key=lambda v: (-masks[v].bit_count(), 0))
    cells = []
    cur = []
    curd = None
    for v in order:
        d = masks[v].bit_count()
        if d != curd:
            if cur:
                cells.append(cur)
            cur = [v]
            curd = d
        else:
            cur.append(v)
    cells.append(cur)
    return _canon_search(masks, cells)


def _decode_key(n: int, key: int):
    masks = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if (key >> idx) & 1:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            idx += 1
    return masks


def _graph_from_masks(n, masks) -> Graph:
    return Graph(
        n,
        [frozenset(i for i in range(n) if (masks[v] >> i) & 1) for v in range(n)],
    )


def graph_canonical_key(g: Graph) -> int:
    return canonical_key(g.n, list(g.adjacency_masks()))


def _edge_count(masks) -> int:
    return sum(m.bit_count() for m in masks) // 2


# -- cycle-through-new-vertex filter ------------------------------------------


def _has_cycle_through_last(masks, n: int, length: int) -> bool:
    w = n - 1
    mw = masks[w]
    if mw.bit_count() < 2 or length > n:
        return False

    def dfs(x, remaining, used):
        if remaining == 0:
            return bool((mw >> x) & 1)
        if remaining > n - used.bit_count():
            return False
        cand = masks[x] & ~used
        while cand:
            b = cand & -cand
            cand ^= b
            if dfs(b.bit_length() - 1, remaining - 1, used | b):
                return True
        return False

    return dfs(w, length - 1, 1 << w)


# -- enumeration --------------------------------------------------------------


def _augment(
    parents: Iterable[int],
    v: int,
    child_keep: Optional[Callable] = None,
) -> list:
    """All canonical keys on v+1 vertices reachable from the level-v keys."""
    seen = set()
    for key in parents:
        base = _decode_key(v, key)
        for s in range(1 << v):
            child = base + [s]
            t = s
            while t:
                b = t & -t
                t ^= b
                child[b.bit_length() - 1] = base[b.bit_length() - 1] | (1 << v)
            if child_keep is not None and not child_keep(child, v + 1):
                continue
            seen.add(canonical_key(v + 1, child))
    return sorted(seen)


def _build_levels(
    n: int,
    child_keep: Optional[Callable] = None,
    parent_keep: Optional[Callable] = None,
) -> list:
    levels = [[0]]
    for v in range(1, n):
        parents = levels[-1]
        if parent_keep is not None:
            parents = [k for k in parents if parent_keep(v, k)]
        levels.append(_augment(parents, v, child_keep))
    return levels


def enumerate_graphs(n: int):
    """Stream every isomorphism class on n vertices exactly once (n <= 10)."""
    if not 1 <= n <= ENUM_LIMIT:
        raise SizeLimitError(f"enumeration supports 1 <= n <= {ENUM_LIMIT}")
    for key in _build_levels(n)[-1]:
        yield _graph_from_masks(n, _decode_key(n, key))


def count_isomorphism_classes_labeled(n: int) -> int:
    """Independent cross-check: canonicalize every labeled graph on n
    vertices and count distinct keys.  Exponential; intended for n <= 7."""
    if n < 1 or n > 7:
        raise SizeLimitError("labeled cross-check supports n <= 7")
    seen = set()
    for key in range(1 << (n * (n - 1) // 2)):
        seen.add(canonical_key(n, _decode_key(n, key)))
    return len(seen)


# -- exact chromatic number ----------------------------------------------------

CHROMATIC_LIMIT = 40


@dataclass(frozen=True)
class ChromaticResult:
    value: int
    coloring: tuple


def _greedy_clique(masks, n) -> int:
    order = sorted(range(n), key=lambda v: -masks[v].bit_count())
    best = 0
    for start in order[: min(n, 8)]:
        clique = [start]
        common = masks[start]
        while common:
            pick = None
            c = common
            while c:
                b = c & -c
                c ^= b
                v = b.bit_length() - 1
                if pick is None or (masks[v] & common).bit_count() > (
                    masks[pick] & common
                ).bit_count():
                    pick = v
            clique.append(pick)
            common &= masks[pick]
        best = max(best, len(clique))
    return best


def greedy_coloring_bound(g: Graph) -> int:
    """DSATUR greedy upper bound on the chromatic number."""
    masks = list(g.adjacency_masks())
    col, used = _dsatur_greedy(masks, g.n)
    return used


def _dsatur_greedy(masks, n):
    color = [-1] * n
    nb_colors = [0] * n  # bitmask of neighbor colors
    used = 0
    for _ in range(n):
        pick = -1
        best_sat = (-1, -1, 0)
        for v in range(n):
            if color[v] != -1:
                continue
            sat = nb_colors[v].bit_count()
            deg = masks[v].bit_count()
            cand = (sat, deg, -v)
            if cand > best_sat:
                best_sat = cand
                pick = v
        c = 0
        while (nb_colors[pick] >> c) & 1:
            c += 1
        color[pick] = c
        used = max(used, c + 1)
        m = masks[pick]
        while m:
            b = m & -m
            m ^= b
            nb_colors[b.bit_length() - 1] |= 1 << c
    return color, used


def _colorable(masks, n, k) -> Optional[list]:
    """Backtracking k-colorability with dynamic saturation order and
    first-new-color symmetry breaking."""
    color = [-1] * n
    nb_colors = [0] * n

    def rec(colored, maxused):
        if colored == n:
            return True
        pick = -1
        best = (-1, -1)
        for v in range(n):
            if color[v] == -1:
                cand = (nb_colors[v].bit_count(), masks[v].bit_count())
                if cand > best:
                    best = cand
                    pick = v
        limit = min(k, maxused + 1)
        for c in range(limit):
            if (nb_colors[pick] >> c) & 1:
                continue
            color[pick] = c
            touched = []
            m = masks[pick]
            while m:
                b = m & -m
                m ^= b
                w = b.bit_length() - 1
                if not (nb_colors[w] >> c) & 1:
                    nb_colors[w] |= 1 << c
                    touched.append(w)
            if rec(colored + 1, max(maxused, c + 1)):
                return True
            color[pick] = -1
            for w in touched:
                nb_colors[w] &= ~(1 << c)
        return False

    return color if rec(0, 0) else None


def chromatic_number(g: Graph) -> ChromaticResult:
    """Exact chromatic number with a witness coloring (n <= 40)."""
    if g.n > CHROMATIC_LIMIT:
        raise SizeLimitError(f"exact chromatic number supports n <= {CHROMATIC_LIMIT}")
    if g.n == 0:
        return ChromaticResult(0, ())
    if g.m == 0:
        return ChromaticResult(1, (0,) * g.n)
    masks = list(g.adjacency_masks())
    greedy_col, ub = _dsatur_greedy(masks, g.n)
    lb = max(2, _greedy_clique(masks, g.n))
    best, best_col = ub, greedy_col
    for k in range(lb, ub):
        col = _colorable(masks, g.n, k)
        if col is not None:
            best, best_col = k, col
            break
    return ChromaticResult(best, tuple(best_col))


# -- extremal records ----------------------------------------------------------


@dataclass(frozen=True)
class ExtremalRecord:
    n: int
    forbidden_cycle: int
    constraint: Optional[tuple]  # ("chromatic", r) or None
    kind: str  # "edges" | "spectral"
    optimum: object
    extremal_graph6: tuple
    unique: bool
    stats: dict


def _cl_free(g: Graph, length: int) -> bool:
    return find_cycle_exact(g, length).status == "none"


def _seed_graphs(n: int, cycle_len: int, r: Optional[int]):
    cands = [turan(n, 2)]
    if r is not None:
        if n >= r + 2:
            cands.append(extremal_suspension(n, r))
        if r <= n:
            cands.append(Graph.from_edges(n, turan(r, r).edges()))
        if r >= 3 and n >= 5:
            # pentagon blow-up: non-bipartite, triangle-free, near-extremal
            ac = n // 2
            a = max(1, ac // 2)
            cands.append(c5_blowup(a, (n + 1) // 2 - 2, ac - a))
    out = []
    for g in cands:
        if not _cl_free(g, cycle_len):
            continue
        if r is not None and chromatic_number(g).value < r:
            continue
        out.append(g)
    return out


def _prune_for(n: int, best_edges: int):
    total = n * (n - 1) // 2

    def keep(v: int, key: int) -> bool:
        e = bin(key).count("1")
        return e + total - v * (v - 1) // 2 >= best_edges

    return keep


def ex_bruteforce(n: int, cycle_len: int) -> ExtremalRecord:
    """Maximum edges over C_{cycle_len}-free graphs on n vertices, with all
    maximizers, by pruned exhaustive enumeration (n <= 10)."""
    if not 1 <= n <= ENUM_LIMIT:
        raise SizeLimitError(f"ex search supports n <= {ENUM_LIMIT}")
    if cycle_len < 3:
        raise InvalidParameterError("cycle length must be >= 3")
    seeds = _seed_graphs(n, cycle_len, None)
    best0 = max((g.m for g in seeds), default=0)
    keep = (lambda child, nn: not _has_cycle_through_last(child, nn, cycle_len))
    levels = _build_levels(n, child_keep=keep, parent_keep=_prune_for(n, best0))
    final = levels[-1]
    by_edges: dict = {}
    for key in final:
        by_edges.setdefault(bin(key).count("1"), []).append(key)
    optimum = max(by_edges)
    extremal = []
    for key in sorted(by_edges[optimum]):
        g = _graph_from_masks(n, _decode_key(n, key))
        assert g.m == optimum and _cl_free(g, cycle_len)
        extremal.append(to_graph6(g))
    stats = {
        "classes_final_level": len(final),
        "level_sizes": [len(lv) for lv in levels],
        "seed_lower_bound": best0,
    }
    return ExtremalRecord(
        n=n,
        forbidden_cycle=cycle_len,
        constraint=None,
        kind="edges",
        optimum=optimum,
        extremal_graph6=tuple(sorted(extremal)),
        unique=len(extremal) == 1,
        stats=stats,
    )


def ex_chromatic_bruteforce(n: int, cycle_len: int, r: int) -> ExtremalRecord:
    """Maximum edges over C_{cycle_len}-free graphs with chromatic number at
    least r (n <= 9).  Also records whether the closed-form suspension bound
    is attained at this order (it need not be below the asymptotic regime)."""
    if not 1 <= n <= 9:
        raise SizeLimitError("chromatic-constrained ex search supports n <= 9")
    if r < 1:
        raise InvalidParameterError("r must be >= 1")
    seeds = _seed_graphs(n, cycle_len, r)
    best0 = max((g.m for g in seeds), default=None)
    keep = (lambda child, nn: not _has_cycle_through_last(child, nn, cycle_len))
    parent_keep = _prune_for(n, best0) if best0 is not None else None
    levels = _build_levels(n, child_keep=keep, parent_keep=parent_keep)
    final = levels[-1]
    scored = sorted(final, key=lambda k: -bin(k).count("1"))
    optimum = None
    extremal = []
    for key in scored:
        e = bin(key).count("1")
        if optimum is not None and e < optimum:
            break
        g = _graph_from_masks(n, _decode_key(n, key))
        if greedy_coloring_bound(g) < r:
            continue
        if chromatic_number(g).value < r:
            continue
        optimum = e
        extremal.append(to_graph6(g))
    if optimum is None:
        raise InvalidParameterError(
            f"no C_{cycle_len}-free graph on {n} vertices has chromatic number >= {r}"
        )
    formula = (n - r + 1) ** 2 // 4 + r * (r - 1) // 2
    stats = {
        "classes_final_level": len(final),
        "level_sizes": [len(lv) for lv in levels],
        "formula_value": formula,
        "formula_attained": optimum == formula,
        "seed_lower_bound": best0,
    }
    return ExtremalRecord(
        n=n,
        forbidden_cycle=cycle_len,
        constraint=("chromatic", r),
        kind="edges",
        optimum=optimum,
        extremal_graph6=tuple(sorted(extremal)),
        unique=len(extremal) == 1,
        stats=stats,
    )


def spex_bruteforce(n: int, cycle_len: int, r: int) -> ExtremalRecord:
    """Maximizer of the spectral radius over C_{cycle_len}-free graphs with
    chromatic number >= r (n <= 9); lambda certified to 1e-10."""
    if not 1 <= n <= 9:
        raise SizeLimitError("spectral ex search supports n <= 9")
    seeds = _seed_graphs(n, cycle_len, r)
    lam0 = max((lambda_dense(g) for g in seeds), default=None)
    keep = (lambda child, nn: not _has_cycle_through_last(child, nn, cycle_len))
    parent_keep = None
    if lam0 is not None:
        need_edges = math.ceil(lam0 * lam0 / 2)
        parent_keep = _prune_for(n, need_edges)
    levels = _build_levels(n, child_keep=keep, parent_keep=parent_keep)
    final = levels[-1]
    best_lam = -1.0
    best_keys: list = []
    for key in final:
        g = _graph_from_masks(n, _decode_key(n, key))
        if r > 1:
            if greedy_coloring_bound(g) < r:
                continue
            if chromatic_number(g).value < r:
                continue
        lam = lambda_dense(g)
        if lam > best_lam + 1e-9:
            best_lam = lam
            best_keys = [key]
        elif lam >= best_lam - 1e-9:
            best_keys.append(key)
    if best_lam < 0:
        raise InvalidParameterError(
            f"no C_{cycle_len}-free graph on {n} vertices has chromatic number >= {r}"
        )
    certified = []
    lam_best = None
    for key in sorted(best_keys):
        g = _graph_from_masks(n, _decode_key(n, key))
        res = spectral_radius(g, tol=1e-10)
        assert res.converged
        if lam_best is None or res.lam > lam_best + 1e-10:
            lam_best = res.lam
            certified = [to_graph6(g)]
        elif res.lam >= lam_best - 1e-10:
            certified.append(to_graph6(g))
    stats = {
        "classes_final_level": len(final),
        "level_sizes": [len(lv) for lv in levels],
        "seed_lower_bound": lam0,
    }
    return ExtremalRecord(
        n=n,
        forbidden_cycle=cycle_len,
        constraint=("chromatic", r),
        kind="spectral",
        optimum=lam_best,
        extremal_graph6=tuple(sorted(certified)),
        unique=len(certified) == 1,
        stats=stats,
    )


# -- stochastic spectral counterexample search ---------------------------------


@dataclass(frozen=True)
class SpectralSearchResult:
    found: Optional[Graph]
    best_lambda: float
    target_lambda: float
    proposals: int
    accepted: int


def _count_c5(a: np.ndarray) -> float:
    a2 = a @ a
    a3 = a2 @ a
    a5 = a3 @ a2
    deg = a.sum(axis=1)
    t5 = float(np.trace(a5))
    t3 = float(np.trace(a3))
    corr = float((np.diag(a3) * (deg - 2)).sum())
    return (t5 - 5 * t3 - 5 * corr) / 10.0


def _matrix_feasible(a: np.ndarray, k: int, r: int) -> bool:
    n = a.shape[0]
    if k == 2:
        if _count_c5(a) > 0.5:
            return False
    else:
        g = Graph.from_edges(
            n, [(i, j) for i in range(n) for j in range(i + 1, n) if a[i, j]]
        )
        if find_cycle_exact(g, 2 * k + 1, budget=400_000).status != "none":
            return False
    if r <= 1:
        return True
    if r == 2:
        return bool(a.any())
    # chromatic number >= 3 iff not bipartite
    color = np.full(n, -1, dtype=np.int64)
    nonbip = False
    for s in range(n):
        if color[s] != -1 or not a[s].any():
            continue
        color[s] = 0
        dq = deque([s])
        while dq and not nonbip:
            x = dq.popleft()
            for y in np.nonzero(a[x])[0]:
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    dq.append(int(y))
                elif color[y] == color[x]:
                    nonbip = True
                    break
    if r == 3:
        return nonbip
    if not nonbip:
        return False
    g = Graph.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n) if a[i, j]]
    )
    if greedy_coloring_bound(g) < r:
        return False
    return chromatic_number(g).value >= r


def counterexample_search_spectral(
    n: int,
    k: int,
    r: int,
    budget: int,
    seed: int,
    tabu_len: int = 64,
    restart_after: int = 3000,
) -> SpectralSearchResult:
    """Tabu hill-climb over feasible graphs maximizing the spectral radius.

    Feasible = C_{2k+1}-free with chromatic number >= r.  Starts from the
    extremal suspension with a seeded random thinning of its bipartite side;
    single-edge toggles are accepted when they keep feasibility and strictly
    increase lambda.  Returns any feasible graph beating the extremal lambda
    by more than 1e-8 (expected: never found).
    """
    if n < r + 2:
        raise InvalidParameterError("need n >= r + 2")
    rng = random.Random(seed)
    target = suspension_lambda_quotient(n - r + 1, r)
    base = extremal_suspension(n, r)
    clique_edges = set()
    dec_first = n - r + 1
    for u, v in base.edges():
        if u >= dec_first or v >= dec_first:
            clique_edges.add((u, v))

    def fresh_start():
        a = np.zeros((n, n))
        for u, v in base.edges():
            if (u, v) not in clique_edges and rng.random() < 0.15:
                continue
            a[u, v] = a[v, u] = 1.0
        return a

    a = fresh_start()
    assert _matrix_feasible(a, k, r)
    cur = float(np.linalg.eigvalsh(a)[-1])
    best_lambda = cur
    found = None
    tabu: deque = deque(maxlen=tabu_len)
    proposals = 0
    accepted = 0
    since_accept = 0
    while proposals < budget:
        proposals += 1
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        if i > j:
            i, j = j, i
        if (i, j) in tabu:
            continue
        a[i, j] = a[j, i] = 1.0 - a[i, j]
        if _matrix_feasible(a, k, r):
            lam = float(np.linalg.eigvalsh(a)[-1])
            if lam > best_lambda:
                best_lambda = lam
                if lam > target + 1e-8:
                    found = Graph.from_edges(
                        n,
                        [
                            (p, q)
                            for p in range(n)
                            for q in range(p + 1, n)
                            if a[p, q]
                        ],
                    )
            if lam > cur + 1e-12:
                cur = lam
                tabu.append((i, j))
                accepted += 1
                since_accept = 0
                continue
        a[i, j] = a[j, i] = 1.0 - a[i, j]
        since_accept += 1
        if since_accept >= restart_after:
            a = fresh_start()
            cur = float(np.linalg.eigvalsh(a)[-1])
            tabu.clear()
            since_accept = 0
    return SpectralSearchResult(
        found=found,
        best_lambda=best_lambda,
        target_lambda=target,
        proposals=proposals,
        accepted=accepted,
    )
