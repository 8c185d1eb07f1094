"""Degree peeling, dense bipartite pair extraction, bad-path search,
suspension-family certification, and the top-level stability pipeline.

The pipeline mirrors the two-phase structure of the stability analysis:
first peel the graph down to a dense 2-connected bipartite pair (F inside
G'), then inspect the block containing G'.  A bipartite block certifies the
suspension structure; a non-bipartite block yields a parity-violating path
that is closed into an odd cycle of the forbidden length whenever the dense
pair admits the connecting path.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .construct import bipartite_turan_with_clique
from .cycles import (
    CycleWitness,
    PathWitness,
    greedy_bipartite_path,
    lengthen_odd_cycle,
    path_order_table,
    shortest_odd_cycle,
    verify_cycle,
    verify_path,
)
from .errors import ConstructionError, InvalidParameterError, PreconditionError
from .graph import (
    Bipartition,
    Graph,
    blocks,
    connected_components,
    is_2_connected,
    is_bipartite,
)

# -- parameters ----------------------------------------------------------------


@dataclass(frozen=True)
class AnalysisParams:
    """Knobs of the stability analysis: forbidden cycle C_{2k+1}, family
    index r, peeling constant c, and the input order n."""

    k: int
    r: int
    c: int
    n: int

    def __post_init__(self):
        if self.k < 2:
            raise InvalidParameterError("need k >= 2")
        if self.c < 2:
            raise InvalidParameterError("need c >= 2")
        if self.n < 1:
            raise InvalidParameterError("need n >= 1")

    @classmethod
    def for_graph(cls, g: Graph, k: int, r: int, c: Optional[int] = None):
        return cls(k=k, r=r, c=c if c is not None else 2 * k, n=g.n)

    @property
    def forbidden_length(self) -> int:
        return 2 * self.k + 1

    def theorem_regime(self, g: Graph) -> dict:
        bound = (self.n - self.r + 1) ** 2 // 4 + self.r * (self.r - 1) // 2
        return {
            "edge_bound": bound,
            "edges_ok": g.m >= bound,
            "order_ok": self.n >= 100 * self.k,
            "r_range_ok": 3 <= self.r <= 2 * self.k,
        }


# -- peeling -------------------------------------------------------------------

AT_MOST = "at_most"
STRICTLY_BELOW = "strictly_below"


@dataclass(frozen=True)
class PeelTrace:
    """Replayable deletion log of a threshold peel.

    ``within`` is the universe the peel ran inside (None = whole graph); the
    threshold is an exact rational, compared exactly, with n meaning the
    original order throughout (it never shrinks with deletions).
    """

    mode: str
    threshold: Fraction
    deletions: tuple  # ((vertex, degree-at-deletion), ...)
    survivors: frozenset
    within: Optional[frozenset]
    description: str

    def qualifies(self, degree: int) -> bool:
        if self.mode == AT_MOST:
            return Fraction(degree) <= self.threshold
        return Fraction(degree) < self.threshold

    def replay(self, g: Graph) -> bool:
        """Re-delete in recorded order; True iff every recorded degree is
        reproduced, qualifies, and no survivor qualifies at the end."""
        alive = set(g.vertices()) if self.within is None else set(self.within)
        deg = {v: len(g.neighbors(v) & alive) for v in alive}
        for v, d in self.deletions:
            if v not in alive or deg[v] != d or not self.qualifies(d):
                return False
            alive.discard(v)
            for w in g.neighbors(v):
                if w in alive:
                    deg[w] -= 1
        if alive != set(self.survivors):
            return False
        return not any(self.qualifies(deg[v]) for v in alive)


def peel(
    g: Graph,
    threshold: Fraction,
    mode: str = AT_MOST,
    within: Optional[Iterable[int]] = None,
    description: str = "",
) -> PeelTrace:
    """Repeatedly delete the lowest-labeled vertex whose current degree meets
    the threshold predicate, until none qualifies (possibly emptying the
    graph)."""
    if mode not in (AT_MOST, STRICTLY_BELOW):
        raise InvalidParameterError(f"unknown peel mode {mode!r}")
    thr = Fraction(threshold)
    member = None if within is None else frozenset(within)
    alive = set(g.vertices()) if member is None else set(member)
    deg = {v: len(g.neighbors(v) & alive) for v in alive}

    def qual(d: int) -> bool:
        return d <= thr if mode == AT_MOST else d < thr

    heap = [v for v in alive if qual(deg[v])]
    heapq.heapify(heap)
    queued = set(heap)
    deletions = []
    while heap:
        v = heapq.heappop(heap)
        if v not in alive:
            continue
        deletions.append((v, deg[v]))
        alive.discard(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
                if w not in queued and qual(deg[w]):
                    heapq.heappush(heap, w)
                    queued.add(w)
    return PeelTrace(
        mode=mode,
        threshold=thr,
        deletions=tuple(deletions),
        survivors=frozenset(alive),
        within=member,
        description=description or f"degree {mode} {thr}",
    )


# -- dense pair extraction -----------------------------------------------------


@dataclass(frozen=True)
class PathSample:
    u: int
    v: int
    order: int
    witness: PathWitness
    ok: bool


@dataclass(frozen=True)
class DenseReport:
    f_order: int
    gp_order: int
    f_min_degree: int
    gp_min_degree: int
    f_two_connected: bool
    gp_two_connected: bool
    f_order_bound_ok: bool       # |F| >= n - 10c
    gp_order_bound_ok: bool      # |G'| >= n - 2c
    f_degree_bound_ok: bool      # min degree in F > 2n/5
    gp_degree_bound_ok: bool     # min degree in G' >= 11c
    outside_f_attachment_ok: bool   # d_F(v) < 2n/5 for v outside F
    outside_gp_attachment_ok: bool  # d_G'(v) < 11c for v outside G'
    hypotheses_met: bool
    path_samples: tuple

    @property
    def all_bounds_ok(self) -> bool:
        return (
            self.f_order_bound_ok
            and self.gp_order_bound_ok
            and self.f_degree_bound_ok
            and self.gp_degree_bound_ok
            and self.f_two_connected
            and self.gp_two_connected
            and all(s.ok for s in self.path_samples)
        )


@dataclass(frozen=True)
class DenseCertificate:
    params: AnalysisParams
    f_vertices: frozenset
    gp_vertices: frozenset
    f_bipartition: Bipartition
    gp_bipartition: Bipartition
    v1: frozenset  # G' vertices with >= c neighbors in U_2 (U_1 side)
    v2: frozenset  # G' vertices with >= c neighbors in U_1 (U_2 side)
    gp_trace: PeelTrace
    f_trace_continuation: PeelTrace
    report: DenseReport

    @property
    def f_deletion_order(self) -> tuple:
        """Full deletion order producing F: first the G' peel, then the
        continuation inside G'."""
        return self.gp_trace.deletions + self.f_trace_continuation.deletions


@dataclass(frozen=True)
class ExtractResult:
    status: str  # "ok" | "odd_cycle" | "empty" | "unclassified"
    certificate: Optional[DenseCertificate] = None
    odd_cycle: Optional[CycleWitness] = None
    forbidden_cycle: Optional[CycleWitness] = None
    notes: tuple = ()

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def _side_of(cert_v1: frozenset, cert_v2: frozenset, v: int) -> int:
    if v in cert_v1:
        return 0
    if v in cert_v2:
        return 1
    raise InvalidParameterError(f"vertex {v} is not classified in the dense pair")


def dense_pair_path(
    g: Graph,
    cert: DenseCertificate,
    u: int,
    v: int,
    order: int,
    avoid: frozenset = frozenset(),
) -> PathWitness:
    """A u-v path of the exact order inside G', via the dense core F.

    Endpoints inside F use the greedy construction directly; an endpoint of
    G' outside F is bridged into the opposite core side through one of its
    >= c core neighbors first.
    """
    return _dense_path_parts(
        g, cert.f_vertices, cert.f_bipartition, cert.v1, cert.v2, u, v, order, avoid
    )


def _dense_path_parts(
    g: Graph,
    fset: frozenset,
    fbip: Bipartition,
    v1: frozenset,
    v2: frozenset,
    u: int,
    v: int,
    order: int,
    avoid: frozenset = frozenset(),
) -> PathWitness:
    if u == v:
        raise PreconditionError("endpoints must differ")
    used_avoid = frozenset(avoid) | {u, v}

    def bridge(x: int, banned: frozenset) -> Optional[int]:
        side = _side_of(v1, v2, x)
        target = fbip.parts[1] if side == 0 else fbip.parts[0]
        cand = (g.neighbors(x) & target) - banned
        return min(cand) if cand else None

    su = u if u in fset else None
    sv = v if v in fset else None
    rem = order
    prefix: list = []
    suffix: list = []
    if su is None:
        b = bridge(u, used_avoid)
        if b is None:
            raise ConstructionError(f"no core bridge for endpoint {u}")
        prefix = [u]
        su = b
        rem -= 1
    if sv is None:
        b = bridge(v, used_avoid | {su})
        if b is None:
            raise ConstructionError(f"no core bridge for endpoint {v}")
        suffix = [v]
        sv = b
        rem -= 1
    if su == sv:
        raise ConstructionError("bridged endpoints collide")
    inner_avoid = frozenset(avoid) | {u, v}
    if rem == 1:
        raise ConstructionError("path order too small after bridging")
    if rem == 2:
        if not g.has_edge(su, sv):
            raise ConstructionError("order-2 core segment needs adjacent bridges")
        core_path = PathWitness((su, sv))
    else:
        core_path = greedy_bipartite_path(
            g, fbip, su, sv, rem, avoid=inner_avoid
        )
    vertices = tuple(prefix) + core_path.vertices + tuple(reversed(suffix))
    witness = PathWitness(vertices)
    if not verify_path(g, witness) or witness.order != order:
        raise ConstructionError("assembled dense-pair path failed verification")
    return witness


@dataclass(frozen=True)
class KDenseReport:
    mode: str
    bipartite_ok: bool
    two_connected: bool
    failures: tuple          # (u, v, order) triples with no path found
    checked: int
    degree_hypothesis_ok: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return self.bipartite_ok and self.two_connected and not self.failures


def verify_k_dense(
    g: Graph,
    vertices: Iterable[int],
    bip: Bipartition,
    k: int,
    mode: str = "exact",
    pairs: int = 50,
    seed: int = 0,
) -> KDenseReport:
    """Check the dense-subgraph path clauses: same-part pairs need all odd
    path orders in {5..2k+1}, cross pairs all even orders in {6..2k+2}.

    Exact mode enumerates by subset DP (intended for n <= 14); greedy mode
    checks the degree hypothesis and constructs sampled paths greedily.
    """
    vs = sorted(set(vertices))
    sub = frozenset(vs)
    bipartite_ok = bip.verify(g) and bip.support == sub
    two_connected = is_2_connected(g, sub)
    same_orders = [h for h in range(5, 2 * k + 2, 2)]
    cross_orders = [s for s in range(6, 2 * k + 3, 2)]
    failures = []
    checked = 0
    if mode == "exact":
        maxo = 2 * k + 2
        for u in vs:
            table = path_order_table(g, u, maxo, restrict_to=sub)
            for v in vs:
                if v <= u:
                    continue
                orders = same_orders if bip.part(u) == bip.part(v) else cross_orders
                got = table.get(v, set())
                for o in orders:
                    checked += 1
                    if o not in got:
                        failures.append((u, v, o))
        return KDenseReport(
            mode=mode,
            bipartite_ok=bipartite_ok,
            two_connected=two_connected,
            failures=tuple(failures),
            checked=checked,
        )
    if mode != "greedy":
        raise InvalidParameterError(f"unknown mode {mode!r}")
    nsup = len(vs)
    deg_ok = all(5 * len(g.neighbors(w) & sub) > 2 * nsup for w in vs)
    rng = random.Random(seed)
    for _ in range(pairs):
        u, v = rng.sample(vs, 2)
        orders = same_orders if bip.part(u) == bip.part(v) else cross_orders
        for o in orders:
            checked += 1
            if not deg_ok:
                failures.append((u, v, o))
                continue
            try:
                greedy_bipartite_path(g, bip, u, v, o)
            except (PreconditionError, ConstructionError):
                failures.append((u, v, o))
    return KDenseReport(
        mode=mode,
        bipartite_ok=bipartite_ok,
        two_connected=two_connected,
        failures=tuple(failures),
        checked=checked,
        degree_hypothesis_ok=deg_ok,
    )


def extract_dense_pair(
    g: Graph,
    params: AnalysisParams,
    path_samples: int = 8,
    sample_seed: int = 0,
) -> ExtractResult:
    """Run the two peels and certify the dense bipartite pair F inside G'.

    Failure to 2-color a peeled remnant certifies a forbidden odd cycle in
    the theorem regime; the result then carries the odd cycle found (and the
    C_{2k+1} itself whenever the constructive lengthening succeeds).
    """
    if params.n != g.n:
        raise InvalidParameterError("params.n must match the graph order")
    n, c, k = g.n, params.c, params.k
    thr_gp = Fraction(11 * c)
    thr_f = Fraction(2 * n, 5)
    hypotheses = g.m >= (n - c) ** 2 / 4 and n >= max(50 * c, 50 * k)

    gp_trace = peel(g, thr_gp, STRICTLY_BELOW, description=f"degree < 11c = {thr_gp}")
    gp = gp_trace.survivors
    if not gp:
        return ExtractResult(status="empty", notes=("11c-peel emptied the graph",))
    f_cont = peel(
        g,
        thr_f,
        AT_MOST,
        within=gp,
        description=f"degree <= 2n/5 = {thr_f} (continuation inside G')",
    )
    fset = f_cont.survivors
    if not fset:
        return ExtractResult(status="empty", notes=("2n/5-peel emptied G'",))

    notes = []
    if not hypotheses:
        notes.append("hypotheses unmet: e(G) or n below the extraction regime")

    fbip = is_bipartite(g, fset)
    if fbip is None:
        odd = shortest_odd_cycle(g, fset)
        forb = None
        if odd.length == 2 * k + 1:
            forb = odd
        else:
            if odd.length < 2 * k + 1:
                forb = lengthen_odd_cycle(g, odd, 2 * k + 1, restrict_to=fset)
        return ExtractResult(
            status="odd_cycle",
            odd_cycle=odd,
            forbidden_cycle=forb,
            notes=tuple(notes + ["dense core F is not bipartite"]),
        )

    u1, u2 = fbip.parts

    # classify G' vertices by c-fold attachment to the core sides
    v1, v2 = set(), set()
    for v in sorted(gp):
        d1 = len(g.neighbors(v) & u1)
        d2 = len(g.neighbors(v) & u2)
        if d1 >= 1 and d2 >= 1 and v not in fset:
            return _odd_cycle_result(
                g,
                fset | {v},
                k,
                notes + [f"vertex {v} attaches to both core sides"],
                lambda: _cycle_from_two_sided_vertex(g, fbip, v, k),
            )
        if d2 >= c or (v in u1):
            v1.add(v)
        elif d1 >= c or (v in u2):
            v2.add(v)
        else:
            return ExtractResult(
                status="unclassified",
                notes=tuple(
                    notes
                    + [f"vertex {v} has fewer than c neighbors in either core side"]
                ),
            )

    for cls, anchor in ((v1, u2), (v2, u1)):
        for x in sorted(cls):
            bad = g.neighbors(x) & cls
            if bad:
                y = min(bad)
                return _odd_cycle_result(
                    g,
                    fset | {x, y},
                    k,
                    notes + [f"edge ({x},{y}) inside one G' class"],
                    lambda: _cycle_from_intra_class_edge(g, fbip, x, y, anchor, k),
                )

    gbip = is_bipartite(g, gp)
    assert gbip is not None, "classified G' must 2-color"

    f_min = min(len(g.neighbors(v) & fset) for v in fset)
    gp_min = min(len(g.neighbors(v) & gp) for v in gp)
    out_f_ok = all(
        5 * len(g.neighbors(v) & fset) < 2 * n for v in g.vertices() if v not in fset
    )
    out_gp_ok = all(
        len(g.neighbors(v) & gp) < 11 * c for v in g.vertices() if v not in gp
    )

    samples = []
    rng = random.Random(sample_seed)
    gp_sorted = sorted(gp)
    same_orders = [h for h in range(5, 2 * k + 2, 2)]
    cross_orders = [s for s in range(6, 2 * k + 3, 2)]
    attempts = 0
    while len(samples) < path_samples and attempts < 20 * path_samples:
        attempts += 1
        u, v = rng.sample(gp_sorted, 2)
        same = (u in v1) == (v in v1)
        pool = same_orders if same else cross_orders
        order = pool[rng.randrange(len(pool))]
        try:
            w = _dense_path_parts(
                g, fset, fbip, frozenset(v1), frozenset(v2), u, v, order
            )
            samples.append(PathSample(u=u, v=v, order=order, witness=w, ok=True))
        except (ConstructionError, PreconditionError):
            samples.append(
                PathSample(
                    u=u, v=v, order=order, witness=PathWitness((u,)), ok=False
                )
            )

    report = DenseReport(
        f_order=len(fset),
        gp_order=len(gp),
        f_min_degree=f_min,
        gp_min_degree=gp_min,
        f_two_connected=is_2_connected(g, fset),
        gp_two_connected=is_2_connected(g, gp),
        f_order_bound_ok=len(fset) >= n - 10 * c,
        gp_order_bound_ok=len(gp) >= n - 2 * c,
        f_degree_bound_ok=5 * f_min > 2 * n,
        gp_degree_bound_ok=gp_min >= 11 * c,
        outside_f_attachment_ok=out_f_ok,
        outside_gp_attachment_ok=out_gp_ok,
        hypotheses_met=hypotheses,
        path_samples=tuple(samples),
    )
    cert = DenseCertificate(
        params=params,
        f_vertices=fset,
        gp_vertices=gp,
        f_bipartition=fbip,
        gp_bipartition=gbip,
        v1=frozenset(v1),
        v2=frozenset(v2),
        gp_trace=gp_trace,
        f_trace_continuation=f_cont,
        report=report,
    )
    return ExtractResult(status="ok", certificate=cert, notes=tuple(notes))


def _odd_cycle_result(g, region, k, notes, construct) -> ExtractResult:
    """Package a certified odd cycle; prefer the targeted length-(2k+1)
    construction, falling back to the shortest odd cycle of the region (the
    region is non-bipartite by the caller's case analysis)."""
    try:
        forb = construct()
        return ExtractResult(
            status="odd_cycle",
            odd_cycle=forb,
            forbidden_cycle=forb,
            notes=tuple(notes),
        )
    except (ConstructionError, PreconditionError, StopIteration):
        odd = shortest_odd_cycle(g, region)
        assert odd is not None
        forb = None
        if odd.length == 2 * k + 1:
            forb = odd
        elif odd.length < 2 * k + 1:
            forb = lengthen_odd_cycle(g, odd, 2 * k + 1, restrict_to=region)
        return ExtractResult(
            status="odd_cycle",
            odd_cycle=odd,
            forbidden_cycle=forb,
            notes=tuple(notes + ["targeted construction failed; fell back"]),
        )


def _cycle_from_two_sided_vertex(g, fbip, v, k) -> CycleWitness:
    """v has neighbors in both core sides: close a forbidden cycle through a
    cross-part core path of order 2k."""
    a = min(g.neighbors(v) & fbip.parts[0])
    b = min(g.neighbors(v) & fbip.parts[1])
    core = greedy_bipartite_path(g, fbip, a, b, 2 * k, avoid=frozenset({v}))
    cyc = CycleWitness((v,) + core.vertices)
    assert verify_cycle(g, cyc, 2 * k + 1)
    return cyc


def _cycle_from_intra_class_edge(g, fbip, x, y, anchor, k) -> CycleWitness:
    """Edge (x, y) inside one G' class: both endpoints hold >= c anchors in
    the same core side; connect two distinct anchors by a same-part core path
    of order 2k-1."""
    ax_pool = sorted(g.neighbors(x) & anchor)
    ay_pool = sorted(g.neighbors(y) & anchor)
    ax = next(a for a in ax_pool if a != x and a != y)
    ay = next(a for a in ay_pool if a not in (ax, x, y))
    core = greedy_bipartite_path(
        g, fbip, ax, ay, 2 * k - 1, avoid=frozenset({x, y})
    )
    cyc = CycleWitness((x,) + core.vertices + (y,))
    assert verify_cycle(g, cyc, 2 * k + 1)
    return cyc


# -- bad paths -----------------------------------------------------------------


def find_bad_path(
    g: Graph,
    gp_vertices: Iterable[int],
    gp_bip: Optional[Bipartition] = None,
) -> Optional[PathWitness]:
    """Shortest parity-violating path re-entering the 2-connected bipartite
    subgraph G' through its containing block.

    Returns None iff that block is bipartite.  A returned path has both
    endpoints in G', all interior vertices outside, and length parity that
    contradicts the 2-coloring (same part: odd; different parts: even).
    """
    gp = frozenset(gp_vertices)
    bip = gp_bip if gp_bip is not None else is_bipartite(g, gp)
    if bip is None or not bip.verify(g) or bip.support != gp:
        raise PreconditionError("G' must come with a valid bipartition")
    if not is_2_connected(g, gp):
        raise PreconditionError("G' must be 2-connected")
    dec = blocks(g)
    bi = dec.block_containing(gp)
    assert bi is not None, "a 2-connected subgraph lies inside one block"
    block = dec.blocks[bi]
    if is_bipartite(g, block) is not None:
        return None
    outside = block - gp
    color = bip.part_of

    # parity-layered BFS lower bound on the bad-walk length
    dist = {}
    dq = []
    for z in sorted(gp):
        for w in sorted(g.neighbors(z) & outside):
            st = (w, (1 + color[z]) % 2)
            if st not in dist:
                dist[st] = 1
                dq.append(st)
    lower = None
    qi = 0
    while qi < len(dq):
        w, par = dq[qi]
        qi += 1
        d = dist[(w, par)]
        for z in g.neighbors(w):
            if z in gp and (par + 1 + color[z]) % 2 == 1:
                lower = d + 1 if lower is None else min(lower, d + 1)
        if lower is not None and d + 1 >= lower:
            continue
        for x in g.neighbors(w):
            if x in outside:
                st = (x, (par + 1) % 2)
                if st not in dist:
                    dist[st] = d + 1
                    dq.append(st)
    assert lower is not None, "non-bipartite block must admit a parity violation"

    exit_dist = {w: None for w in outside}
    frontier = [w for w in sorted(outside) if g.neighbors(w) & gp]
    for w in frontier:
        exit_dist[w] = 1
    qi = 0
    while qi < len(frontier):
        w = frontier[qi]
        qi += 1
        for x in g.neighbors(w):
            if x in outside and exit_dist[x] is None:
                exit_dist[x] = exit_dist[w] + 1
                frontier.append(x)

    for length in range(lower, len(outside) + 2):
        found = _bad_path_of_length(g, gp, color, outside, exit_dist, length)
        if found is not None:
            w = PathWitness(tuple(found))
            assert verify_path(g, w)
            assert _is_bad(color, w)
            return w
    raise ConstructionError(
        "no simple bad path found although the block is non-bipartite"
    )


def _is_bad(color: dict, w: PathWitness) -> bool:
    same = color[w.vertices[0]] == color[w.vertices[-1]]
    return (w.length % 2 == 1) if same else (w.length % 2 == 0)


def _bad_path_of_length(g, gp, color, outside, exit_dist, length):
    for u in sorted(gp):
        starts = sorted(g.neighbors(u) & outside)
        for w0 in starts:
            path = [u, w0]
            used = {w0}
            stack = [iter(sorted(g.neighbors(w0)))]
            while stack:
                cur = path[-1]
                steps_left = length - (len(path) - 1)
                if steps_left == 1:
                    target_parity = (length + color[u] + 1) % 2
                    cand = [
                        z
                        for z in g.neighbors(cur)
                        if z in gp and z != u and color[z] == target_parity
                    ]
                    if cand:
                        return path + [min(cand)]
                    stack.pop()
                    used.discard(path.pop())
                    continue
                advanced = False
                for y in stack[-1]:
                    if y in outside and y not in used and (
                        exit_dist[y] is not None and exit_dist[y] <= steps_left - 1
                    ):
                        path.append(y)
                        used.add(y)
                        stack.append(iter(sorted(g.neighbors(y))))
                        advanced = True
                        break
                if not advanced:
                    stack.pop()
                    used.discard(path.pop())
                    if len(path) == 1:
                        break
    return None


# -- suspension-family certification -------------------------------------------


@dataclass(frozen=True)
class GnrPiece:
    outside: frozenset
    attach: int


@dataclass(frozen=True)
class GnrCertificate:
    """Witness that the graph is a bipartite core with suspended pieces.

    The core is a union of blocks; every component of the complement attaches
    at exactly one core vertex.  The coloring is proper with at most
    max(2, t+1) colors, where t counts the outside vertices.
    """

    n: int
    r: int
    core: frozenset
    core_bipartition: Bipartition
    pieces: tuple
    outside_count: int
    coloring: tuple

    def verify(self, g: Graph) -> bool:
        if g.n != self.n:
            return False
        bip = self.core_bipartition
        if not bip.verify(g) or bip.support != self.core:
            return False
        dec = blocks(g)
        for b in dec.blocks:
            inter = b & self.core
            if inter != b and len(inter) > 1:
                return False
        covered = set(self.core)
        total = 0
        for p in self.pieces:
            if p.attach not in self.core or p.outside & covered:
                return False
            for v in p.outside:
                nb_core = g.neighbors(v) & self.core
                if not nb_core <= {p.attach}:
                    return False
            covered |= p.outside
            total += len(p.outside)
        if covered != set(g.vertices()) or total != self.outside_count:
            return False
        if len(self.coloring) != g.n:
            return False
        for u, v in g.edges():
            if self.coloring[u] == self.coloring[v]:
                return False
        used = len(set(self.coloring))
        return used <= max(2, self.outside_count + 1)


def _best_cores(g: Graph) -> list:
    """Per connected component, the best (largest) valid bipartite core:
    a maximal connected union of bipartite blocks, or a single vertex."""
    dec = blocks(g)
    bip_flags = [is_bipartite(g, b) is not None for b in dec.blocks]
    parent = list(range(len(dec.blocks)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_cut: dict = {}
    for i, b in enumerate(dec.blocks):
        if not bip_flags[i]:
            continue
        for cv in b & dec.cut_vertices:
            by_cut.setdefault(cv, []).append(i)
    for group in by_cut.values():
        for other in group[1:]:
            ra, rb = find(group[0]), find(other)
            if ra != rb:
                parent[rb] = ra
    unions: dict = {}
    for i, b in enumerate(dec.blocks):
        if not bip_flags[i]:
            continue
        unions.setdefault(find(i), set()).update(b)

    cores = []
    for comp in connected_components(g):
        cands = [u for u in unions.values() if u <= comp]
        if cands:
            best = max(cands, key=lambda u: (len(u), -min(u)))
        else:
            best = {min(comp)}
        cores.append(frozenset(best))
    return cores


def gnr_index(g: Graph) -> int:
    """Minimum outside count over valid bipartite cores (summed over
    components for disconnected input)."""
    return g.n - sum(len(c) for c in _best_cores(g))


def gnr_certify(g: Graph, r: int) -> Optional[GnrCertificate]:
    """Certificate that the graph is a bipartite core plus suspended pieces
    with at most r-2 outside vertices; None when the minimum outside count
    exceeds r-2."""
    if r < 2:
        raise InvalidParameterError("need r >= 2")
    cores = _best_cores(g)
    core = frozenset().union(*cores) if cores else frozenset()
    t = g.n - len(core)
    if t > r - 2:
        return None
    bip = is_bipartite(g, core)
    assert bip is not None, "chosen core must be bipartite"
    pieces = []
    for comp in connected_components(g, set(g.vertices()) - core):
        attach_set = set()
        for v in comp:
            attach_set |= g.neighbors(v) & core
        assert len(attach_set) == 1, "piece must attach at exactly one core vertex"
        pieces.append(GnrPiece(outside=comp, attach=min(attach_set)))
    pieces.sort(key=lambda p: min(p.outside))

    coloring = [-1] * g.n
    for v in core:
        coloring[v] = bip.part(v)
    next_color = 2
    for p in pieces:
        ca = coloring[p.attach]
        palette = [1 - ca]
        for v in sorted(p.outside):
            forb = {coloring[w] for w in g.neighbors(v) if coloring[w] != -1}
            pick = None
            for col in palette:
                if col not in forb:
                    pick = col
                    break
            if pick is None:
                pick = next_color
                palette.append(next_color)
                next_color += 1
            coloring[v] = pick
    assert all(c >= 0 for c in coloring)
    cert = GnrCertificate(
        n=g.n,
        r=r,
        core=core,
        core_bipartition=bip,
        pieces=tuple(pieces),
        outside_count=t,
        coloring=tuple(coloring),
    )
    assert cert.verify(g)
    return cert


# -- extremal matcher ----------------------------------------------------------


def match_extremal_suspension(g: Graph, r: int) -> Optional[dict]:
    """Explicit isomorphism onto the canonical extremal suspension, or None.

    Checks the block structure directly: one balanced complete bipartite
    block sharing its cut vertex (in the smaller part) with one r-clique.
    """
    n = g.n
    n_bip = n - r + 1
    if r < 2 or n_bip < 2:
        return None
    dec = blocks(g)
    if len(dec.blocks) != 2 or len(dec.cut_vertices) != 1:
        return None
    sizes = sorted(len(b) for b in dec.blocks)
    if sizes != sorted((n_bip, r)):
        return None
    clique = next(b for b in dec.blocks if len(b) == r)
    tblock = next(b for b in dec.blocks if b is not clique)
    if len(tblock) != n_bip:
        return None
    cut = next(iter(dec.cut_vertices))
    if cut not in clique or cut not in tblock:
        return None
    for u in clique:
        if len(g.neighbors(u) & clique) != r - 1:
            return None
    bip = is_bipartite(g, tblock)
    if bip is None:
        return None
    a_part = min(bip.parts, key=len) if n_bip % 2 == 1 else bip.parts[bip.part(cut)]
    b_part = bip.parts[0] if a_part is bip.parts[1] else bip.parts[1]
    if len(a_part) != n_bip // 2 or len(b_part) != (n_bip + 1) // 2:
        return None
    if cut not in a_part:
        return None
    for u in a_part:
        if g.neighbors(u) & tblock != b_part:
            return None

    target = bipartite_turan_with_clique(n_bip, r)
    smaller_start = (n_bip + 1) // 2
    attach = smaller_start if n_bip % 2 == 1 else 0
    mapping = {}
    if n_bip % 2 == 1:
        small_labels = [x for x in range(smaller_start, n_bip)]
        big_labels = list(range(smaller_start))
    else:
        small_labels = list(range(0, n_bip // 2))
        big_labels = list(range(n_bip // 2, n_bip))
    mapping[cut] = attach
    rest_small = [x for x in small_labels if x != attach]
    for v, lab in zip(sorted(a_part - {cut}), rest_small):
        mapping[v] = lab
    for v, lab in zip(sorted(b_part), big_labels):
        mapping[v] = lab
    for v, lab in zip(sorted(clique - {cut}), range(n_bip, n)):
        mapping[v] = lab
    mapped = {(min(mapping[u], mapping[v]), max(mapping[u], mapping[v]))
              for u, v in g.edges()}
    if mapped != set(target.edges()):
        return None
    return mapping


# -- stability pipeline ----------------------------------------------------------


@dataclass(frozen=True)
class StabilityOutcome:
    """Tagged result of the stability pipeline.

    kind is one of "cycle_found", "gnr_member", "extremal_match",
    "undecided"; exactly the matching payload field is set.
    """

    kind: str
    cycle: Optional[CycleWitness] = None
    gnr: Optional[GnrCertificate] = None
    extremal_map: Optional[dict] = None
    dense: Optional[DenseCertificate] = None
    diagnostics: dict = field(default_factory=dict)


def stability_decompose(
    g: Graph,
    params: AnalysisParams,
    path_samples: int = 8,
    sample_seed: int = 0,
) -> StabilityOutcome:
    """Full pipeline: dense-pair extraction, block inspection, suspension
    certification or odd-cycle construction.  Undecided is the honest
    fallback outside the theorem hypotheses."""
    diag = params.theorem_regime(g)
    ext = extract_dense_pair(g, params, path_samples=path_samples, sample_seed=sample_seed)
    diag["extract_status"] = ext.status
    diag["extract_notes"] = list(ext.notes)
    if ext.status == "odd_cycle":
        if ext.forbidden_cycle is not None:
            return StabilityOutcome(
                kind="cycle_found", cycle=ext.forbidden_cycle, diagnostics=diag
            )
        diag["odd_cycle_length"] = ext.odd_cycle.length
        return StabilityOutcome(kind="undecided", diagnostics=diag)
    if ext.status in ("empty", "unclassified"):
        return StabilityOutcome(kind="undecided", diagnostics=diag)

    cert = ext.certificate
    dec = blocks(g)
    bi = dec.block_containing(cert.gp_vertices)
    assert bi is not None
    block = dec.blocks[bi]
    diag["block_order"] = len(block)

    if is_bipartite(g, block) is not None:
        gnr = gnr_certify(g, params.r)
        if gnr is not None:
            return StabilityOutcome(
                kind="gnr_member", gnr=gnr, dense=cert, diagnostics=diag
            )
        t = gnr_index(g)
        diag["gnr_index"] = t
        if t == params.r - 1:
            mp = match_extremal_suspension(g, params.r)
            if mp is not None:
                return StabilityOutcome(
                    kind="extremal_match",
                    extremal_map=mp,
                    dense=cert,
                    diagnostics=diag,
                )
        return StabilityOutcome(kind="undecided", dense=cert, diagnostics=diag)

    bad = find_bad_path(g, cert.gp_vertices, cert.gp_bipartition)
    assert bad is not None
    h = bad.order
    diag["bad_path_order"] = h
    closure_order = 2 * params.k + 3 - h
    if closure_order >= 3:
        try:
            inner = dense_pair_path(
                g,
                cert,
                bad.vertices[0],
                bad.vertices[-1],
                closure_order,
                avoid=frozenset(bad.vertices[1:-1]),
            )
            cyc_vertices = bad.vertices + tuple(reversed(inner.vertices[1:-1]))
            cyc = CycleWitness(cyc_vertices)
            if verify_cycle(g, cyc, params.forbidden_length):
                return StabilityOutcome(
                    kind="cycle_found", cycle=cyc, dense=cert, diagnostics=diag
                )
            diag["closure_failure"] = "assembled cycle failed verification"
        except (ConstructionError, PreconditionError) as exc:
            diag["closure_failure"] = str(exc)
    else:
        diag["closure_failure"] = f"bad path order {h} leaves no room for a closure path"
    return StabilityOutcome(kind="undecided", dense=cert, diagnostics=diag)
