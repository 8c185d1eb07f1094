"""Adjacency spectral radius, equitable quotients, and spectral inequality
checkers.

Power iteration runs per connected component with an adaptive diagonal shift
(iterating on A + cI with c tracking the Rayleigh estimate), which kills the
+-lambda oscillation on bipartite graphs while preserving eigenvectors.  All
characteristic polynomials carry exact integer coefficients; root extraction
is bracketed bisection driven by exact Sturm counts, never closed-form
radicals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
import scipy.sparse as sps

from .errors import BracketError, InvalidParameterError, PreconditionError
from .graph import Graph, connected_components, induced_subgraph

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 1_000_000

# explicit adjacency of the dense structured families above this order would
# not fit desk memory; they switch to an implicit matrix-free operator
EXPLICIT_LIMIT = 2_000


@dataclass(frozen=True, eq=False)
class SpectralResult:
    """Spectral radius estimate with its Perron vector (max coordinate 1)."""

    lam: float
    perron: np.ndarray
    residual: float
    iterations: int
    converged: bool


def _power_iteration(
    matvec: Callable[[np.ndarray], np.ndarray],
    size: int,
    tol: float,
    max_iter: int,
) -> tuple[float, np.ndarray, float, int, bool]:
    x = np.full(size, 1.0 / math.sqrt(size))
    shift = 1.0
    lam = 0.0
    res = math.inf
    for it in range(1, max_iter + 1):
        ax = matvec(x)
        lam = float(x @ ax)
        xmax = float(x.max())
        res = float(np.abs(ax - lam * x).max()) / xmax
        if res <= tol:
            return lam, x / xmax, res, it, True
        y = ax + shift * x
        x = y / np.linalg.norm(y)
        shift = max(1.0, lam)
    xmax = float(x.max())
    return lam, x / xmax, res, max_iter, False


def _component_csr(g: Graph, comp: Sequence[int]):
    comp_sorted = sorted(comp)
    index = {v: i for i, v in enumerate(comp_sorted)}
    rows = []
    cols = []
    for v in comp_sorted:
        iv = index[v]
        for w in g.neighbors(v):
            rows.append(iv)
            cols.append(index[w])
    data = np.ones(len(rows), dtype=np.float64)
    k = len(comp_sorted)
    return (
        sps.csr_matrix((data, (rows, cols)), shape=(k, k)),
        comp_sorted,
    )


def spectral_radius(
    g: Graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> SpectralResult:
    """Power iteration per connected component; lambda = max over components.

    The Perron vector is supported on the attaining component (ties broken
    toward the component containing the smallest vertex label) and scaled to
    max coordinate exactly 1.
    """
    if tol <= 0:
        raise InvalidParameterError("tolerance must be positive")
    if g.n == 0:
        return SpectralResult(0.0, np.zeros(0), 0.0, 0, True)
    best = None
    for comp in connected_components(g):
        if len(comp) == 1 or all(not g.neighbors(v) for v in comp):
            cand = (0.0, sorted(comp), np.ones(len(comp)), 0.0, 0, True)
        else:
            mat, order = _component_csr(g, comp)
            lam, vec, res, its, ok = _power_iteration(
                lambda x, m=mat: m @ x, len(order), tol, max_iter
            )
            cand = (lam, order, vec, res, its, ok)
        if best is None or cand[0] > best[0]:
            best = cand
    lam, order, vec, res, its, ok = best
    perron = np.zeros(g.n)
    for i, v in enumerate(order):
        perron[v] = vec[i]
    return SpectralResult(lam=lam, perron=perron, residual=res, iterations=its, converged=ok)


def lambda_dense(g: Graph) -> float:
    """Largest adjacency eigenvalue by dense symmetric solve.

    Bulk-sweep helper (enumeration-scale graphs); the certified path is
    spectral_radius, against which this agrees in tests.
    """
    if g.n == 0:
        return 0.0
    a = np.zeros((g.n, g.n))
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1.0
    return float(np.linalg.eigvalsh(a)[-1])


# -- equitable partitions ----------------------------------------------------


@dataclass(frozen=True)
class QuotientMatrix:
    """Neighbor-count matrix of a vertex partition, with equitability flag."""

    parts: tuple
    entries: tuple
    equitable: bool

    def leading_eigenvalue(self) -> float:
        if not self.equitable:
            raise PreconditionError(
                "leading eigenvalue of a non-equitable quotient is undefined here"
            )
        k = len(self.parts)
        mat = np.array(self.entries, dtype=np.float64)
        if k <= 8:
            return float(max(np.linalg.eigvals(mat).real))
        lam, _, _, _, ok = _power_iteration(
            lambda x: mat @ x, k, 1e-12, 100_000
        )
        if not ok:
            raise PreconditionError("quotient power iteration failed to converge")
        return lam


def quotient_matrix(g: Graph, partition: Iterable[Iterable[int]]) -> QuotientMatrix:
    parts = tuple(frozenset(p) for p in partition)
    if any(not p for p in parts):
        raise InvalidParameterError("partition parts must be nonempty")
    cover = set()
    for p in parts:
        if cover & p:
            raise InvalidParameterError("partition parts must be disjoint")
        cover |= p
    if cover != set(g.vertices()):
        raise InvalidParameterError("partition must cover the vertex set")
    entries = []
    equitable = True
    for p in parts:
        row = []
        rep = min(p)
        for qt in parts:
            counts = {len(g.neighbors(v) & qt) for v in p}
            if len(counts) > 1:
                equitable = False
            row.append(len(g.neighbors(rep) & qt))
        entries.append(tuple(row))
    return QuotientMatrix(parts=parts, entries=tuple(entries), equitable=equitable)


def coarsest_equitable_partition(g: Graph) -> tuple:
    """Degree-refinement fixed point: the coarsest equitable partition."""
    sig = {v: g.degree(v) for v in g.vertices()}
    while True:
        classes: dict = {}
        for v in g.vertices():
            classes.setdefault(sig[v], []).append(v)
        ids = {s: i for i, s in enumerate(sorted(classes))}
        new_sig = {}
        for v in g.vertices():
            counts = [0] * len(ids)
            for w in g.neighbors(v):
                counts[ids[sig[w]]] += 1
            new_sig[v] = (ids[sig[v]], tuple(counts))
        if len(set(new_sig.values())) == len(set(sig.values())):
            break
        sig = new_sig
    groups: dict = {}
    for v in g.vertices():
        groups.setdefault(sig[v], []).append(v)
    return tuple(frozenset(vs) for _, vs in sorted(groups.items(), key=lambda kv: min(kv[1])))


# -- exact quartics ----------------------------------------------------------


@dataclass(frozen=True)
class QuarticPoly:
    """Monic quartic with exact integer coefficients, descending powers."""

    coeffs: tuple  # (1, c3, c2, c1, c0)
    provenance: str

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def derivative_coeffs(self) -> tuple:
        c = self.coeffs
        return (4 * c[0], 3 * c[1], 2 * c[2], c[3])


@dataclass(frozen=True)
class SuspensionQuartic:
    """Characteristic quartic of the 4-part suspension quotient.

    ``quartic`` is the exact determinant expansion of xI - M for
    M = [[0,b,0,0],[a,0,0,1],[0,0,q-2,1],[0,b,q-1,0]].  ``variant`` is an
    alternate closed form whose x^2 coefficient is larger by one; the two are
    audited against power iteration (see the quartic-audit suite), and all
    lambda computations use ``quartic``.
    """

    a: int
    b: int
    q: int
    matrix: tuple
    quartic: QuarticPoly
    variant: QuarticPoly


def charpoly_suspension_quotient(a: int, b: int, q: int) -> SuspensionQuartic:
    if a < 0 or b < 1 or q < 2:
        raise InvalidParameterError(f"need a >= 0, b >= 1, q >= 2; got {(a, b, q)}")
    matrix = ((0, b, 0, 0), (a, 0, 0, 1), (0, 0, q - 2, 1), (0, b, q - 1, 0))
    direct = _charpoly4(matrix)
    assert direct == (
        1,
        -(q - 2),
        -((a + 1) * b + q - 1),
        (a + 1) * b * (q - 2),
        a * b * (q - 1),
    )
    variant = (
        1,
        -(q - 2),
        -((a + 1) * b + q - 2),
        (a + 1) * b * (q - 2),
        a * b * (q - 1),
    )
    return SuspensionQuartic(
        a=a,
        b=b,
        q=q,
        matrix=matrix,
        quartic=QuarticPoly(direct, provenance="determinant-expansion"),
        variant=QuarticPoly(variant, provenance="audit-variant"),
    )


def _charpoly4(m: tuple) -> tuple:
    """det(xI - M) for an integer 4x4, by exact cofactor expansion over
    integer polynomials (ascending coefficient lists)."""

    def pmul(p, q):
        out = [0] * (len(p) + len(q) - 1)
        for i, pi in enumerate(p):
            for j, qj in enumerate(q):
                out[i + j] += pi * qj
        return out

    def padd(p, q):
        out = [0] * max(len(p), len(q))
        for i, pi in enumerate(p):
            out[i] += pi
        for j, qj in enumerate(q):
            out[j] += qj
        return out

    def pneg(p):
        return [-c for c in p]

    # entries of xI - M as ascending-coefficient polynomials
    ent = [
        [[-m[i][j], 1] if i == j else [-m[i][j]] for j in range(4)]
        for i in range(4)
    ]

    def det(rows, cols):
        if len(rows) == 1:
            return ent[rows[0]][cols[0]]
        acc = [0]
        r0 = rows[0]
        for k, c in enumerate(cols):
            minor = det(rows[1:], cols[:k] + cols[k + 1 :])
            term = pmul(ent[r0][c], minor)
            acc = padd(acc, term if k % 2 == 0 else pneg(term))
        return acc

    asc = det((0, 1, 2, 3), (0, 1, 2, 3))
    coeffs = list(reversed(asc))
    while len(coeffs) < 5:
        coeffs.append(0)
    assert coeffs[0] == 1
    return tuple(coeffs)


# -- Sturm bisection ---------------------------------------------------------


def _sturm_chain(coeffs: Sequence[int]):
    def norm(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def polyrem(p, q):
        p = p[:]
        while p and len(p) >= len(q):
            f = p[-1] / q[-1]
            shift = len(p) - len(q)
            for i, qc in enumerate(q):
                p[i + shift] -= f * qc
            p.pop()  # leading term cancels exactly
            p = norm(p)
        return p

    p0 = norm([Fraction(c) for c in reversed(coeffs)])
    p1 = norm([i * c for i, c in enumerate(p0)][1:])
    chain = [p0, p1]
    while chain[-1]:
        rem = polyrem(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return [c for c in chain if c]


def _sign_changes(chain, x: Fraction) -> int:
    signs = []
    for p in chain:
        acc = Fraction(0)
        for c in reversed(p):
            acc = acc * x + c
        if acc != 0:
            signs.append(1 if acc > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def largest_real_root(
    p: QuarticPoly, bracket_hi: Optional[float] = None, width: float = 1e-12
) -> float:
    """Largest real root by Sturm-count bisection to the requested width.

    Requires p(bracket_hi) > 0 and at least one real root below it; the
    default upper bracket is the Cauchy bound.
    """
    coeffs = p.coeffs
    if bracket_hi is None:
        hi = Fraction(1 + max(abs(c) for c in coeffs))
    else:
        hi = Fraction(bracket_hi)
    if p(hi) <= 0:
        raise BracketError(f"p(bracket_hi={float(hi)}) must be positive")
    lo = -Fraction(1 + max(abs(c) for c in coeffs))
    chain = _sturm_chain(coeffs)
    if _sign_changes(chain, lo) - _sign_changes(chain, hi) < 1:
        raise BracketError("no real root below the bracket")
    while float(hi - lo) > width:
        mid = (lo + hi) / 2
        pm = p(mid)
        n_above = _sign_changes(chain, mid) - _sign_changes(chain, hi)
        if pm == 0 and n_above == 0:
            return float(mid)
        if n_above >= 1:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


# -- structured suspension lambdas -------------------------------------------


class _SuspensionOperator:
    """Matrix-free adjacency operator of the suspension family member.

    Vertex order: a smaller-side vertices, b larger-side vertices, q-1 clique
    vertices, then the shared vertex.  Identical action to the explicit
    graph's adjacency matrix, in O(n) per product.
    """

    def __init__(self, a: int, b: int, q: int):
        self.a, self.b, self.q = a, b, q
        self.size = a + b + (q - 1) + 1

    def matvec(self, x: np.ndarray) -> np.ndarray:
        a, b, q = self.a, self.b, self.q
        sa = float(x[:a].sum())
        sb = float(x[a : a + b].sum())
        clique = x[a + b : a + b + q - 1]
        sc = float(clique.sum())
        xu = float(x[-1])
        y = np.empty_like(x)
        y[:a] = sb
        y[a : a + b] = sa + xu
        y[a + b : a + b + q - 1] = (sc - clique) + xu
        y[-1] = sb + sc
        return y


def suspension_graph_params(n_bip: int, q: int) -> tuple[int, int, int]:
    """(a, b, q) for the balanced bipartite graph on n_bip vertices with a
    K_q suspended at a smaller-part vertex."""
    if n_bip < 2 or q < 2:
        raise InvalidParameterError("need n_bip >= 2 and q >= 2")
    return n_bip // 2 - 1, (n_bip + 1) // 2, q


def suspension_lambda_quotient(n_bip: int, q: int) -> float:
    a, b, qq = suspension_graph_params(n_bip, q)
    sq = charpoly_suspension_quotient(a, b, qq)
    return largest_real_root(sq.quartic, bracket_hi=float(n_bip + q))


def suspension_lambda_power(
    n_bip: int, q: int, tol: float = 1e-9, max_iter: int = DEFAULT_MAX_ITER
) -> SpectralResult:
    """Vertex-level power iteration for the same graph.

    Explicit Graph up to EXPLICIT_LIMIT vertices, implicit structured
    operator beyond (the operator acts identically to the explicit adjacency
    matrix; the edge set itself would not fit in memory).  The per-coordinate
    residual of a graph with lambda near n/2 sits on a float64 noise floor
    proportional to lambda, so the requested tolerance is floored at
    256 eps lambda-bound before iterating.
    """
    a, b, qq = suspension_graph_params(n_bip, q)
    n = a + b + qq
    eff_tol = max(tol, 256 * float(np.finfo(np.float64).eps) * (n_bip / 2 + qq))
    if n <= EXPLICIT_LIMIT:
        from .construct import bipartite_turan_with_clique

        g = bipartite_turan_with_clique(n_bip, qq)
        return spectral_radius(g, tol=eff_tol, max_iter=max_iter)
    op = _SuspensionOperator(a, b, qq)
    lam, vec, res, its, ok = _power_iteration(op.matvec, op.size, eff_tol, max_iter)
    return SpectralResult(lam=lam, perron=vec, residual=res, iterations=its, converged=ok)


def lambda_extremal(n: int, r: int, tol: float = 1e-8) -> float:
    """lambda of the extremal suspension on n vertices, two independent ways.

    Returns the quotient value (quartic root); asserts the vertex-level power
    iteration agrees within max(tol, 1e-8)."""
    if r < 2 or n < r + 2:
        raise InvalidParameterError(f"need r >= 2 and n >= r+2, got n={n}, r={r}")
    n_bip = n - r + 1
    lam_q = suspension_lambda_quotient(n_bip, r)
    power = suspension_lambda_power(n_bip, r)
    agreement = max(tol, 1e-8)
    if not power.converged or abs(lam_q - power.lam) > agreement:
        raise PreconditionError(
            f"quotient/power disagreement: {lam_q} vs {power.lam} "
            f"(converged={power.converged})"
        )
    return lam_q


def lambda_star_family(n: int, r: int) -> float:
    """lambda of the exactly-(r-2)-outside maximizer (quotient route)."""
    if r < 3 or n < r + 2:
        raise InvalidParameterError(f"need r >= 3 and n >= r+2, got n={n}, r={r}")
    return suspension_lambda_quotient(n - r + 2, r - 1)


# -- inequality checkers -----------------------------------------------------


@dataclass(frozen=True)
class SunDasCheck:
    lhs: float
    rhs: float
    holds: bool


def sun_das_check(g: Graph, v: int, tol: float = 1e-8) -> SunDasCheck:
    """Check lambda^2(G - v) >= lambda^2(G) - 2 d(v) within tolerance."""
    if not 0 <= v < g.n:
        raise InvalidParameterError(f"vertex {v} not in graph")
    lam_full = spectral_radius(g).lam
    keep = [w for w in g.vertices() if w != v]
    sub, _ = induced_subgraph(g, keep)
    lam_del = spectral_radius(sub).lam if sub.n else 0.0
    lhs = lam_del**2
    rhs = lam_full**2 - 2 * g.degree(v)
    return SunDasCheck(lhs=lhs, rhs=rhs, holds=lhs >= rhs - tol)


def zls_threshold(m: int, two_ell: int) -> float:
    """Spectral threshold above which all cycle lengths up to 2*ell + 2 occur:
    (ell - 1/2 + sqrt(4m + (ell - 1/2)^2)) / 2 with ell = two_ell / 2.

    The radicand is assembled exactly in integers: the value equals
    ((two_ell - 1) + sqrt(16 m + (two_ell - 1)^2)) / 4.
    """
    if two_ell < 1 or m < 0:
        raise InvalidParameterError("need two_ell >= 1 and m >= 0")
    d = two_ell - 1
    return (d + math.sqrt(16 * m + d * d)) / 4.0


def rotate(g: Graph, vi: int, vj: int, moved: Iterable[int]) -> Graph:
    """Rewire the edges from vj to S over to vi (S inside N(vj) \\ N(vi))."""
    s = frozenset(moved)
    if not s:
        raise PreconditionError("S must be nonempty")
    if vi in s or vj in s:
        raise PreconditionError("S may not contain vi or vj")
    if not s <= g.neighbors(vj):
        raise PreconditionError("S must be neighbors of vj")
    if s & g.neighbors(vi):
        raise PreconditionError("S must avoid neighbors of vi")
    edges = set()
    for u, v in g.edges():
        if (u == vj and v in s) or (v == vj and u in s):
            continue
        edges.add((u, v))
    for w in s:
        edges.add((min(vi, w), max(vi, w)))
    return Graph.from_edges(g.n, sorted(edges))


@dataclass(frozen=True)
class RotationReport:
    rewired: Graph
    lam_before: float
    lam_after: float
    perron_condition: bool
    increased: bool


def assert_rotation_increases(
    g: Graph, vi: int, vj: int, moved: Iterable[int], slack: float = 1e-10
) -> RotationReport:
    """Rewire and check the strict spectral increase (x_i >= x_j required)."""
    before = spectral_radius(g)
    cond = before.perron[vi] >= before.perron[vj] - 1e-12
    rewired = rotate(g, vi, vj, moved)
    after = spectral_radius(rewired)
    increased = after.lam > before.lam - slack
    if cond and not increased:
        raise PreconditionError(
            f"rotation failed to increase lambda: {before.lam} -> {after.lam}"
        )
    return RotationReport(
        rewired=rewired,
        lam_before=before.lam,
        lam_after=after.lam,
        perron_condition=cond,
        increased=increased,
    )


@dataclass(frozen=True)
class ClassicalBounds:
    lam: float
    order_bound: float
    size_bound_sq: float
    holds_order: bool
    holds_size: bool


def classical_bounds(g: Graph, r: int, tol: float = 1e-8) -> ClassicalBounds:
    """Evaluate lambda <= (1 - 1/r) n and lambda^2 <= (1 - 1/r) 2m.

    Meaningful when the caller asserts the graph is K_{r+1}-free."""
    if r < 2:
        raise InvalidParameterError("need r >= 2")
    lam = spectral_radius(g).lam
    ob = (1 - 1 / r) * g.n
    sb = (1 - 1 / r) * 2 * g.m
    return ClassicalBounds(
        lam=lam,
        order_bound=ob,
        size_bound_sq=sb,
        holds_order=lam <= ob + tol,
        holds_size=lam * lam <= sb + tol,
    )
