import math
import random

import numpy as np
import pytest

from oddstab.construct import (
    bipartite_turan_with_clique,
    c5_blowup,
    extremal_suspension,
    turan,
)
from oddstab.errors import BracketError, PreconditionError
from oddstab.graph import Graph
from oddstab.spectral import (
    QuarticPoly,
    QuotientMatrix,
    assert_rotation_increases,
    charpoly_suspension_quotient,
    classical_bounds,
    coarsest_equitable_partition,
    lambda_dense,
    lambda_extremal,
    lambda_star_family,
    largest_real_root,
    quotient_matrix,
    rotate,
    spectral_radius,
    sun_das_check,
    suspension_lambda_power,
    suspension_lambda_quotient,
    zls_threshold,
)


def random_graph(rng, n, p):
    return Graph.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    )


class TestSpectralRadius:
    def test_complete_bipartite(self):
        res = spectral_radius(turan(6, 2))
        assert abs(res.lam - 3.0) < 1e-9
        assert res.converged and res.residual <= 1e-10

    def test_pentagon_two_regular(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
        assert abs(spectral_radius(g).lam - 2.0) < 1e-9

    def test_square_plus_pendant_closed_form(self):
        g = bipartite_turan_with_clique(4, 2)
        want = math.sqrt((5 + math.sqrt(17)) / 2)
        assert abs(spectral_radius(g).lam - want) < 1e-9

    def test_perron_properties(self):
        res = spectral_radius(extremal_suspension(12, 3))
        x = res.perron
        assert abs(x.max() - 1.0) < 1e-12
        assert (x > 0).all()

    def test_eigen_equation_residual(self):
        rng = random.Random(2)
        for _ in range(25):
            g = random_graph(rng, rng.randint(2, 20), 0.4)
            res = spectral_radius(g, tol=1e-10)
            assert res.converged
            worst = 0.0
            for v in g.vertices():
                s = sum(res.perron[w] for w in g.neighbors(v))
                worst = max(worst, abs(res.lam * res.perron[v] - s))
            assert worst <= 1e-9

    def test_disconnected_max_component_and_support(self):
        # triangle (lambda 2) far component vs an edge (lambda 1)
        g = Graph.from_edges(5, [(0, 1), (2, 3), (3, 4), (2, 4)])
        res = spectral_radius(g)
        assert abs(res.lam - 2.0) < 1e-10
        assert res.perron[0] == 0.0 and res.perron[1] == 0.0
        assert min(res.perron[2:]) > 0

    def test_tie_breaks_toward_smallest_label_component(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        res = spectral_radius(g)
        assert res.perron[0] > 0 and res.perron[3] == 0.0

    def test_edgeless(self):
        res = spectral_radius(Graph.from_edges(3, []))
        assert res.lam == 0.0 and res.converged

    def test_agrees_with_dense_solver(self):
        rng = random.Random(11)
        for _ in range(40):
            g = random_graph(rng, rng.randint(1, 24), rng.uniform(0.1, 0.8))
            assert abs(spectral_radius(g).lam - lambda_dense(g)) < 1e-8


class TestQuotient:
    def test_balanced_bipartite(self):
        qm = quotient_matrix(turan(6, 2), [{0, 1, 2}, {3, 4, 5}])
        assert qm.entries == ((0, 3), (3, 0)) and qm.equitable
        assert abs(qm.leading_eigenvalue() - 3.0) < 1e-10

    def test_four_part_suspension_partition(self):
        g = bipartite_turan_with_clique(4, 2)  # parts B1'={1}, B2={2,3}, tip={4}, u*={0}
        qm = quotient_matrix(g, [{1}, {2, 3}, {4}, {0}])
        assert qm.equitable
        assert qm.entries == ((0, 2, 0, 0), (1, 0, 0, 1), (0, 0, 0, 1), (0, 2, 1, 0))

    def test_unbalanced_partition_not_equitable(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
        qm = quotient_matrix(g, [{0, 1}, {2, 3, 4}])
        assert not qm.equitable
        with pytest.raises(PreconditionError):
            qm.leading_eigenvalue()

    def test_equitable_quotient_matches_graph_lambda(self):
        for n, r in [(10, 3), (50, 4), (200, 6)]:
            g = extremal_suspension(n, r)
            parts = coarsest_equitable_partition(g)
            qm = quotient_matrix(g, parts)
            assert qm.equitable
            assert abs(qm.leading_eigenvalue() - spectral_radius(g).lam) <= 1e-8

    def test_equitable_quotient_grid_up_to_1e4(self):
        # the canonical 4-part partition of the construction, across scales
        from oddstab.spectral import charpoly_suspension_quotient, suspension_graph_params

        for n in (10, 50, 200, 10_000):
            for r in (3, 6, 10):
                if n < r + 2:
                    continue
                a, b, q = suspension_graph_params(n - r + 1, r)
                sq = charpoly_suspension_quotient(a, b, q)
                parts = (
                    frozenset(range(a)),
                    frozenset(range(a, a + b)),
                    frozenset(range(a + b, a + b + q - 1)),
                    frozenset({a + b + q - 1}),
                )
                qm = QuotientMatrix(parts=parts, entries=sq.matrix, equitable=True)
                lam_q = qm.leading_eigenvalue()
                lam_p = suspension_lambda_power(n - r + 1, r).lam
                assert abs(lam_q - lam_p) <= 1e-8, (n, r)


class TestQuartic:
    def test_direct_expansion_coefficients(self):
        sq = charpoly_suspension_quotient(1, 2, 2)
        assert sq.quartic.coeffs == (1, 0, -5, 0, 2)
        assert sq.variant.coeffs == (1, 0, -4, 0, 2)

    def test_variant_differs_by_exactly_x_squared(self):
        rng = random.Random(0)
        for _ in range(30):
            a, b, q = rng.randint(0, 9), rng.randint(1, 9), rng.randint(2, 8)
            sq = charpoly_suspension_quotient(a, b, q)
            diff = [x - y for x, y in zip(sq.variant.coeffs, sq.quartic.coeffs)]
            assert diff == [0, 0, 1, 0, 0]

    def test_matches_numpy_charpoly(self):
        rng = random.Random(4)
        for _ in range(20):
            a, b, q = rng.randint(0, 8), rng.randint(1, 8), rng.randint(2, 7)
            sq = charpoly_suspension_quotient(a, b, q)
            m = np.array(sq.matrix, dtype=float)
            want = np.poly(m)  # monic characteristic polynomial coefficients
            got = np.array(sq.quartic.coeffs, dtype=float)
            assert np.allclose(want, got, atol=1e-6)

    def test_degenerate_core_collapses_to_star(self):
        # a = 0, q = 2: the explicit graph is a star on b+2 vertices
        for b in (1, 2, 5):
            sq = charpoly_suspension_quotient(0, b, 2)
            lam = largest_real_root(sq.quartic, float(b + 4))
            assert abs(lam - math.sqrt(b + 1)) < 1e-10


class TestLargestRealRoot:
    def test_biquadratics(self):
        assert abs(
            largest_real_root(QuarticPoly((1, 0, -5, 0, 2), "t"), 10.0)
            - math.sqrt((5 + math.sqrt(17)) / 2)
        ) < 1e-11
        assert abs(
            largest_real_root(QuarticPoly((1, 0, -4, 0, 2), "t"), 10.0)
            - math.sqrt(2 + math.sqrt(2))
        ) < 1e-11

    def test_zero_padding_stand_in(self):
        assert abs(largest_real_root(QuarticPoly((1, 0, 0, 0, 0), "t"), 5.0)) < 1e-12

    def test_bracket_failure(self):
        with pytest.raises(BracketError):
            largest_real_root(QuarticPoly((1, 0, -4, 0, 2), "t"), 1.0)  # p(1) < 0

    def test_against_numpy_roots(self):
        rng = random.Random(9)
        for _ in range(40):
            sq = charpoly_suspension_quotient(
                rng.randint(0, 10), rng.randint(1, 10), rng.randint(2, 8)
            )
            roots = np.roots(np.array(sq.quartic.coeffs, dtype=float))
            want = max(r.real for r in roots if abs(r.imag) < 1e-9)
            got = largest_real_root(sq.quartic, float(40))
            assert abs(want - got) < 1e-8


class TestLambdaExtremal:
    def test_dual_route_agreement_small(self):
        for n, r in [(8, 3), (20, 4), (57, 5)]:
            lam = lambda_extremal(n, r)
            g = extremal_suspension(n, r)
            assert abs(lam - spectral_radius(g).lam) <= 1e-8

    def test_large_implicit_operator(self):
        lam = lambda_extremal(100_000, 5)
        # the bipartite part alone pins lambda just below n_bip/2
        assert 49997.0 < lam < 49999.0

    def test_r2_degenerate_path(self):
        lam = lambda_extremal(10, 2)
        g = extremal_suspension(10, 2)
        assert abs(lam - spectral_radius(g).lam) <= 1e-8

    def test_above_bipartite_part(self):
        for n, r in [(30, 3), (60, 4), (101, 5)]:
            lam = lambda_extremal(n, r)
            base = math.sqrt((n - r + 1) ** 2 // 4)
            assert lam > base

    def test_star_family_monotone_spot(self):
        assert lambda_star_family(200, 4) < lambda_star_family(200, 3)


class TestInequalities:
    def test_sun_das_triangle(self):
        chk = sun_das_check(turan(3, 3), 0)
        assert chk.holds and abs(chk.lhs - 1.0) < 1e-8 and abs(chk.rhs - 0.0) < 1e-8

    def test_sun_das_star_center_negative_rhs(self):
        g = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
        chk = sun_das_check(g, 0)
        assert chk.holds and chk.rhs < 0

    def test_sun_das_random_sweep(self):
        rng = random.Random(21)
        for _ in range(30):
            g = random_graph(rng, rng.randint(2, 16), rng.uniform(0.2, 0.8))
            for v in g.vertices():
                assert sun_das_check(g, v).holds

    def test_zls_values(self):
        assert abs(zls_threshold(10, 2) - (0.5 + math.sqrt(40.25)) / 2) < 1e-12
        assert zls_threshold(0, 1) == 0.0
        thr = zls_threshold(100, 3)
        assert abs(thr - 10.51249) < 1e-4
        assert spectral_radius(turan(20, 2)).lam < thr

    def test_rotation_path_to_star(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        rep = assert_rotation_increases(g, 1, 2, [3])
        assert abs(rep.lam_before - (1 + math.sqrt(5)) / 2) < 1e-9
        assert abs(rep.lam_after - math.sqrt(3)) < 1e-9
        assert rep.rewired.has_edge(1, 3) and not rep.rewired.has_edge(2, 3)

    def test_rotation_preconditions(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        with pytest.raises(PreconditionError):
            rotate(g, 1, 2, [])
        with pytest.raises(PreconditionError):
            rotate(g, 1, 2, [1])
        with pytest.raises(PreconditionError):
            rotate(g, 3, 2, [3])

    def test_rotation_random_trees_toward_higher_perron(self):
        rng = random.Random(17)
        done = 0
        while done < 200:
            n = rng.randint(4, 14)
            edges = [(rng.randrange(i), i) for i in range(1, n)]
            g = Graph.from_edges(n, edges)
            leaves = [v for v in g.vertices() if g.degree(v) == 1]
            leaf = rng.choice(leaves)
            parent = next(iter(g.neighbors(leaf)))
            res = spectral_radius(g)
            cand = [
                v
                for v in g.vertices()
                if v not in (leaf, parent)
                and res.perron[v] >= res.perron[parent]
                and leaf not in g.neighbors(v)
            ]
            if not cand:
                continue
            target = max(cand, key=lambda v: res.perron[v])
            rep = assert_rotation_increases(g, target, parent, [leaf])
            assert rep.lam_after > rep.lam_before - 1e-10
            done += 1

    def test_classical_bounds_turan_equality(self):
        rep = classical_bounds(turan(9, 3), 3)
        assert abs(rep.lam - 6.0) < 1e-8
        assert abs(rep.order_bound - 6.0) < 1e-12
        assert rep.holds_order and rep.holds_size

    def test_classical_bounds_pentagon(self):
        rep = classical_bounds(
            Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]), 2
        )
        assert rep.holds_order and rep.holds_size

    def test_classical_bounds_triangle_free_sweep(self):
        rng = random.Random(30)
        for _ in range(25):
            a = rng.randint(1, 6)
            b = rng.randint(1, 6)
            c = rng.randint(1, 6)
            g = c5_blowup(a, b, c)
            if g.n > 30:
                continue
            rep = classical_bounds(g, 2)
            assert rep.holds_order and rep.holds_size


class TestPowerVsQuotientGrid:
    def test_mixed_sizes(self):
        for n in (20, 100, 1000):
            for r in (3, 7):
                lam_q = suspension_lambda_quotient(n - r + 1, r)
                lam_p = suspension_lambda_power(n - r + 1, r, tol=1e-9)
                assert lam_p.converged
                assert abs(lam_q - lam_p.lam) <= 1e-8

    def test_implicit_operator_equals_explicit_graph(self):
        # same construction just under and over the explicit limit
        from oddstab.spectral import _SuspensionOperator

        g = bipartite_turan_with_clique(17, 4)
        a, b = 17 // 2 - 1, (17 + 1) // 2
        op = _SuspensionOperator(a, b, 4)
        assert op.size == g.n
        rng = np.random.default_rng(0)
        x = rng.random(g.n)
        adj = np.zeros((g.n, g.n))
        # operator vertex order: a smaller-side, b larger-side, clique, shared
        smaller = sorted(
            v for v in range(17) if len(g.neighbors(v)) == (17 + 1) // 2
        )
        cut = next(v for v in range(17) if len(g.neighbors(v)) > (17 + 1) // 2)
        larger = sorted(set(range(17)) - set(smaller) - {cut})
        order = [v for v in smaller] + larger + list(range(17, g.n)) + [cut]
        pos = {v: i for i, v in enumerate(order)}
        for u, v in g.edges():
            adj[pos[u], pos[v]] = adj[pos[v], pos[u]] = 1.0
        assert np.allclose(op.matvec(x), adj @ x)
