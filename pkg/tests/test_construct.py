
import pytest

from oddstab.construct import (
    SuspensionSpec,
    c5_blowup,
    extremal_suspension,
    random_gnr_member,
    star_suspension_family,
    turan,
)
from oddstab.cycles import find_cycle_exact
from oddstab.decompose import gnr_certify
from oddstab.errors import InvalidParameterError
from oddstab.graph import blocks, is_bipartite
from oddstab.oracle import chromatic_number


class TestTuran:
    def test_examples(self):
        assert turan(5, 2).m == 6
        t = turan(7, 3)
        assert t.m == 16
        assert turan(4, 4).m == 6

    def test_part_zero_contains_vertex_zero_and_larger_parts_first(self):
        g = turan(7, 3)
        # parts are 0..2 | 3..4 | 5..6
        assert not g.has_edge(0, 1) and not g.has_edge(0, 2)
        assert g.has_edge(0, 3) and g.has_edge(0, 5)

    def test_edge_formula_sweep(self):
        for n in range(1, 51):
            for r in range(1, n + 1):
                g = turan(n, r)
                q, rem = divmod(n, r)
                sizes = [q + 1] * rem + [q] * (r - rem)
                want = n * (n - 1) // 2 - sum(s * (s - 1) // 2 for s in sizes)
                assert g.m == want

    def test_rejects_bad_params(self):
        with pytest.raises(InvalidParameterError):
            turan(3, 0)
        with pytest.raises(InvalidParameterError):
            turan(3, 4)


class TestExtremalSuspension:
    def test_examples(self):
        g = extremal_suspension(10, 3)
        assert g.n == 10 and g.m == (10 - 3 + 1) ** 2 // 4 + 3
        assert extremal_suspension(8, 3).m == 12
        assert extremal_suspension(6, 3).m == 7

    def test_block_structure(self):
        g = extremal_suspension(10, 3)
        dec = blocks(g)
        sizes = sorted(len(b) for b in dec.blocks)
        assert sizes == [3, 8] and len(dec.cut_vertices) == 1

    def test_attach_vertex_in_smaller_part(self):
        g = extremal_suspension(10, 3)  # bipartite part on 8: parts 4/4, tie -> part 0
        dec = blocks(g)
        cut = next(iter(dec.cut_vertices))
        tblock = next(b for b in dec.blocks if len(b) == 8)
        bp = is_bipartite(g, tblock)
        assert cut in bp.parts[bp.part(cut)]
        g2 = extremal_suspension(11, 3)  # bipartite part on 9: parts 5/4
        dec2 = blocks(g2)
        cut2 = next(iter(dec2.cut_vertices))
        tblock2 = next(b for b in dec2.blocks if len(b) == 9)
        bp2 = is_bipartite(g2, tblock2)
        assert len(bp2.parts[bp2.part(cut2)]) == 4

    def test_odd_cycle_freeness(self):
        # cycles cannot cross the cut vertex; bipartite block has even cycles
        # only; clique cycles are short
        for n in range(6, 31, 6):
            for r in (3, 4):
                if n < r + 2:
                    continue
                g = extremal_suspension(n, r)
                for k in range(2, 6):
                    if r <= 2 * k and 2 * k + 1 <= n:
                        assert find_cycle_exact(g, 2 * k + 1).status == "none"

    def test_chromatic_number_is_r(self):
        for n, r in [(8, 3), (10, 3), (12, 4), (14, 5)]:
            assert chromatic_number(extremal_suspension(n, r)).value == r

    def test_rejects_bad_params(self):
        with pytest.raises(InvalidParameterError):
            extremal_suspension(4, 3)
        with pytest.raises(InvalidParameterError):
            extremal_suspension(10, 1)


class TestStarSuspensionFamily:
    def test_smallest_member(self):
        g = star_suspension_family(5, 3)  # 4-cycle plus a pendant
        assert g.n == 5 and g.m == 5

    def test_outside_count_is_r_minus_2(self):
        for n, r in [(8, 4), (12, 3), (20, 6), (30, 5)]:
            g = star_suspension_family(n, r)
            dec = blocks(g)
            # the suspended clique block holds exactly r-2 vertices outside
            # the bipartite core
            clique = next(b for b in dec.blocks if len(b) == r - 1)
            assert len(clique) - 1 == r - 2

    def test_818_shape(self):
        g = star_suspension_family(8, 4)  # K_{2,3} with K_3 suspended
        sizes = sorted(len(b) for b in blocks(g).blocks)
        assert g.n == 8 and sizes == [3, 6]


class TestC5Blowup:
    def test_unit_sizes_give_pentagon(self):
        g = c5_blowup(1, 1, 1)
        assert g.n == 5 and g.m == 5
        assert find_cycle_exact(g, 5).found

    def test_triangle_free(self):
        for a, b, c in [(1, 2, 3), (2, 2, 2), (3, 1, 4)]:
            g = c5_blowup(a, b, c)
            assert find_cycle_exact(g, 3).status == "none"
            assert is_bipartite(g) is None

    def test_extremal_size_at_n10(self):
        g = c5_blowup(2, 3, 3)
        assert g.n == 10 and g.m == (10 - 1) ** 2 // 4 + 1

    def test_rejects_zero_size(self):
        with pytest.raises(InvalidParameterError):
            c5_blowup(0, 1, 1)


class TestRandomGnrMember:
    def test_outside_count_within_family_bound(self):
        for seed in range(10):
            g, spec = random_gnr_member(40, 3, seed=seed)
            assert spec.outside_count <= 1
            assert spec.validate(g)

    def test_exact_outside(self):
        for seed in range(5):
            g, spec = random_gnr_member(30, 5, seed=seed, exact_outside=True)
            assert spec.outside_count == 3

    def test_forbid_cycle_is_respected(self):
        for seed in range(8):
            g, _ = random_gnr_member(24, 6, seed=seed, forbid_cycle=(5, 7))
            assert find_cycle_exact(g, 5).status == "none"
            assert find_cycle_exact(g, 7).status == "none"

    def test_core_min_degree_and_connected(self):
        for seed in range(5):
            g, spec = random_gnr_member(30, 4, seed=seed, p=0.3)
            core = spec.core_vertices
            assert all(len(g.neighbors(v) & core) >= 2 for v in core)

    def test_deterministic_per_seed(self):
        g1, s1 = random_gnr_member(25, 4, seed=9)
        g2, s2 = random_gnr_member(25, 4, seed=9)
        assert g1 == g2 and s1 == s2

    def test_certifier_round_trip_200_samples(self):
        # the certifier must find SOME valid witness for every sampled member
        for seed in range(200):
            g, spec = random_gnr_member(60, 6, seed=seed)
            cert = gnr_certify(g, 6)
            assert cert is not None, seed
            assert cert.outside_count <= spec.outside_count

    def test_rejects_bad_params(self):
        with pytest.raises(InvalidParameterError):
            random_gnr_member(5, 6, seed=0)
        with pytest.raises(InvalidParameterError):
            random_gnr_member(10, 2, seed=0)


def test_suspension_spec_validation_catches_tampering():
    g, spec = random_gnr_member(20, 4, seed=3, exact_outside=True)
    assert spec.validate(g)
    bad = SuspensionSpec(
        core_vertices=spec.core_vertices | {next(iter(spec.pieces[0].outside))},
        pieces=spec.pieces,
    )
    assert not bad.validate(g)
