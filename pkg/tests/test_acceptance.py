"""Acceptance gate: every criterion runs at its stated tolerance and prints
one PASS/FAIL line (run with ``pytest tests/test_acceptance.py -s`` to watch
them stream)."""

import pytest

from oddstab.suites import run_suite

pytestmark = pytest.mark.acceptance


def _run(criterion: str, name: str):
    rep = run_suite(name)
    status = "PASS" if rep.passed else "FAIL"
    print(f"{status} {criterion} [{name}] in {rep.duration:.1f}s")
    for line in rep.lines():
        print(f"    {line}")
    assert rep.passed, f"{criterion} failed:\n" + "\n".join(
        line for line in rep.lines() if line.startswith("FAIL")
    )


def test_criterion_01_turan_numbers():
    # ex(n, C5) = floor(n^2/4) for n in 6..9, unique extremal at n in {8, 9}
    _run("criterion-01", "turan-small")


def test_criterion_02_mantel_and_nonbipartite():
    # ex(n, C3) = floor(n^2/4); non-bipartite triangle-free max is
    # floor((n-1)^2/4) + 1 for n in 5..9
    _run("criterion-02", "mantel-erdos")


def test_criterion_03_quotient_vs_power():
    # |lambda_quotient - lambda_power| <= 1e-8 over the (n, r) grid
    _run("criterion-03", "quotient-power")


def test_criterion_04_family_monotonicity():
    # strictly larger lambda for smaller family index, margin > 1e-9
    _run("criterion-04", "monotonicity")


def test_criterion_05_family_dominance():
    # 200 random exactly-(r-2)-outside members stay below the family maximum
    _run("criterion-05", "dominance")


def test_criterion_06_deletion_inequality():
    # lambda^2(G - v) >= lambda^2(G) - 2 d(v) across 1000 seeded graphs
    _run("criterion-06", "sun-das")


def test_criterion_07_spectral_cycle_threshold():
    # above the edge-count threshold, every cycle length up to 2l+2 appears
    _run("criterion-07", "zls")


def test_criterion_08_dense_pair_pipeline():
    # 100 seeded dense instances (n=500, c=10, k in {2,3}) with full bounds
    # and 50 sampled path checks each
    _run("criterion-08", "dense-pipeline")


def test_criterion_09_bad_path_correctness():
    # 500 constructions, none iff bipartite block, shortest parity witness,
    # cross-checked against brute-force path enumeration
    _run("criterion-09", "bad-path")


def test_criterion_10_stability_pipeline():
    # extremal match, 50 suspension members, forced 5-cycle; zero undecided
    _run("criterion-10", "stability")


def test_criterion_11_no_spectral_counterexample():
    # 10^5-flip tabu climbs at n in {21, 30}, 5 seeds each, never beat the
    # extremal lambda by more than 1e-8
    _run("criterion-11", "counterexample")


def test_criterion_12_quartic_audit():
    # determinant expansion matches power iteration; the alternate closed
    # form with the x^2 coefficient one smaller always undershoots
    _run("criterion-12", "quartic-audit")
