"""Generalized erasure decoder tests on branched patches."""

import numpy as np
import pytest

from locq import (
    OpCounter,
    UnsatisfiableClusterError,
    build_gen_rep,
    build_gen_surface,
    decode_erasure,
)
from locq.gen_erasure import decode_gen_erasure, satisfying_configuration


@pytest.fixture(scope="module")
def patch33():
    return build_gen_surface(build_gen_rep(3, 3), build_gen_rep(3, 3))


@pytest.fixture(scope="module")
def patch33_l5():
    return build_gen_surface(build_gen_rep(3, 5), build_gen_rep(3, 5))


def test_all_even_returns_empty(patch33):
    st = patch33.structure
    seam_edge = st.seam_edges[0][0]
    assert satisfying_configuration(patch33, {seam_edge}, set()) == set()


def test_single_seam_system(patch33):
    # erase one seam hyperedge; ask for its full vertex flip
    g = patch33.graph
    seam_edge = patch33.structure.seam_edges[0][0]
    sigma = set(g.edges[seam_edge])
    assert all(g.interior[v] for v in sigma)
    out = satisfying_configuration(patch33, {seam_edge}, sigma)
    assert out == {seam_edge}


def test_two_odd_squares_sharing_seam(patch33):
    """Spec-style case: odd/odd squares fixed by one shared-seam hyperedge."""
    g, st = patch33.graph, patch33.structure
    seam_edge = st.seam_edges[0][0]
    seam_squares = st.seam_squares[0]
    # attach a boundary qubit in the third square touched by the seam
    v_third = next(v for v in g.edges[seam_edge]
                   if st.vertex_square[v] == seam_squares[2])
    q_third = next(e for e in g.vertex_edges[v_third] if g.boundary_edge[e])
    cluster = {seam_edge, q_third}
    sigma = {v for v in g.edges[seam_edge] if st.vertex_square[v] in seam_squares[:2]}
    assert len(sigma) == 2
    out = satisfying_configuration(patch33, cluster, sigma)
    assert out == {seam_edge}
    # substitution: the seam neighbours exactly the two remaining odd squares
    # plus the boundary-connected one, so x = (1) reproduces the parity vector
    correction = decode_gen_erasure(patch33, cluster, sigma)
    assert correction <= cluster
    assert g.syndrome_of(correction) == sigma


def test_unsatisfiable_partial_seam_flip(patch33):
    g = patch33.graph
    seam_edge = patch33.structure.seam_edges[0][0]
    sigma = set(list(g.edges[seam_edge])[:2])  # 2 of 3 vertices
    with pytest.raises(UnsatisfiableClusterError):
        decode_gen_erasure(patch33, {seam_edge}, sigma)


def test_matches_plain_peeling_within_square(patch33):
    """A boundary-connected cluster inside one square peels identically."""
    g, st = patch33.graph, patch33.structure
    edges = {e for e in range(g.n_edges)
             if st.edge_square[e] == 0 and g.boundary_edge[e]}
    e = min(edges)
    v = next(v for v in g.edges[e] if g.interior[v])
    out_gen = decode_gen_erasure(patch33, {e}, {v})
    out_plain = decode_erasure(g, {e}, {v})
    assert out_gen == out_plain == {e}


def test_fuzz_theorem_contract_l3(patch33):
    """P within the erasure and syndrome reproduced, on random clusters."""
    g = patch33.graph
    rng = np.random.default_rng(43)
    n = g.n_edges
    for _ in range(20_000):
        erasure = {int(e) for e in np.nonzero(rng.random(n) < 0.25)[0]}
        error = {e for e in erasure if rng.random() < 0.5}
        sigma = g.syndrome_of(error)
        out = decode_gen_erasure(patch33, erasure, sigma)
        assert out <= erasure
        assert g.syndrome_of(out) == sigma


def test_fuzz_at_most_one_error_per_seam_l3(patch33):
    """At length 3 the per-square system is exact: one error per seam."""
    g, st = patch33.graph, patch33.structure
    rng = np.random.default_rng(47)
    n = g.n_edges
    for _ in range(5_000):
        erasure = {int(e) for e in np.nonzero(rng.random(n) < 0.3)[0]}
        error = {e for e in erasure if rng.random() < 0.5}
        sigma = g.syndrome_of(error)
        out = decode_gen_erasure(patch33, erasure, sigma)
        for seam in st.seam_edges:
            assert len(out & set(seam)) <= 1


def test_fuzz_refined_path_l5(patch33_l5):
    """Length-5 clusters can need the per-sub-cluster refinement."""
    g = patch33_l5.graph
    rng = np.random.default_rng(53)
    n = g.n_edges
    for _ in range(10_000):
        erasure = {int(e) for e in np.nonzero(rng.random(n) < 0.3)[0]}
        error = {e for e in erasure if rng.random() < 0.5}
        sigma = g.syndrome_of(error)
        out = decode_gen_erasure(patch33_l5, erasure, sigma)
        assert out <= erasure
        assert g.syndrome_of(out) == sigma


def test_refined_path_regression(patch33_l5):
    """Frozen cluster whose square restriction splits into odd sub-clusters.

    The per-square parity system alone admits a seam selection that leaves
    two odd boundary-free sub-clusters inside one square; the refined
    per-sub-cluster system must be used to decode it.
    """
    g = patch33_l5.graph
    erasure = {2, 3, 5, 7, 10, 18, 30, 34, 35, 36, 39, 40, 41, 42, 47, 48,
               49, 51, 52, 56, 59, 60, 61, 62, 64, 67, 68, 69, 70, 72, 78, 79}
    error = {2, 3, 10, 30, 34, 35, 40, 41, 42, 60, 61, 62, 68, 70, 79}
    sigma = g.syndrome_of(error)
    out = decode_gen_erasure(patch33_l5, erasure, sigma)
    assert out <= erasure
    assert g.syndrome_of(out) == sigma


def test_seam_flip_bookkeeping(patch33):
    """Modified syndrome flips exactly the selected hyperedges' vertices."""
    g = patch33.graph
    seam_edge = patch33.structure.seam_edges[0][0]
    sigma = set(g.edges[seam_edge])
    out = decode_gen_erasure(patch33, {seam_edge}, sigma)
    assert out == {seam_edge}
    flips = set(g.edges[seam_edge])
    assert {v for v in flips if g.interior[v]} == sigma


def test_operation_count_linear(patch33_l5):
    g = patch33_l5.graph
    rng = np.random.default_rng(59)
    n = g.n_edges
    for _ in range(200):
        erasure = {int(e) for e in np.nonzero(rng.random(n) < 0.3)[0]}
        error = {e for e in erasure if rng.random() < 0.5}
        counter = OpCounter()
        decode_gen_erasure(patch33_l5, erasure, g.syndrome_of(error), counter=counter)
        assert counter.ticks <= 10 * (len(erasure) + 1)
