"""Three-stage subdivided decoder tests."""

import numpy as np
import pytest

from locq import is_logical_failure, subdivide, toric_square_complex
from locq.rep_mwpm import decode_rep
from locq.subdivided import (
    BruteForceOuter,
    StageDiagnostics,
    decode_subdivided,
    lift_outer_correction,
    syndrome_after_patch_stage,
)


@pytest.fixture(scope="module")
def code5():
    return subdivide(toric_square_complex(3, 3), 5)


@pytest.fixture(scope="module")
def outer5(code5):
    return BruteForceOuter(code5.outer_hz, code5.outer.distance_hint)


def decode_and_check(code, outer, error, mode="serial"):
    sigma = code.graph.syndrome_of(error)
    correction = decode_subdivided(code, sigma, outer, mode=mode)
    residual = correction ^ set(error)
    assert not code.graph.syndrome_of(residual)
    return not is_logical_failure(code, residual)


class TestBruteForceOuter:
    def test_zero_syndrome(self, outer5):
        assert outer5.decode(set()) == set()

    def test_single_qubit_recovered(self, code5, outer5):
        hz_t = code5.outer_hz.transpose()
        for q in range(code5.outer.n_qubits):
            syndrome = set(hz_t.row_support(q))
            assert outer5.decode(syndrome) == {q}

    def test_guaranteed_weight(self, outer5):
        assert outer5.guaranteed_weight == 1


class TestLift:
    def test_empty(self, code5):
        assert lift_outer_correction(code5, set()) == set()

    def test_single_qubit_full_t_region(self, code5):
        lifted = lift_outer_correction(code5, {0})
        view = code5.t_regions[0]
        assert lifted == set(view.to_global_edge)
        assert len(lifted) == 5  # (L-1) * delta / 2 + 1 at delta = 2, L = 5
        sigma = code5.graph.syndrome_of(lifted)
        assert sigma == set(view.u_vertices)

    def test_adjacent_qubits_shared_vertex_cancels(self, code5):
        hz_t = code5.outer_hz.transpose()
        q1 = 0
        shared_checks = set(hz_t.row_support(q1))
        q2 = next(
            q for q in range(1, code5.outer.n_qubits)
            if set(hz_t.row_support(q)) & shared_checks
        )
        lifted = lift_outer_correction(code5, {q1, q2})
        sigma = code5.graph.syndrome_of(lifted)
        expected_checks = shared_checks ^ set(hz_t.row_support(q2))
        assert sigma == {code5.u_vertex[z] for z in expected_checks}


class TestPatchStage:
    def test_no_error(self, code5):
        assert syndrome_after_patch_stage(code5, set(), set()) == set()

    def test_patch_interior_error_cleared(self, code5, outer5):
        # an S-region qubit whose checks are all patch-interior
        e = next(e for e, (r, _) in enumerate(code5.edge_region)
                 if r == "S" and all(code5.vertex_region[v][0] == "S"
                                     for v in code5.graph.edges[e]))
        sigma = code5.graph.syndrome_of({e})
        correction = decode_subdivided(code5, sigma, outer5)
        sigma2 = syndrome_after_patch_stage(code5, sigma, correction)
        # full correction also clears T and U
        assert sigma2 <= {v for v in range(code5.graph.n_vertices)
                          if code5.vertex_region[v][0] != "S"}

    def test_t_region_error_untouched_by_stage_one(self, code5):
        e = next(e for e, (r, _) in enumerate(code5.edge_region) if r == "T")
        sigma = code5.graph.syndrome_of({e})
        assert all(code5.vertex_region[v][0] in ("T", "U") for v in sigma)
        # no S syndrome, so stage 1 produces nothing
        sigma2 = syndrome_after_patch_stage(code5, sigma, set())
        assert sigma2 == sigma

    def test_persisting_s_syndrome_asserts(self, code5):
        e = next(e for e, (r, _) in enumerate(code5.edge_region)
                 if r == "S" and all(code5.vertex_region[v][0] == "S"
                                     for v in code5.graph.edges[e]))
        sigma = code5.graph.syndrome_of({e})
        with pytest.raises(AssertionError):
            syndrome_after_patch_stage(code5, sigma, set())


class TestTheorem:
    def test_empty_syndrome(self, code5, outer5):
        assert decode_subdivided(code5, set(), outer5) == set()

    def test_exhaustive_single_qubit_errors(self, code5, outer5):
        for q in range(code5.n_qubits):
            assert decode_and_check(code5, outer5, {q}), f"failed on qubit {q}"

    def test_weight_two_within_patch(self, code5, outer5):
        patch = code5.patches[0]
        interior = [
            patch.to_global_edge[e] for e in range(patch.graph.n_edges)
            if not patch.graph.boundary_edge[e]
        ]
        error = {interior[0], interior[1]}
        assert decode_and_check(code5, outer5, error)

    def test_random_weight_bounded_errors(self, code5, outer5):
        rng = np.random.default_rng(83)
        r = outer5.guaranteed_weight
        limit = (code5.length - 1) * r // 4
        for _ in range(500):
            w = int(rng.integers(1, limit + 1))
            error = set(map(int, rng.choice(code5.n_qubits, size=w, replace=False)))
            assert decode_and_check(code5, outer5, error)

    def test_pushed_t_weight_bounded(self, code5, outer5):
        """Stage 1 pushes at most 2s error weight into any single T region."""
        rng = np.random.default_rng(89)
        for _ in range(200):
            s = int(rng.integers(1, 3))  # s < L / 2
            error = set(map(int, rng.choice(code5.n_qubits, size=s, replace=False)))
            sigma = code5.graph.syndrome_of(error)
            diag = StageDiagnostics()
            decode_subdivided(code5, sigma, outer5, diagnostics=diag)
            # decode_rep output weight is the minimum for the pushed syndrome
            for weight in diag.t_correction_weights.values():
                assert weight <= 2 * s


class TestModes:
    def test_serial_parallel_identical(self, code5, outer5):
        rng = np.random.default_rng(97)
        for _ in range(50):
            w = int(rng.integers(0, 6))
            error = set(map(int, rng.choice(code5.n_qubits, size=w, replace=False)))
            sigma = code5.graph.syndrome_of(error)
            serial = decode_subdivided(code5, sigma, outer5, mode="serial")
            parallel = decode_subdivided(code5, sigma, outer5, mode="parallel-patches")
            assert serial == parallel

    def test_unknown_mode_rejected(self, code5, outer5):
        with pytest.raises(ValueError):
            decode_subdivided(code5, set(), outer5, mode="fast")


def test_diagnostics_failure_separation(code5, outer5):
    diag = StageDiagnostics()
    e = next(e for e, (r, _) in enumerate(code5.edge_region) if r == "T")
    sigma = code5.graph.syndrome_of({e})
    decode_subdivided(code5, sigma, outer5, diagnostics=diag)
    assert diag.patch_defects == 0
    assert diag.t_defects + diag.outer_syndrome_weight > 0
