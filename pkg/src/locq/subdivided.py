"""Three-stage decoder for subdivided codes.

Stage 1 runs the generalized Union-Find decoder on every patch (S
regions), which clears all syndrome strictly inside the patches and
pushes the remainder onto the T-region checks.  Stage 2 runs the
repetition-code matching decoder on every T region, pushing what is left
onto the U vertices.  Stage 3 hands the U-vertex syndrome to the outer
code's decoder and lifts each corrected outer qubit back to the
subdivided lattice by flipping its entire T region (which toggles exactly
that qubit's U vertices).

``parallel-patches`` mode dispatches the per-patch and per-T-region
decodes to a thread pool; stage boundaries are synchronization barriers
and the result is identical to serial mode.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import OpCounter
from .gf2 import Gf2Matrix, gf2_solve
from .gen_union_find import decode_gen_uf_fast
from .hypergraph import PauliXError, Syndrome
from .rep_mwpm import decode_rep
from .subdivide import SubdividedCode


class OuterDecoder:
    """Outer-code decoding capability used by stage 3.

    ``decode`` maps a syndrome over outer Z-checks to an outer-qubit
    correction reproducing it; corrections are exact for error weights up
    to ``guaranteed_weight``.
    """

    guaranteed_weight: int = 0

    def decode(self, syndrome: set[int]) -> set[int]:  # pragma: no cover - interface
        raise NotImplementedError


class BruteForceOuter(OuterDecoder):
    """Minimum-weight outer decoding by bounded enumeration.

    Stand-in for a good qLDPC decoder on small outer codes: searches all
    corrections up to weight ``guaranteed_weight`` + 1 and falls back to a
    plain GF(2) solve beyond that (syndrome-consistent but with no
    minimality guarantee, matching the black-box outer contract).
    """

    def __init__(self, hz: Gf2Matrix, distance: int):
        self.hz = hz
        self.hz_t = hz.transpose()
        self.distance = distance
        self.guaranteed_weight = (distance - 1) // 2
        self._column_checks = [set(self.hz_t.row_support(q)) for q in range(hz.cols)]

    def decode(self, syndrome: set[int]) -> set[int]:
        target = set(syndrome)
        if not target:
            return set()
        n = self.hz.cols
        for weight in range(1, self.guaranteed_weight + 2):
            for combo in itertools.combinations(range(n), weight):
                acc: set[int] = set()
                for q in combo:
                    acc ^= self._column_checks[q]
                if acc == target:
                    return set(combo)
        solution = gf2_solve(self.hz_t, sorted(target))
        if solution is None:
            raise ValueError("outer syndrome is inconsistent with the outer code")
        return set(solution)


@dataclass
class StageDiagnostics:
    """Per-stage accounting; separates the two failure causes (patch
    decoding overload vs T-region matching overload)."""

    patch_defects: int = 0
    active_patches: int = 0
    t_defects: int = 0
    active_t_regions: int = 0
    t_correction_weights: dict[int, int] = field(default_factory=dict)
    outer_syndrome_weight: int = 0
    outer_correction_weight: int = 0
    outer_beyond_guarantee: bool = False


def decode_subdivided(code: SubdividedCode, syndrome: Syndrome,
                      outer: OuterDecoder | None = None,
                      mode: str = "serial", jobs: int = 4,
                      counter: OpCounter | None = None,
                      diagnostics: StageDiagnostics | None = None) -> PauliXError:
    """Full three-stage decode; returns the combined correction."""
    if mode not in ("serial", "parallel-patches"):
        raise ValueError(f"unknown mode {mode!r}")
    if outer is None:
        if code.outer.distance_hint is None:
            raise ValueError("outer decoder required: the outer code has no distance hint")
        outer = BruteForceOuter(code.outer_hz, code.outer.distance_hint)
    sigma = set(syndrome)
    for v in sigma:
        if not (0 <= v < code.graph.n_vertices):
            raise ValueError(f"syndrome vertex {v} out of range")

    # Stage 1: generalized Union-Find per patch.
    per_patch: dict[int, set[int]] = {}
    for v in sigma:
        region, idx = code.vertex_region[v]
        if region == "S":
            per_patch.setdefault(idx, set()).add(v)
    if diagnostics is not None:
        diagnostics.patch_defects = sum(len(s) for s in per_patch.values())
        diagnostics.active_patches = len(per_patch)

    # OpCounter increments are not thread safe; count in serial mode only.
    stage_counter = counter if mode == "serial" else None

    def decode_patch(item: tuple[int, set[int]]) -> set[int]:
        idx, defects = item
        patch = code.patches[idx]
        local_sigma = {patch.local_vertex[v] for v in defects}
        local = decode_gen_uf_fast(patch, set(), local_sigma, counter=stage_counter)
        return {patch.to_global_edge[e] for e in local}

    items = sorted(per_patch.items())
    if mode == "parallel-patches" and items:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            patch_corrections = list(pool.map(decode_patch, items))
    else:
        patch_corrections = [decode_patch(item) for item in items]
    stage1: set[int] = set()
    for c in patch_corrections:
        stage1 ^= c

    sigma2 = syndrome_after_patch_stage(code, sigma, stage1)

    # Stage 2: repetition-code matching per T region.
    per_t: dict[int, set[int]] = {}
    for v in sigma2:
        region, idx = code.vertex_region[v]
        if region == "T":
            per_t.setdefault(idx, set()).add(v)
    if diagnostics is not None:
        diagnostics.t_defects = sum(len(s) for s in per_t.values())
        diagnostics.active_t_regions = len(per_t)

    def decode_t(item: tuple[int, set[int]]) -> tuple[int, set[int]]:
        idx, defects = item
        view = code.t_regions[idx]
        local_sigma = {view.local_vertex[v] for v in defects}
        local = decode_rep(view.rep, local_sigma, counter=stage_counter)
        return idx, {view.to_global_edge[e] for e in local}

    t_items = sorted(per_t.items())
    if mode == "parallel-patches" and t_items:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            t_corrections = list(pool.map(decode_t, t_items))
    else:
        t_corrections = [decode_t(item) for item in t_items]
    stage2: set[int] = set()
    for idx, c in t_corrections:
        stage2 ^= c
        if diagnostics is not None:
            diagnostics.t_correction_weights[idx] = len(c)

    # Stage 3: outer decode on the U vertices, lifted back to T regions.
    sigma3 = sigma2 ^ code.graph.syndrome_of(stage2)
    for v in sigma3:
        assert code.vertex_region[v][0] == "U", \
            "syndrome must sit on U vertices after the T stage"
    u_index = {gv: z for z, gv in enumerate(code.u_vertex)}
    outer_syndrome = {u_index[v] for v in sigma3}
    outer_correction = outer.decode(outer_syndrome)
    if diagnostics is not None:
        diagnostics.outer_syndrome_weight = len(outer_syndrome)
        diagnostics.outer_correction_weight = len(outer_correction)
        diagnostics.outer_beyond_guarantee = \
            len(outer_correction) > outer.guaranteed_weight
    stage3 = lift_outer_correction(code, outer_correction)

    if counter is not None:
        counter.add(len(sigma) + len(stage1) + len(stage2) + len(stage3))
    return stage1 ^ stage2 ^ stage3


def syndrome_after_patch_stage(code: SubdividedCode, sigma: Syndrome,
                               stage1_correction: PauliXError) -> Syndrome:
    """Syndrome once patch corrections are applied.

    Asserts the patch stage did its job: nothing may remain strictly
    inside any S region.
    """
    sigma2 = set(sigma) ^ code.graph.syndrome_of(stage1_correction)
    for v in sigma2:
        assert code.vertex_region[v][0] != "S", \
            f"syndrome persists inside patch {code.vertex_region[v][1]}"
    return sigma2


def lift_outer_correction(code: SubdividedCode, outer_qubits: set[int]) -> PauliXError:
    """Lift outer-qubit flips to the lattice: toggle entire T regions.

    A T region is a union of centre-to-U arm paths; flipping all of it
    leaves every interior T check untouched (degree 2) and toggles exactly
    the region's U vertices, matching the outer qubit's Z-check column.
    """
    lifted: set[int] = set()
    for q in sorted(outer_qubits):
        if not 0 <= q < len(code.t_regions):
            raise ValueError(f"outer qubit {q} out of range")
        lifted ^= set(code.t_region_support(q))
    return lifted
