"""Erasure decoding for generalized surface patches.

A cluster erasure may span several squares and contain seam hyperedges.
Decoding places errors on a satisfying configuration of seam hyperedges
(flipping the affected syndrome bits), removes all seam hyperedges, and
peels each remaining per-square component with the ordinary erasure
decoder.

The satisfying configuration is found from the seam-square parity system:
one bit per seam overlapping the cluster, one equation per cluster square
not connected to the boundary.  When the chosen representatives leave some
boundary-free sub-cluster odd (possible for clusters whose restriction to
a square is disconnected), a refined system over all in-cluster seam
hyperedges with one equation per sub-cluster is solved instead, so the
returned configuration always makes every boundary-free sub-cluster even.
"""

from __future__ import annotations

from .errors import OpCounter, UnsatisfiableClusterError
from .gf2 import Gf2Matrix, gf2_solve
from .hypergraph import Erasure, PauliXError, Syndrome
from .peeling import decode_erasure


def _cluster_components(graph, edges: set[int]) -> list[tuple[set[int], set[int]]]:
    """Connected components of an edge set: (edges, vertices) pairs."""
    remaining = set(edges)
    comps = []
    for seed in sorted(edges):
        if seed not in remaining:
            continue
        comp_edges = set()
        comp_vertices = set()
        stack = [seed]
        remaining.discard(seed)
        while stack:
            e = stack.pop()
            comp_edges.add(e)
            for v in graph.edges[e]:
                if v not in comp_vertices:
                    comp_vertices.add(v)
                    for e2 in graph.vertex_edges[v]:
                        if e2 in remaining:
                            remaining.discard(e2)
                            stack.append(e2)
        comps.append((comp_edges, comp_vertices))
    return comps


def satisfying_configuration(patch, cluster: Erasure, sigma: Syndrome) -> set[int]:
    """Seam hyperedges whose errors make every boundary-free sub-cluster even.

    ``cluster`` must be a connected erasure component; ``sigma`` is the
    syndrome restricted to it.  Raises UnsatisfiableClusterError when no
    configuration within the cluster works.
    """
    graph, structure = patch.graph, patch.structure
    cluster = set(cluster)
    sigma = set(sigma)

    seam_members: dict[int, list[int]] = {}
    for e in cluster:
        s = structure.seam_of_edge(e)
        if s >= 0:
            seam_members.setdefault(s, []).append(e)
    cluster_vertices = {v for e in cluster for v in graph.edges[e]}

    # Square bookkeeping over the cluster.
    parities: dict[int, int] = {}
    boundary_squares: set[int] = set()
    for v in cluster_vertices:
        sq = structure.vertex_square[v]
        if sq >= 0:
            parities.setdefault(sq, 0)
            if v in sigma:
                parities[sq] ^= 1
    for e in cluster:
        sq = structure.edge_square[e]
        if sq >= 0:
            parities.setdefault(sq, 0)
            if graph.boundary_edge[e]:
                boundary_squares.add(sq)

    free_squares = sorted(sq for sq in parities if sq not in boundary_squares)
    col_of = {sq: i for i, sq in enumerate(free_squares)}
    seams = sorted(seam_members)
    rows = []
    for s in seams:
        rows.append([col_of[sq] for sq in structure.seam_squares[s] if sq in col_of])
    rhs = [col_of[sq] for sq in free_squares if parities[sq]]

    selected: set[int] | None = None
    solution = gf2_solve(Gf2Matrix.from_rows(rows, len(free_squares)), rhs)
    if solution is not None:
        selected = {min(seam_members[seams[i]]) for i in solution}
        if not _subclusters_even(graph, structure, cluster, sigma, seam_members, selected):
            selected = None
    if selected is None:
        selected = _refined_configuration(graph, structure, cluster, sigma, seam_members)
    return selected


def _split_cluster(graph, structure, cluster, seam_members):
    """Components after seam removal, plus stranded cluster vertices."""
    seam_edge_ids = {e for es in seam_members.values() for e in es}
    plain = cluster - seam_edge_ids
    comps = _cluster_components(graph, plain)
    covered = {v for _, vs in comps for v in vs}
    stranded = sorted(
        {v for e in seam_edge_ids for v in graph.edges[e] if v not in covered}
    )
    return comps, stranded, seam_edge_ids


def _subclusters_even(graph, structure, cluster, sigma, seam_members, selected) -> bool:
    flips: set[int] = set()
    for e in selected:
        for v in graph.edges[e]:
            flips.symmetric_difference_update({v})
    sigma_mod = sigma ^ {v for v in flips if graph.interior[v]}
    comps, stranded, _ = _split_cluster(graph, structure, cluster, seam_members)
    for comp_edges, comp_vertices in comps:
        if any(not graph.interior[v] for v in comp_vertices):
            continue
        if len(sigma_mod & comp_vertices) % 2:
            return False
    return all(v not in sigma_mod for v in stranded)


def _refined_configuration(graph, structure, cluster, sigma, seam_members) -> set[int]:
    """Per-sub-cluster system over every in-cluster seam hyperedge."""
    comps, stranded, seam_edge_ids = _split_cluster(graph, structure, cluster, seam_members)
    equations: list[tuple[frozenset[int], int]] = []
    for comp_edges, comp_vertices in comps:
        if any(not graph.interior[v] for v in comp_vertices):
            continue  # boundary-connected: absorbs any parity
        equations.append((frozenset(comp_vertices), len(sigma & comp_vertices) % 2))
    for v in stranded:
        equations.append((frozenset((v,)), 1 if v in sigma else 0))

    variables = sorted(seam_edge_ids)
    rows = []
    for e in variables:
        cols = []
        for i, (vertices, _) in enumerate(equations):
            if len(vertices & set(graph.edges[e])) % 2:
                cols.append(i)
        rows.append(cols)
    rhs = [i for i, (_, p) in enumerate(equations) if p]
    solution = gf2_solve(Gf2Matrix.from_rows(rows, len(equations)), rhs)
    if solution is None:
        raise UnsatisfiableClusterError(
            "no satisfying configuration exists within the cluster erasure"
        )
    return {variables[i] for i in solution}


def decode_gen_erasure(patch, erasure: Erasure, sigma: Syndrome,
                       counter: OpCounter | None = None) -> PauliXError:
    """Erasure decoder for a generalized surface patch.

    Connected components of the erasure are decoded independently; the
    output P satisfies P within the erasure and syndrome(P) = sigma.
    """
    graph, structure = patch.graph, patch.structure
    erasure = set(erasure)
    sigma = set(sigma)
    for v in sigma:
        if not graph.interior[v]:
            raise ValueError(f"syndrome vertex {v} is not an interior check")

    correction: set[int] = set()
    covered: set[int] = set()
    ops = 0
    for comp_edges, comp_vertices in _cluster_components(graph, erasure):
        covered |= comp_vertices
        local_sigma = sigma & comp_vertices
        ops += len(comp_edges)
        selected = satisfying_configuration(patch, comp_edges, local_sigma)
        flips: set[int] = set()
        for e in selected:
            for v in graph.edges[e]:
                if graph.interior[v]:
                    flips.symmetric_difference_update({v})
        sigma_mod = local_sigma ^ flips
        seam_edge_ids = {e for e in comp_edges if structure.seam_of_edge(e) >= 0}
        plain = comp_edges - seam_edge_ids
        stranded_sigma = sigma_mod - {v for e in plain for v in graph.edges[e]}
        if stranded_sigma:
            raise UnsatisfiableClusterError(
                f"stranded syndrome {sorted(stranded_sigma)} after seam removal"
            )
        correction |= selected
        correction |= decode_erasure(graph, plain, sigma_mod, with_boundary=True,
                                     counter=counter)
    leftover = sigma - {v for v in covered if graph.interior[v]}
    if leftover:
        raise UnsatisfiableClusterError(
            f"syndrome {sorted(leftover)} lies outside the erasure"
        )
    if counter is not None:
        counter.add(ops)
    return correction
