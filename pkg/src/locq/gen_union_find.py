"""Union-Find decoding for generalized surface patches.

Generalizes surface-code syndrome validation: clusters are grown while
unsatisfiable, where satisfiability now means the seam-square parity
system admits a solution over the cluster's included seams (boundary
squares absorb their parity).  Hyperedges grow from a vertex towards all
other vertices, so one unit per round per incident growing cluster and two
units complete the (hyper)edge, fusing every cluster it touches.

``decode_gen_uf_naive`` recomputes clusters each round; the almost-linear
``decode_gen_uf_fast`` keeps cluster-tree roots carrying per-square
inclusion/parity/boundary bits and per-seam representative hyperedges.

After growth, each cluster is handed to the generalized erasure decoder.
In rare configurations a cluster satisfiable at square granularity is not
decodable (its restriction to a square splits into odd sub-clusters); such
clusters are grown one more round and retried, preserving the output
contract for every consistent input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OpCounter, UnsatisfiableClusterError
from .gen_erasure import decode_gen_erasure
from .hypergraph import Erasure, PauliXError, Syndrome


@dataclass(frozen=True)
class GenClusterData:
    """Per-root cluster summary: constant size for a bounded patch."""

    size: int
    square_incl: int        # bitmask over patch squares
    square_parity: int      # parity of the syndrome restricted to each square
    square_boundary: int    # does the cluster reach the boundary in each square
    seam_repr: tuple[int, ...]  # representative in-cluster hyperedge, -1 if none


def merge_cluster_data(a: GenClusterData, b: GenClusterData) -> GenClusterData:
    """Commutative, associative cluster-data merge (inclusion OR, parity XOR)."""
    reprs = tuple(
        ra if rb < 0 else (rb if ra < 0 else min(ra, rb))
        for ra, rb in zip(a.seam_repr, b.seam_repr)
    )
    return GenClusterData(
        size=a.size + b.size,
        square_incl=a.square_incl | b.square_incl,
        square_parity=a.square_parity ^ b.square_parity,
        square_boundary=a.square_boundary | b.square_boundary,
        seam_repr=reprs,
    )


def _singleton_data(structure, v: int, in_sigma: bool) -> GenClusterData:
    sq = structure.vertex_square[v]
    bit = 1 << sq if sq >= 0 else 0
    return GenClusterData(
        size=1,
        square_incl=bit,
        square_parity=bit if in_sigma else 0,
        square_boundary=0,
        seam_repr=(-1,) * len(structure.seam_edges),
    )


def _in_span(rows: list[int], target: int) -> bool:
    basis: dict[int, int] = {}
    for r in rows:
        cur = r
        while cur:
            hb = cur.bit_length() - 1
            if hb in basis:
                cur ^= basis[hb]
            else:
                basis[hb] = cur
                break
    cur = target
    while cur:
        hb = cur.bit_length() - 1
        if hb not in basis:
            return False
        cur ^= basis[hb]
    return True


def is_satisfiable(data: GenClusterData, patch) -> bool:
    """Seam-square system solvability from root data alone (constant time)."""
    structure = patch.structure if hasattr(patch, "structure") else patch
    free = data.square_incl & ~data.square_boundary
    target = data.square_parity & free
    if target == 0:
        return True
    rows = []
    for s, rep in enumerate(data.seam_repr):
        if rep >= 0:
            mask = 0
            for sq in structure.seam_squares[s]:
                mask |= 1 << sq
            rows.append(mask & free)
    return _in_span(rows, target)


def crosses_patch(patch, edges: Erasure) -> bool:
    """True iff some connected component of ``edges`` joins two distinct
    T-boundary sides of the same product factor.

    This is the failure mode patch decoders must exclude: same-factor
    sides are at least L edges apart.  Corner paths between sides of
    different factors are two edges long at any L, unavoidable below
    distance, and harmless to the later decoding stages.
    """
    graph, structure = patch.graph, patch.structure
    remaining = set(edges)
    for seed in sorted(remaining):
        if seed not in remaining:
            continue
        sides = set()
        stack = [seed]
        remaining.discard(seed)
        seen_v: set[int] = set()
        while stack:
            e = stack.pop()
            for v in graph.edges[e]:
                if v in seen_v:
                    continue
                seen_v.add(v)
                if not graph.interior[v]:
                    sides.add(structure.vertex_side[v])
                for e2 in graph.vertex_edges[v]:
                    if e2 in remaining:
                        remaining.discard(e2)
                        stack.append(e2)
        by_factor: dict[int, set[int]] = {}
        for s in sides:
            by_factor.setdefault(structure.side_factor[s], set()).add(s)
        if any(len(group) >= 2 for group in by_factor.values()):
            return True
    return False


def _validate(graph, sigma):
    for v in sigma:
        if not graph.interior[v]:
            raise ValueError(f"syndrome vertex {v} is not an interior check")


def decode_gen_uf_naive(patch, erasure: Erasure, sigma: Syndrome,
                        counter: OpCounter | None = None, trace: list | None = None,
                        stats: dict | None = None) -> PauliXError:
    """Reference generalized Union-Find; clusters recomputed every round."""
    graph, structure = patch.graph, patch.structure
    sigma = set(sigma)
    _validate(graph, sigma)
    support = [0] * graph.n_edges
    for e in erasure:
        support[e] = 2
    ops = 0
    growth_steps = 0
    rounds = 0
    forced: set[frozenset[int]] = set()

    while True:
        while True:
            clusters = _components_gen(graph, structure, support, sigma)
            ops += graph.n_edges + len(clusters)
            if trace is not None:
                trace.append(sorted(
                    (frozenset(c["vertices"]), c["satisfiable"]) for c in clusters
                ))
            grow_list = [
                c for c in clusters
                if not c["satisfiable"] or frozenset(c["vertices"]) & _flatten(forced)
            ]
            if not grow_list:
                break
            forced = set()
            rounds += 1
            for c in grow_list:
                growth_steps += 1
                bumped: set[int] = set()
                for v in sorted(c["vertices"]):
                    for e in graph.vertex_edges[v]:
                        if support[e] < 2 and e not in bumped:
                            bumped.add(e)
                            support[e] += 1
                            ops += 1
                if not bumped:
                    raise UnsatisfiableClusterError(
                        "cluster cannot grow further yet stays unsatisfiable"
                    )
        grown = {e for e in range(graph.n_edges) if support[e] == 2}
        try:
            correction = decode_gen_erasure(patch, grown, sigma, counter=counter)
        except UnsatisfiableClusterError:
            failed = _failed_components(patch, grown, sigma)
            forced = {frozenset(vs) for vs in failed}
            if stats is not None:
                stats["forced_rounds"] = stats.get("forced_rounds", 0) + 1
            continue
        if counter is not None:
            counter.add(ops)
        if stats is not None:
            stats["growth_steps"] = stats.get("growth_steps", 0) + growth_steps
            stats["rounds"] = rounds
            stats["modified_erasure"] = grown
        return correction


def _flatten(sets: set[frozenset[int]]) -> set[int]:
    out: set[int] = set()
    for s in sets:
        out |= s
    return out


def _components_gen(graph, structure, support, sigma):
    """Clusters over fully grown (hyper)edges plus defect singletons."""
    full = [e for e in range(graph.n_edges) if support[e] == 2]
    full_set = set(full)
    seen: set[int] = set()
    clusters = []
    active = sorted(
        {v for e in full for v in graph.edges[e] if graph.interior[v]} | sigma
    )
    n_seams = len(structure.seam_edges)
    for start in active:
        if start in seen:
            continue
        vertices = {start}
        stack = [start]
        seen.add(start)
        edges = set()
        while stack:
            u = stack.pop()
            for e in graph.vertex_edges[u]:
                if e in full_set:
                    edges.add(e)
                    for w in graph.edges[e]:
                        if graph.interior[w] and w not in seen:
                            seen.add(w)
                            vertices.add(w)
                            stack.append(w)
        incl = parity = boundary = 0
        for v in vertices:
            sq = structure.vertex_square[v]
            if sq >= 0:
                incl |= 1 << sq
                if v in sigma:
                    parity ^= 1 << sq
        reprs = [-1] * n_seams
        for e in edges:
            sq = structure.edge_square[e]
            if sq >= 0:
                incl |= 1 << sq
                if graph.boundary_edge[e]:
                    boundary |= 1 << sq
            else:
                s = structure.seam_of_edge(e)
                if reprs[s] < 0 or e < reprs[s]:
                    reprs[s] = e
        data = GenClusterData(len(vertices), incl, parity, boundary, tuple(reprs))
        clusters.append({
            "vertices": vertices,
            "edges": edges,
            "data": data,
            "satisfiable": is_satisfiable(data, structure),
        })
    return clusters


def _failed_components(patch, grown, sigma):
    """Vertex sets of grown clusters the erasure decoder rejects."""
    from .gen_erasure import _cluster_components

    failed = []
    for comp_edges, comp_vertices in _cluster_components(patch.graph, grown):
        try:
            decode_gen_erasure(patch, comp_edges, sigma & comp_vertices)
        except UnsatisfiableClusterError:
            failed.append({v for v in comp_vertices if patch.graph.interior[v]})
    if not failed:
        raise UnsatisfiableClusterError("syndrome lies outside every grown cluster")
    return failed


def decode_gen_uf_fast(patch, erasure: Erasure, sigma: Syndrome,
                       counter: OpCounter | None = None, trace: list | None = None,
                       stats: dict | None = None) -> PauliXError:
    """Almost-linear generalized Union-Find with cluster trees."""
    graph, structure = patch.graph, patch.structure
    sigma = set(sigma)
    _validate(graph, sigma)
    n = graph.n_vertices
    parent = list(range(n))
    size = [1] * n
    data: list[GenClusterData | None] = [
        _singleton_data(structure, v, v in sigma) if graph.interior[v] else None
        for v in range(n)
    ]
    boundary_lists: list[list[int]] = [[v] if graph.interior[v] else [] for v in range(n)]
    support = [0] * graph.n_edges
    ops = 0
    growth_steps = 0
    rounds = 0

    def find(x: int) -> int:
        nonlocal ops
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
            ops += 1
        return x

    def union_all(roots: list[int]) -> int:
        nonlocal ops
        roots = sorted(set(roots), key=lambda r: (-size[r], r))
        best = roots[0]
        for r in roots[1:]:
            parent[r] = best
            size[best] += size[r]
            data[best] = merge_cluster_data(data[best], data[r])
            boundary_lists[best].extend(boundary_lists[r])
            boundary_lists[r] = []
            ops += 1
        return best

    def absorb_edge(e: int) -> int | None:
        """Record a newly grown (hyper)edge; returns the owning root."""
        ends = [v for v in graph.edges[e] if graph.interior[v]]
        if not ends:
            return None
        root = union_all([find(v) for v in ends])
        sq = structure.edge_square[e]
        if sq >= 0:
            extra = 1 << sq
            boundary = extra if graph.boundary_edge[e] else 0
            d = data[root]
            data[root] = GenClusterData(
                d.size, d.square_incl | extra, d.square_parity,
                d.square_boundary | boundary, d.seam_repr,
            )
        else:
            s = structure.seam_of_edge(e)
            d = data[root]
            old = d.seam_repr[s]
            if old < 0 or e < old:
                reprs = list(d.seam_repr)
                reprs[s] = e
                data[root] = GenClusterData(
                    d.size, d.square_incl, d.square_parity, d.square_boundary,
                    tuple(reprs),
                )
        return root

    for e in sorted(erasure):
        support[e] = 2
        absorb_edge(e)

    def grow_round(active: list[int]) -> list[int]:
        """One growth round for the given roots; returns completed edges."""
        nonlocal ops, growth_steps
        completed: list[int] = []
        for u in active:
            growth_steps += 1
            bumped: set[int] = set()
            kept = []
            for v in boundary_lists[u]:
                has_open = False
                for e in graph.vertex_edges[v]:
                    if support[e] < 2:
                        has_open = True
                        if e not in bumped:
                            bumped.add(e)
                            support[e] += 1
                            ops += 1
                            if support[e] == 2:
                                completed.append(e)
                if has_open:
                    kept.append(v)
            boundary_lists[u] = kept
        return completed

    def settle(completed: list[int]) -> None:
        for e in completed:
            absorb_edge(e)

    def unsat_roots_global() -> list[int]:
        roots = sorted({find(v) for v in range(n) if graph.interior[v]})
        return [r for r in roots if not is_satisfiable(data[r], structure)]

    active = unsat_roots_global()
    if trace is not None:
        trace.append(_trace_snapshot_gen(graph, structure, support, sigma, find, data))

    while True:
        while active:
            rounds += 1
            completed = grow_round(active)
            settle(completed)
            survivors = sorted({find(u) for u in active})
            active = []
            for u in survivors:
                if is_satisfiable(data[u], structure):
                    continue
                lst = [v for v in boundary_lists[u]
                       if any(support[e] < 2 for e in graph.vertex_edges[v])]
                boundary_lists[u] = lst
                if not lst:
                    raise UnsatisfiableClusterError(
                        "cluster cannot grow further yet stays unsatisfiable"
                    )
                active.append(u)
            if trace is not None:
                trace.append(_trace_snapshot_gen(graph, structure, support, sigma, find, data))

        grown = {e for e in range(graph.n_edges) if support[e] == 2}
        try:
            correction = decode_gen_erasure(patch, grown, sigma, counter=counter)
        except UnsatisfiableClusterError:
            failed = _failed_components(patch, grown, sigma)
            if stats is not None:
                stats["forced_rounds"] = stats.get("forced_rounds", 0) + 1
            forced_roots = sorted({find(min(vs)) for vs in failed})
            for u in forced_roots:
                members = [v for v in range(n) if graph.interior[v] and find(v) == u]
                boundary_lists[u] = [
                    v for v in members
                    if any(support[e] < 2 for e in graph.vertex_edges[v])
                ]
            completed = grow_round(forced_roots)
            if not completed and all(not boundary_lists[u] for u in forced_roots):
                raise
            settle(completed)
            active = unsat_roots_global()
            continue
        if counter is not None:
            counter.add(ops)
        if stats is not None:
            stats["growth_steps"] = stats.get("growth_steps", 0) + growth_steps
            stats["rounds"] = rounds
            stats["modified_erasure"] = grown
        return correction


def _trace_snapshot_gen(graph, structure, support, sigma, find, data):
    members: dict[int, set[int]] = {}
    active_vertices = {
        v for e in range(graph.n_edges) if support[e] == 2
        for v in graph.edges[e] if graph.interior[v]
    } | sigma
    for v in active_vertices:
        members.setdefault(find(v), set()).add(v)
    return sorted(
        ((frozenset(vs), is_satisfiable(data[r], structure)) for r, vs in members.items()),
        key=lambda t: sorted(t[0]),
    )
