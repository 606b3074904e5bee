"""Union-Find decoding for surface codes with boundary.

Syndrome validation grows unsatisfiable clusters (odd parity, not touching
the boundary) by half edges until every cluster is satisfiable, then hands
the grown erasure to the peeling decoder.  Two implementations share the
same growth semantics:

* ``decode_uf_naive`` recomputes clusters from scratch every round - the
  reference oracle, simple and quadratic;
* ``decode_uf_fast`` maintains cluster trees with weighted union and path
  splitting plus the Support table and per-root boundary lists, giving
  almost linear running time.

Growth semantics: in each round every unsatisfiable cluster adds one
growth unit to each not-fully-grown edge incident to each of its boundary
vertices; an edge is grown at two units.  A boundary vertex is a cluster
vertex with at least one incident not-fully-grown edge.
"""

from __future__ import annotations

from .errors import OpCounter, UnsatisfiableClusterError
from .hypergraph import Erasure, PauliXError, Syndrome, TannerHypergraph
from .peeling import decode_erasure


def _validate(graph: TannerHypergraph, erasure: Erasure, syndrome: Syndrome) -> None:
    for e in erasure:
        if len(graph.edges[e]) > 2:
            raise ValueError("surface-code Union-Find requires ordinary edges; "
                             "use the generalized decoder for hyperedges")
    for v in syndrome:
        if not graph.interior[v]:
            raise ValueError(f"syndrome vertex {v} is not an interior check")


def _interior_endpoints(graph: TannerHypergraph, e: int) -> list[int]:
    return [v for v in graph.edges[e] if graph.interior[v]]


def decode_uf_naive(graph: TannerHypergraph, erasure: Erasure, syndrome: Syndrome,
                    counter: OpCounter | None = None, trace: list | None = None) -> PauliXError:
    """Reference Union-Find decoder; clusters recomputed every round."""
    _validate(graph, erasure, syndrome)
    if graph.max_arity() > 2:
        raise ValueError("graph contains hyperedges; use the generalized decoder")
    support = [0] * graph.n_edges
    for e in erasure:
        support[e] = 2
    sigma = set(syndrome)
    ops = 0

    while True:
        clusters = _components(graph, support, sigma)
        ops += graph.n_edges + len(clusters)
        unsat = [c for c in clusters if not c["satisfiable"]]
        if trace is not None:
            trace.append(sorted(
                ((frozenset(c["vertices"]), c["satisfiable"]) for c in clusters),
                key=lambda t: sorted(t[0]),
            ))
        if not unsat:
            break
        for c in unsat:
            grew = False
            for v in sorted(c["vertices"]):
                for e in graph.vertex_edges[v]:
                    if support[e] < 2:
                        support[e] += 1
                        grew = True
                        ops += 1
            if not grew:
                raise UnsatisfiableClusterError(
                    "cluster cannot grow further yet stays unsatisfiable"
                )
    grown = {e for e in range(graph.n_edges) if support[e] == 2}
    if counter is not None:
        counter.add(ops)
    return decode_erasure(graph, grown, sigma, with_boundary=True, counter=counter)


def _components(graph: TannerHypergraph, support: list[int], sigma: set[int]) -> list[dict]:
    """Connected components over fully grown edges, plus defect singletons."""
    full = [e for e in range(graph.n_edges) if support[e] == 2]
    seen: set[int] = set()
    clusters = []
    active_vertices = sorted(
        {v for e in full for v in graph.edges[e] if graph.interior[v]} | sigma
    )
    full_set = set(full)
    for start in active_vertices:
        if start in seen:
            continue
        vertices = {start}
        edges = set()
        boundary = False
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            for e in graph.vertex_edges[u]:
                if e not in full_set:
                    continue
                edges.add(e)
                if graph.boundary_edge[e]:
                    boundary = True
                for w in graph.edges[e]:
                    if graph.interior[w] and w not in seen:
                        seen.add(w)
                        vertices.add(w)
                        stack.append(w)
        parity = len(vertices & sigma) % 2
        clusters.append({
            "vertices": vertices,
            "edges": edges,
            "boundary": boundary,
            "satisfiable": boundary or parity == 0,
        })
    return clusters


class ClusterForest:
    """Cluster trees with weighted union and path splitting.

    Per root: size, syndrome parity and boundary status; the Support table
    stores each edge's growth units (0 unoccupied, 1 half-grown, 2 grown;
    the value never decreases) and each root keeps a list of its boundary
    vertices.  A vertex lives in exactly one root's list: lists start as
    singletons and are concatenated on union.
    """

    def __init__(self, graph: TannerHypergraph, syndrome: Syndrome):
        n = graph.n_vertices
        self.graph = graph
        self.parent = list(range(n))
        self.size = [1] * n
        self.parity = [v in syndrome for v in range(n)]
        self.boundary = [False] * n
        self.boundary_lists: list[list[int]] = [
            [v] if graph.interior[v] else [] for v in range(n)
        ]
        self.support = [0] * graph.n_edges
        self.ops = 0

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
            self.ops += 1
        return x

    def union(self, a: int, b: int) -> int:
        """Union roots a, b: smaller tree under the larger, ties to low id."""
        self.ops += 1
        if self.size[a] < self.size[b] or (self.size[a] == self.size[b] and b < a):
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        self.parity[a] ^= self.parity[b]
        self.boundary[a] = self.boundary[a] or self.boundary[b]
        self.boundary_lists[a].extend(self.boundary_lists[b])
        self.boundary_lists[b] = []
        return a

    def satisfiable(self, root: int) -> bool:
        return self.boundary[root] or not self.parity[root]

    def absorb_erasure(self, erasure: Erasure) -> None:
        for e in sorted(erasure):
            self.support[e] = 2
            ends = _interior_endpoints(self.graph, e)
            if self.graph.boundary_edge[e] and ends:
                self.boundary[self.find(ends[0])] = True
            if len(ends) == 2:
                ra, rb = self.find(ends[0]), self.find(ends[1])
                if ra != rb:
                    self.union(ra, rb)

    def grow(self, root: int, fusion: list[int]) -> None:
        """One half-edge growth round for one cluster."""
        graph = self.graph
        cleaned = []
        for v in self.boundary_lists[root]:
            open_edges = False
            for e in graph.vertex_edges[v]:
                if self.support[e] < 2:
                    open_edges = True
                    self.support[e] += 1
                    self.ops += 1
                    if self.support[e] == 2:
                        if graph.boundary_edge[e]:
                            self.boundary[root] = True
                        if len(_interior_endpoints(graph, e)) == 2:
                            fusion.append(e)
            if open_edges:
                cleaned.append(v)
        self.boundary_lists[root] = cleaned

    def refresh_boundary_list(self, root: int) -> None:
        graph = self.graph
        lst = [v for v in self.boundary_lists[root]
               if any(self.support[e] < 2 for e in graph.vertex_edges[v])]
        self.ops += len(self.boundary_lists[root]) - len(lst)
        self.boundary_lists[root] = lst

    def grown_edges(self) -> set[int]:
        return {e for e in range(self.graph.n_edges) if self.support[e] == 2}


def decode_uf_fast(graph: TannerHypergraph, erasure: Erasure, syndrome: Syndrome,
                   counter: OpCounter | None = None, trace: list | None = None) -> PauliXError:
    """Almost-linear Union-Find decoder on a ClusterForest."""
    _validate(graph, erasure, syndrome)
    if graph.max_arity() > 2:
        raise ValueError("graph contains hyperedges; use the generalized decoder")
    sigma = set(syndrome)
    forest = ClusterForest(graph, sigma)
    forest.absorb_erasure(erasure)

    n = graph.n_vertices
    roots = sorted({forest.find(v) for v in range(n) if graph.interior[v]})
    active = sorted(r for r in roots if not forest.satisfiable(r))
    if trace is not None:
        trace.append(_trace_snapshot(forest, sigma))

    while active:
        fusion: list[int] = []
        for u in active:
            forest.grow(u, fusion)
        for e in fusion:
            va, vb = _interior_endpoints(graph, e)
            ra, rb = forest.find(va), forest.find(vb)
            if ra != rb:
                forest.union(ra, rb)
        refreshed = []
        for u in sorted({forest.find(u) for u in active}):
            if forest.satisfiable(u):
                continue
            forest.refresh_boundary_list(u)
            if not forest.boundary_lists[u]:
                raise UnsatisfiableClusterError(
                    "cluster cannot grow further yet stays unsatisfiable"
                )
            refreshed.append(u)
        active = refreshed
        if trace is not None:
            trace.append(_trace_snapshot(forest, sigma))

    if counter is not None:
        counter.add(forest.ops)
    return decode_erasure(graph, forest.grown_edges(), sigma,
                          with_boundary=True, counter=counter)


def _trace_snapshot(forest: ClusterForest, sigma: set[int]):
    """Cluster/satisfiability listing for lockstep comparison (test hook)."""
    graph = forest.graph
    members: dict[int, set[int]] = {}
    active_vertices = {
        v for e in range(graph.n_edges) if forest.support[e] == 2
        for v in graph.edges[e] if graph.interior[v]
    } | sigma
    for v in active_vertices:
        members.setdefault(forest.find(v), set()).add(v)
    return sorted(
        ((frozenset(vs), forest.satisfiable(r)) for r, vs in members.items()),
        key=lambda t: sorted(t[0]),
    )
