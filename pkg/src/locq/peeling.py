"""Erasure decoding by spanning-forest peeling.

Within an erasure, any syndrome-consistent error supported on the erasure
is a most likely correction, so decoding reduces to finding a set A inside
the erasure whose boundary equals the syndrome.  A spanning forest of the
erasure is grown (clusters touching the code boundary are rooted at an
open vertex) and peeled leaf by leaf.

These routines handle ordinary edges only: one or two incident vertices,
of which at least one is interior.  Hyperedges of higher arity are dealt
with by the generalized erasure decoder before peeling is invoked.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnsatisfiableClusterError
from .hypergraph import Erasure, PauliXError, Syndrome, TannerHypergraph


@dataclass
class SpanningForest:
    """Rooted spanning trees of an erasure, one per connected cluster."""

    trees: list[tuple[int, list[int]]]    # (root vertex, tree edges in growth order)
    parent_edge: dict[int, int] = field(default_factory=dict)
    parent_vertex: dict[int, int] = field(default_factory=dict)
    ops: int = 0

    @property
    def n_edges(self) -> int:
        return sum(len(edges) for _, edges in self.trees)


def spanning_forest(graph: TannerHypergraph, erasure: Erasure,
                    boundary_aware: bool = True) -> SpanningForest:
    """Grow a spanning forest of the erasure.

    Within each cluster, edges enter the tree only when they reach a new
    interior vertex; with ``boundary_aware`` a cluster containing open
    vertices is rooted at the smallest one, so each tree carries at most
    one open vertex.  Deterministic: clusters are discovered in edge-id
    order and grown breadth first with id-ordered neighbours.
    """
    erased = sorted(set(erasure))
    for e in erased:
        if len(graph.edges[e]) > 2:
            raise ValueError(
                f"edge {e} has arity {len(graph.edges[e])}; peeling handles ordinary edges only"
            )
    forest = SpanningForest(trees=[])
    erased_set = set(erased)
    seen_edge: set[int] = set()
    ops = 0

    for seed in erased:
        if seed in seen_edge:
            continue
        # Discover the cluster of this seed edge.
        cluster_edges: set[int] = set()
        cluster_vertices: list[int] = []
        stack = [seed]
        seen_edge.add(seed)
        seen_vertex: set[int] = set()
        while stack:
            e = stack.pop()
            cluster_edges.add(e)
            ops += 1
            for v in graph.edges[e]:
                if v not in seen_vertex:
                    seen_vertex.add(v)
                    cluster_vertices.append(v)
                    for e2 in graph.vertex_edges[v]:
                        if e2 in erased_set and e2 not in seen_edge:
                            seen_edge.add(e2)
                            stack.append(e2)

        root = None
        if boundary_aware:
            opens = [v for v in cluster_vertices if not graph.interior[v]]
            if opens:
                root = min(opens)
        if root is None:
            root = min(v for v in cluster_vertices if graph.interior[v])

        tree_edges: list[int] = []
        visited = {root}
        frontier = [root]
        while frontier:
            next_frontier = []
            for u in frontier:
                for e in sorted(graph.vertex_edges[u]):
                    if e not in cluster_edges:
                        continue
                    ops += 1
                    for v in graph.edges[e]:
                        if v not in visited and graph.interior[v]:
                            visited.add(v)
                            forest.parent_edge[v] = e
                            forest.parent_vertex[v] = u
                            tree_edges.append(e)
                            next_frontier.append(v)
            frontier = next_frontier
        forest.trees.append((root, tree_edges))
    forest.ops = ops
    return forest


def peel(graph: TannerHypergraph, forest: SpanningForest, syndrome: Syndrome) -> PauliXError:
    """Peel the forest from its leaves, reconstructing an error for the syndrome.

    Rule per leaf edge e with pendant vertex u: if u carries syndrome, add
    e to the correction, clear u and flip the other endpoint.  Leaves are
    consumed from a LIFO stack seeded in ascending edge id.  Raises
    UnsatisfiableClusterError when a boundary-free cluster ends with
    unmatched syndrome (the even-parity precondition was violated).
    """
    sigma = set(syndrome)
    correction: set[int] = set()
    ops = 0

    pending_children: dict[int, int] = {}
    for v in forest.parent_edge:
        p = forest.parent_vertex[v]
        pending_children[p] = pending_children.get(p, 0) + 1
    child_of_edge: dict[int, int] = {e: v for v, e in forest.parent_edge.items()}

    stack = sorted(
        (e for e, v in child_of_edge.items() if pending_children.get(v, 0) == 0)
    )
    peeled = 0
    while stack:
        e = stack.pop()
        u = child_of_edge[e]
        p = forest.parent_vertex[u]
        peeled += 1
        ops += 1
        if u in sigma:
            correction.add(e)
            sigma.discard(u)
            if graph.interior[p]:
                if p in sigma:
                    sigma.discard(p)
                else:
                    sigma.add(p)
        pending_children[p] -= 1
        if pending_children[p] == 0 and p in forest.parent_edge:
            stack.append(forest.parent_edge[p])

    assert peeled == len(child_of_edge), "forest not fully peeled"
    forest.ops += ops
    if sigma:
        raise UnsatisfiableClusterError(
            f"leftover syndrome {sorted(sigma)} after peeling; cluster unsatisfiable"
        )
    return correction


def decode_erasure(graph: TannerHypergraph, erasure: Erasure, syndrome: Syndrome,
                   with_boundary: bool = True, counter=None) -> PauliXError:
    """Full erasure decoder: spanning forest plus leaf peeling.

    The output P satisfies P within the erasure and syndrome(P) equal to the
    input syndrome; by the most-likely-coset property of erasures this is a
    maximum-likelihood correction.
    """
    for v in syndrome:
        if not graph.interior[v]:
            raise ValueError(f"syndrome on open vertex {v}")
    forest = spanning_forest(graph, erasure, boundary_aware=with_boundary)
    correction = peel(graph, forest, syndrome)
    if counter is not None:
        counter.ticks += forest.ops
    return correction
