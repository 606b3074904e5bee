"""Tanner hypergraph: the universal decoding substrate.

Vertices are Z-type checks (syndrome bits for X errors) plus open
placeholder vertices along code boundaries; (hyper)edges are qubits listed
with every incident vertex.  An edge touching an open vertex is a boundary
edge.  Decoders never read syndrome values on open vertices.
"""

from __future__ import annotations

from typing import Iterable, Sequence

PauliXError = set[int]
Syndrome = set[int]
Erasure = set[int]


class TannerHypergraph:
    """Immutable incidence structure of checks (vertices) and qubits (edges)."""

    __slots__ = ("n_vertices", "interior", "edges", "boundary_edge", "vertex_edges")

    def __init__(self, interior: Sequence[bool], edges: Sequence[Iterable[int]]):
        self.n_vertices = len(interior)
        self.interior = tuple(bool(f) for f in interior)
        canon = []
        for e in edges:
            vs = tuple(sorted(set(e)))
            if not vs:
                raise ValueError("hyperedge with no incident vertices")
            if vs[0] < 0 or vs[-1] >= self.n_vertices:
                raise ValueError("hyperedge references an unknown vertex")
            canon.append(vs)
        self.edges = tuple(canon)
        self.boundary_edge = tuple(
            any(not self.interior[v] for v in vs) or sum(self.interior[v] for v in vs) < 2
            for vs in self.edges
        )
        incidence: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for e, vs in enumerate(self.edges):
            for v in vs:
                incidence[v].append(e)
        self.vertex_edges = tuple(tuple(es) for es in incidence)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def interior_vertices(self) -> list[int]:
        return [v for v in range(self.n_vertices) if self.interior[v]]

    def max_arity(self) -> int:
        return max((len(vs) for vs in self.edges), default=0)

    def check_flags(self) -> None:
        """Assert the open-vertex / boundary-edge consistency convention."""
        for v in range(self.n_vertices):
            touches_boundary = any(self.boundary_edge[e] for e in self.vertex_edges[v])
            if not self.interior[v] and self.vertex_edges[v] and not touches_boundary:
                raise AssertionError(f"open vertex {v} has no incident boundary edge")

    def syndrome_of(self, error: Iterable[int]) -> Syndrome:
        """Interior vertices covered an odd number of times by the error."""
        odd: set[int] = set()
        for e in error:
            for v in self.edges[e]:
                if v in odd:
                    odd.discard(v)
                else:
                    odd.add(v)
        return {v for v in odd if self.interior[v]}


def syndrome_of(graph: TannerHypergraph, error: Iterable[int]) -> Syndrome:
    """Module-level alias for :meth:`TannerHypergraph.syndrome_of`."""
    return graph.syndrome_of(error)
