"""Generalized repetition codes: a 1-D chain with a central branching point.

The central bit is a hyperedge of arity ``delta``; each of the ``delta``
arms is a chain of ``(length - 1) / 2`` ordinary edges ending at an open
vertex.  ``delta = 2`` recovers the standard repetition code.  The total
(hyper)edge count ``(length - 1) * delta / 2 + 1`` equals the code
distance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hypergraph import TannerHypergraph


@dataclass(frozen=True)
class GenRepCode:
    delta: int
    length: int
    graph: TannerHypergraph
    central_edge: int
    arm_edges: tuple[tuple[int, ...], ...]     # per arm, ordered centre -> out
    arm_vertices: tuple[tuple[int, ...], ...]  # per arm, centre -> out, open end last
    arm_of_edge: tuple[int, ...]               # central edge mapped to -1
    arm_of_vertex: tuple[int, ...]

    @property
    def distance(self) -> int:
        return self.graph.n_edges

    @property
    def hz(self):
        """Interior-check incidence (the classical parity-check matrix)."""
        from .gf2 import Gf2Matrix

        rows = [self.graph.vertex_edges[v] for v in self.graph.interior_vertices()]
        return Gf2Matrix.from_rows(rows, self.graph.n_edges)

    @property
    def hx(self):
        """No X checks: the only zero-syndrome stabilizer is the identity."""
        from .gf2 import Gf2Matrix

        return Gf2Matrix.zeros(0, self.graph.n_edges)

    def interior_arm_vertices(self, arm: int) -> tuple[int, ...]:
        return self.arm_vertices[arm][:-1]


def build_gen_rep(delta: int, length: int) -> GenRepCode:
    """Construct the generalized repetition code of branching degree delta.

    Rejects even lengths and delta < 2.  Vertex ids are allocated interior
    first (arm-major, centre outwards) with the open arm ends last; edge 0
    is the central hyperedge, followed by arm edges centre outwards.
    """
    if delta < 2:
        raise ValueError(f"branching degree must be >= 2, got {delta}")
    if length < 1 or length % 2 == 0:
        raise ValueError(f"length must be odd and >= 1, got {length}")
    return _assemble_rep(delta, length)


def _assemble_rep(delta: int, length: int) -> GenRepCode:
    """Shared assembly; callers have validated delta/length semantics."""
    m = (length - 1) // 2  # edges per arm
    n_interior = delta * m
    interior = [True] * n_interior + [False] * delta
    open_ids = [n_interior + a for a in range(delta)]

    arm_vertices = []
    for a in range(delta):
        ids = [a * m + k for k in range(m)] + [open_ids[a]]
        arm_vertices.append(tuple(ids))

    edges: list[tuple[int, ...]] = []
    central = tuple(arm_vertices[a][0] for a in range(delta))
    edges.append(central)
    arm_edges = []
    for a in range(delta):
        ids = []
        chain = arm_vertices[a]
        for k in range(m):
            ids.append(len(edges))
            edges.append((chain[k], chain[k + 1]))
        arm_edges.append(tuple(ids))

    graph = TannerHypergraph(interior, edges)
    arm_of_edge = [-1] * graph.n_edges
    for a, ids in enumerate(arm_edges):
        for e in ids:
            arm_of_edge[e] = a
    arm_of_vertex = [0] * graph.n_vertices
    for a, ids in enumerate(arm_vertices):
        for v in ids:
            arm_of_vertex[v] = a

    code = GenRepCode(
        delta=delta,
        length=length,
        graph=graph,
        central_edge=0,
        arm_edges=tuple(arm_edges),
        arm_vertices=tuple(arm_vertices),
        arm_of_edge=tuple(arm_of_edge),
        arm_of_vertex=tuple(arm_of_vertex),
    )
    expected = (length - 1) * delta // 2 + 1
    assert graph.n_edges == expected, "edge census does not match the closed form"
    for v in range(n_interior):
        assert len(graph.vertex_edges[v]) == 2, "interior vertex degree must be 2"
    return code
