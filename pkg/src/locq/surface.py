"""Generalized surface codes as tensor products of two repetition factors.

The product of two generalized repetition codes yields a collection of
surface-code squares glued along seams (the lines crossing a factor's
central hyperedge).  Arm-end rows/columns of vertices are open: a
standalone patch plays the same role it would inside a subdivided code,
where the neighbouring regions absorb its boundary.

A factor with branching degree 2 has no genuine branching point, so it
contributes no seams and does not split squares; the product of two such
factors is a single standard surface-code sheet.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gf2 import Gf2Matrix
from .genrep import GenRepCode
from .hypergraph import TannerHypergraph


@dataclass(frozen=True)
class PatchStructure:
    """Square/seam/side decomposition used by the generalized decoders.

    ``side_factor`` groups the T-boundary sides by product factor: joining
    two sides of the same factor requires a path of at least L edges, so
    that is the patch-crossing failure mode decoders must exclude.  Two
    sides of different factors meet at a corner two edges apart, which no
    decoder can prevent and which is harmless to the outer stage.
    """

    n_squares: int
    edge_square: tuple[int, ...]              # -1 for seam hyperedges
    vertex_square: tuple[int, ...]            # -1 for open vertices
    seam_edges: tuple[tuple[int, ...], ...]
    seam_squares: tuple[tuple[int, ...], ...]
    sides: tuple[tuple[int, ...], ...]        # open vertex ids per T-boundary side
    vertex_side: tuple[int, ...]              # -1 for interior vertices
    side_factor: tuple[int, ...] = ()         # factor class per side

    def seam_of_edge(self, e: int) -> int:
        return self._seam_lookup.get(e, -1)

    @property
    def _seam_lookup(self) -> dict[int, int]:
        lookup = self.__dict__.get("_seam_lookup_cache")
        if lookup is None:
            lookup = {e: i for i, es in enumerate(self.seam_edges) for e in es}
            object.__setattr__(self, "_seam_lookup_cache", lookup)
        return lookup


@dataclass(frozen=True)
class GenSurfacePatch:
    graph: TannerHypergraph
    length: int
    factor_a: GenRepCode
    factor_b: GenRepCode
    structure: PatchStructure
    hx: Gf2Matrix
    hz: Gf2Matrix
    vertex_labels: tuple[tuple, ...] = field(repr=False)
    edge_labels: tuple[tuple, ...] = field(repr=False)

    @property
    def n_qubits(self) -> int:
        return self.graph.n_edges


def _effective_arms(delta: int) -> int:
    return delta if delta >= 3 else 1


def _eff(arm: int, delta: int) -> int:
    return arm if delta >= 3 else 0


def build_gen_surface(a: GenRepCode, b: GenRepCode) -> GenSurfacePatch:
    """Tensor product of two generalized repetition codes.

    Qubits are (edge_a x interior_vertex_b) and (interior_vertex_a x
    edge_b); Z-checks are interior x interior pairs, X-checks edge x edge
    pairs.  Open factor vertices produce the patch's open boundary.
    """
    if a.length != b.length:
        raise ValueError("factor lengths must agree for a generalized surface code")
    ga, gb = a.graph, b.graph
    ia = ga.interior_vertices()
    ib = gb.interior_vertices()

    # Vertices: interior (va, vb) first, then the open boundary rows/columns.
    vertex_ids: dict[tuple, int] = {}
    vertex_labels: list[tuple] = []
    interior_flags: list[bool] = []

    def add_vertex(key: tuple, interior: bool) -> int:
        vid = len(vertex_labels)
        vertex_ids[key] = vid
        vertex_labels.append(key)
        interior_flags.append(interior)
        return vid

    for va in ia:
        for vb in ib:
            add_vertex(("zz", va, vb), True)
    for va in range(ga.n_vertices):
        if not ga.interior[va]:
            for vb in ib:
                add_vertex(("zz", va, vb), False)
    for va in ia:
        for vb in range(gb.n_vertices):
            if not gb.interior[vb]:
                add_vertex(("zz", va, vb), False)

    edges: list[tuple[int, ...]] = []
    edge_labels: list[tuple] = []
    for ea in range(ga.n_edges):
        for vb in ib:
            edges.append(tuple(vertex_ids[("zz", va, vb)] for va in ga.edges[ea]))
            edge_labels.append(("ev", ea, vb))
    for va in ia:
        for eb in range(gb.n_edges):
            edges.append(tuple(vertex_ids[("zz", va, vb)] for vb in gb.edges[eb]))
            edge_labels.append(("ve", va, eb))
    graph = TannerHypergraph(interior_flags, edges)

    # CSS matrices.  X-checks are (ea, eb) pairs.
    edge_index = {lab: i for i, lab in enumerate(edge_labels)}
    hx_rows = []
    for ea in range(ga.n_edges):
        for eb in range(gb.n_edges):
            support = [edge_index[("ev", ea, vb)] for vb in gb.edges[eb] if gb.interior[vb]]
            support += [edge_index[("ve", va, eb)] for va in ga.edges[ea] if ga.interior[va]]
            hx_rows.append(support)
    hx = Gf2Matrix.from_rows(hx_rows, graph.n_edges)
    n_interior = len(ia) * len(ib)
    hz_rows = [graph.vertex_edges[v] for v in range(n_interior)]
    hz = Gf2Matrix.from_rows(hz_rows, graph.n_edges)
    for row in hx_rows:
        assert not graph.syndrome_of(row), "CSS orthogonality violated"

    structure = _patch_structure(a, b, graph, vertex_labels, edge_labels)
    return GenSurfacePatch(
        graph=graph,
        length=a.length,
        factor_a=a,
        factor_b=b,
        structure=structure,
        hx=hx,
        hz=hz,
        vertex_labels=tuple(vertex_labels),
        edge_labels=tuple(edge_labels),
    )


def _patch_structure(
    a: GenRepCode,
    b: GenRepCode,
    graph: TannerHypergraph,
    vertex_labels: list[tuple],
    edge_labels: list[tuple],
) -> PatchStructure:
    na, nb = _effective_arms(a.delta), _effective_arms(b.delta)

    def square_index(arm_a: int, arm_b: int) -> int:
        return _eff(arm_a, a.delta) * nb + _eff(arm_b, b.delta)

    # Seams: the central hyperedge of a branching factor crossing each arm
    # of the other factor.
    seam_index: dict[tuple, int] = {}
    if a.delta >= 3:
        for j in range(b.delta):
            seam_index[("a", j)] = len(seam_index)
    if b.delta >= 3:
        for i in range(a.delta):
            seam_index[("b", i)] = len(seam_index)

    seam_edges: list[list[int]] = [[] for _ in seam_index]
    edge_square = []
    for lab in edge_labels:
        kind, x, y = lab
        if kind == "ev":
            ea, vb = x, y
            if ea == a.central_edge and a.delta >= 3:
                s = seam_index[("a", b.arm_of_vertex[vb])]
                seam_edges[s].append(len(edge_square))
                edge_square.append(-1)
            else:
                arm_a = a.arm_of_edge[ea] if ea != a.central_edge else 0
                edge_square.append(square_index(arm_a, b.arm_of_vertex[vb]))
        else:
            va, eb = x, y
            if eb == b.central_edge and b.delta >= 3:
                s = seam_index[("b", a.arm_of_vertex[va])]
                seam_edges[s].append(len(edge_square))
                edge_square.append(-1)
            else:
                arm_b = b.arm_of_edge[eb] if eb != b.central_edge else 0
                edge_square.append(square_index(a.arm_of_vertex[va], arm_b))

    seam_squares = []
    for key in seam_index:
        facet, arm = key
        if facet == "a":
            adjacent = sorted({square_index(i, arm) for i in range(a.delta)})
        else:
            adjacent = sorted({square_index(arm, j) for j in range(b.delta)})
        seam_squares.append(tuple(adjacent))

    # Sides: one per factor arm end; every open vertex lies on exactly one.
    sides: list[list[int]] = [[] for _ in range(a.delta + b.delta)]
    vertex_square = []
    vertex_side = []
    for vid, lab in enumerate(vertex_labels):
        _, va, vb = lab
        if graph.interior[vid]:
            vertex_square.append(square_index(a.arm_of_vertex[va], b.arm_of_vertex[vb]))
            vertex_side.append(-1)
        else:
            vertex_square.append(-1)
            if not a.graph.interior[va]:
                side = a.arm_of_vertex[va]
            else:
                side = a.delta + b.arm_of_vertex[vb]
            sides[side].append(vid)
            vertex_side.append(side)

    return PatchStructure(
        n_squares=na * nb,
        edge_square=tuple(edge_square),
        vertex_square=tuple(vertex_square),
        seam_edges=tuple(tuple(es) for es in seam_edges),
        seam_squares=tuple(seam_squares),
        sides=tuple(tuple(s) for s in sides),
        vertex_side=tuple(vertex_side),
        side_factor=tuple([0] * a.delta + [1] * b.delta),
    )


@dataclass(frozen=True)
class PlanarSurfaceCode:
    """Standard distance-d planar surface code (one logical qubit)."""

    distance: int
    graph: TannerHypergraph
    hx: Gf2Matrix
    hz: Gf2Matrix

    @property
    def n_qubits(self) -> int:
        return self.graph.n_edges


def build_planar_surface(distance: int) -> PlanarSurfaceCode:
    """Planar surface code with rough left/right and smooth top/bottom.

    Built as the product of an open path (rough direction) with a closed
    path, giving d^2 + (d-1)^2 qubits and one logical qubit.
    """
    if distance < 2:
        raise ValueError("distance must be >= 2")
    d = distance
    # Open factor: the standard repetition code of length d would need odd
    # d for the branching layout, so lay the path out directly.
    open_interior = [True] * (d - 1) + [False] * 2
    open_chain = [d - 1] + list(range(d - 1)) + [d]
    open_edges = [(open_chain[k], open_chain[k + 1]) for k in range(d)]
    fa = TannerHypergraph(open_interior, open_edges)
    # Closed factor: d - 1 bits, all d checks real.
    fb = TannerHypergraph([True] * d, [(k, k + 1) for k in range(d - 1)])

    vertex_ids: dict[tuple, int] = {}
    interior_flags: list[bool] = []
    labels: list[tuple] = []

    def add_vertex(key, interior):
        vertex_ids[key] = len(labels)
        labels.append(key)
        interior_flags.append(interior)

    for va in range(fa.n_vertices):
        if fa.interior[va]:
            for vb in range(fb.n_vertices):
                add_vertex((va, vb), True)
    for va in range(fa.n_vertices):
        if not fa.interior[va]:
            for vb in range(fb.n_vertices):
                add_vertex((va, vb), False)

    edges = []
    hx_supports = []
    for ea in range(fa.n_edges):
        for vb in range(fb.n_vertices):
            edges.append(tuple(vertex_ids[(va, vb)] for va in fa.edges[ea]))
    for va in range(fa.n_vertices):
        if fa.interior[va]:
            for eb in range(fb.n_edges):
                edges.append(tuple(vertex_ids[(va, vb)] for vb in fb.edges[eb]))
    graph = TannerHypergraph(interior_flags, edges)

    def h_qubit(ea, vb):
        return ea * fb.n_vertices + vb

    n_h = fa.n_edges * fb.n_vertices
    v_index = {}
    k = 0
    for va in range(fa.n_vertices):
        if fa.interior[va]:
            for eb in range(fb.n_edges):
                v_index[(va, eb)] = n_h + k
                k += 1
    for ea in range(fa.n_edges):
        for eb in range(fb.n_edges):
            support = [h_qubit(ea, vb) for vb in fb.edges[eb]]
            support += [v_index[(va, eb)] for va in fa.edges[ea] if fa.interior[va]]
            hx_supports.append(support)
    hx = Gf2Matrix.from_rows(hx_supports, graph.n_edges)
    n_interior = (d - 1) * d
    hz = Gf2Matrix.from_rows([graph.vertex_edges[v] for v in range(n_interior)], graph.n_edges)
    for row in hx_supports:
        assert not graph.syndrome_of(row), "CSS orthogonality violated"
    return PlanarSurfaceCode(distance=d, graph=graph, hx=hx, hz=hz)


__all__ = [
    "PatchStructure",
    "GenSurfacePatch",
    "PlanarSurfaceCode",
    "build_gen_surface",
    "build_planar_surface",
]
