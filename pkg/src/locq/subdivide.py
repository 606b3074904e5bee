"""Subdivision of a square complex into a geometrically local code.

Every outer square is filled with an (L+1) x (L+1) lattice whose frame
puts the outer X-check at (0, 0), the outer Z-check at (L, L) and the two
outer qubits at (L, 0) and (0, L).  Lattice points are classified by
coordinate parity: both even -> X-check, mixed -> qubit, both odd ->
Z-check.  Points on shared outer edges and corners are identified across
squares, which wires the patches (S regions), the repetition-code T
regions and the U vertices together.

Element census, with E_xq / E_qz the outer X-qubit / qubit-Z adjacency
pair counts and S the number of squares:

    qubits   n  = n_outer + (E_xq + E_qz) (L-1)/2 + S (L-1)^2 / 2
    Z checks m_z = m_z_outer + E_qz (L-1)/2 + S ((L-1)/2)^2
    X checks m_x = m_x_outer + E_xq (L-1)/2 + S ((L-1)/2)^2
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gf2 import Gf2Matrix
from .genrep import GenRepCode, _assemble_rep
from .hypergraph import TannerHypergraph
from .square_complex import SquareComplex
from .surface import PatchStructure


@dataclass(frozen=True)
class PatchView:
    """One S region exposed as a standalone generalized surface patch.

    Local vertices are the patch's Z-checks plus, flagged open, the
    adjacent T-region checks that absorb syndrome pushed over the patch
    boundary.
    """

    xcheck: int
    graph: TannerHypergraph
    structure: PatchStructure
    to_global_edge: tuple[int, ...]
    to_global_vertex: tuple[int, ...]
    local_vertex: dict[int, int] = field(repr=False)   # global interior -> local
    local_edge: dict[int, int] = field(repr=False)

    @property
    def n_qubits(self) -> int:
        return self.graph.n_edges


@dataclass(frozen=True)
class TRegionView:
    """One T region exposed as a generalized repetition code."""

    qubit: int
    rep: GenRepCode
    to_global_edge: tuple[int, ...]
    local_vertex: dict[int, int] = field(repr=False)   # global T-check -> local
    u_vertices: tuple[int, ...] = ()                   # global U vertex per arm


@dataclass(frozen=True)
class SubdividedCode:
    length: int
    outer: SquareComplex
    graph: TannerHypergraph
    hx: Gf2Matrix
    hz: Gf2Matrix
    outer_hx: Gf2Matrix
    outer_hz: Gf2Matrix
    vertex_labels: tuple[tuple, ...] = field(repr=False)
    edge_labels: tuple[tuple, ...] = field(repr=False)
    vertex_region: tuple[tuple[str, int], ...] = field(repr=False)
    edge_region: tuple[tuple[str, int], ...] = field(repr=False)
    patches: tuple[PatchView, ...] = field(repr=False)
    t_regions: tuple[TRegionView, ...] = field(repr=False)
    u_vertex: tuple[int, ...] = ()
    census: dict = field(default_factory=dict)

    @property
    def n_qubits(self) -> int:
        return self.graph.n_edges

    def t_region_support(self, qubit: int) -> tuple[int, ...]:
        """All subdivided qubits of one outer qubit's T region."""
        return self.t_regions[qubit].to_global_edge


def subdivide(outer: SquareComplex, length: int) -> SubdividedCode:
    """Fill every outer square with an L x L surface-code patch."""
    if length < 3 or length % 2 == 0:
        raise ValueError(f"subdivision parameter must be odd and >= 3, got {length}")
    L = length
    half = (L - 1) // 2
    squares = outer.squares

    xq_pairs = sorted({(x, q) for x, q1, q2, _ in squares for q in (q1, q2)})
    qz_pairs = sorted({(q, z) for _, q1, q2, z in squares for q in (q1, q2)})
    xq_squares: dict[tuple[int, int], list[int]] = {p: [] for p in xq_pairs}
    for s, (x, q1, q2, _) in enumerate(squares):
        xq_squares[(x, q1)].append(s)
        xq_squares[(x, q2)].append(s)

    # ---- canonical element allocation ----
    vertex_ids: dict[tuple, int] = {}
    vertex_labels: list[tuple] = []

    def new_vertex(key: tuple) -> int:
        vertex_ids[key] = len(vertex_labels)
        vertex_labels.append(key)
        return vertex_ids[key]

    for z in range(outer.n_zchecks):
        new_vertex(("z", z))
    for q, z in qz_pairs:
        for t in range(1, L, 2):
            new_vertex(("qz", q, z, t))
    for s in range(len(squares)):
        for i in range(1, L, 2):
            for j in range(1, L, 2):
                new_vertex(("sq", s, i, j))

    edge_ids: dict[tuple, int] = {}
    edge_labels: list[tuple] = []

    def new_edge(key: tuple) -> int:
        edge_ids[key] = len(edge_labels)
        edge_labels.append(key)
        return edge_ids[key]

    for q in range(outer.n_qubits):
        new_edge(("q", q))
    for x, q in xq_pairs:
        for t in range(1, L, 2):
            new_edge(("xq", x, q, t))
    for q, z in qz_pairs:
        for t in range(2, L, 2):
            new_edge(("qz", q, z, t))
    for s in range(len(squares)):
        for i in range(1, L):
            for j in range(1, L):
                if (i + j) % 2 == 1:
                    new_edge(("sq", s, i, j))

    # ---- incidence from the per-square frames ----
    def vertex_key(s: int, i: int, j: int) -> tuple:
        x, q1, q2, z = squares[s]
        if i == L and j == L:
            return ("z", z)
        if i == L:
            return ("qz", q1, z, j)
        if j == L:
            return ("qz", q2, z, i)
        return ("sq", s, i, j)

    def edge_key(s: int, i: int, j: int) -> tuple:
        x, q1, q2, z = squares[s]
        if i == L and j == 0:
            return ("q", q1)
        if i == 0 and j == L:
            return ("q", q2)
        if j == 0:
            return ("xq", x, q1, i)
        if i == 0:
            return ("xq", x, q2, j)
        if i == L:
            return ("qz", q1, z, j)
        if j == L:
            return ("qz", q2, z, i)
        return ("sq", s, i, j)

    edge_vertices: list[set[int]] = [set() for _ in edge_labels]
    for s in range(len(squares)):
        for i in range(L + 1):
            for j in range(L + 1):
                if (i + j) % 2 == 0:
                    continue
                e = edge_ids[edge_key(s, i, j)]
                for ni, nj in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
                    if 0 <= ni <= L and 0 <= nj <= L and ni % 2 == 1 and nj % 2 == 1:
                        edge_vertices[e].add(vertex_ids[vertex_key(s, ni, nj)])

    graph = TannerHypergraph([True] * len(vertex_labels), [sorted(vs) for vs in edge_vertices])

    # ---- X-check supports ----
    x_supports: dict[tuple, set[int]] = {}
    for x in range(outer.n_xchecks):
        x_supports[("x", x)] = set()
    for x, q in xq_pairs:
        for t in range(2, L, 2):
            x_supports[("xq", x, q, t)] = set()
    for s in range(len(squares)):
        for i in range(2, L, 2):
            for j in range(2, L, 2):
                x_supports[("sqx", s, i, j)] = set()

    def xkey(s: int, i: int, j: int) -> tuple:
        x, q1, q2, _ = squares[s]
        if i == 0 and j == 0:
            return ("x", x)
        if j == 0:
            return ("xq", x, q1, i)
        if i == 0:
            return ("xq", x, q2, j)
        return ("sqx", s, i, j)

    for s in range(len(squares)):
        for i in range(0, L, 2):
            for j in range(0, L, 2):
                support = x_supports[xkey(s, i, j)]
                for ni, nj in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
                    if 0 <= ni <= L and 0 <= nj <= L and (ni + nj) % 2 == 1:
                        support.add(edge_ids[edge_key(s, ni, nj)])

    hx_rows = [sorted(x_supports[k]) for k in x_supports]
    hx = Gf2Matrix.from_rows(hx_rows, graph.n_edges)
    hz = Gf2Matrix.from_rows([graph.vertex_edges[v] for v in range(graph.n_vertices)], graph.n_edges)
    for row in hx_rows:
        assert not graph.syndrome_of(row), "CSS orthogonality violated in subdivision"

    # ---- region labels ----
    vertex_region: list[tuple[str, int]] = []
    for lab in vertex_labels:
        if lab[0] == "z":
            vertex_region.append(("U", lab[1]))
        elif lab[0] == "qz":
            vertex_region.append(("T", lab[1]))
        else:
            vertex_region.append(("S", squares[lab[1]][0]))
    edge_region: list[tuple[str, int]] = []
    for lab in edge_labels:
        if lab[0] == "q":
            edge_region.append(("T", lab[1]))
        elif lab[0] == "qz":
            edge_region.append(("T", lab[1]))
        elif lab[0] == "xq":
            edge_region.append(("S", lab[1]))
        else:
            edge_region.append(("S", squares[lab[1]][0]))

    patches = tuple(
        _build_patch_view(x, outer, L, squares, xq_squares, vertex_ids, vertex_labels,
                          edge_ids, edge_vertices)
        for x in range(outer.n_xchecks)
    )
    t_regions = tuple(
        _build_t_region(q, outer, L, qz_pairs, vertex_ids, edge_ids)
        for q in range(outer.n_qubits)
    )
    u_vertex = tuple(vertex_ids[("z", z)] for z in range(outer.n_zchecks))

    census = {
        "n_qubits": graph.n_edges,
        "n_zchecks": graph.n_vertices,
        "n_xchecks": len(hx_rows),
        "outer_qubits": outer.n_qubits,
        "xq_edges": len(xq_pairs),
        "qz_edges": len(qz_pairs),
        "squares": len(squares),
        "patches": outer.n_xchecks,
        "t_regions": outer.n_qubits,
        "u_vertices": outer.n_zchecks,
        "seams": sum(len(p.structure.seam_edges) for p in patches),
    }
    expected_n = (outer.n_qubits + (len(xq_pairs) + len(qz_pairs)) * half
                  + len(squares) * (L - 1) ** 2 // 2)
    assert census["n_qubits"] == expected_n, "qubit census does not match the closed form"

    return SubdividedCode(
        length=L,
        outer=outer,
        graph=graph,
        hx=hx,
        hz=hz,
        outer_hx=outer.hx(),
        outer_hz=outer.hz(),
        vertex_labels=tuple(vertex_labels),
        edge_labels=tuple(edge_labels),
        vertex_region=tuple(vertex_region),
        edge_region=tuple(edge_region),
        patches=patches,
        t_regions=t_regions,
        u_vertex=u_vertex,
        census=census,
    )


class _DSU:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def _build_patch_view(x, outer, L, squares, xq_squares, vertex_ids, vertex_labels,
                      edge_ids, edge_vertices) -> PatchView:
    my_squares = [s for s, sq in enumerate(squares) if sq[0] == x]
    my_xq = sorted(p for p in xq_squares if p[0] == x)

    # Squares glued across ordinary (two-square) spokes form one sheet;
    # spokes shared by three or more squares are seams of hyperedges.
    dsu = _DSU(my_squares)
    for pair in my_xq:
        touching = xq_squares[pair]
        if len(touching) == 2:
            dsu.union(touching[0], touching[1])
    roots = sorted({dsu.find(s) for s in my_squares})
    merged = {s: roots.index(dsu.find(s)) for s in my_squares}

    global_edges: list[int] = []
    for pair in my_xq:
        for t in range(1, L, 2):
            global_edges.append(edge_ids[("xq", x, pair[1], t)])
    for s in my_squares:
        for i in range(1, L):
            for j in range(1, L):
                if (i + j) % 2 == 1:
                    global_edges.append(edge_ids[("sq", s, i, j)])
    global_edges.sort()
    local_edge = {g: i for i, g in enumerate(global_edges)}

    interior_globals: list[int] = []
    for s in my_squares:
        for i in range(1, L, 2):
            for j in range(1, L, 2):
                interior_globals.append(vertex_ids[("sq", s, i, j)])
    interior_globals.sort()
    interior_set = set(interior_globals)
    open_globals = sorted({v for g in global_edges for v in edge_vertices[g]} - interior_set)

    local_vertex = {g: i for i, g in enumerate(interior_globals)}
    for g in open_globals:
        local_vertex[g] = len(local_vertex)
    to_global_vertex = interior_globals + open_globals
    interior_flags = [True] * len(interior_globals) + [False] * len(open_globals)
    local_edges = [[local_vertex[v] for v in edge_vertices[g]] for g in global_edges]
    graph = TannerHypergraph(interior_flags, local_edges)

    # Sides: group open vertices (T-region checks) by their outer qubit.
    side_qubits = sorted({vertex_labels[g][1] for g in open_globals})
    side_of_qubit = {q: i for i, q in enumerate(side_qubits)}
    sides: list[list[int]] = [[] for _ in side_qubits]
    vertex_side = [-1] * len(interior_globals)
    vertex_square: list[int] = []
    for g in interior_globals:
        vertex_square.append(merged[vertex_labels[g][1]])
    for g in open_globals:
        side = side_of_qubit[vertex_labels[g][1]]
        sides[side].append(local_vertex[g])
        vertex_side.append(side)
        vertex_square.append(-1)

    seam_edges: list[tuple[int, ...]] = []
    seam_squares: list[tuple[int, ...]] = []
    edge_square = [0] * len(global_edges)
    edge_label_of = {}
    for pair in my_xq:
        for t in range(1, L, 2):
            edge_label_of[edge_ids[("xq", x, pair[1], t)]] = pair
    for s in my_squares:
        for i in range(1, L):
            for j in range(1, L):
                if (i + j) % 2 == 1:
                    edge_label_of[edge_ids[("sq", s, i, j)]] = s

    for pair in my_xq:
        touching = xq_squares[pair]
        if len(touching) >= 3:
            seam = tuple(local_edge[edge_ids[("xq", x, pair[1], t)]] for t in range(1, L, 2))
            seam_edges.append(seam)
            seam_squares.append(tuple(sorted({merged[s] for s in touching})))
    for g in global_edges:
        lab = edge_label_of[g]
        if isinstance(lab, tuple):  # xq spoke
            touching = xq_squares[lab]
            edge_square[local_edge[g]] = -1 if len(touching) >= 3 else merged[touching[0]]
        else:
            edge_square[local_edge[g]] = merged[lab]

    # Factor classes of the sides: outer qubits sharing a square with this
    # X-check pair one factor against the other, so 2-colour the co-square
    # graph (complete bipartite for locally product codes).
    colour = {q: -1 for q in side_qubits}
    for start in side_qubits:
        if colour[start] >= 0:
            continue
        colour[start] = 0
        frontier = [start]
        while frontier:
            q = frontier.pop()
            for s in my_squares:
                _, q1, q2, _ = squares[s]
                if q in (q1, q2):
                    other = q2 if q == q1 else q1
                    if colour.get(other, 0) < 0:
                        colour[other] = 1 - colour[q]
                        frontier.append(other)
                    elif other in colour and colour[other] == colour[q]:
                        raise ValueError(
                            f"outer complex is not locally a product at X-check {x}"
                        )
    side_factor = tuple(colour[q] for q in side_qubits)

    structure = PatchStructure(
        n_squares=len(roots),
        edge_square=tuple(edge_square),
        vertex_square=tuple(vertex_square),
        seam_edges=tuple(seam_edges),
        seam_squares=tuple(seam_squares),
        sides=tuple(tuple(s) for s in sides),
        vertex_side=tuple(vertex_side),
        side_factor=side_factor,
    )
    return PatchView(
        xcheck=x,
        graph=graph,
        structure=structure,
        to_global_edge=tuple(global_edges),
        to_global_vertex=tuple(to_global_vertex),
        local_vertex={g: i for g, i in local_vertex.items() if g in interior_set},
        local_edge=local_edge,
    )


def _build_t_region(q, outer, L, qz_pairs, vertex_ids, edge_ids) -> TRegionView:
    # Dangling outer qubits (a single Z neighbour) occur only in open
    # complexes such as the bare single square; the structure is still
    # built, but such a T region is not a decodable repetition code.
    z_neighbors = sorted(z for qq, z in qz_pairs if qq == q)
    delta = len(z_neighbors)
    rep = _assemble_rep(delta, L)
    half = (L - 1) // 2

    to_global_edge = [0] * rep.graph.n_edges
    to_global_edge[rep.central_edge] = edge_ids[("q", q)]
    local_vertex: dict[int, int] = {}
    u_vertices = []
    for a, z in enumerate(z_neighbors):
        for k in range(half):
            to_global_edge[rep.arm_edges[a][k]] = edge_ids[("qz", q, z, 2 * k + 2)]
            local_vertex[vertex_ids[("qz", q, z, 2 * k + 1)]] = rep.arm_vertices[a][k]
        u_vertices.append(vertex_ids[("z", z)])
    return TRegionView(
        qubit=q,
        rep=rep,
        to_global_edge=tuple(to_global_edge),
        local_vertex=local_vertex,
        u_vertices=tuple(u_vertices),
    )
