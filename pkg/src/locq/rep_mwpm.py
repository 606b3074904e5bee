"""Minimum-weight matching for generalized repetition codes.

The code is tree shaped, so fixing the error on the central (hyper)edge
fixes every other bit: the error value changes across a vertex exactly
when that vertex carries syndrome.  Only two configurations exist and
they are complementary, so the decoder places an error on the centre,
propagates outwards, and keeps the lighter of the configuration and its
complement.
"""

from __future__ import annotations

from .errors import OpCounter
from .genrep import GenRepCode
from .hypergraph import PauliXError, Syndrome


def decode_rep(code: GenRepCode, syndrome: Syndrome, counter: OpCounter | None = None) -> PauliXError:
    """Minimum-weight correction for a syndrome on a generalized repetition code.

    Every syndrome is consistent here.  On a weight tie the configuration
    excluding the central (hyper)edge is returned.
    """
    for v in syndrome:
        if not (0 <= v < code.graph.n_vertices) or not code.graph.interior[v]:
            raise ValueError(f"syndrome vertex {v} is not an interior check of the code")

    placed = {code.central_edge}
    ops = 1
    for arm in range(code.delta):
        current = True
        vertices = code.arm_vertices[arm]
        for k, edge in enumerate(code.arm_edges[arm]):
            if vertices[k] in syndrome:
                current = not current
            if current:
                placed.add(edge)
            ops += 1
    total = code.graph.n_edges
    if counter is not None:
        counter.add(ops)
    if 2 * len(placed) < total:
        return placed
    # complement has the same syndrome (every interior vertex has degree 2)
    return set(range(total)) - placed
