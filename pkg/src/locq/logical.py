"""Residual-error judgment: stabilizer or logical.

A residual X error with empty syndrome is harmless exactly when it lies in
the row space of Hx (a product of X stabilizer generators).
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .gf2 import pack_indices


def is_logical_failure(code, residual: Iterable[int]) -> bool:
    """True iff a zero-syndrome residual acts nontrivially on the code space.

    ``code`` is any built code object (graph + hx + hz) or a plain
    ``(hx, hz)`` pair of Gf2Matrix.  Residuals with nonzero syndrome are
    rejected: the caller is expected to have applied a syndrome-consistent
    correction first.
    """
    residual = set(residual)
    if isinstance(code, tuple):
        hx, hz = code
        graph = None
    else:
        hx, hz = code.hx, code.hz
        graph = code.graph
    if not residual:
        return False
    if graph is not None:
        syndrome = graph.syndrome_of(residual)
    else:
        packed = pack_indices(residual, hz.cols)
        syndrome = {
            i for i in range(hz.rows)
            if int(np.bitwise_count(hz.words[i] & packed).sum()) & 1
        }
    if syndrome:
        raise ValueError("residual has nonzero syndrome; not a candidate logical operator")
    return hx.solve_left(pack_indices(residual, hx.cols)) is None
