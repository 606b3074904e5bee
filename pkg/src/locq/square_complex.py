"""Square complexes: the outer-code scaffold consumed by subdivision.

A square complex records an outer CSS code through its local product
structure: every square is a quadruple (X-check, qubit, qubit, Z-check)
whose two qubits are each adjacent to both checks.  Outer parity-check
matrices are derived from square membership.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import Gf2Matrix


@dataclass(frozen=True)
class SquareComplex:
    n_xchecks: int
    n_qubits: int
    n_zchecks: int
    squares: tuple[tuple[int, int, int, int], ...]  # (x, q1, q2, z)
    distance_hint: int | None = None
    name: str = "square-complex"

    def __post_init__(self):
        seen = set()
        for sq in self.squares:
            x, q1, q2, z = sq
            if not (0 <= x < self.n_xchecks and 0 <= z < self.n_zchecks):
                raise ValueError(f"square {sq} references an unknown check")
            if not (0 <= q1 < self.n_qubits and 0 <= q2 < self.n_qubits):
                raise ValueError(f"square {sq} references an unknown qubit")
            if q1 == q2:
                raise ValueError(f"square {sq} repeats a qubit")
            if sq in seen:
                raise ValueError(f"duplicate square {sq}")
            seen.add(sq)

    def hx(self) -> Gf2Matrix:
        rows: list[set[int]] = [set() for _ in range(self.n_xchecks)]
        for x, q1, q2, _ in self.squares:
            rows[x].update((q1, q2))
        return Gf2Matrix.from_rows([sorted(r) for r in rows], self.n_qubits)

    def hz(self) -> Gf2Matrix:
        rows: list[set[int]] = [set() for _ in range(self.n_zchecks)]
        for _, q1, q2, z in self.squares:
            rows[z].update((q1, q2))
        return Gf2Matrix.from_rows([sorted(r) for r in rows], self.n_qubits)


def single_square_complex() -> SquareComplex:
    """One square: the smallest complex, useful for partition counting."""
    return SquareComplex(1, 2, 1, ((0, 0, 1, 0),), name="single-square")


def toric_square_complex(width: int, height: int) -> SquareComplex:
    """Toric code as the product of two cyclic repetition codes.

    Serves as a small stand-in for the good qLDPC outer codes: it has the
    required local product structure, k = 2 and distance min(width, height).
    """
    if width < 2 or height < 2:
        raise ValueError("toric dimensions must be >= 2")
    w, h = width, height

    def xcheck(i, j):   # (a-bit i, b-bit j)
        return i * h + j

    def qubit_a(i, c):  # (a-bit i, b-check c)
        return i * h + c

    def qubit_b(c, j):  # (a-check c, b-bit j)
        return w * h + c * h + j

    def zcheck(c1, c2):
        return c1 * h + c2

    squares = []
    for i in range(w):
        for j in range(h):
            for c1 in (i, (i + 1) % w):
                for c2 in (j, (j + 1) % h):
                    squares.append((xcheck(i, j), qubit_a(i, c2), qubit_b(c1, j), zcheck(c1, c2)))
    return SquareComplex(
        n_xchecks=w * h,
        n_qubits=2 * w * h,
        n_zchecks=w * h,
        squares=tuple(squares),
        distance_hint=min(w, h),
        name=f"toric-{w}x{h}",
    )
