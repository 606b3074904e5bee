"""Dense bit-packed GF(2) linear algebra.

Matrices are stored as numpy uint64 arrays with 64 columns per word.  This
is plenty for the sizes this package works at (ranks of a few thousand
columns are only exercised by tests and code construction, never inside a
decoding hot loop).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

_WORD = 64


def _n_words(n_cols: int) -> int:
    return max(1, (n_cols + _WORD - 1) // _WORD)


def pack_indices(indices: Iterable[int], n_cols: int) -> np.ndarray:
    """Pack a set of column indices into a single bit-packed row."""
    row = np.zeros(_n_words(n_cols), dtype=np.uint64)
    for c in indices:
        if not 0 <= c < n_cols:
            raise ValueError(f"column index {c} out of range [0, {n_cols})")
        row[c >> 6] |= np.uint64(1) << np.uint64(c & 63)
    return row


def unpack_row(row: np.ndarray, n_cols: int) -> list[int]:
    """Return the sorted column indices set in a bit-packed row."""
    out = []
    for w, word in enumerate(row):
        word = int(word)
        while word:
            low = word & -word
            out.append((w << 6) + low.bit_length() - 1)
            word ^= low
    return [c for c in out if c < n_cols]


class Gf2Matrix:
    """A rows x cols matrix over GF(2) with bit-packed rows."""

    __slots__ = ("rows", "cols", "words", "_echelon")

    def __init__(self, rows: int, cols: int, words: np.ndarray):
        if words.shape != (rows, _n_words(cols)):
            raise ValueError("word array shape does not match declared dimensions")
        self.rows = rows
        self.cols = cols
        self.words = words
        self._echelon: tuple[np.ndarray, np.ndarray, list[tuple[int, int]]] | None = None

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(rows, cols, np.zeros((rows, _n_words(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.words[i, i >> 6] |= np.uint64(1) << np.uint64(i & 63)
        return m

    @classmethod
    def from_rows(cls, row_supports: Sequence[Iterable[int]], cols: int) -> "Gf2Matrix":
        """Build from per-row lists of nonzero column indices."""
        m = cls.zeros(len(row_supports), cols)
        for i, support in enumerate(row_supports):
            m.words[i] = pack_indices(support, cols)
        return m

    @classmethod
    def from_dense(cls, array: np.ndarray | Sequence[Sequence[int]]) -> "Gf2Matrix":
        a = np.asarray(array, dtype=np.uint8) % 2
        if a.ndim != 2:
            raise ValueError("expected a 2-D array")
        rows, cols = a.shape
        m = cls.zeros(rows, cols)
        for i in range(rows):
            m.words[i] = pack_indices(np.nonzero(a[i])[0], cols)
        return m

    def copy(self) -> "Gf2Matrix":
        return Gf2Matrix(self.rows, self.cols, self.words.copy())

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i in range(self.rows):
            out[i, unpack_row(self.words[i], self.cols)] = 1
        return out

    def row_support(self, i: int) -> list[int]:
        return unpack_row(self.words[i], self.cols)

    def transpose(self) -> "Gf2Matrix":
        out = Gf2Matrix.zeros(self.cols, self.rows)
        for i in range(self.rows):
            for c in self.row_support(i):
                out.words[c, i >> 6] |= np.uint64(1) << np.uint64(i & 63)
        return out

    def get(self, i: int, j: int) -> int:
        return int((self.words[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1))

    def mul_left(self, x: np.ndarray) -> np.ndarray:
        """Row vector times matrix: returns packed x . M for packed x over rows."""
        acc = np.zeros(self.words.shape[1], dtype=np.uint64)
        for i in range(self.rows):
            if (x[i >> 6] >> np.uint64(i & 63)) & np.uint64(1):
                acc ^= self.words[i]
        return acc

    def _row_echelon(self) -> tuple[np.ndarray, np.ndarray, list[tuple[int, int]]]:
        """Reduced row echelon of self, with the transform matrix.

        Returns (R, T, pivots) where R = T . M in reduced row echelon form and
        pivots is a list of (row, col) pairs.  Cached; self is not modified.
        """
        if self._echelon is not None:
            return self._echelon
        r_words = self.words.copy()
        t_words = Gf2Matrix.identity(self.rows).words if self.rows else np.zeros((0, 1), dtype=np.uint64)
        pivots: list[tuple[int, int]] = []
        rank = 0
        one = np.uint64(1)
        for col in range(self.cols):
            if rank == self.rows:
                break
            w, b = col >> 6, np.uint64(col & 63)
            column_bits = (r_words[rank:, w] >> b) & one
            hits = np.nonzero(column_bits)[0]
            if hits.size == 0:
                continue
            pivot = rank + int(hits[0])
            if pivot != rank:
                r_words[[rank, pivot]] = r_words[[pivot, rank]]
                t_words[[rank, pivot]] = t_words[[pivot, rank]]
            # clear the pivot column everywhere else (reduced form)
            col_all = (r_words[:, w] >> b) & one
            col_all[rank] = 0
            targets = np.nonzero(col_all)[0]
            if targets.size:
                r_words[targets] ^= r_words[rank]
                t_words[targets] ^= t_words[rank]
            pivots.append((rank, col))
            rank += 1
        self._echelon = (r_words, t_words, pivots)
        return self._echelon

    def rank(self) -> int:
        return len(self._row_echelon()[2])

    def solve_left(self, b: np.ndarray) -> np.ndarray | None:
        """Solve x . M = b for a packed row vector b; None if inconsistent.

        The returned x is packed over the rows of M (the canonical solution
        of the elimination, free combinations set to zero).
        """
        r_words, t_words, pivots = self._row_echelon()
        residue = b.copy()
        x = np.zeros(max(1, (self.rows + _WORD - 1) // _WORD), dtype=np.uint64)
        one = np.uint64(1)
        for row, col in pivots:
            if (residue[col >> 6] >> np.uint64(col & 63)) & one:
                residue ^= r_words[row]
                x ^= t_words[row]
        if residue.any():
            return None
        return x


def gf2_rank(matrix: Gf2Matrix) -> int:
    """Rank of a GF(2) matrix via Gaussian elimination; input unchanged."""
    return matrix.rank()


def gf2_solve(matrix: Gf2Matrix, b: Iterable[int] | np.ndarray) -> list[int] | None:
    """Find x with x . M = b, as sorted row indices; None if inconsistent.

    ``b`` may be a packed word array or an iterable of column indices.
    """
    if isinstance(b, np.ndarray) and b.dtype == np.uint64:
        packed = b
    else:
        packed = pack_indices(b, matrix.cols)
    x = matrix.solve_left(packed)
    if x is None:
        return None
    return unpack_row(x, matrix.rows)


def gf2_mul_parity(a: Gf2Matrix, b: Gf2Matrix, chunk: int = 128) -> bool:
    """True iff A . B^T = 0 over GF(2).  Row-chunked to bound memory."""
    if a.cols != b.cols:
        raise ValueError("column counts differ")
    for start in range(0, a.rows, chunk):
        block = a.words[start:start + chunk]
        inter = block[:, None, :] & b.words[None, :, :]
        if (np.bitwise_count(inter).sum(axis=2) & 1).any():
            return False
    return True
