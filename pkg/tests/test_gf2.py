import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locq.gf2 import Gf2Matrix, gf2_rank, gf2_solve, gf2_mul_parity


def dense_rank_oracle(dense: np.ndarray, rng: np.random.Generator) -> int:
    """Independent elimination with randomized row order."""
    a = dense.copy() % 2
    rng.shuffle(a)
    rank = 0
    for col in range(a.shape[1]):
        rows = np.nonzero(a[rank:, col])[0]
        if rows.size == 0:
            continue
        pivot = rank + rows[0]
        a[[rank, pivot]] = a[[pivot, rank]]
        for r in range(a.shape[0]):
            if r != rank and a[r, col]:
                a[r] ^= a[rank]
        rank += 1
    return rank


def test_rank_identity():
    assert gf2_rank(Gf2Matrix.identity(3)) == 3


def test_rank_zero():
    assert gf2_rank(Gf2Matrix.zeros(4, 7)) == 0


def test_rank_surface_hx_against_shuffled_oracle():
    from locq import build_gen_rep, build_gen_surface

    patch = build_gen_surface(build_gen_rep(2, 3), build_gen_rep(2, 3))
    rng = np.random.default_rng(7)
    dense = patch.hx.to_dense()
    expected = dense_rank_oracle(dense, rng)
    assert gf2_rank(patch.hx) == expected == 8


def test_solve_identity():
    m = Gf2Matrix.identity(5)
    assert gf2_solve(m, [1, 3]) == [1, 3]


def test_solve_zero_inconsistent():
    m = Gf2Matrix.zeros(3, 4)
    assert gf2_solve(m, [0]) is None
    assert gf2_solve(m, []) == []


def test_solve_planted_by_substitution():
    rng = np.random.default_rng(11)
    for _ in range(50):
        dense = rng.integers(0, 2, size=(6, 4)).astype(np.uint8)
        m = Gf2Matrix.from_dense(dense)
        x0 = rng.integers(0, 2, size=6).astype(np.uint8)
        b = (x0 @ dense) % 2
        x = gf2_solve(m, np.nonzero(b)[0])
        assert x is not None
        recon = np.zeros(4, dtype=np.uint8)
        for row in x:
            recon ^= dense[row]
        assert np.array_equal(recon, b)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_rank_matches_oracle_random(rows, cols, seed):
    rng = np.random.default_rng(seed)
    dense = rng.integers(0, 2, size=(rows, cols)).astype(np.uint8)
    m = Gf2Matrix.from_dense(dense)
    assert gf2_rank(m) == dense_rank_oracle(dense, rng)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7), st.integers(2, 7), st.integers(0, 2**32 - 1))
def test_solve_is_sound(rows, cols, seed):
    rng = np.random.default_rng(seed)
    dense = rng.integers(0, 2, size=(rows, cols)).astype(np.uint8)
    m = Gf2Matrix.from_dense(dense)
    b = rng.integers(0, 2, size=cols).astype(np.uint8)
    x = gf2_solve(m, np.nonzero(b)[0])
    in_rowspace = dense_rank_oracle(np.vstack([dense, b]), rng) == dense_rank_oracle(dense, rng)
    if x is None:
        assert not in_rowspace
    else:
        recon = np.zeros(cols, dtype=np.uint8)
        for row in x:
            recon ^= dense[row]
        assert np.array_equal(recon, b)


def test_mul_parity_orthogonality():
    from locq import build_gen_rep, build_gen_surface

    patch = build_gen_surface(build_gen_rep(3, 3), build_gen_rep(3, 3))
    assert gf2_mul_parity(patch.hx, patch.hz)
    assert not gf2_mul_parity(Gf2Matrix.identity(3), Gf2Matrix.identity(3))


def test_transpose_roundtrip():
    rng = np.random.default_rng(3)
    dense = rng.integers(0, 2, size=(5, 9)).astype(np.uint8)
    m = Gf2Matrix.from_dense(dense)
    assert np.array_equal(m.transpose().to_dense(), dense.T)
