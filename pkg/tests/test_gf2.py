from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wilsoncodes.gf2 import (
    BitMatrix,
    int_to_vector,
    min_nonzero_weight,
    nullspace_basis,
    rank,
    vector_to_int,
)
from wilsoncodes.wilson import build_wilson


def dense_rank(a: np.ndarray) -> int:
    """Textbook row reduction on a uint8 array; independent of the packed code."""
    a = a.copy() % 2
    r = 0
    for c in range(a.shape[1]):
        piv = next((i for i in range(r, a.shape[0]) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        for i in range(a.shape[0]):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
    return r


def brute_min_weight(a: np.ndarray):
    n = a.shape[1]
    best = None
    for bits in itertools.product((0, 1), repeat=n):
        v = np.array(bits, dtype=np.uint8)
        if v.any() and not (a @ v % 2).any():
            w = int(v.sum())
            best = w if best is None else min(best, w)
    return best


matrices = st.integers(1, 7).flatmap(
    lambda m: st.integers(1, 9).flatmap(
        lambda n: st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=m, max_size=m)
    )
).map(lambda rows: np.array(rows, dtype=np.uint8))


def test_from_strings_puts_column_zero_first():
    M = BitMatrix.from_strings(["100", "011"])
    assert M[0, 0] == 1 and M[0, 2] == 0
    assert M.to_strings() == ["100", "011"]
    assert M.shape == (2, 3)


def test_rejects_out_of_range_bits():
    with pytest.raises(ValueError):
        BitMatrix([0b1000], 3)


def test_identity_has_full_rank_and_trivial_nullspace():
    I = BitMatrix.identity(6)
    assert I.rank() == 6
    assert nullspace_basis(I) == []
    assert min_nonzero_weight(I) is None


def test_all_ones_row():
    M = BitMatrix.from_strings(["1111"])
    assert M.rank() == 1
    w, v = min_nonzero_weight(M)
    assert w == 2 and not M.syndrome(v).any()


def test_transpose_roundtrip_and_columns():
    M = BitMatrix.from_strings(["1010", "0111", "1100"])
    assert M.transpose().transpose() == M
    assert BitMatrix.from_columns(M.columns(), M.nrows) == M
    assert M.column_weights() == [2, 2, 2, 1]


def test_vector_packing_roundtrip():
    v = np.array([1, 0, 1, 1, 0, 0, 0, 1, 1], dtype=np.uint8)
    assert np.array_equal(int_to_vector(vector_to_int(v), 9), v)


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_rank_matches_dense_elimination(a):
    M = BitMatrix.from_array(a)
    assert rank(M) == dense_rank(a)
    assert np.array_equal(M.to_array(), a)


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_nullspace_is_kernel_of_right_dimension(a):
    M = BitMatrix.from_array(a)
    basis = nullspace_basis(M)
    assert len(basis) == a.shape[1] - dense_rank(a)
    for v in basis:
        assert not (a @ v % 2).any()
    if basis:
        assert dense_rank(np.array(basis)) == len(basis)


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_min_weight_matches_brute_force(a):
    found = min_nonzero_weight(BitMatrix.from_array(a))
    expect = brute_min_weight(a)
    if expect is None:
        assert found is None
    else:
        assert found[0] == expect
        assert not (a @ found[1] % 2).any()
        assert int(found[1].sum()) == expect


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_enumeration_and_subset_search_agree(a):
    M = BitMatrix.from_array(a)
    e = min_nonzero_weight(M, method="enumerate")
    s = min_nonzero_weight(M, method="subsets")
    assert (e is None) == (s is None)
    if e is not None:
        assert e[0] == s[0]


def test_weight_cap_excludes_heavier_words():
    W = build_wilson(2, 7, 3)
    assert min_nonzero_weight(W)[0] == 4
    assert min_nonzero_weight(W, weight_cap=3) is None
    assert min_nonzero_weight(W, weight_cap=3, method="subsets") is None


def test_subset_search_beyond_enumeration_limit():
    # nullspace dimension 21 > 20 forces the meet-in-the-middle route
    W = build_wilson(1, 8, 6)
    assert W.ncols - W.rank() > 20
    w, v = min_nonzero_weight(W)
    assert w == 4
    assert not W.syndrome(v).any()


def test_wide_matrix_gray_code_path():
    # more than 63 columns exercises the pure-Python codeword walk
    rows = [((1 << 70) - 1) ^ (1 << 3)] + [(1 << i) | (1 << (i + 1)) for i in range(0, 66)]
    M = BitMatrix(rows, 70)
    w, v = min_nonzero_weight(M, method="enumerate")
    assert not M.syndrome(v).any()
    assert w == min_nonzero_weight(M, method="subsets")[0]
