from __future__ import annotations

from itertools import combinations, product
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wilsoncodes.designs import (
    BinaryDesign,
    codeword_from_design,
    construct_hadamard_stretch,
    construct_pair,
    construct_pasch,
    construct_subsets,
    construct_triangle_stretch,
    derived_design,
    design_from_codeword,
    design_from_incidence,
    doubling,
    expand_reduced,
    hadamard_design,
    is_binary_design,
    lambda_count,
    point_split,
    reduced_incidence,
)
from wilsoncodes.errors import DomainError
from wilsoncodes.gf2 import BitMatrix, min_nonzero_weight, nullspace_int_basis
from wilsoncodes.wilson import SubsetOrder, binom_parity, build_wilson

SIX_BLOCK = BinaryDesign(6, 3, ((1, 3, 4), (1, 2, 4), (2, 3, 4), (1, 3, 5), (1, 2, 5), (2, 3, 5)))

A_L_REDUCED = BitMatrix.from_strings(["111000", "000111", "110110", "011011", "101101"])


def a_l_matrix(l: int) -> BitMatrix:
    return BitMatrix.from_strings(["111000", "000111"] + ["110110", "011011", "101101"] * l)


def even_everywhere(blocks, t) -> bool:
    """Oracle: count every t-subset of every block directly."""
    pts = sorted({p for b in blocks for p in b})
    return all(sum(set(s) <= set(b) for b in blocks) % 2 == 0 for s in combinations(pts, t))


def corpus():
    """Small designs with known strength, drawn from every construction."""
    out = []
    for k in range(1, 8):
        for t in range(0, k + 1):
            if (k - t) % 2:
                out.append((construct_subsets(t, k), t))
        out.append((construct_pair(k), 0))
    for t in range(0, 3):
        for k in range(t + 1, 6):
            out.append((construct_pasch(t, k), t))
    out.append((hadamard_design(), 2))
    out.append((construct_triangle_stretch(4), 1))
    out.append((SIX_BLOCK, 2))
    return out


def test_lambda_counts_on_hadamard():
    H = hadamard_design()
    assert lambda_count({1}, H) == 4
    assert lambda_count({1, 2}, H) == 2
    assert lambda_count(set(), H) == 7
    assert lambda_count(set(), SIX_BLOCK) == 6


def test_is_binary_design_examples():
    assert is_binary_design(SIX_BLOCK, 2)
    assert not is_binary_design(hadamard_design(), 0)
    single = BinaryDesign(5, 3, ((1, 2, 3),))
    assert not is_binary_design(single, 3)


def test_is_binary_design_rejects_strength_above_k():
    with pytest.raises(DomainError):
        is_binary_design(SIX_BLOCK, 4)


def test_design_validation():
    with pytest.raises(DomainError):
        BinaryDesign(4, 2, ())
    with pytest.raises(DomainError):
        BinaryDesign(4, 2, ((1, 2), (2, 1)))
    with pytest.raises(DomainError):
        BinaryDesign(4, 2, ((1, 2, 3),))
    with pytest.raises(DomainError):
        BinaryDesign(4, 2, ((1, 5),))


def test_json_roundtrip():
    assert BinaryDesign.from_json(SIX_BLOCK.to_json()) == SIX_BLOCK


def test_incidence_columns_have_weight_k():
    for D, _ in corpus():
        A = D.incidence_matrix()
        assert set(A.column_weights()) == {D.k}
        assert design_from_incidence(A) == D


@pytest.mark.parametrize("n,k", [(6, 3), (7, 3), (7, 4), (8, 4), (8, 5)])
def test_minimum_codeword_is_subsets_design(n, k):
    w, v = min_nonzero_weight(build_wilson(k - 1, n, k))
    assert w == k + 1
    D = design_from_codeword(v, n, k, t=k - 1)
    assert len(D) == k + 1
    assert len(D.points()) == k + 1
    assert set(D.blocks) == {tuple(sorted(b)) for b in combinations(sorted(D.points()), k)}


def test_weight_four_codewords_of_strength_two_triples():
    W = build_wilson(2, 7, 3)
    basis = nullspace_int_basis(W)
    found = 0
    for bits in product((0, 1), repeat=len(basis)):
        x = 0
        for b, on in zip(basis, bits):
            if on:
                x ^= b
        if x and bin(x).count("1") == 4:
            v = np.array([(x >> j) & 1 for j in range(W.ncols)], dtype=np.uint8)
            D = design_from_codeword(v, 7, 3, t=2)
            assert len(D) == 4 and is_binary_design(D, 2)
            found += 1
    assert found > 0


def test_codeword_map_rejects_zero_and_noncodewords():
    with pytest.raises(DomainError):
        design_from_codeword(np.zeros(10, dtype=np.uint8), 5, 2)
    x = np.zeros(10, dtype=np.uint8)
    x[0] = 1
    with pytest.raises(DomainError):
        design_from_codeword(x, 5, 2, t=1)


@given(st.integers(3, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))), st.data())
@settings(max_examples=40, deadline=None)
def test_codeword_roundtrip(nk, data):
    n, k = nk
    t = data.draw(st.integers(0, k - 1))
    basis = nullspace_int_basis(build_wilson(t, n, k))
    if not basis:
        return
    picks = data.draw(st.lists(st.booleans(), min_size=len(basis), max_size=len(basis)))
    x = 0
    for b, on in zip(basis, picks):
        if on:
            x ^= b
    if x == 0:
        x = basis[0]
    m = comb(n, k)
    v = np.array([(x >> j) & 1 for j in range(m)], dtype=np.uint8)
    D = design_from_codeword(v, n, k, t=t)
    assert len(D) == int(v.sum())
    assert np.array_equal(codeword_from_design(D), v)
    assert is_binary_design(D, t)


def test_codewords_are_exactly_the_designs():
    # every block family on small parameters, checked against the kernel span
    for n in range(2, 9):
        for k in range(1, n + 1):
            m = comb(n, k)
            if m > 12:
                continue
            blocks = list(SubsetOrder(n, k))
            for t in range(k):
                basis = nullspace_int_basis(build_wilson(t, n, k))
                span = {0}
                for b in basis:
                    span |= {s ^ b for s in span}
                designs = set()
                for mask in range(1, 1 << m):
                    fam = [blocks[j] for j in range(m) if (mask >> j) & 1]
                    if even_everywhere(fam, t) and (t > 0 or len(fam) % 2 == 0):
                        designs.add(mask)
                assert designs == span - {0}, (t, n, k)


def test_subsets_examples():
    assert construct_subsets(1, 2).blocks == ((1, 2), (1, 3), (2, 3))
    D = construct_subsets(2, 3)
    assert len(D) == 4 and D.n == 4 and is_binary_design(D, 2)
    # the 3-subsets of a 4-set put each point in 3 blocks, so the
    # four-block 1-(n,3) witness comes from the Pasch construction instead
    with pytest.raises(DomainError):
        construct_subsets(1, 3)
    assert len(construct_pasch(1, 3)) == 4 and is_binary_design(construct_pasch(1, 3), 1)


def test_subsets_rejects_even_difference():
    with pytest.raises(DomainError):
        construct_subsets(2, 4)


def test_doubling_examples():
    assert doubling(construct_subsets(1, 2)).with_points(6) == SIX_BLOCK
    twice = doubling(doubling(construct_triangle_stretch(4)))
    assert len(twice) == 12 and is_binary_design(twice, 3)


def test_pasch_examples():
    assert construct_pasch(1, 2).blocks == ((1, 2), (1, 4), (2, 3), (3, 4))
    D = construct_pasch(2, 4)
    assert len(D) == 8 and D.n == 7 and is_binary_design(D, 2)
    with pytest.raises(DomainError):
        construct_pasch(2, 2)


def test_hadamard_examples():
    assert hadamard_design().blocks == tuple(sorted(hadamard_design().blocks))
    assert construct_hadamard_stretch(1) == hadamard_design()
    D = construct_hadamard_stretch(2)
    assert (D.n, D.k, len(D)) == (14, 8, 7)
    assert is_binary_design(D, 2) and is_binary_design(D, 1)
    with pytest.raises(DomainError):
        construct_hadamard_stretch(0)


def test_constructions_over_grid():
    for k in range(1, 11):
        for t in range(0, min(k, 3) + 1):
            if (k - t) % 2:
                D = construct_subsets(t, k)
                assert len(D) == k + 1 and D.n == k + 1
                assert is_binary_design(D, t)
            if k >= t + 1:
                D = construct_pasch(t, k)
                assert len(D) == 2 ** (t + 1) and D.n == k + t + 1
                assert is_binary_design(D, t)
    for l in range(1, 4):
        D = construct_hadamard_stretch(l)
        assert len(D) == 7 and D.k == 4 * l
        assert is_binary_design(D, 2) and not is_binary_design(D, 0)


def test_derived_examples():
    H = hadamard_design()
    d = derived_design(H, 1)
    assert (d.n, d.k, len(d)) == (6, 3, 4)
    assert is_binary_design(d, 1)
    isolated = BinaryDesign(6, 2, ((1, 2), (1, 3), (2, 3)))
    assert derived_design(isolated, 5) is None
    for i in range(1, 8):
        assert len(derived_design(H, i)) == lambda_count({i}, H)


def test_point_split_examples():
    H = hadamard_design()
    through, rest = point_split(H, 1)
    assert len(through) == 4 and len(rest) == 3
    isolated = BinaryDesign(6, 2, ((1, 2), (1, 3), (2, 3)))
    through, rest = point_split(isolated, 6)
    assert through is None and rest == BinaryDesign(5, 2, isolated.blocks)


def test_point_split_of_universal_design():
    D = construct_pasch(3, 5)
    assert all(is_binary_design(D, s) for s in range(4))
    for i in range(1, D.n + 1):
        through, rest = point_split(D, i)
        for part in (through, rest):
            if part is not None:
                assert is_binary_design(part, 2)


def test_reduced_incidence_of_a_l_family():
    for l in range(1, 5):
        A = a_l_matrix(l)
        D = design_from_incidence(A)
        assert (D.n, D.k) == (3 * l + 2, 2 * l + 1)
        assert is_binary_design(D, 2)
        R = reduced_incidence(D)
        assert sorted(R.rows) == sorted(A_L_REDUCED.rows)


def test_reduced_incidence_keeps_distinct_rows():
    H = hadamard_design()
    assert reduced_incidence(H) == H.incidence_matrix()
    assert sorted(reduced_incidence(construct_hadamard_stretch(2)).rows) == sorted(H.incidence_matrix().rows)


def test_expand_reduced_inverts_reduction():
    D = expand_reduced(A_L_REDUCED, [1, 1, 2, 2, 2])
    assert (D.n, D.k, len(D)) == (8, 5, 6)
    assert is_binary_design(D, 2)
    assert sorted(reduced_incidence(D).rows) == sorted(A_L_REDUCED.rows)


def test_doubling_raises_strength_over_corpus():
    for D, t in corpus():
        if t <= 2 and D.n <= 9:
            E = doubling(D)
            assert len(E) == 2 * len(D)
            assert is_binary_design(E, t + 1)


def test_derived_drops_strength_over_corpus():
    for D, t in corpus():
        if t == 0:
            continue
        for i in range(1, D.n + 1):
            d = derived_design(D, i)
            if d is not None:
                assert is_binary_design(d, t - 1)


def test_lower_strengths_follow_binomial_parity():
    for D, t in corpus():
        for j in range(t):
            if binom_parity(D.k - j, t - j):
                assert is_binary_design(D, j), (D, t, j)


def test_even_gap_implies_one_lower():
    for D, t in corpus():
        for j in range(1, t + 1):
            if is_binary_design(D, j) and (D.k - j) % 2 == 0:
                assert is_binary_design(D, j - 1)
