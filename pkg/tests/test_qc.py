from __future__ import annotations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wilsoncodes.errors import DomainError, PurgeFailed
from wilsoncodes.gf2 import BitMatrix, min_nonzero_weight, rank
from wilsoncodes.qc import (
    ExponentMatrix,
    cycle_sums,
    enumerate_cycles,
    lift,
    purge_cycles,
    violations,
)
from wilsoncodes.wilson import build_wilson

EXAMPLE_SHIFTS = [[2, 1, 0, 1], [0, 1, -1, 0], [-1, 0, 2, 1]]

EXAMPLE_LIFTED = [
    "001010100010",
    "100001010001",
    "010100001100",
    "100010000100",
    "010001000010",
    "001100000001",
    "000100001010",
    "000010100001",
    "000001010100",
]


def example() -> ExponentMatrix:
    return ExponentMatrix(3, np.array(EXAMPLE_SHIFTS))


def tanner_cycle_counts(H: BitMatrix) -> tuple[int, int]:
    g = nx.Graph()
    a = H.to_array()
    g.add_edges_from((("c", i), ("v", j)) for i, j in zip(*np.nonzero(a)))
    counts = {4: 0, 6: 0}
    for cyc in nx.simple_cycles(g, length_bound=6):
        counts[len(cyc)] += 1
    return counts[4], counts[6]


def test_example_lift_matches_reference_matrix():
    assert lift(example()) == BitMatrix.from_strings(EXAMPLE_LIFTED)


def test_example_base_pattern():
    assert example().base() == BitMatrix.from_strings(["1111", "1101", "0111"])


def test_example_violations():
    E = example()
    v = violations(E, enumerate_cycles(E.base()))
    four, six = v.as_tuples()
    assert (0, 2, 1, 2) in four  # rows 1, 3 and columns 2, 3 counted from one
    assert (0, 2, 1, 0, 1, 3) in six
    assert E.qc * len(four) == 3
    assert len(six) == 3


def test_example_lifted_cycles_come_in_blocks_of_qc():
    E = example()
    v = violations(E, enumerate_cycles(E.base()))
    c4, c6 = tanner_cycle_counts(lift(E))
    assert c4 == E.qc * len(v.four_cycles)
    assert c6 == E.qc * len(v.six_cycles)


def test_example_distances():
    E = example()
    assert min_nonzero_weight(lift(E))[0] == 4
    assert min_nonzero_weight(E.base())[0] == 2


def test_cycle_enumeration_trivial_cases():
    assert len(enumerate_cycles(BitMatrix.identity(5))) == 0
    c = enumerate_cycles(BitMatrix.from_strings(["11", "11"]))
    assert c.as_tuples() == ({(0, 1, 0, 1)}, set())


def test_cycle_enumeration_counts_on_complete_base():
    from math import comb, perm

    c = enumerate_cycles(BitMatrix.from_strings(["1111"] * 3))
    assert len(c.four_cycles) == comb(3, 2) * comb(4, 2)
    # a 6-cycle is a cyclic sequence of 3 rows and 3 columns, up to rotation and reflection
    assert len(c.six_cycles) == perm(3, 3) * perm(4, 3) // 6


def test_cycle_enumeration_rejects_bad_arguments():
    with pytest.raises(DomainError):
        enumerate_cycles(BitMatrix.identity(3), 8)
    with pytest.raises(DomainError):
        enumerate_cycles(BitMatrix([], 3))


def test_qc_one_violates_everything():
    B = BitMatrix.from_strings(["1111", "1101", "0111"])
    cycles = enumerate_cycles(B)
    E = ExponentMatrix.from_base(B, 1)
    v = violations(E, cycles)
    assert len(v.four_cycles) == len(cycles.four_cycles)
    assert len(v.six_cycles) == len(cycles.six_cycles)


def test_zero_shifts_lift_to_identity_blocks():
    B = BitMatrix.from_strings(["101", "011"])
    H = lift(ExponentMatrix.from_base(B, 4))
    assert H.shape == (8, 12)
    a = H.to_array()
    assert np.array_equal(a[0:4, 0:4], np.eye(4, dtype=np.uint8))
    assert not a[0:4, 4:8].any()


def test_cycle_sums_reject_mismatched_pattern():
    E = ExponentMatrix(3, np.array([[0, -1], [0, 0]]))
    with pytest.raises(DomainError):
        cycle_sums(E, np.array([[0, 1, 0, 1]]))


def test_exponent_validation_and_json():
    with pytest.raises(DomainError):
        ExponentMatrix(3, np.array([[3]]))
    with pytest.raises(DomainError):
        ExponentMatrix(0, np.array([[0]]))
    E = example()
    assert ExponentMatrix.from_json(E.to_json()) == E
    assert (E.rows, E.cols) == (3, 4)


shift_tables = st.integers(2, 4).flatmap(
    lambda m: st.integers(2, 5).flatmap(
        lambda n: st.integers(1, 5).flatmap(
            lambda qc: st.tuples(
                st.just(qc),
                st.lists(st.lists(st.integers(-1, qc - 1), min_size=n, max_size=n), min_size=m, max_size=m),
            )
        )
    )
)


@given(shift_tables)
@settings(max_examples=60, deadline=None)
def test_lifted_cycle_counts_equal_qc_times_violations(args):
    qc, table = args
    E = ExponentMatrix(qc, np.array(table))
    v = violations(E, enumerate_cycles(E.base()))
    c4, c6 = tanner_cycle_counts(lift(E))
    assert c4 == qc * len(v.four_cycles)
    if c4 == 0:
        # with 4-cycles present, 6-vertex closed walks mix in; compare only when girth >= 6
        assert c6 == qc * len(v.six_cycles)


def test_purge_without_cycles_returns_immediately():
    B = BitMatrix.identity(4)
    E = purge_cycles(B, 5, forbid6=True, rng_seed=1)
    assert E.base() == B


def test_purge_is_deterministic_and_clean():
    B = build_wilson(1, 5, 2)
    a = purge_cycles(B, 7, forbid6=True, rng_seed=4)
    b = purge_cycles(B, 7, forbid6=True, rng_seed=4)
    assert a == b
    assert len(violations(a, enumerate_cycles(B))) == 0
    assert tanner_cycle_counts(lift(a)) == (0, 0)


def test_purge_reports_failure():
    B = BitMatrix.from_strings(["11", "11"])
    with pytest.raises(PurgeFailed):
        purge_cycles(B, 1, max_restarts=3, sweeps=2)


def test_purge_qc11_four_cycles():
    B = build_wilson(2, 10, 4)
    E = purge_cycles(B, 11, rng_seed=0)
    assert len(violations(E, enumerate_cycles(B, 4)).four_cycles) == 0
    H = lift(E)
    assert H.shape == (495, 2310)
    assert rank(H) in (494, 495)


@pytest.mark.long
def test_purge_full_scale_six_cycles():
    B = build_wilson(2, 9, 4)
    E = purge_cycles(B, 220, forbid6=True, rng_seed=0)
    assert len(violations(E, enumerate_cycles(B))) == 0
