"""Exhaustive search for small binary 3-designs through their reduced incidence matrices.

A reduced incidence matrix R (distinct point rows, nBlocks block columns) of
a binary 3-design is 3-orthogonal: any three distinct rows share an even
number of all-ones columns.  The search grows such matrices row by row,
keeping one representative per isomorphism class in each generation, and asks
for each candidate whether some row multiplicities z and block size k turn R
into a genuine incidence matrix (every column sum equal to k).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .canonical import CanonicalKey, canonical_masks
from .designs import BinaryDesign, expand_reduced
from .errors import DomainError
from .gf2 import BitMatrix, vector_to_int


@dataclass(frozen=True)
class SearchConfig:
    n_blocks: int
    min_weight: int = 6
    k_min: int = 6
    k_max: int = 64
    z_max: int = 16

    def __post_init__(self):
        if not 7 <= self.n_blocks <= 11:
            raise DomainError(f"n_blocks must lie in 7..11, got {self.n_blocks}")
        if not 1 <= self.min_weight <= self.n_blocks:
            raise DomainError(f"min_weight must lie in 1..{self.n_blocks}, got {self.min_weight}")
        if not 1 <= self.k_min <= self.k_max:
            raise DomainError(f"need 1 <= k_min <= k_max, got {self.k_min}, {self.k_max}")
        if self.z_max < 1:
            raise DomainError(f"z_max must be positive, got {self.z_max}")


@dataclass(frozen=True)
class IlpInstance:
    R: BitMatrix
    frozen: frozenset[int] = field(default_factory=frozenset)

    @classmethod
    def from_matrix(cls, R: BitMatrix) -> "IlpInstance":
        return cls(R, frozen_rows(R))


@dataclass(frozen=True)
class SearchHit:
    R: BitMatrix
    z: tuple[int, ...]
    k: int

    def design(self) -> BinaryDesign:
        return expand_reduced(self.R, self.z)


# -- 3-orthogonality ----------------------------------------------------------------


def is_3_orthogonal_with(M: BitMatrix, v) -> bool:
    """Whether appending row v keeps every triple (a, b, v) at an even overlap."""
    x = vector_to_int(v, M.ncols)
    rows = [r & x for r in M.rows]
    return all((a & r).bit_count() % 2 == 0 for a, r in itertools.combinations(rows, 2))


def is_3_orthogonal(M: BitMatrix) -> bool:
    return all(
        (a & b & c).bit_count() % 2 == 0 for a, b, c in itertools.combinations(M.rows, 3)
    )


def frozen_rows(R: BitMatrix) -> frozenset[int]:
    """Rows that cannot be repeated.

    Two copies of row i together with row a share |r_i & r_a| all-ones
    columns, so row i is frozen as soon as that overlap is odd for some a != i.
    """
    rows = R.rows
    return frozenset(
        i
        for i, ri in enumerate(rows)
        if any((ri & ra).bit_count() % 2 for a, ra in enumerate(rows) if a != i)
    )


# -- ILP(R) -----------------------------------------------------------------------------


def _row_caps(inst: IlpInstance, z_max: int) -> list[int]:
    caps = []
    for i, r in enumerate(inst.R.rows):
        if i in inst.frozen:
            caps.append(1)
        elif r.bit_count() % 2:
            # three copies of an odd-weight row would share an odd number of ones
            caps.append(min(2, z_max))
        else:
            caps.append(z_max)
    return caps


def ilp_feasible(inst: IlpInstance, cfg: SearchConfig) -> tuple[tuple[int, ...], int] | None:
    """Lexicographically least z in the box with z R = k (1, ..., 1), k_min <= k <= k_max.

    Depth-first over rows; after each assignment every column bounds the
    attainable k from both sides, and the search backtracks as soon as the
    intersection of those intervals is empty.
    """
    R = inst.R
    if R.nrows == 0:
        raise DomainError("ILP(R) needs at least one row")
    cols = R.columns()
    if len(set(cols)) != len(cols):
        raise DomainError("columns of R must be pairwise distinct")
    m, nb = R.nrows, R.ncols
    caps = _row_caps(inst, cfg.z_max)
    A = R.to_array().astype(np.int64)
    # suffix sums: minimum / maximum still addable to each column from rows i..m-1
    rem_min = np.zeros((m + 1, nb), dtype=np.int64)
    rem_max = np.zeros((m + 1, nb), dtype=np.int64)
    for i in range(m - 1, -1, -1):
        rem_min[i] = rem_min[i + 1] + A[i]
        rem_max[i] = rem_max[i + 1] + caps[i] * A[i]
    z = [0] * m

    def interval(partial: np.ndarray, i: int) -> tuple[int, int]:
        lo = max(cfg.k_min, int((partial + rem_min[i]).max()))
        hi = min(cfg.k_max, int((partial + rem_max[i]).min()))
        return lo, hi

    def dfs(i: int, partial: np.ndarray):
        lo, hi = interval(partial, i)
        if lo > hi:
            return None
        if i == m:
            return lo
        for zi in range(1, caps[i] + 1):
            z[i] = zi
            found = dfs(i + 1, partial + zi * A[i])
            if found is not None:
                return found
        return None

    k = dfs(0, np.zeros(nb, dtype=np.int64))
    if k is None:
        return None
    return tuple(z), k


# -- generational search ----------------------------------------------------------------


class _Pool:
    """Candidate rows plus a parity lookup over column masks."""

    def __init__(self, n_blocks: int):
        masks = np.arange(1 << n_blocks, dtype=np.int64)
        self.weight = np.bitwise_count(masks).astype(np.int64)
        self.odd = (self.weight % 2).astype(bool)
        self.masks = masks

    def extensions(self, M: tuple[int, ...], min_weight: int) -> np.ndarray:
        lastw = int(self.weight[M[-1]])
        cand = self.masks[self.weight >= max(lastw, min_weight)]
        cand = cand[~np.isin(cand, np.array(M, dtype=np.int64))]
        if len(M) >= 2 and cand.size:
            pair_and = np.array([a & b for a, b in itertools.combinations(M, 2)], dtype=np.int64)
            bad = self.odd[pair_and[:, None] & cand[None, :]].any(axis=0)
            cand = cand[~bad]
        return cand


_worker_pool: _Pool | None = None


def _children(args: tuple[tuple[int, ...], int, int]) -> list[tuple[CanonicalKey, tuple[int, ...]]]:
    global _worker_pool
    M, n_blocks, min_weight = args
    if _worker_pool is None or _worker_pool.masks.size != 1 << n_blocks:
        _worker_pool = _Pool(n_blocks)
    out = []
    for v in _worker_pool.extensions(M, min_weight).tolist():
        T = M + (v,)
        out.append((canonical_masks(T, n_blocks), T))
    return out


def _distinct_columns(M: Sequence[int], n_blocks: int) -> bool:
    cols = BitMatrix(M, n_blocks).columns()
    return len(set(cols)) == len(cols)


def enumerate_reduced_matrices(cfg: SearchConfig, jobs: int = 1) -> Iterator[SearchHit]:
    """Every reduced matrix with ``cfg.n_blocks`` columns admitting a feasible ILP(R).

    For each starting weight x, generation 1 is the single row of x leading
    ones; each later generation appends one row of weight at least that of
    the last row, keeps 3-orthogonality, and drops isomorphic duplicates.
    """
    nb = cfg.n_blocks
    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for x in range(cfg.min_weight, nb + 1):
            generation = [((1 << x) - 1,)]
            while generation:
                for M in generation:
                    if _distinct_columns(M, nb):
                        R = BitMatrix(M, nb)
                        sol = ilp_feasible(IlpInstance.from_matrix(R), cfg)
                        if sol is not None:
                            yield SearchHit(R, sol[0], sol[1])
                tasks = [(M, nb, x) for M in generation]
                if executor is None:
                    batches = map(_children, tasks)
                else:
                    batches = executor.map(_children, tasks, chunksize=max(1, len(tasks) // (4 * jobs)))
                seen: set[CanonicalKey] = set()
                nxt = []
                for batch in batches:
                    for key, T in batch:
                        if key not in seen:
                            seen.add(key)
                            nxt.append(T)
                generation = nxt
    finally:
        if executor is not None:
            executor.shutdown()


def j_minus_e(n: int) -> BitMatrix:
    """All-ones n x n matrix with the diagonal cleared."""
    full = (1 << n) - 1
    return BitMatrix([full ^ (1 << i) for i in range(n)], n)
