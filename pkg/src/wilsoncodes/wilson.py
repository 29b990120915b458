"""Subset-inclusion (Wilson) matrices W_{t,n,k} and their GF(2) rank."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .errors import DomainError
from .gf2 import BitMatrix

MAX_COLUMNS = 1 << 32


@dataclass(frozen=True)
class WilsonParams:
    t: int
    n: int
    k: int

    def __post_init__(self):
        if not 0 <= self.t <= self.k <= self.n:
            raise DomainError(f"need 0 <= t <= k <= n, got t={self.t}, n={self.n}, k={self.k}")
        if comb(self.n, self.k) > MAX_COLUMNS:
            raise DomainError(f"C({self.n},{self.k}) exceeds 2^32 columns")

    @property
    def shape(self) -> tuple[int, int]:
        return comb(self.n, self.t), comb(self.n, self.k)


class SubsetOrder:
    """Colexicographic ranking of the k-subsets of {1..n}.

    Subsets are compared by their largest element first, so the rank of
    ``{s_1 < ... < s_k}`` is ``sum_i C(s_i - 1, i)``.
    """

    def __init__(self, n: int, k: int):
        if not 0 <= k <= n:
            raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
        self.n = n
        self.k = k

    def __len__(self) -> int:
        return comb(self.n, self.k)

    def rank(self, subset: Sequence[int]) -> int:
        s = sorted(subset)
        if len(s) != self.k or len(set(s)) != self.k:
            raise DomainError(f"expected {self.k} distinct points, got {subset!r}")
        if s and (s[0] < 1 or s[-1] > self.n):
            raise DomainError(f"points must lie in 1..{self.n}: {subset!r}")
        return sum(comb(p - 1, i) for i, p in enumerate(s, start=1))

    def unrank(self, r: int) -> tuple[int, ...]:
        if not 0 <= r < len(self):
            raise DomainError(f"rank {r} out of range for C({self.n},{self.k})")
        out = []
        m = self.n
        for i in range(self.k, 0, -1):
            # largest p with C(p-1, i) <= r
            p = m
            while comb(p - 1, i) > r:
                p -= 1
            out.append(p)
            r -= comb(p - 1, i)
            m = p - 1
        return tuple(reversed(out))

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return _colex(self.n, self.k)


def _colex(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for top in range(k, n + 1):
        for rest in _colex(top - 1, k - 1):
            yield rest + (top,)


def build_wilson(t: int, n: int, k: int) -> BitMatrix:
    """The C(n,t) x C(n,k) inclusion matrix; entry (U, V) is 1 iff U is a subset of V."""
    p = WilsonParams(t, n, k)
    rows_order = SubsetOrder(n, t)
    rows = [0] * len(rows_order)
    for j, block in enumerate(_colex(n, k)):
        bit = 1 << j
        for u in combinations(block, t):
            rows[rows_order.rank(u)] |= bit
    return BitMatrix(rows, p.shape[1])


def binom_parity(a: int, b: int) -> int:
    """C(a, b) mod 2 via Lucas: odd exactly when the bits of b are a subset of a's."""
    if b < 0 or a < 0 or b > a:
        return 0
    return 1 if (a & b) == b else 0


def _rank_formula(t: int, n: int, k: int) -> int:
    total = 0
    for i in range(t + 1):
        if binom_parity(k - i, t - i):
            total += comb(n, i) - (comb(n, i - 1) if i else 0)
    return total


def wilson_rank(t: int, n: int, k: int) -> int:
    """GF(2) rank of W_{t,n,k} from Wilson's diagonal-form sum.

    The sum is valid for t <= n - k.  Otherwise complementing both row and
    column subsets identifies W_{t,n,k} with the transpose of W_{n-k,n,n-t},
    which does satisfy the condition.
    """
    WilsonParams(t, n, k)
    if t > n - k:
        return _rank_formula(n - k, n, n - t)
    return _rank_formula(t, n, k)


def code_dimension(t: int, n: int, k: int) -> int:
    return comb(n, k) - wilson_rank(t, n, k)
