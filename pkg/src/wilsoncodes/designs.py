"""Binary t-(n,k)-designs: families of k-subsets covering every t-subset evenly.

Points are labelled 1..n.  A nonzero codeword of ker W_{t,n,k} is the same
thing as a binary t-(n,k)-design: its support, read through the colex column
order, is the block set.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .gf2 import BitMatrix, int_to_vector, vector_to_int
from .wilson import SubsetOrder, build_wilson

Block = tuple[int, ...]

HADAMARD_BLOCKS: tuple[Block, ...] = (
    (1, 2, 3, 4),
    (1, 2, 5, 6),
    (3, 4, 5, 6),
    (1, 4, 6, 7),
    (1, 3, 5, 7),
    (2, 4, 5, 7),
    (2, 3, 6, 7),
)


@dataclass(frozen=True)
class BinaryDesign:
    """A nonempty set of distinct k-subsets of {1..n}, kept in sorted order."""

    n: int
    k: int
    blocks: tuple[Block, ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        if not blocks:
            raise DomainError("a design needs at least one block")
        if len(set(blocks)) != len(blocks):
            raise DomainError("blocks must be pairwise distinct")
        for b in blocks:
            if len(b) != self.k or len(set(b)) != self.k:
                raise DomainError(f"block {b} does not have {self.k} distinct points")
            if b and (b[0] < 1 or b[-1] > self.n):
                raise DomainError(f"block {b} leaves the point set 1..{self.n}")
        object.__setattr__(self, "blocks", blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def points(self) -> set[int]:
        return {p for b in self.blocks for p in b}

    def with_points(self, n: int) -> "BinaryDesign":
        """Same blocks viewed on a larger point set."""
        return BinaryDesign(n, self.k, self.blocks)

    def incidence_matrix(self) -> BitMatrix:
        """Points (rows 1..n) versus blocks (columns, in stored order)."""
        rows = [0] * self.n
        for j, b in enumerate(self.blocks):
            for p in b:
                rows[p - 1] |= 1 << j
        return BitMatrix(rows, len(self.blocks))

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_dict(cls, data: dict) -> "BinaryDesign":
        return cls(int(data["n"]), int(data["k"]), tuple(tuple(int(p) for p in b) for b in data["blocks"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "BinaryDesign":
        return cls.from_dict(json.loads(text))


def lambda_count(S: Iterable[int], D: BinaryDesign) -> int:
    """Number of blocks of D containing every point of S."""
    s = set(S)
    return sum(1 for b in D.blocks if s.issubset(b))


def is_binary_design(D: BinaryDesign, t: int) -> bool:
    """True iff every t-subset of points lies in an even number of blocks."""
    if t < 0 or t > D.k:
        raise DomainError(f"strength t={t} must satisfy 0 <= t <= k={D.k}")
    counts: Counter = Counter()
    for b in D.blocks:
        for s in combinations(b, t):
            counts[s] ^= 1
    return not any(counts.values())


# -- codeword correspondence ---------------------------------------------------


def design_from_codeword(x, n: int, k: int, t: int | None = None) -> BinaryDesign:
    """Unrank the support of a codeword of C_{t,n,k} into a block set.

    When ``t`` is given the codeword is checked against W_{t,n,k} first.
    """
    order = SubsetOrder(n, k)
    mask = vector_to_int(x, len(order))
    if mask == 0:
        raise DomainError("the zero vector corresponds to no design")
    if t is not None and build_wilson(t, n, k).syndrome(int_to_vector(mask, len(order))).any():
        raise DomainError(f"vector is not a codeword of C_({t},{n},{k})")
    blocks = []
    while mask:
        low = mask & -mask
        blocks.append(order.unrank(low.bit_length() - 1))
        mask ^= low
    return BinaryDesign(n, k, tuple(blocks))


def codeword_from_design(D: BinaryDesign) -> np.ndarray:
    order = SubsetOrder(D.n, D.k)
    v = np.zeros(len(order), dtype=np.uint8)
    for b in D.blocks:
        v[order.rank(b)] = 1
    return v


# -- constructions ----------------------------------------------------------------


def construct_subsets(t: int, k: int) -> BinaryDesign:
    """All k-subsets of a (k+1)-set; a binary t-design when k - t is odd."""
    if t < 0 or k < t:
        raise DomainError(f"need 0 <= t <= k, got t={t}, k={k}")
    if (k - t) % 2 == 0:
        raise DomainError(f"k - t must be odd, got k={k}, t={t}")
    return BinaryDesign(k + 1, k, tuple(combinations(range(1, k + 2), k)))


def construct_pair(k: int) -> BinaryDesign:
    """Two blocks differing in one point: the smallest binary 0-design."""
    if k < 1:
        raise DomainError("k must be positive")
    head = tuple(range(1, k))
    return BinaryDesign(k + 1, k, (head + (k,), head + (k + 1,)))


def doubling(D: BinaryDesign) -> BinaryDesign:
    """Copy every block twice, once with point n+1 and once with n+2.

    A binary t-(n,k)-design becomes a (t+1)-(n+2,k+1)-design with twice the blocks.
    """
    a, b = D.n + 1, D.n + 2
    blocks = [blk + (a,) for blk in D.blocks] + [blk + (b,) for blk in D.blocks]
    return BinaryDesign(D.n + 2, D.k + 1, tuple(blocks))


def construct_pasch(t: int, k: int) -> BinaryDesign:
    """Generalised Pasch configuration: 2^(t+1) blocks on k+t+1 points."""
    if t < 0 or k < t + 1:
        raise DomainError(f"need k >= t + 1 >= 1, got t={t}, k={k}")
    head = list(range(1, t + 2))
    tail = tuple(range(2 * t + 3, k + t + 2))
    blocks = []
    for r in range(t + 2):
        for R in combinations(head, r):
            mirrored = tuple(p + t + 1 for p in head if p not in R)
            blocks.append(R + mirrored + tail)
    return BinaryDesign(k + t + 1, k, tuple(blocks))


def stretch(D: BinaryDesign, l: int) -> BinaryDesign:
    """Replace each block B by {i + n*j : i in B, 0 <= j < l}.

    Strength is preserved for every s with 1 <= s <= t at which D is also a
    binary s-design, because an s-subset of the stretched points projects onto
    a subset of at most s original points.
    """
    if l < 1:
        raise DomainError(f"stretch factor must be >= 1, got {l}")
    n = D.n
    blocks = tuple(tuple(i + n * j for i in b for j in range(l)) for b in D.blocks)
    return BinaryDesign(n * l, D.k * l, blocks)


def hadamard_design() -> BinaryDesign:
    return BinaryDesign(7, 4, HADAMARD_BLOCKS)


def construct_hadamard_stretch(l: int) -> BinaryDesign:
    """Seven blocks of size 4l on 7l points from the 2-(7,4,2) Hadamard design."""
    if l < 1:
        raise DomainError(f"l must be >= 1, got {l}")
    return stretch(hadamard_design(), l)


def construct_triangle_stretch(k: int) -> BinaryDesign:
    """Three blocks of even size k on 3k/2 points forming a binary 1-design.

    This is the 1-(3,2) design {12, 13, 23} stretched by k/2.
    """
    if k < 2 or k % 2:
        raise DomainError(f"k must be even and >= 2, got {k}")
    return stretch(construct_subsets(1, 2), k // 2)


# -- operators ----------------------------------------------------------------------


def _drop_point(block: Block, i: int) -> Block:
    return tuple(p - 1 if p > i else p for p in block if p != i)


def derived_design(D: BinaryDesign, i: int) -> BinaryDesign | None:
    """Blocks through point i with i removed, relabelled onto 1..n-1.

    Returns ``None`` when no block contains i.
    """
    if not 1 <= i <= D.n:
        raise DomainError(f"point {i} outside 1..{D.n}")
    blocks = tuple(_drop_point(b, i) for b in D.blocks if i in b)
    if not blocks:
        return None
    return BinaryDesign(D.n - 1, D.k - 1, blocks)


def point_split(D: BinaryDesign, i: int) -> tuple[BinaryDesign | None, BinaryDesign | None]:
    """Split D into the blocks through i (on n points) and the rest (on n-1 points).

    Empty parts come back as ``None``.
    """
    if not 1 <= i <= D.n:
        raise DomainError(f"point {i} outside 1..{D.n}")
    through = tuple(b for b in D.blocks if i in b)
    rest = tuple(_drop_point(b, i) for b in D.blocks if i not in b)
    return (
        BinaryDesign(D.n, D.k, through) if through else None,
        BinaryDesign(D.n - 1, D.k, rest) if rest else None,
    )


def reduced_incidence(D: BinaryDesign) -> BitMatrix:
    """Incidence matrix with zero rows dropped and repeated rows kept once."""
    seen = set()
    rows = []
    for r in D.incidence_matrix().rows:
        if r and r not in seen:
            seen.add(r)
            rows.append(r)
    return BitMatrix(rows, len(D))


def design_from_incidence(A: BitMatrix) -> BinaryDesign:
    """Read columns of a point-block incidence matrix as blocks."""
    blocks = []
    for col in A.columns():
        blocks.append(tuple(i + 1 for i in range(A.nrows) if (col >> i) & 1))
    sizes = {len(b) for b in blocks}
    if len(sizes) != 1:
        raise DomainError(f"columns have unequal weights {sorted(sizes)}")
    return BinaryDesign(A.nrows, sizes.pop(), tuple(blocks))


def expand_reduced(R: BitMatrix, z: Sequence[int]) -> BinaryDesign:
    """Repeat row i of a reduced incidence matrix z[i] times and read off the design."""
    if len(z) != R.nrows:
        raise DomainError("one multiplicity per row is required")
    rows = [r for r, m in zip(R.rows, z) for _ in range(int(m))]
    return design_from_incidence(BitMatrix(rows, R.ncols))
