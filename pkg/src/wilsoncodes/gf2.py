"""Dense GF(2) matrices stored as packed Python integers.

Each row is an ``int`` whose bit ``j`` holds column ``j``.  XOR on Python
integers works word-at-a-time internally, which is plenty for the desk-scale
matrices used here (the largest acceptance instance is 495 x 2310).
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np


class BitMatrix:
    """Immutable binary matrix with row-major packed storage."""

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[int], ncols: int):
        rows = tuple(int(r) for r in rows)
        if ncols < 0:
            raise ValueError(f"ncols must be non-negative, got {ncols}")
        limit = 1 << ncols
        for i, r in enumerate(rows):
            if r < 0 or r >= limit:
                raise ValueError(f"row {i} has bits outside {ncols} columns")
        self._rows = rows
        self._ncols = ncols

    # -- construction -----------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls([0] * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls([1 << i for i in range(n)], n)

    @classmethod
    def from_array(cls, arr) -> "BitMatrix":
        a = np.asarray(arr)
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        rows = []
        for row in a:
            m = 0
            for j in np.flatnonzero(row % 2):
                m |= 1 << int(j)
            rows.append(m)
        return cls(rows, a.shape[1])

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "BitMatrix":
        lines = [ln.strip() for ln in lines if ln.strip()]
        if not lines:
            raise ValueError("no rows given")
        ncols = len(lines[0])
        rows = []
        for i, ln in enumerate(lines):
            if len(ln) != ncols or set(ln) - {"0", "1"}:
                raise ValueError(f"row {i} is not a 0/1 string of length {ncols}")
            rows.append(int(ln[::-1], 2))
        return cls(rows, ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[int], nrows: int) -> "BitMatrix":
        """Build from column bitmasks (bit ``i`` of a column is row ``i``)."""
        rows = [0] * nrows
        for j, col in enumerate(columns):
            while col:
                low = col & -col
                rows[low.bit_length() - 1] |= 1 << j
                col ^= low
        return cls(rows, len(columns))

    # -- basic accessors --------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self._rows), self._ncols)

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    def row(self, i: int) -> int:
        return self._rows[i]

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not 0 <= j < self._ncols:
            raise IndexError(j)
        return (self._rows[i] >> j) & 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self._ncols == other._ncols and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._ncols, self._rows))

    def __repr__(self) -> str:
        return f"BitMatrix({self.nrows}x{self.ncols})"

    def columns(self) -> list[int]:
        """Column bitmasks; bit ``i`` of column ``j`` is entry ``(i, j)``."""
        cols = [0] * self._ncols
        for i, r in enumerate(self._rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return cols

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.columns(), self.nrows)

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        for i, r in enumerate(self._rows):
            out[i] = _int_to_bits(r, self._ncols)
        return out

    def to_strings(self) -> list[str]:
        return [format(r, f"0{self._ncols}b")[::-1] if self._ncols else "" for r in self._rows]

    def row_weights(self) -> list[int]:
        return [r.bit_count() for r in self._rows]

    def column_weights(self) -> list[int]:
        return [c.bit_count() for c in self.columns()]

    def weight(self) -> int:
        return sum(self.row_weights())

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if other.ncols != self.ncols:
            raise ValueError("column counts differ")
        return BitMatrix(self._rows + other._rows, self._ncols)

    def select_rows(self, idx: Iterable[int]) -> "BitMatrix":
        return BitMatrix([self._rows[i] for i in idx], self._ncols)

    # -- algebra ------------------------------------------------------------

    def syndrome(self, v) -> np.ndarray:
        """Return ``M v^T`` over GF(2) as a 0/1 vector of length ``nrows``."""
        x = vector_to_int(v, self._ncols)
        return np.array([(r & x).bit_count() & 1 for r in self._rows], dtype=np.uint8)

    def rank(self) -> int:
        return rank(self)

    def nullspace_basis(self) -> list[np.ndarray]:
        return nullspace_basis(self)


def _int_to_bits(x: int, n: int) -> np.ndarray:
    if n == 0:
        return np.zeros(0, dtype=np.uint8)
    raw = np.frombuffer(x.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].copy()


def vector_to_int(v, n: int | None = None) -> int:
    """Pack a 0/1 vector (or pass through an int) into a bitmask."""
    if isinstance(v, (int, np.integer)):
        return int(v)
    a = np.asarray(v, dtype=np.uint8) & 1
    if n is not None and a.shape[0] != n:
        raise ValueError(f"vector length {a.shape[0]} != {n}")
    packed = np.packbits(a, bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def int_to_vector(x: int, n: int) -> np.ndarray:
    return _int_to_bits(x, n)


def rank(M: BitMatrix) -> int:
    """GF(2) rank by XOR-basis insertion keyed on the leading bit."""
    basis: dict[int, int] = {}
    for r in M.rows:
        while r:
            p = r.bit_length() - 1
            b = basis.get(p)
            if b is None:
                basis[p] = r
                break
            r ^= b
    return len(basis)


def _rref(M: BitMatrix) -> dict[int, int]:
    """Reduced echelon form as ``{pivot column: row}``; pivots appear in one row only."""
    pivots: dict[int, int] = {}
    for r in M.rows:
        for p, b in pivots.items():
            if (r >> p) & 1:
                r ^= b
        if not r:
            continue
        p = (r & -r).bit_length() - 1
        for q in list(pivots):
            if (pivots[q] >> p) & 1:
                pivots[q] ^= r
        pivots[p] = r
    return pivots


def nullspace_int_basis(M: BitMatrix) -> list[int]:
    pivots = _rref(M)
    basis = []
    for f in range(M.ncols):
        if f in pivots:
            continue
        v = 1 << f
        for p, r in pivots.items():
            if (r >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def nullspace_basis(M: BitMatrix) -> list[np.ndarray]:
    """Basis of ``{v : M v^T = 0}``, one vector per free column."""
    return [int_to_vector(v, M.ncols) for v in nullspace_int_basis(M)]


# -- minimum distance ---------------------------------------------------------

ENUMERATION_DIM_LIMIT = 20


def min_nonzero_weight(
    M: BitMatrix, weight_cap: int | None = None, method: str = "auto"
) -> tuple[int, np.ndarray] | None:
    """Lightest nonzero ``v`` with ``M v^T = 0`` and weight at most ``weight_cap``.

    ``method`` is ``"enumerate"`` (walk all codewords of the nullspace),
    ``"subsets"`` (meet-in-the-middle over column supports of increasing size)
    or ``"auto"``, which enumerates when the nullspace dimension is at most 20.
    Both strategies are exact within the cap.  Returns ``None`` when no such
    vector exists.
    """
    if weight_cap is None:
        weight_cap = M.ncols
    if weight_cap < 1:
        raise ValueError("weight_cap must be >= 1")
    basis = nullspace_int_basis(M)
    if not basis:
        return None
    if method == "auto":
        method = "enumerate" if len(basis) <= ENUMERATION_DIM_LIMIT else "subsets"
    if method == "enumerate":
        found = _min_weight_enumerate(basis, M.ncols)
    elif method == "subsets":
        found = _min_weight_subsets(M, weight_cap)
    else:
        raise ValueError(f"unknown method {method!r}")
    if found is None or found.bit_count() > weight_cap:
        return None
    return found.bit_count(), int_to_vector(found, M.ncols)


def _min_weight_enumerate(basis: list[int], ncols: int) -> int | None:
    if ncols <= 63:
        words = np.zeros(1, dtype=np.int64)
        for b in basis:
            words = np.concatenate([words, words ^ np.int64(b)])
        weights = np.bitwise_count(words)
        weights[0] = ncols + 1
        i = int(np.argmin(weights))
        return int(words[i])
    # Gray-code walk: one XOR per codeword.
    best, best_w = None, ncols + 1
    x = 0
    for i in range(1, 1 << len(basis)):
        x ^= basis[(i & -i).bit_length() - 1]
        w = x.bit_count()
        if w < best_w:
            best, best_w = x, w
    return best


def _min_weight_subsets(M: BitMatrix, weight_cap: int) -> int | None:
    # Two column subsets with equal syndrome give a codeword (their symmetric
    # difference).  Every codeword of weight w splits into halves of size
    # ceil(w/2) and floor(w/2), so after all subsets of size <= s are bucketed,
    # every codeword of weight <= 2s has been seen.
    cols = M.columns()
    n = len(cols)
    buckets: dict[int, list[int]] = {0: [0]}
    best = None
    best_w = weight_cap + 1
    for s in range(1, (weight_cap + 1) // 2 + 1):
        floor_w = 2 * s - 1  # lightest weight not yet ruled out
        done = False
        for subset in itertools.combinations(range(n), s):
            syn = 0
            mask = 0
            for c in subset:
                syn ^= cols[c]
                mask |= 1 << c
            seen = buckets.get(syn)
            if seen is None:
                buckets[syn] = [mask]
                continue
            for other in seen:
                x = mask ^ other
                w = x.bit_count()
                if 0 < w < best_w:
                    best, best_w = x, w
            seen.append(mask)
            if best_w <= floor_w:
                done = True
                break
        if done or best_w <= 2 * s:
            return best
    return best
