"""Quasi-cyclic lifting of binary base matrices and short-cycle removal.

A unit entry (i, j) of the base matrix becomes the qc x qc identity shifted
by ``shifts[i, j]``: entry (r, c) of that block is 1 iff c = r + shift (mod qc).
Zero entries, marked by shift -1, become zero blocks.

A 4-cycle of the base matrix (rows a, b; columns a', b') lifts to qc
4-cycles when

    e[a,a'] + e[b,b'] = e[a,b'] + e[b,a']  (mod qc)

and to none otherwise.  A 6-cycle through rows a, b, c and columns a', b', c'
(a meets a' and b', b meets b' and c', c meets c' and a') behaves the same
way with

    e[a,a'] + e[b,b'] + e[c,c'] = e[a,b'] + e[b,c'] + e[c,a']  (mod qc).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DomainError, PurgeFailed
from .gf2 import BitMatrix


@dataclass(frozen=True, eq=False)
class ExponentMatrix:
    qc: int
    shifts: np.ndarray

    def __post_init__(self):
        s = np.array(self.shifts, dtype=np.int64)
        if s.ndim != 2:
            raise DomainError("shifts must be a 2-d table")
        if self.qc < 1:
            raise DomainError(f"qc must be >= 1, got {self.qc}")
        if ((s < -1) | (s >= self.qc)).any():
            raise DomainError(f"shifts must lie in -1..{self.qc - 1}")
        s.setflags(write=False)
        object.__setattr__(self, "shifts", s)

    @property
    def rows(self) -> int:
        return self.shifts.shape[0]

    @property
    def cols(self) -> int:
        return self.shifts.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExponentMatrix):
            return NotImplemented
        return self.qc == other.qc and np.array_equal(self.shifts, other.shifts)

    def base(self) -> BitMatrix:
        return BitMatrix.from_array((self.shifts >= 0).astype(np.uint8))

    @classmethod
    def from_base(cls, B: BitMatrix, qc: int, values=0) -> "ExponentMatrix":
        """Put ``values`` (scalar or full table) on the unit entries of B, -1 elsewhere."""
        mask = B.to_array().astype(bool)
        table = np.broadcast_to(np.asarray(values, dtype=np.int64), mask.shape)
        return cls(qc, np.where(mask, table, -1))

    def to_dict(self) -> dict:
        return {"qc": int(self.qc), "shifts": self.shifts.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "ExponentMatrix":
        return cls(int(data["qc"]), np.array(data["shifts"], dtype=np.int64))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "ExponentMatrix":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class CycleList:
    """Base-matrix cycles as integer arrays of shape (m, 4) and (m, 6).

    Four-cycles are (a, b, a', b') with a < b and a' < b'.  Six-cycles are
    (a, b, c, a', b', c') with a the smallest row and a' < b'.
    """

    four_cycles: np.ndarray
    six_cycles: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "four_cycles", np.asarray(self.four_cycles, dtype=np.int64).reshape(-1, 4))
        object.__setattr__(self, "six_cycles", np.asarray(self.six_cycles, dtype=np.int64).reshape(-1, 6))

    def __len__(self) -> int:
        return len(self.four_cycles) + len(self.six_cycles)

    def as_tuples(self) -> tuple[set[tuple[int, ...]], set[tuple[int, ...]]]:
        return (
            {tuple(int(x) for x in c) for c in self.four_cycles},
            {tuple(int(x) for x in c) for c in self.six_cycles},
        )


def enumerate_cycles(B: BitMatrix, max_len: int = 6) -> CycleList:
    if max_len not in (4, 6):
        raise DomainError(f"max_len must be 4 or 6, got {max_len}")
    if B.nrows == 0:
        raise DomainError("base matrix has no rows")
    A = B.to_array().astype(bool)
    four = []
    for a, b in combinations(range(B.nrows), 2):
        common = np.flatnonzero(A[a] & A[b])
        for x, y in combinations(common.tolist(), 2):
            four.append((a, b, x, y))
    six = []
    if max_len == 6:
        m = B.nrows
        for a in range(m):
            for b in range(a + 1, m):
                ab = np.flatnonzero(A[a] & A[b])  # candidates for b'
                if ab.size == 0:
                    continue
                for c in range(a + 1, m):
                    if c == b:
                        continue
                    bc = np.flatnonzero(A[b] & A[c])  # c'
                    ca = np.flatnonzero(A[c] & A[a])  # a'
                    if bc.size == 0 or ca.size == 0:
                        continue
                    for bp in ab.tolist():
                        for cp in bc.tolist():
                            if cp == bp:
                                continue
                            for ap in ca.tolist():
                                if ap < bp and ap != cp:
                                    six.append((a, b, c, ap, bp, cp))
    return CycleList(np.array(four, dtype=np.int64), np.array(six, dtype=np.int64))


def _signed_entries(cyc: np.ndarray) -> list[tuple[np.ndarray, np.ndarray, int]]:
    """(rows, cols, sign) for each base entry on the cycles, in cycle-sum order."""
    if cyc.shape[1] == 4:
        a, b, ap, bp = cyc.T
        return [(a, ap, 1), (b, bp, 1), (a, bp, -1), (b, ap, -1)]
    a, b, c, ap, bp, cp = cyc.T
    return [(a, ap, 1), (b, bp, 1), (c, cp, 1), (a, bp, -1), (b, cp, -1), (c, ap, -1)]


def cycle_sums(E: ExponentMatrix, cyc: np.ndarray) -> np.ndarray:
    total = np.zeros(len(cyc), dtype=np.int64)
    for r, c, sign in _signed_entries(cyc):
        vals = E.shifts[r, c]
        if (vals < 0).any():
            raise DomainError("cycle list does not match the exponent matrix pattern")
        total += sign * vals
    return total


def violations(E: ExponentMatrix, cycles: CycleList) -> CycleList:
    """Cycles whose shift sums agree mod qc, i.e. that survive the lifting."""
    four, six = cycles.four_cycles, cycles.six_cycles
    return CycleList(
        four[cycle_sums(E, four) % E.qc == 0],
        six[cycle_sums(E, six) % E.qc == 0],
    )


def lift(E: ExponentMatrix) -> BitMatrix:
    qc = E.qc
    rows = []
    for i in range(E.rows):
        for r in range(qc):
            mask = 0
            for j in np.flatnonzero(E.shifts[i] >= 0).tolist():
                c = (r + int(E.shifts[i, j])) % qc
                mask |= 1 << (j * qc + c)
            rows.append(mask)
    return BitMatrix(rows, E.cols * qc)


# -- purge heuristic -----------------------------------------------------------------


class _CycleSystem:
    """Cycles as signed edge lists, with per-edge incidence sorted by edge."""

    def __init__(self, B: BitMatrix, cycles: CycleList):
        A = B.to_array().astype(bool)
        edge_id = -np.ones(A.shape, dtype=np.int64)
        self.edge_rc = np.argwhere(A)
        edge_id[A] = np.arange(len(self.edge_rc))
        self.n_edges = len(self.edge_rc)
        members, signs = [], []
        for cyc in (cycles.four_cycles, cycles.six_cycles):
            if len(cyc):
                ent = _signed_entries(cyc)
                members.append(np.stack([edge_id[r, c] for r, c, _ in ent], axis=1))
                signs.append(np.broadcast_to(np.array([sg for _, _, sg in ent]), members[-1].shape))
        if members:
            # 4- and 6-cycles have different widths; pad 4-cycles onto a dummy edge
            width = max(m.shape[1] for m in members)
            pad = lambda x, v: np.pad(x, ((0, 0), (0, width - x.shape[1])), constant_values=v)
            self.members = np.concatenate([pad(m, self.n_edges) for m in members])
            self.signs = np.concatenate([pad(sg, 0) for sg in signs])
        else:
            self.members = np.zeros((0, 1), dtype=np.int64)
            self.signs = np.zeros((0, 1), dtype=np.int64)
        self.n_cycles = len(self.members)
        edge_of = self.members.ravel()
        keep = edge_of < self.n_edges
        edge_of = edge_of[keep]
        order = np.argsort(edge_of, kind="stable")
        self.inc_edge = edge_of[order]
        self.inc_cycle = np.repeat(np.arange(self.n_cycles), self.members.shape[1])[keep][order]
        self.inc_sign = self.signs.ravel()[keep][order]
        self.ptr = np.searchsorted(self.inc_edge, np.arange(self.n_edges + 1))
        self.col_edges = [np.flatnonzero(self.edge_rc[:, 1] == j) for j in range(A.shape[1])]

    def sums(self, eps: np.ndarray) -> np.ndarray:
        padded = np.append(eps, 0)
        return (padded[self.members] * self.signs).sum(axis=1)

    def column_load(self, bad: np.ndarray, ncols: int) -> np.ndarray:
        per_edge = np.bincount(self.inc_edge, weights=bad[self.inc_cycle], minlength=self.n_edges)
        return np.bincount(self.edge_rc[:, 1], weights=per_edge, minlength=ncols)


def purge_cycles(
    B: BitMatrix,
    qc: int,
    forbid6: bool = False,
    rng_seed: int | None = 0,
    max_restarts: int = 200,
    sweeps: int = 200,
    cycles: CycleList | None = None,
) -> ExponentMatrix:
    """Shifts over B whose lifting has no 4-cycles (and no 6-cycles if ``forbid6``).

    An attempt starts from random shifts.  Whenever an edge lies on a
    violated cycle it is moved to a shift hitting the fewest forbidden
    residues of its cycles, chosen at random among equally good values, so
    the walk can drift along plateaus instead of stalling.  Columns are
    visited first as a random proper subset in random order, then the rest
    in decreasing order of incident violations; repair sweeps repeat the
    latter over violated columns.  After ``sweeps`` fruitless sweeps the
    attempt is abandoned and a fresh random start is drawn.
    """
    if qc < 1:
        raise DomainError(f"qc must be >= 1, got {qc}")
    if cycles is None:
        cycles = enumerate_cycles(B, 6 if forbid6 else 4)
    elif not forbid6:
        cycles = CycleList(cycles.four_cycles, np.zeros((0, 6), dtype=np.int64))
    system = _CycleSystem(B, cycles)
    rng = np.random.default_rng(rng_seed)
    ncols = B.ncols

    for _ in range(max_restarts):
        eps = rng.integers(0, qc, size=system.n_edges)
        sums = system.sums(eps)

        def reassign(e: int) -> None:
            lo, hi = system.ptr[e], system.ptr[e + 1]
            if lo == hi:
                return
            idx = system.inc_cycle[lo:hi]
            sg = system.inc_sign[lo:hi]
            forbidden = (sg * eps[e] - sums[idx]) * sg % qc
            counts = np.bincount(forbidden, minlength=qc)
            if counts[eps[e]] == 0:
                return
            best = np.flatnonzero(counts == counts.min())
            new = int(best[rng.integers(len(best))])
            sums[idx] += sg * (new - eps[e])
            eps[e] = new

        def visit(cols) -> None:
            for j in cols:
                for e in system.col_edges[j]:
                    reassign(int(e))

        def by_load(cols: np.ndarray) -> list[int]:
            load = system.column_load(sums % qc == 0, ncols)
            cols = cols[load[cols] > 0]
            tiebreak = rng.random(ncols)
            return sorted(cols.tolist(), key=lambda c: (-load[c], tiebreak[c]))

        first = rng.permutation(ncols)[: rng.integers(1, ncols)] if ncols > 1 else np.arange(ncols)
        visit(first.tolist())
        visit(by_load(np.setdiff1d(np.arange(ncols), first)))
        for _sweep in range(sweeps):
            if not (sums % qc == 0).any():
                return _exponent(B, qc, system, eps)
            visit(by_load(np.arange(ncols)))
        if not (sums % qc == 0).any():
            return _exponent(B, qc, system, eps)
    raise PurgeFailed(f"no cycle-free shifts found for qc={qc} after {max_restarts} restarts")


def _exponent(B: BitMatrix, qc: int, system: _CycleSystem, eps: np.ndarray) -> ExponentMatrix:
    shifts = -np.ones((B.nrows, B.ncols), dtype=np.int64)
    shifts[system.edge_rc[:, 0], system.edge_rc[:, 1]] = eps
    return ExponentMatrix(qc, shifts)
