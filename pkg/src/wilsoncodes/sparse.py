"""Tanner-graph view of a parity-check matrix for the iterative decoders."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .gf2 import BitMatrix
from .qc import ExponentMatrix


@dataclass(frozen=True, eq=False)
class SparseParity:
    """Edges listed check by check, with the row partition used by layered decoding.

    ``edge_check[e]`` and ``edge_var[e]`` are the endpoints of edge e; edges
    are sorted by check, and ``check_ptr`` delimits each check's edges.
    Every layer is a set of checks with pairwise disjoint neighbourhoods.
    """

    rows: int
    cols: int
    edge_check: np.ndarray
    edge_var: np.ndarray
    layers: tuple[np.ndarray, ...] = field(default=())
    check_ptr: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        ec = np.asarray(self.edge_check, dtype=np.int64)
        ev = np.asarray(self.edge_var, dtype=np.int64)
        order = np.lexsort((ev, ec))
        ec, ev = ec[order], ev[order]
        if ec.size and (ec.min() < 0 or ec.max() >= self.rows or ev.min() < 0 or ev.max() >= self.cols):
            raise DomainError("edge endpoints out of range")
        if ec.size > 1 and (np.diff(ec * self.cols + ev) == 0).any():
            raise DomainError("repeated edge")
        object.__setattr__(self, "edge_check", ec)
        object.__setattr__(self, "edge_var", ev)
        object.__setattr__(self, "check_ptr", np.searchsorted(ec, np.arange(self.rows + 1)))
        object.__setattr__(self, "_dense_rows", bool(self.rows) and bool((np.diff(self.check_ptr) > 0).all()))
        layers = tuple(np.asarray(l, dtype=np.int64) for l in self.layers) or _greedy_layers(self)
        seen = np.concatenate(layers) if layers else np.zeros(0, dtype=np.int64)
        if len(seen) != self.rows or not np.array_equal(np.sort(seen), np.arange(self.rows)):
            raise DomainError("layers must partition the checks")
        for layer in layers:
            vars_ = np.concatenate([self.check_vars(i) for i in layer]) if len(layer) else []
            if len(np.unique(vars_)) != len(vars_):
                raise DomainError("checks within a layer must not share variables")
        object.__setattr__(self, "layers", layers)

    @classmethod
    def from_bitmatrix(cls, H: BitMatrix, layers=()) -> "SparseParity":
        A = H.to_array()
        ec, ev = np.nonzero(A)
        return cls(H.nrows, H.ncols, ec, ev, tuple(layers))

    @classmethod
    def from_exponent(cls, E: ExponentMatrix) -> "SparseParity":
        """Lifted matrix with one layer per circulant row block."""
        qc = E.qc
        ec, ev = [], []
        r = np.arange(qc)
        for i, j in np.argwhere(E.shifts >= 0):
            ec.append(i * qc + r)
            ev.append(j * qc + (r + E.shifts[i, j]) % qc)
        layers = tuple(np.arange(i * qc, (i + 1) * qc) for i in range(E.rows))
        empty = np.zeros(0, dtype=np.int64)
        return cls(E.rows * qc, E.cols * qc, np.concatenate(ec) if ec else empty,
                   np.concatenate(ev) if ev else empty, layers)

    def check_vars(self, i: int) -> np.ndarray:
        return self.edge_var[self.check_ptr[i] : self.check_ptr[i + 1]]

    def var_checks(self, j: int) -> np.ndarray:
        return self.edge_check[self.edge_var == j]

    def to_bitmatrix(self) -> BitMatrix:
        rows = [0] * self.rows
        for i, j in zip(self.edge_check.tolist(), self.edge_var.tolist()):
            rows[i] |= 1 << j
        return BitMatrix(rows, self.cols)

    def syndrome(self, bits: np.ndarray) -> np.ndarray:
        bits = np.asarray(bits).astype(np.uint8, copy=False)
        if self._dense_rows:
            return np.bitwise_xor.reduceat(bits[self.edge_var] & 1, self.check_ptr[:-1])
        return (np.bincount(self.edge_check, weights=bits[self.edge_var] & 1, minlength=self.rows) % 2).astype(np.uint8)


def _greedy_layers(H: SparseParity) -> tuple[np.ndarray, ...]:
    layers: list[list[int]] = []
    used: list[set[int]] = []
    for i in range(H.rows):
        vs = set(H.check_vars(i).tolist())
        for layer, u in zip(layers, used):
            if not (u & vs):
                layer.append(i)
                u |= vs
                break
        else:
            layers.append([i])
            used.append(set(vs))
    return tuple(np.array(l, dtype=np.int64) for l in layers)
