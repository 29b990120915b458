"""Hard-decision gradient-descent bit flipping and layered normalized min-sum."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .sparse import SparseParity

GDBF_VARIANTS = ("tied-min", "threshold")


@dataclass(frozen=True)
class DecodeResult:
    word: np.ndarray
    iterations: int
    converged: bool

    def __iter__(self):
        return iter((self.word, self.iterations, self.converged))


def inversion_values(H: SparseParity, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Delta_j = x_j y_j + sum over checks of j of the bipolar check value.

    ``x`` and ``y`` are bipolar (bit 0 -> +1).  A satisfied check contributes
    +1 and an unsatisfied one -1, so the least reliable bits have the smallest
    values.
    """
    neg = (x < 0).astype(np.int64)
    syn = np.bincount(H.edge_check, weights=neg[H.edge_var], minlength=H.rows) % 2
    bipolar = 1.0 - 2.0 * syn
    return x * y + np.bincount(H.edge_var, weights=bipolar[H.edge_check], minlength=H.cols)


def gdbf_decode(
    H: SparseParity,
    received,
    max_iter: int = 30,
    theta: float | None = None,
    variant: str = "tied-min",
) -> DecodeResult:
    """Multi-bit gradient-descent bit flipping on a hard-decision word.

    ``tied-min`` flips every bit whose inversion value equals the minimum;
    ``threshold`` flips every bit with value below ``theta`` and falls back to
    the minimum when no bit qualifies.
    """
    if variant not in GDBF_VARIANTS:
        raise DomainError(f"unknown GDBF variant {variant!r}")
    if variant == "threshold" and theta is None:
        raise DomainError("the threshold variant needs theta")
    r = np.asarray(received, dtype=np.uint8) & 1
    if r.shape != (H.cols,):
        raise DomainError(f"received word has length {r.shape}, expected {H.cols}")
    y = 1.0 - 2.0 * r
    x = y.copy()
    it = 0
    while True:
        if not H.syndrome(x < 0).any():
            return DecodeResult((x < 0).astype(np.uint8), it, True)
        if it == max_iter:
            return DecodeResult((x < 0).astype(np.uint8), it, False)
        it += 1
        delta = inversion_values(H, x, y)
        low = delta.min()
        flip = delta < theta if variant == "threshold" else np.zeros(H.cols, dtype=bool)
        if not flip.any():
            flip = delta == low
        x[flip] = -x[flip]


def layered_minsum_decode(
    H: SparseParity,
    llr,
    max_iter: int = 30,
    alpha: float = 0.75,
) -> DecodeResult:
    """Normalized min-sum with one serial update per layer of checks.

    Positive LLRs favour bit 0.  The hard decision is tested after every
    layer; ``iterations`` counts the sweeps started.
    """
    L = np.array(llr, dtype=np.float64)
    if L.shape != (H.cols,):
        raise DomainError(f"llr vector has length {L.shape}, expected {H.cols}")
    R = np.zeros(len(H.edge_var), dtype=np.float64)
    plan = [_layer_plan(H, layer) for layer in H.layers]
    for it in range(1, max_iter + 1):
        for edges, starts, seg, vars_ in plan:
            if edges.size == 0:
                continue
            Q = L[vars_] - R[edges]
            mag = np.abs(Q)
            m1 = np.minimum.reduceat(mag, starts)
            first = _first_argmin(mag, m1[seg], seg, len(starts))
            mag2 = mag.copy()
            mag2[first] = np.inf
            m2 = np.minimum.reduceat(mag2, starts)
            neg = (Q < 0).astype(np.int64)
            sign_all = 1 - 2 * (np.add.reduceat(neg, starts) % 2)
            sign_self = 1 - 2 * neg
            m = m1[seg].copy()
            is_first = np.zeros(len(edges), dtype=bool)
            is_first[first] = True
            m[is_first] = m2[seg][is_first]
            m[np.isinf(m)] = 0.0  # degree-one checks send nothing
            R[edges] = alpha * sign_all[seg] * sign_self * m
            L[vars_] = Q + R[edges]
            bits = (L < 0).astype(np.uint8)
            if not H.syndrome(bits).any():
                return DecodeResult(bits, it, True)
    return DecodeResult((L < 0).astype(np.uint8), max_iter, False)


def _layer_plan(H: SparseParity, layer: np.ndarray):
    spans = [(H.check_ptr[i], H.check_ptr[i + 1]) for i in layer if H.check_ptr[i + 1] > H.check_ptr[i]]
    if not spans:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty, empty
    edges = np.concatenate([np.arange(a, b) for a, b in spans])
    lengths = np.array([b - a for a, b in spans])
    starts = np.concatenate([[0], np.cumsum(lengths)[:-1]])
    seg = np.repeat(np.arange(len(spans)), lengths)
    return edges, starts, seg, H.edge_var[edges]


def _first_argmin(mag: np.ndarray, seg_min: np.ndarray, seg: np.ndarray, nseg: int) -> np.ndarray:
    pos = np.flatnonzero(mag == seg_min)
    _, idx = np.unique(seg[pos], return_index=True)
    return pos[idx]
