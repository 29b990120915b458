"""Canonical forms of binary matrices under independent row and column permutations.

Rows are treated as a multiset of hyperedges over the column set.  Columns
are labelled by individualisation-refinement: colour classes are refined
until stable, a vertex of the first non-singleton class is individualised,
and the search recurses.  Each discrete colouring relabels the columns; the
certificate is the sorted tuple of relabelled row masks, and the minimum over
all leaves is the canonical key.  Automorphisms found at equal leaves prune
sibling branches lying in the same orbit.
"""

from __future__ import annotations

from collections import Counter
from typing import Sequence

from .errors import DomainError
from .gf2 import BitMatrix

CanonicalKey = tuple[int, tuple[int, ...]]


def _refine(rows: list[list[int]], ncols: int, colors: list[int]) -> list[int]:
    n_classes = len(set(colors))
    while True:
        row_sig = [tuple(sorted(colors[c] for c in r)) for r in rows]
        row_ids = {s: i for i, s in enumerate(sorted(set(row_sig)))}
        col_rows: list[list[int]] = [[] for _ in range(ncols)]
        for r, sig in zip(rows, row_sig):
            rid = row_ids[sig]
            for c in r:
                col_rows[c].append(rid)
        col_sig = [(colors[c], tuple(sorted(col_rows[c]))) for c in range(ncols)]
        col_ids = {s: i for i, s in enumerate(sorted(set(col_sig)))}
        colors = [col_ids[s] for s in col_sig]
        if len(col_ids) == n_classes:
            return colors
        n_classes = len(col_ids)


class _Labeller:
    def __init__(self, masks: Sequence[int], ncols: int):
        self.ncols = ncols
        self.rows = [[c for c in range(ncols) if (m >> c) & 1] for m in masks]
        self.best: tuple[int, ...] | None = None
        self.best_labels: list[int] | None = None
        self.automorphisms: list[list[int]] = []

    def certificate(self, labels: list[int]) -> tuple[int, ...]:
        out = []
        for r in self.rows:
            m = 0
            for c in r:
                m |= 1 << labels[c]
            out.append(m)
        return tuple(sorted(out))

    def orbit_finder(self, fixed: list[int]):
        parent = list(range(self.ncols))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.automorphisms:
            if all(g[f] == f for f in fixed):
                for v in range(self.ncols):
                    a, b = find(v), find(g[v])
                    if a != b:
                        parent[a] = b
        return find

    def search(self, colors: list[int], fixed: list[int]) -> None:
        colors = _refine(self.rows, self.ncols, colors)
        sizes = Counter(colors)
        if len(sizes) == self.ncols:
            cert = self.certificate(colors)
            if self.best is None or cert < self.best:
                self.best, self.best_labels = cert, colors
            elif cert == self.best:
                back = {lab: c for c, lab in enumerate(self.best_labels)}
                self.automorphisms.append([back[colors[c]] for c in range(self.ncols)])
            return
        target = min(c for c, s in sizes.items() if s > 1)
        cell = [v for v in range(self.ncols) if colors[v] == target]
        tried: list[int] = []
        find, n_known = None, 0
        for v in cell:
            if tried and self.automorphisms:
                if find is None or n_known != len(self.automorphisms):
                    find, n_known = self.orbit_finder(fixed), len(self.automorphisms)
                if any(find(v) == find(u) for u in tried):
                    continue
            split = [2 * c + 1 for c in colors]
            split[v] = 2 * target
            self.search(split, fixed + [v])
            tried.append(v)


def canonical_masks(masks: Sequence[int], ncols: int) -> CanonicalKey:
    """Canonical key of the matrix whose rows are the given column bitmasks."""
    if ncols == 0:
        return (0, tuple(0 for _ in masks))
    lab = _Labeller(masks, ncols)
    lab.search([0] * ncols, [])
    return (ncols, lab.best)


def canonical_form(M: BitMatrix) -> CanonicalKey:
    """Key shared exactly by the matrices reachable from M by row and column permutations."""
    if M.nrows == 0:
        raise DomainError("canonical_form needs at least one row")
    return canonical_masks(M.rows, M.ncols)


def canonical_matrix(M: BitMatrix) -> BitMatrix:
    """The representative matrix described by ``canonical_form(M)``."""
    ncols, rows = canonical_form(M)
    return BitMatrix(rows, ncols)
