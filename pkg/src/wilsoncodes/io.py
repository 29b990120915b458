"""File formats: alist parity-check matrices, plain 0/1 text matrices, atomic writes."""

from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path
from typing import Iterable

from .errors import DomainError
from .gf2 import BitMatrix


def write_atomic(path: str | os.PathLike, data: str | bytes) -> str:
    """Write via a temporary file in the same directory and rename; returns the sha256."""
    path = Path(path)
    raw = data.encode() if isinstance(data, str) else data
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(raw)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return hashlib.sha256(raw).hexdigest()


def file_digest(path: str | os.PathLike) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# -- alist ----------------------------------------------------------------------------


def to_alist(H: BitMatrix) -> str:
    """MacKay's alist layout: 1-based neighbour lists, zero-padded to the max degree."""
    cols = H.columns()
    col_nbrs = [[i + 1 for i in range(H.nrows) if (c >> i) & 1] for c in cols]
    row_nbrs = [[j + 1 for j in range(H.ncols) if (r >> j) & 1] for r in H.rows]
    max_c = max((len(x) for x in col_nbrs), default=0)
    max_r = max((len(x) for x in row_nbrs), default=0)
    lines = [
        f"{H.ncols} {H.nrows}",
        f"{max_c} {max_r}",
        " ".join(str(len(x)) for x in col_nbrs),
        " ".join(str(len(x)) for x in row_nbrs),
    ]
    lines += [" ".join(map(str, x + [0] * (max_c - len(x)))) for x in col_nbrs]
    lines += [" ".join(map(str, x + [0] * (max_r - len(x)))) for x in row_nbrs]
    return "\n".join(lines) + "\n"


def from_alist(text: str) -> BitMatrix:
    """Parse an alist file; zero padding is optional and the row lists are cross-checked."""
    tokens = [int(t) for t in text.split()]
    if len(tokens) < 4:
        raise DomainError("alist: truncated header")
    n, m = tokens[0], tokens[1]
    pos = 4
    col_deg = tokens[pos : pos + n]
    pos += n
    row_deg = tokens[pos : pos + m]
    pos += m
    if len(col_deg) != n or len(row_deg) != m:
        raise DomainError("alist: truncated degree lists")
    max_c, max_r = tokens[2], tokens[3]
    padded = len(tokens) - pos == n * max_c + m * max_r

    def read_lists(degs: list[int], width: int) -> list[list[int]]:
        nonlocal pos
        out = []
        for d in degs:
            take = width if padded else d
            chunk = tokens[pos : pos + take]
            if len(chunk) != take:
                raise DomainError("alist: truncated neighbour lists")
            pos += take
            nz = [x for x in chunk if x != 0]
            if len(nz) != d:
                raise DomainError("alist: degree does not match neighbour list")
            out.append(nz)
        return out

    col_lists = read_lists(col_deg, max_c)
    row_lists = read_lists(row_deg, max_r)
    rows = [0] * m
    for j, nbrs in enumerate(col_lists):
        for i in nbrs:
            if not 1 <= i <= m:
                raise DomainError(f"alist: row index {i} out of range")
            rows[i - 1] |= 1 << j
    check = [0] * m
    for i, nbrs in enumerate(row_lists):
        for j in nbrs:
            if not 1 <= j <= n:
                raise DomainError(f"alist: column index {j} out of range")
            check[i] |= 1 << (j - 1)
    if check != rows:
        raise DomainError("alist: row and column lists disagree")
    return BitMatrix(rows, n)


# -- text matrices ----------------------------------------------------------------------


def format_matrix(M: BitMatrix, header: Iterable[str] = ()) -> str:
    """One 0/1 string per row (column 0 first), preceded by ``#`` comment lines."""
    return "".join(f"# {h}\n" for h in header) + "".join(s + "\n" for s in M.to_strings())


def parse_matrices(text: str) -> list[BitMatrix]:
    """Blank-line separated blocks of 0/1 rows; ``#`` lines are ignored."""
    out, block = [], []
    for line in text.splitlines() + [""]:
        s = line.strip()
        if s.startswith("#"):
            continue
        if s:
            block.append(s)
        elif block:
            out.append(BitMatrix.from_strings(block))
            block = []
    return out
