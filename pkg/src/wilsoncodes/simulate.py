"""Monte-Carlo bit and frame error rates for the iterative decoders."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channels import awgn_llr, bsc
from .decoders import gdbf_decode, layered_minsum_decode
from .errors import DomainError
from .gf2 import nullspace_int_basis, int_to_vector
from .sparse import SparseParity

CSV_COLUMNS = ("channel_param", "frames", "bit_errors", "frame_errors", "ber", "fer", "avg_iters", "seed")


@dataclass(frozen=True)
class DecoderConfig:
    kind: str = "gdbf"
    max_iter: int = 30
    alpha: float = 0.75
    variant: str = "tied-min"
    theta: float | None = None

    def __post_init__(self):
        if self.kind not in ("gdbf", "minsum"):
            raise DomainError(f"unknown decoder {self.kind!r}")
        if self.max_iter < 0:
            raise DomainError("max_iter must be non-negative")


@dataclass(frozen=True)
class ChannelConfig:
    kind: str = "bsc"
    rate: float | None = None  # needed for awgn; defaults to the code rate

    def __post_init__(self):
        if self.kind not in ("bsc", "awgn"):
            raise DomainError(f"unknown channel {self.kind!r}")


@dataclass(frozen=True)
class SimRecord:
    channel_param: float
    frames: int
    bit_errors: int
    frame_errors: int
    avg_iterations: float
    seed: int
    block_length: int

    def __post_init__(self):
        if not 0 <= self.bit_errors <= self.frames * self.block_length:
            raise DomainError("bit_errors out of range")
        if not 0 <= self.frame_errors <= self.frames:
            raise DomainError("frame_errors out of range")

    @property
    def ber(self) -> float:
        return 0.0 if self.frames == 0 else self.bit_errors / (self.frames * self.block_length)

    @property
    def fer(self) -> float:
        return 0.0 if self.frames == 0 else self.frame_errors / self.frames

    def row(self) -> dict:
        return {
            "channel_param": self.channel_param,
            "frames": self.frames,
            "bit_errors": self.bit_errors,
            "frame_errors": self.frame_errors,
            "ber": self.ber,
            "fer": self.fer,
            "avg_iters": self.avg_iterations,
            "seed": self.seed,
        }


def frame_rng(seed: int, point: int, frame: int) -> np.random.Generator:
    """Independent stream per (seed, point, frame), so results ignore execution order."""
    return np.random.default_rng(np.random.SeedSequence([seed, point, frame]))


def code_rate(H: SparseParity) -> float:
    return (H.cols - H.to_bitmatrix().rank()) / H.cols


def _decode_frame(H, dec: DecoderConfig, chan: ChannelConfig, rate, param, codeword, rng):
    if chan.kind == "bsc":
        received = bsc(codeword, param, rng)
        if dec.kind != "gdbf":
            raise DomainError("the min-sum decoder needs soft input; use the awgn channel")
        return gdbf_decode(H, received, dec.max_iter, dec.theta, dec.variant)
    llr = awgn_llr(codeword, param, rate, rng)
    if dec.kind == "minsum":
        return layered_minsum_decode(H, llr, dec.max_iter, dec.alpha)
    return gdbf_decode(H, (llr < 0).astype(np.uint8), dec.max_iter, dec.theta, dec.variant)


def _random_codeword(basis: list[int], n: int, rng: np.random.Generator) -> np.ndarray:
    pick = rng.integers(0, 2, size=len(basis))
    x = 0
    for b, keep in zip(basis, pick.tolist()):
        if keep:
            x ^= b
    return int_to_vector(x, n)


def _run_chunk(args) -> tuple[int, int, int]:
    H, dec, chan, rate, param, point, frames, seed, basis = args
    bit_err = frame_err = iters = 0
    for f in frames:
        rng = frame_rng(seed, point, f)
        cw = np.zeros(H.cols, dtype=np.uint8) if basis is None else _random_codeword(basis, H.cols, rng)
        res = _decode_frame(H, dec, chan, rate, param, cw, rng)
        errs = int(np.count_nonzero(res.word != cw))
        bit_err += errs
        frame_err += errs > 0
        iters += res.iterations
    return bit_err, frame_err, iters


def run_curve(
    H: SparseParity,
    decoder_cfg: DecoderConfig,
    channel_cfg: ChannelConfig,
    points: Sequence[float],
    frames_per_point: int,
    seed: int,
    codeword: str = "zero",
    jobs: int = 1,
) -> list[SimRecord]:
    """One record per channel point (crossover p for bsc, Eb/N0 in dB for awgn).

    ``codeword`` is ``"zero"`` (the all-zero word) or ``"random"`` (a fresh
    uniformly random codeword per frame).
    """
    if frames_per_point < 0:
        raise DomainError("frames_per_point must be non-negative")
    if codeword not in ("zero", "random"):
        raise DomainError(f"codeword must be 'zero' or 'random', got {codeword!r}")
    rate = None
    if channel_cfg.kind == "awgn":
        rate = channel_cfg.rate if channel_cfg.rate is not None else code_rate(H)
    basis = nullspace_int_basis(H.to_bitmatrix()) if codeword == "random" else None
    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    records = []
    try:
        for p_idx, param in enumerate(points):
            frames = list(range(frames_per_point))
            chunks = [frames[i::jobs] for i in range(jobs)] if executor else [frames]
            tasks = [(H, decoder_cfg, channel_cfg, rate, float(param), p_idx, c, seed, basis) for c in chunks]
            parts = list(executor.map(_run_chunk, tasks)) if executor else [_run_chunk(tasks[0])]
            be = sum(p[0] for p in parts)
            fe = sum(p[1] for p in parts)
            it = sum(p[2] for p in parts)
            records.append(
                SimRecord(
                    channel_param=float(param),
                    frames=frames_per_point,
                    bit_errors=be,
                    frame_errors=fe,
                    avg_iterations=it / frames_per_point if frames_per_point else 0.0,
                    seed=seed,
                    block_length=H.cols,
                )
            )
    finally:
        if executor is not None:
            executor.shutdown()
    return records


def records_to_csv(records: Sequence[SimRecord]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in records:
        writer.writerow(r.row())
    return buf.getvalue()
