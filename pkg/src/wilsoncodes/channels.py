"""Binary symmetric channel and BPSK over AWGN with LLR output."""

from __future__ import annotations

import numpy as np

from .errors import DomainError


def bsc(word, p: float, rng: np.random.Generator) -> np.ndarray:
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"crossover probability must lie in [0, 1], got {p}")
    w = np.asarray(word, dtype=np.uint8) & 1
    return w ^ (rng.random(w.shape) < p).astype(np.uint8)


def noise_variance(ebn0_db: float, rate: float) -> float:
    if not 0.0 < rate <= 1.0:
        raise DomainError(f"code rate must lie in (0, 1], got {rate}")
    return 1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0))


def awgn_llr(word, ebn0_db: float, rate: float, rng: np.random.Generator) -> np.ndarray:
    """BPSK (0 -> +1, 1 -> -1) plus Gaussian noise, returned as 2y / sigma^2."""
    var = noise_variance(ebn0_db, rate)
    w = np.asarray(word, dtype=np.uint8) & 1
    y = 1.0 - 2.0 * w + np.sqrt(var) * rng.standard_normal(w.shape)
    return 2.0 * y / var
