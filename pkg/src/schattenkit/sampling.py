"""Seeded random matrix ensembles.

Per-trial generators are counter-based (Philox) and keyed by
(master seed, suite key, trial index), so every trial's inputs are
reproducible independently of execution order or parallelism.
"""

from __future__ import annotations

import zlib

import numpy as np

from .states import FaithfulState, faithful_state

# Trace-relative ridge added to Wishart draws before normalization.
STATE_RIDGE = 1e-3


def suite_key(name: str) -> int:
    """Stable 32-bit key for a suite name."""
    return zlib.crc32(name.encode("utf-8"))


def trial_rng(seed: int, suite: str, index: int) -> np.random.Generator:
    """Counter-based generator for one trial of one suite."""
    ss = np.random.SeedSequence([int(seed), suite_key(suite), int(index)])
    return np.random.Generator(np.random.Philox(ss))


def ginibre(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Standard complex Gaussian matrix (entries CN(0, 1))."""
    return (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary via phase-fixed QR of a Ginibre draw."""
    q, r = np.linalg.qr(ginibre(dim, rng))
    phases = np.diagonal(r).copy()
    phases /= np.abs(phases)
    return q * phases


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = ginibre(dim, rng)
    return (g + g.conj().T) / 2.0


def random_faithful_psd(dim: int, rng: np.random.Generator, ridge: float | None = None) -> np.ndarray:
    """Wishart matrix G G* plus a ridge keeping all eigenvalues positive."""
    if ridge is None:
        ridge = STATE_RIDGE * dim
    g = ginibre(dim, rng)
    return g @ g.conj().T + ridge * np.eye(dim)


def sample_faithful_state(dim: int, rng: np.random.Generator) -> FaithfulState:
    """Unit-trace faithful state: normalized G G* + 1e-3 * dim * I.

    The ridge keeps the minimum eigenvalue far above the faithfulness
    floor for desk-scale dimensions.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    w = random_faithful_psd(dim, rng)
    return faithful_state(w / np.trace(w).real)


def random_diagonal_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Strictly positive probability vector (for commuting fixtures)."""
    p = rng.random(dim) + STATE_RIDGE
    return p / p.sum()
