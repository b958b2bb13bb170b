"""Deterministic random draws.

Every sampling routine in the package takes a master seed; per-sample
streams are derived with a splitmix64 mix of the seed and an index path, so
batches are reproducible and order-independent.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def derive_seed(master: int, *path: int) -> int:
    """Fold an index path into a 64-bit child seed."""
    z = master & _MASK
    for idx in path:
        z = _splitmix64(z ^ ((idx + 1) & _MASK))
    return _splitmix64(z)


def generator(master: int, *path: int) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master, *path))


def random_hermitian(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) * (scale / 2)


def random_matrix(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    return scale * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))


def random_psd(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    g = random_matrix(rng, n)
    m = g @ g.conj().T
    return m * (scale / max(1.0, float(np.linalg.norm(m, 2))))


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary from a QR-factorized Ginibre matrix."""
    q, r = np.linalg.qr(random_matrix(rng, n))
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


def random_odd_hermitian(rng: np.random.Generator, gamma: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """Hermitian matrix anticommuting with the grading gamma (exactly, for diagonal gamma)."""
    a = random_hermitian(rng, gamma.shape[0], scale)
    return (a - gamma @ a @ gamma) / 2
