"""Complex Clifford algebra representations and commutants.

Generators are built by the iterated Pauli (Jordan-Wigner) construction on
(C^2)^(n/2), so the chirality operator comes out diagonal.  Only even
generator counts are supported; the minus signature (e_i^2 = -1) is the
default.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DimensionMismatch,
    GradedMatrix,
    asarray,
    opnorm,
    vec,
    unvec,
)

__all__ = ["CliffordRep", "TwistedAction", "build_clifford", "twist", "commutant"]

MAX_GENERATORS = 12

_SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class CliffordRep:
    """Irreducible representation of the complex Clifford algebra on n generators."""

    n: int
    signature: str  # "minus": e_i^2 = -1, "plus": e_i^2 = +1
    gammas: tuple[GradedMatrix, ...]
    chirality: GradedMatrix

    @property
    def dim(self) -> int:
        return self.chirality.dim


@dataclass(frozen=True)
class TwistedAction:
    """Clifford action on W (x) S acting trivially on the twisting factor W."""

    rep: CliffordRep
    dim_w: int
    action_matrices: tuple[GradedMatrix, ...]

    @property
    def dim(self) -> int:
        return self.dim_w * self.rep.dim


def _chain(ops: list[np.ndarray]) -> np.ndarray:
    out = ops[0]
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def build_clifford(n: int, signature: str = "minus") -> CliffordRep:
    """Clifford generators e_1..e_n on dimension 2^(n/2).

    Pairs (e_{2k-1}, e_{2k}) come from sigma_1, sigma_2 at tensor slot k with
    sigma_3 twists to the left; the minus signature multiplies by i so that
    e_i^2 = -1 and the generators are skew-Hermitian unitaries.  The
    chirality is (-i)^(n/2) e_1 ... e_n, diagonal in this construction.
    """
    if n % 2 != 0 or n <= 0:
        raise ValueError("generator count must be a positive even integer")
    if n > MAX_GENERATORS:
        raise ValueError(f"generator count capped at {MAX_GENERATORS}")
    if signature not in ("plus", "minus"):
        raise ValueError(f"unknown signature {signature!r}")
    m = n // 2
    eye = np.eye(2, dtype=complex)
    factor = 1j if signature == "minus" else 1.0
    raw = []
    for k in range(m):
        prefix = [_SIGMA3] * k
        suffix = [eye] * (m - k - 1)
        raw.append(factor * _chain(prefix + [_SIGMA1] + suffix))
        raw.append(factor * _chain(prefix + [_SIGMA2] + suffix))
    chi = (-1j) ** m * np.linalg.multi_dot(raw) if n > 2 else (-1j) ** m * (raw[0] @ raw[1])
    chi = chi.real.astype(complex) if opnorm(chi.imag) < 1e-14 else chi
    gammas = tuple(GradedMatrix(g, grading=chi, parity="odd") for g in raw)
    return CliffordRep(n, signature, gammas, GradedMatrix(chi, grading=chi, parity="even"))


def twist(rep: CliffordRep, dim_w: int) -> TwistedAction:
    """Act with 1_W (x) e_i on a twisting factor of dimension dim_w."""
    if dim_w < 1:
        raise ValueError("twisting dimension must be >= 1")
    eye_w = np.eye(dim_w, dtype=complex)
    chi = np.kron(eye_w, asarray(rep.chirality))
    mats = tuple(
        GradedMatrix(np.kron(eye_w, asarray(g)), grading=chi, parity="odd")
        for g in rep.gammas
    )
    return TwistedAction(rep, dim_w, mats)


def commutant(matrices, rank_rtol: float = 1e-9) -> list[GradedMatrix]:
    """Orthonormal basis of {X : X M_i = M_i X for all i}.

    The commutation constraints are stacked as one superoperator
    [X -> M_i X - X M_i] in the column-stacking basis and the null space is
    read off an SVD; singular values below ``rank_rtol`` times the largest
    count as zero.  The returned matrices are orthonormal in the
    Hilbert-Schmidt inner product.
    """
    mats = [asarray(m) for m in matrices]
    if not mats:
        raise ValueError("commutant of an empty family is undefined here")
    d = mats[0].shape[0]
    for m in mats:
        if m.shape != (d, d):
            raise DimensionMismatch("all matrices must share one dimension")
    eye = np.eye(d, dtype=complex)
    blocks = [np.kron(eye, m) - np.kron(m.T, eye) for m in mats]
    stacked = np.vstack(blocks)
    _, svals, vh = np.linalg.svd(stacked)
    cutoff = rank_rtol * (svals[0] if svals.size and svals[0] > 0 else 1.0)
    null_rows = [vh[i] for i in range(vh.shape[0]) if i >= svals.size or svals[i] <= cutoff]
    return [GradedMatrix(unvec(row.conj(), d)) for row in null_rows]
