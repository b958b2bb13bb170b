"""Dense complex linear algebra with Z2-graded tensor products.

Everything downstream works with square complex matrices, optionally
carrying a grading operator gamma (a self-adjoint involution).  The graded
tensor product is realized by the gamma-twist embedding
``(A @ gamma^(|B|)) (x) B`` so that every object stays an ordinary matrix.

Matrix residuals throughout the package are measured in the spectral
(operator) norm unless a function says otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np
import scipy.linalg

__all__ = [
    "DimensionMismatch",
    "NotHermitianError",
    "GradingError",
    "GradedMatrix",
    "Spectrum",
    "EXPM_NORM_CAP",
    "asarray",
    "opnorm",
    "dagger",
    "commutator",
    "anticommutator",
    "vec",
    "unvec",
    "parity_of",
    "expm",
    "hermitian_eig",
    "is_psd",
    "kron",
    "kron_graded",
    "hs_inner",
    "funcalc",
]


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes."""


class NotHermitianError(ValueError):
    """An operation required a (nearly) Hermitian matrix and did not get one."""


class GradingError(ValueError):
    """A grading operator is missing, invalid, or a parity constraint fails."""


#: Largest allowed spectral norm of ``scale * A`` in :func:`expm`.  Beyond
#: this the result is rejected instead of risking overflow / garbage.
EXPM_NORM_CAP = 500.0

_GRADING_TOL = 1e-12
_PARITY_TOL = 1e-10


def asarray(a) -> np.ndarray:
    """Accept a GradedMatrix or anything array-like; return a complex ndarray."""
    data = getattr(a, "data", a)
    return np.asarray(data, dtype=complex)


def opnorm(a) -> float:
    """Spectral norm (largest singular value)."""
    m = asarray(a)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def dagger(a) -> np.ndarray:
    return asarray(a).conj().T


def commutator(a, b) -> np.ndarray:
    a, b = asarray(a), asarray(b)
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    a, b = asarray(a), asarray(b)
    return a @ b + b @ a


def vec(x) -> np.ndarray:
    """Column-stacking vectorization, so vec(A X B) = (B^T kron A) vec(X)."""
    return asarray(x).reshape(-1, order="F")


def unvec(v, n: int | None = None) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    if n is None:
        n = int(round(np.sqrt(v.size)))
    if n * n != v.size:
        raise DimensionMismatch(f"cannot unvec length {v.size} into a square matrix")
    return v.reshape(n, n, order="F")


def parity_of(a, gamma, tol: float = _PARITY_TOL) -> str:
    """Parity of ``a`` relative to the grading ``gamma``: even, odd, or mixed."""
    a, gamma = asarray(a), asarray(gamma)
    twisted = gamma @ a @ gamma
    scale = max(1.0, opnorm(a))
    if opnorm(twisted - a) <= tol * scale:
        return "even"
    if opnorm(twisted + a) <= tol * scale:
        return "odd"
    return "mixed"


@dataclass(frozen=True)
class GradedMatrix:
    """Square complex matrix with an optional grading operator.

    ``grading``, when present, must be a self-adjoint involution on the same
    space.  ``parity`` tags the matrix as even/odd/mixed relative to that
    grading; when omitted but a grading is present it is computed.
    """

    data: np.ndarray
    grading: np.ndarray | None = None
    parity: str | None = None

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise DimensionMismatch(f"expected a square matrix, got shape {data.shape}")
        data = data.copy()
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        if self.grading is not None:
            g = np.asarray(self.grading, dtype=complex)
            if g.shape != data.shape:
                raise DimensionMismatch("grading must act on the same space")
            if opnorm(g @ g - np.eye(len(g))) > _GRADING_TOL:
                raise GradingError("grading must square to the identity")
            if opnorm(g - g.conj().T) > _GRADING_TOL:
                raise GradingError("grading must be self-adjoint")
            g = g.copy()
            g.setflags(write=False)
            object.__setattr__(self, "grading", g)
            if self.parity is None:
                object.__setattr__(self, "parity", parity_of(data, g))
            elif self.parity in ("even", "odd") and parity_of(data, g) != self.parity:
                raise GradingError(f"matrix is not {self.parity} for the given grading")
        if self.parity is not None and self.parity not in ("even", "odd", "mixed"):
            raise ValueError(f"unknown parity tag {self.parity!r}")

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def adjoint(self) -> "GradedMatrix":
        return GradedMatrix(self.data.conj().T, self.grading, self.parity)

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return opnorm(self.data - self.data.conj().T) <= tol


MatrixLike = Union[GradedMatrix, np.ndarray, Sequence]


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue table: ascending (eigenvalue, multiplicity) pairs."""

    entries: tuple[tuple[float, int], ...]

    def __post_init__(self):
        prev = None
        for value, mult in self.entries:
            if mult < 1:
                raise ValueError("multiplicities must be >= 1")
            if prev is not None and value <= prev:
                raise ValueError("eigenvalues must be strictly increasing")
            prev = value

    @classmethod
    def from_eigenvalues(cls, values, rel_tol: float = 1e-8) -> "Spectrum":
        """Cluster a raw eigenvalue list into (value, multiplicity) pairs.

        Eigenvalues closer than ``rel_tol * max(1, spectral radius)`` are
        merged into one entry at the cluster mean.
        """
        vals = np.sort(np.asarray(values, dtype=float))
        if vals.size == 0:
            return cls(())
        gap = rel_tol * max(1.0, float(np.max(np.abs(vals))))
        entries = []
        start = 0
        for i in range(1, len(vals) + 1):
            if i == len(vals) or vals[i] - vals[i - 1] > gap:
                cluster = vals[start:i]
                entries.append((float(np.mean(cluster)), len(cluster)))
                start = i
        return cls(tuple(entries))

    @classmethod
    def from_pairs(cls, pairs) -> "Spectrum":
        ordered = sorted((float(v), int(m)) for v, m in pairs)
        return cls(tuple(ordered))

    def expand(self) -> np.ndarray:
        """Full eigenvalue vector with each value repeated by multiplicity."""
        return np.concatenate([np.full(m, v) for v, m in self.entries]) if self.entries else np.zeros(0)

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.entries)

    def to_csv(self) -> str:
        lines = ["eigenvalue,multiplicity"]
        for value, mult in self.entries:
            lines.append(f"{value:.15g},{mult}")
        return "\n".join(lines) + "\n"

    def __iter__(self):
        return iter(self.entries)


def _square(a) -> np.ndarray:
    m = asarray(a)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


def _require_hermitian(a, tol: float = 1e-10) -> np.ndarray:
    m = _square(a)
    if opnorm(m - m.conj().T) > tol:
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    return m


def expm(a: MatrixLike, scale: float | complex = 1.0) -> GradedMatrix:
    """e^(scale * A) for square A.

    Normal matrices go through a unitary Schur diagonalization; everything
    else falls back to scipy's scaling-and-squaring Pade.  Inputs with
    ``opnorm(scale * A) > EXPM_NORM_CAP`` are rejected.
    """
    m = _square(a)
    scaled_norm = abs(scale) * opnorm(m)
    if not np.isfinite(scaled_norm) or scaled_norm > EXPM_NORM_CAP:
        raise ValueError(
            f"opnorm(scale*A) = {scaled_norm:.3g} exceeds the cap {EXPM_NORM_CAP}"
        )
    n = m.shape[0]
    if n == 0:
        return GradedMatrix(m)
    t, u = scipy.linalg.schur(m, output="complex")
    off = np.linalg.norm(t - np.diag(np.diag(t)))
    if off <= 1e-13 * max(1.0, np.linalg.norm(t)):
        # Normal matrix: exponentiate the diagonal in the Schur basis.
        result = (u * np.exp(scale * np.diag(t))) @ u.conj().T
    else:
        result = scipy.linalg.expm(scale * m)
    return GradedMatrix(result, getattr(a, "grading", None))


def hermitian_eig(a: MatrixLike, tol: float = 1e-10) -> tuple[Spectrum, np.ndarray]:
    """Spectral decomposition A = U diag(w) U* of a Hermitian matrix.

    Returns the clustered spectrum and the unitary eigenvector matrix
    (columns ordered by ascending eigenvalue).
    """
    m = _require_hermitian(a, tol)
    w, u = np.linalg.eigh((m + m.conj().T) / 2)
    return Spectrum.from_eigenvalues(w), u


def is_psd(a: MatrixLike, tol: float = 1e-12) -> tuple[bool, float]:
    """Positive semidefiniteness up to ``tol``; also returns the minimum eigenvalue."""
    m = _require_hermitian(a)
    w = np.linalg.eigvalsh((m + m.conj().T) / 2)
    mn = float(w[0])
    return mn >= -tol, mn


def kron(a: MatrixLike, b: MatrixLike) -> GradedMatrix:
    """Ordinary Kronecker product; gradings combine as gamma_a (x) gamma_b."""
    ma, mb = asarray(a), asarray(b)
    ga, gb = getattr(a, "grading", None), getattr(b, "grading", None)
    grading = np.kron(ga, gb) if ga is not None and gb is not None else None
    return GradedMatrix(np.kron(ma, mb), grading)


def _parity_for_graded_product(b) -> str:
    parity = getattr(b, "parity", None)
    if parity is None:
        gb = getattr(b, "grading", None)
        if gb is None:
            raise GradingError("kron_graded needs the second factor's parity")
        parity = parity_of(asarray(b), gb)
    if parity not in ("even", "odd"):
        raise GradingError(f"second factor must have definite parity, got {parity!r}")
    return parity


def kron_graded(a: MatrixLike, b: MatrixLike, gamma1: MatrixLike | None = None) -> GradedMatrix:
    """Graded tensor product via the gamma-twist embedding.

    Realizes a (x)^ b as ``(A gamma1^(|B|)) (x) B`` where gamma1 grades the
    first factor's space, reproducing the Koszul sign rule
    (a (x)^ b)(c (x)^ d) = (-1)^(|b||c|) (ac) (x)^ (bd) on homogeneous
    elements.  For even b this is the ordinary Kronecker product.
    """
    ma = _square(a)
    if gamma1 is None:
        gamma1 = getattr(a, "grading", None)
        if gamma1 is None:
            raise GradingError("kron_graded needs a grading on the first factor")
    g1 = asarray(gamma1)
    if g1.shape != ma.shape:
        raise DimensionMismatch("gamma1 must act on the first factor's space")
    parity = _parity_for_graded_product(b)
    left = ma if parity == "even" else ma @ g1
    return GradedMatrix(np.kron(left, asarray(b)))


def hs_inner(a: MatrixLike, b: MatrixLike) -> complex:
    """Hilbert-Schmidt inner product Tr(A* B), conjugate-linear in A."""
    ma, mb = asarray(a), asarray(b)
    if ma.shape != mb.shape:
        raise DimensionMismatch(f"shape mismatch {ma.shape} vs {mb.shape}")
    return complex(np.trace(ma.conj().T @ mb))


def funcalc(a: MatrixLike, f: Callable[[float], complex]) -> GradedMatrix:
    """Spectral functional calculus f(A) = U f(diag) U* for Hermitian A."""
    m = _require_hermitian(a)
    w, u = np.linalg.eigh((m + m.conj().T) / 2)
    try:
        fw = np.array([f(float(x)) for x in w], dtype=complex)
    except Exception as exc:  # noqa: BLE001 - report which eigenvalue broke f
        raise ValueError(f"function undefined on the spectrum: {exc}") from exc
    if not np.all(np.isfinite(fw)):
        bad = w[~np.isfinite(fw)]
        raise ValueError(f"function not finite at eigenvalue(s) {bad}")
    return GradedMatrix((u * fw) @ u.conj().T, getattr(a, "grading", None))
