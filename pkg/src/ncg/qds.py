"""Superoperators and the quantum-dynamical-semigroup verification battery.

A superoperator on Mat_n is stored as its n^2 x n^2 matrix in the
column-stacking basis, so that the map x -> A x B* has matrix
conj(B) (x) A and exponentiating a generator is a single dense expm.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import sampling
from .linalg import (
    DimensionMismatch,
    GradedMatrix,
    NotHermitianError,
    asarray,
    expm,
    funcalc,
    is_psd,
    opnorm,
    unvec,
    vec,
)

__all__ = [
    "Superoperator",
    "choi",
    "is_cp",
    "kraus_heat_semigroup",
    "left_composition_semigroup",
    "lindblad_generator",
    "endomorphism_laplacian_generator",
    "evolve",
    "conjugation_superoperator",
    "check_covariance",
    "check_markov",
    "hermiticity_preservation_residual",
    "transpose_map",
]


@dataclass(frozen=True)
class Superoperator:
    """Linear map on Mat_n in the column-stacking basis."""

    dim: int
    rep: np.ndarray
    tags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        rep = np.asarray(self.rep, dtype=complex)
        n2 = self.dim * self.dim
        if rep.shape != (n2, n2):
            raise DimensionMismatch(f"rep must be {n2}x{n2} for dim {self.dim}")
        rep = rep.copy()
        rep.setflags(write=False)
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "tags", frozenset(self.tags))

    @classmethod
    def identity(cls, dim: int, tags=("hermiticity_preserving", "unital", "cp_expected")):
        return cls(dim, np.eye(dim * dim, dtype=complex), frozenset(tags))

    @classmethod
    def zero(cls, dim: int, tags=("hermiticity_preserving",)):
        return cls(dim, np.zeros((dim * dim, dim * dim), dtype=complex), frozenset(tags))

    @classmethod
    def from_apply(cls, fn, dim: int, tags=()):
        """Build the matrix by applying ``fn`` to the standard basis E_ij."""
        n2 = dim * dim
        rep = np.zeros((n2, n2), dtype=complex)
        for col in range(n2):
            e = np.zeros(n2, dtype=complex)
            e[col] = 1.0
            rep[:, col] = vec(fn(unvec(e, dim)))
        return cls(dim, rep, frozenset(tags))

    @classmethod
    def from_kraus(cls, kraus, dim: int | None = None, tags=("hermiticity_preserving", "cp_expected")):
        """Heisenberg-picture Kraus map x -> sum_k K_k* x K_k."""
        mats = [asarray(k) for k in kraus]
        if dim is None:
            dim = mats[0].shape[0]
        rep = np.zeros((dim * dim, dim * dim), dtype=complex)
        for k in mats:
            rep += np.kron(k.T, k.conj().T)
        return cls(dim, rep, frozenset(tags))

    def apply(self, x) -> np.ndarray:
        m = asarray(x)
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"expected a {self.dim}x{self.dim} matrix")
        return unvec(self.rep @ vec(m), self.dim)

    def compose(self, other: "Superoperator") -> "Superoperator":
        if self.dim != other.dim:
            raise DimensionMismatch("cannot compose superoperators on different spaces")
        return Superoperator(self.dim, self.rep @ other.rep)

    def tensor(self, other: "Superoperator") -> "Superoperator":
        """Kronecker-factor action (self on the first factor, other on the second)."""
        n, m = self.dim, other.dim
        st = np.reshape(self.rep, (n, n, n, n), order="F")
        ot = np.reshape(other.rep, (m, m, m, m), order="F")

        def fn(z):
            t = z.reshape(n, m, n, m)
            return np.einsum("abij,cdkl,ikjl->acbd", st, ot, t).reshape(n * m, n * m)

        return Superoperator.from_apply(fn, n * m, self.tags & other.tags)

    def __add__(self, other: "Superoperator") -> "Superoperator":
        if self.dim != other.dim:
            raise DimensionMismatch("cannot add superoperators on different spaces")
        return Superoperator(self.dim, self.rep + other.rep)

    def __mul__(self, scalar) -> "Superoperator":
        return Superoperator(self.dim, scalar * self.rep)

    __rmul__ = __mul__


def hermiticity_preservation_residual(phi: Superoperator) -> float:
    """max over the standard basis of || phi(X*) - phi(X)* ||."""
    worst = 0.0
    n = phi.dim
    for i in range(n):
        for j in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = 1.0
            worst = max(worst, opnorm(phi.apply(e.conj().T) - phi.apply(e).conj().T))
    return worst


def choi(phi: Superoperator) -> GradedMatrix:
    """Choi matrix J(phi) = sum_ij E_ij (x) phi(E_ij)."""
    n = phi.dim
    j = np.zeros((n * n, n * n), dtype=complex)
    for a in range(n):
        for b in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[a, b] = 1.0
            j[a * n:(a + 1) * n, b * n:(b + 1) * n] = phi.apply(e)
    return GradedMatrix(j)


def is_cp(phi: Superoperator, tol: float = 1e-9) -> tuple[bool, float]:
    """Complete positivity via positivity of the Choi matrix."""
    j = asarray(choi(phi))
    scale = max(1.0, opnorm(j))
    if opnorm(j - j.conj().T) > 1e-10 * scale:
        raise NotHermitianError(
            "superoperator is not hermiticity-preserving; its Choi matrix is not Hermitian"
        )
    return is_psd(j, tol)


def _require_psd(dsq) -> np.ndarray:
    m = asarray(dsq)
    ok, mn = is_psd(m, 1e-10 * max(1.0, opnorm(m)))
    if not ok:
        raise ValueError(f"generator matrix must be PSD; min eigenvalue {mn}")
    return m


def kraus_heat_semigroup(dsq, t: float) -> Superoperator:
    """Symmetric heat semigroup x -> e^(-t D^2 / 2) x e^(-t D^2 / 2).

    Completely positive for every t >= 0 (one Kraus operator), symmetric for
    the Hilbert-Schmidt inner product, and contractive; conservative only
    for D^2 = 0.  Its quadratic form on self-adjoint x agrees with
    Tr(x D^2 x).
    """
    if t < 0:
        raise ValueError("time must be nonnegative")
    m = _require_psd(dsq)
    k = asarray(expm(m, -t / 2))
    return Superoperator.from_kraus([k], tags=("hermiticity_preserving", "cp_expected"))


def left_composition_semigroup(dsq, t: float) -> Superoperator:
    """One-sided semigroup x -> e^(-t D^2) x.

    Kept as a study object for the quadratic form Tr(x D^2 x): it is
    HS-symmetric and has the same form values on self-adjoint arguments as
    the symmetric semigroup's generator, but it does not preserve
    self-adjointness when D^2 and x fail to commute, so no positivity
    properties are claimed.
    """
    if t < 0:
        raise ValueError("time must be nonnegative")
    m = asarray(dsq)
    e = asarray(expm(m, -t))
    n = m.shape[0]
    return Superoperator(n, np.kron(np.eye(n), e))


def lindblad_generator(hm, ls=()) -> Superoperator:
    """GKSL generator L(x) = i[H, x] + sum_k (L_k* x L_k - (1/2){L_k* L_k, x})."""
    h = asarray(hm)
    if opnorm(h - h.conj().T) > 1e-10:
        raise NotHermitianError("Hamiltonian must be Hermitian")
    n = h.shape[0]
    eye = np.eye(n)
    rep = 1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for lk in ls:
        lm = asarray(lk)
        if lm.shape != (n, n):
            raise DimensionMismatch("jump operators must act on the system space")
        ld = lm.conj().T
        rep += np.kron(lm.T, ld)
        ldl = ld @ lm
        rep -= 0.5 * (np.kron(eye, ldl) + np.kron(ldl.T, eye))
    return Superoperator(n, rep, frozenset({"hermiticity_preserving", "unital", "cp_expected"}))


def endomorphism_laplacian_generator(bs, dim: int | None = None) -> Superoperator:
    """Double-commutator generator L(x) = -sum_i [B_i, [B_i, x]].

    This is the commutator action of an endomorphism connection: it kills
    the identity, so the semigroup e^(tL) is conservative, and it is a GKSL
    generator with self-adjoint jumps, hence completely positive and
    HS-symmetric.
    """
    mats = [asarray(b) for b in bs]
    if not mats:
        if dim is None:
            raise ValueError("an empty family needs an explicit dimension")
        return Superoperator.zero(dim, tags=("hermiticity_preserving", "unital", "cp_expected"))
    n = mats[0].shape[0]
    eye = np.eye(n)
    rep = np.zeros((n * n, n * n), dtype=complex)
    for b in mats:
        if b.shape != (n, n):
            raise DimensionMismatch("all B_i must share one dimension")
        if opnorm(b - b.conj().T) > 1e-10:
            raise NotHermitianError("B_i must be Hermitian")
        ad = np.kron(eye, b) - np.kron(b.T, eye)
        rep -= ad @ ad
    return Superoperator(n, rep, frozenset({"hermiticity_preserving", "unital", "cp_expected"}))


def evolve(gen: Superoperator, t: float) -> Superoperator:
    """e^(t L) as a superoperator."""
    if t < 0:
        raise ValueError("time must be nonnegative")
    return Superoperator(gen.dim, asarray(expm(gen.rep, t)), gen.tags)


def conjugation_superoperator(u) -> Superoperator:
    """alpha(x) = U x U* for a unitary U."""
    um = asarray(u)
    if opnorm(um @ um.conj().T - np.eye(um.shape[0])) > 1e-10:
        raise ValueError("conjugation requires a unitary")
    return Superoperator(um.shape[0], np.kron(um.conj(), um), frozenset({"hermiticity_preserving", "unital", "cp_expected"}))


def check_covariance(gen: Superoperator, unitaries) -> float:
    """max_g || L . Ad_g - Ad_g . L || over the given group sample.

    The residual is the spectral norm of the superoperator commutator, i.e.
    the operator norm on the Hilbert-Schmidt space, with no sampling of
    arguments involved.
    """
    worst = 0.0
    for u in unitaries:
        alpha = conjugation_superoperator(u)
        worst = max(worst, opnorm(gen.rep @ alpha.rep - alpha.rep @ gen.rep))
    return worst


def check_markov(phi: Superoperator, samples: int, seed: int) -> float:
    """Largest violation of 0 <= phi(x) <= 1 over random 0 <= x <= 1.

    Draws Hermitian matrices, clamps their spectra into [0, 1], applies the
    map, and reports max(0, -min eig, max eig - 1) maximized over samples.
    """
    if hermiticity_preservation_residual(phi) > 1e-9:
        raise NotHermitianError("Markov check requires a hermiticity-preserving map")
    worst = 0.0
    clamp = lambda r: min(1.0, max(0.0, r))
    for i in range(samples):
        rng = sampling.generator(seed, i)
        x = sampling.random_hermitian(rng, phi.dim)
        x01 = asarray(funcalc(x, clamp))
        y = phi.apply(x01)
        w = np.linalg.eigvalsh((y + y.conj().T) / 2)
        worst = max(worst, 0.0, -float(w[0]), float(w[-1]) - 1.0)
    return worst


def transpose_map(dim: int) -> Superoperator:
    """The transpose map, the standard positive-but-not-CP control."""
    return Superoperator.from_apply(lambda x: x.T, dim, tags=("hermiticity_preserving",))
