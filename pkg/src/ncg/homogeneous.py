"""Homogeneous bundles over the 2-sphere SU(2)/U(1) and their laplacians.

Conventions, fixed once:
  * su(2) generators X_1, X_2, X_3 are skew-Hermitian with [X_1, X_2] = X_3
    (cyclically); the Casimir -sum X_i^2 has eigenvalue j(j+1) on spin j.
  * The U(1) Casimir of an integer weight w is w^2/4, so the canonical
    connection laplacian is sectorwise j(j+1) - w^2/4 >= 0.
  * The metric scale makes the unit round sphere have scalar curvature
    kappa = 2, which puts the squared Dirac operator at j(j+1) + kappa/8
    on each half-spinor sector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import sampling
from .linalg import (
    DimensionMismatch,
    GradedMatrix,
    Spectrum,
    asarray,
    commutator,
    opnorm,
)

__all__ = [
    "Su2Irrep",
    "HomogeneousBundle",
    "SPHERE_CURVATURE",
    "su2_irrep",
    "decompose_induced_bundle",
    "connection_laplacian_spectrum",
    "dirac_square_spectrum_symmetric",
    "cubic_dirac_square",
    "verify_commutator_lemma",
    "tensor_laplacian_check",
    "bochner_curvature_term",
    "sobolev_norm",
    "smoothness_constant",
    "casimir_matrix",
]

#: Scalar curvature of the unit round 2-sphere in the normalization above.
SPHERE_CURVATURE = 2.0

SOBOLEV_ORDER_CAP = 4


def _check_half_integer(j: float, what: str = "spin") -> float:
    two_j = 2 * j
    if j < 0 or abs(two_j - round(two_j)) > 1e-12:
        raise ValueError(f"{what} must be a nonnegative half-integer, got {j}")
    return round(two_j) / 2


@dataclass(frozen=True)
class Su2Irrep:
    """Spin-j irreducible representation with skew-Hermitian generators."""

    j: float
    generators: tuple[np.ndarray, np.ndarray, np.ndarray]

    @property
    def dim(self) -> int:
        return int(round(2 * self.j + 1))

    @property
    def casimir_eigenvalue(self) -> float:
        return self.j * (self.j + 1)


@dataclass(frozen=True)
class HomogeneousBundle:
    """Line bundle over SU(2)/U(1) cut off at a highest spin.

    ``sector_list`` is the Frobenius-reciprocity decomposition of the
    truncated section space: each spin j >= |w|/2 with j = |w|/2 (mod 1)
    occurs exactly once.
    """

    h_weight: int
    j_max: float
    sector_list: tuple[tuple[float, int], ...]
    kappa: float = SPHERE_CURVATURE


def su2_irrep(j: float) -> Su2Irrep:
    """Ladder-operator construction of the spin-j generators."""
    j = _check_half_integer(j)
    dim = int(round(2 * j + 1))
    mvals = np.array([j - k for k in range(dim)])
    jplus = np.zeros((dim, dim), dtype=complex)
    for k in range(1, dim):
        m = mvals[k]
        jplus[k - 1, k] = np.sqrt(j * (j + 1) - m * (m + 1))
    jminus = jplus.conj().T
    jx = (jplus + jminus) / 2
    jy = (jplus - jminus) / 2j
    jz = np.diag(mvals).astype(complex)
    return Su2Irrep(j, (-1j * jx, -1j * jy, -1j * jz))


def casimir_matrix(rep: Su2Irrep) -> np.ndarray:
    """-sum X_i^2, equal to j(j+1) times the identity."""
    x1, x2, x3 = rep.generators
    return -(x1 @ x1 + x2 @ x2 + x3 @ x3)


def decompose_induced_bundle(h_weight: int, j_max: float) -> HomogeneousBundle:
    j_max = _check_half_integer(j_max, "truncation")
    h_weight = int(h_weight)
    j_min = abs(h_weight) / 2
    if j_max < j_min:
        raise ValueError(f"truncation {j_max} lies below the minimal sector {j_min}")
    sectors = []
    j = j_min
    while j <= j_max + 1e-12:
        sectors.append((j, 1))
        j += 1
    return HomogeneousBundle(h_weight, j_max, tuple(sectors))


def connection_laplacian_spectrum(bundle: HomogeneousBundle) -> Spectrum:
    """Canonical connection laplacian: sectorwise j(j+1) - w^2/4, multiplicity 2j+1."""
    w = bundle.h_weight
    pairs = []
    for j, mult in bundle.sector_list:
        value = j * (j + 1) - w * w / 4
        pairs.append((value, mult * int(round(2 * j + 1))))
    return Spectrum.from_pairs(pairs)


def dirac_square_spectrum_symmetric(j_max: float) -> Spectrum:
    """Squared Dirac spectrum of the full spinor bundle on the unit 2-sphere.

    Each half-spinor bundle (weights +1 and -1) contributes the sectors
    j = k + 1/2 with eigenvalue j(j+1) + kappa/8 = (k+1)^2, giving total
    multiplicity 4(k+1).
    """
    j_max = _check_half_integer(j_max, "truncation")
    if j_max < 0.5:
        raise ValueError("truncation must reach the lowest spinor sector j = 1/2")
    pairs = []
    k = 0
    while k + 0.5 <= j_max + 1e-12:
        j = k + 0.5
        value = j * (j + 1) + SPHERE_CURVATURE / 8
        pairs.append((value, 2 * int(round(2 * j + 1))))
        k += 1
    return Spectrum.from_pairs(pairs)


def cubic_dirac_square(rep: Su2Irrep, shift: float) -> GradedMatrix:
    """Casimir plus a scalar: the square of a cubic-type Dirac operator."""
    return GradedMatrix(casimir_matrix(rep) + shift * np.eye(rep.dim))


def _as_square_list(nablas) -> list[np.ndarray]:
    mats = [asarray(m) for m in nablas]
    if not mats:
        raise ValueError("need at least one covariant derivative")
    d = mats[0].shape[0]
    for m in mats:
        if m.shape != (d, d):
            raise DimensionMismatch("covariant derivatives must share one dimension")
    return mats


def verify_commutator_lemma(nablas) -> float:
    """Residual of [sum_i nabla_i nabla_i, sum_j nabla_j] = sum_ij (R(i,j) nabla_i + nabla_i R(i,j)).

    With R(i,j) = [nabla_i, nabla_j] this is an exact operator identity, so
    the residual is pure floating-point noise for any input family.
    """
    mats = _as_square_list(nablas)
    neg_lap = sum(m @ m for m in mats)  # -laplacian
    grad_sum = sum(mats)
    lhs = commutator(neg_lap, grad_sum)
    rhs = np.zeros_like(lhs)
    for mi in mats:
        for mj in mats:
            r = commutator(mi, mj)
            rhs += r @ mi + mi @ r
    return opnorm(lhs - rhs)


def tensor_laplacian_check(nabla_s, nabla_e) -> float:
    """Residual of the tensor-laplacian expansion.

    The laplacian of nabla_i = nabla_i^S (x) 1 + 1 (x) nabla_i^E must equal
    lap^S (x) 1 - 2 sum_i nabla_i^S (x) nabla_i^E + 1 (x) lap^E where each
    laplacian is -sum_i nabla_i nabla_i.
    """
    ms = _as_square_list(nabla_s)
    me = _as_square_list(nabla_e)
    if len(ms) != len(me):
        raise DimensionMismatch("derivative lists must have equal length")
    ds, de = ms[0].shape[0], me[0].shape[0]
    eye_s, eye_e = np.eye(ds), np.eye(de)
    total = [np.kron(a, eye_e) + np.kron(eye_s, b) for a, b in zip(ms, me)]
    lap_total = -sum(m @ m for m in total)
    lap_s = -sum(m @ m for m in ms)
    lap_e = -sum(m @ m for m in me)
    cross = sum(np.kron(a, b) for a, b in zip(ms, me))
    expansion = np.kron(lap_s, eye_e) - 2 * cross + np.kron(eye_s, lap_e)
    return opnorm(lap_total - expansion)


def bochner_curvature_term(nablas, cliff) -> GradedMatrix:
    """Curvature endomorphism (1/2) sum_jk c(e_j) c(e_k) R(j,k) with R(j,k) = [nabla_j, nabla_k].

    ``cliff`` is a CliffordRep or TwistedAction whose action matrices live on
    the same space as the covariant derivatives.
    """
    mats = _as_square_list(nablas)
    action = getattr(cliff, "action_matrices", None) or getattr(cliff, "gammas")
    cs = [asarray(c) for c in action]
    if len(cs) != len(mats):
        raise DimensionMismatch("need one Clifford generator per covariant derivative")
    if cs[0].shape != mats[0].shape:
        raise DimensionMismatch("Clifford action and derivatives act on different spaces")
    out = np.zeros_like(mats[0])
    for j, (cj, nj) in enumerate(zip(cs, mats)):
        for k, (ck, nk) in enumerate(zip(cs, mats)):
            if j == k:
                continue
            out += cj @ ck @ commutator(nj, nk)
    return GradedMatrix(out / 2)


def sobolev_norm(a, n: int, derivations: Sequence) -> float:
    """Sum of operator norms of all iterated commutators up to length n.

    The derivations act by commutator, d_i(a) = [X_i, a]; the empty word
    contributes the plain operator norm.
    """
    if n < 0:
        raise ValueError("order must be nonnegative")
    if n > SOBOLEV_ORDER_CAP:
        raise ValueError(f"order capped at {SOBOLEV_ORDER_CAP}")
    xs = [asarray(x) for x in derivations]
    m = asarray(a)
    total = opnorm(m)
    level = [m]
    for _ in range(n):
        nxt = []
        for w in level:
            for x in xs:
                c = x @ w - w @ x
                nxt.append(c)
                total += opnorm(c)
        level = nxt
    return float(total)


def smoothness_constant(
    action,
    n: int,
    p: int,
    derivations: Sequence,
    samples: int,
    seed: int,
) -> float:
    """Empirical smoothness constant sup ||L(xi)||_n / ||xi||_(n+p).

    ``action`` is a Superoperator (or any object with ``apply`` and ``dim``).
    Samples are complex Gaussian matrices with per-sample derived seeds;
    zero-norm draws are rejected and redrawn.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    dim = action.dim
    best = 0.0
    for i in range(samples):
        rng = sampling.generator(seed, i)
        xi = sampling.random_matrix(rng, dim)
        attempts = 0
        while opnorm(xi) < 1e-14:
            attempts += 1
            xi = sampling.random_matrix(sampling.generator(seed, i, attempts), dim)
        num = sobolev_norm(action.apply(xi), n, derivations)
        den = sobolev_norm(xi, n + p, derivations)
        best = max(best, num / den)
    return float(best)
