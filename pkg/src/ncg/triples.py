"""Finite spectral triples: validation, graded products, Dirac perturbations.

A triple is stored concretely: the algebra is an explicit matrix basis
(adjoint-closed, containing the identity in its span) and membership tests
are span-projection residuals.  The optional real structure is an
anti-unitary J = J0 ∘ (entrywise conjugation), stored through its unitary
part J0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DimensionMismatch,
    GradedMatrix,
    GradingError,
    NotHermitianError,
    asarray,
    anticommutator,
    commutator,
    opnorm,
    vec,
)

__all__ = [
    "FiniteSpectralTriple",
    "CheckResult",
    "ValidationReport",
    "validate",
    "product",
    "perturb",
    "triple_to_json",
    "triple_from_json",
    "complex_matrix_to_json",
    "complex_matrix_from_json",
]


@dataclass(frozen=True)
class FiniteSpectralTriple:
    hilbert_dim: int
    algebra_basis: tuple[GradedMatrix, ...]
    dirac: GradedMatrix
    grading: np.ndarray | None = None
    real_structure: np.ndarray | None = None  # unitary part J0 of J = J0 . conj
    base_indices: tuple[int, ...] | None = None

    def __post_init__(self):
        d = self.hilbert_dim
        if self.dirac.dim != d:
            raise DimensionMismatch("Dirac operator does not act on the stated space")
        for a in self.algebra_basis:
            if a.dim != d:
                raise DimensionMismatch("algebra element on the wrong space")
        if self.grading is not None:
            g = np.asarray(self.grading, dtype=complex)
            if g.shape != (d, d):
                raise DimensionMismatch("grading on the wrong space")
            object.__setattr__(self, "grading", g)
        if self.real_structure is not None:
            j0 = np.asarray(self.real_structure, dtype=complex)
            if j0.shape != (d, d):
                raise DimensionMismatch("real structure on the wrong space")
            object.__setattr__(self, "real_structure", j0)
        if self.base_indices is not None:
            bad = [i for i in self.base_indices if not 0 <= i < len(self.algebra_basis)]
            if bad:
                raise ValueError(f"base subalgebra indices out of range: {bad}")

    @classmethod
    def build(cls, algebra_basis, dirac, grading=None, real_structure=None, base_indices=None):
        basis = tuple(
            a if isinstance(a, GradedMatrix) else GradedMatrix(np.asarray(a, dtype=complex))
            for a in algebra_basis
        )
        dm = dirac if isinstance(dirac, GradedMatrix) else GradedMatrix(np.asarray(dirac, dtype=complex))
        dim = dm.dim
        return cls(
            hilbert_dim=dim,
            algebra_basis=basis,
            dirac=dm,
            grading=None if grading is None else np.asarray(grading, dtype=complex),
            real_structure=None if real_structure is None else np.asarray(real_structure, dtype=complex),
            base_indices=None if base_indices is None else tuple(base_indices),
        )


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __iter__(self):
        return iter(self.checks)


def _span_projector(basis):
    """Orthonormal column basis (in vec space) of the span of the given matrices."""
    cols = np.column_stack([vec(b) for b in basis])
    q, _ = np.linalg.qr(cols)
    return q


def _span_residual(q, m) -> float:
    v = vec(m)
    return float(np.linalg.norm(v - q @ (q.conj().T @ v)))


def validate(triple: FiniteSpectralTriple, closure_check: bool = False) -> ValidationReport:
    """Run every structural check and report named residuals.

    The report is total: all checks run even when earlier ones fail.  When
    ``closure_check`` is set, also reports how far each [D,a]^2 is from the
    algebra span (an optional regularity property, not a hard invariant for
    generic finite models).
    """
    tol = 1e-10
    d = asarray(triple.dirac)
    checks = [CheckResult("dirac_selfadjoint", opnorm(d - d.conj().T), tol)]

    basis = [asarray(a) for a in triple.algebra_basis]
    q = _span_projector(basis)
    checks.append(
        CheckResult("algebra_adjoint_closed", max(_span_residual(q, a.conj().T) for a in basis), tol)
    )
    checks.append(
        CheckResult("algebra_contains_identity", _span_residual(q, np.eye(triple.hilbert_dim)), tol)
    )

    if triple.grading is not None:
        g = triple.grading
        checks.append(CheckResult("grading_involution", opnorm(g @ g - np.eye(len(g))), 1e-12))
        checks.append(CheckResult("grading_selfadjoint", opnorm(g - g.conj().T), 1e-12))
        checks.append(CheckResult("grading_anticommutes_dirac", opnorm(anticommutator(g, d)), tol))
        checks.append(
            CheckResult("grading_commutes_algebra", max(opnorm(commutator(g, a)) for a in basis), tol)
        )

    if triple.real_structure is not None:
        j0 = triple.real_structure
        checks.append(CheckResult("real_structure_antiunitary", opnorm(j0 @ j0.conj().T - np.eye(len(j0))), tol))
        jj = j0 @ j0.conj()  # J^2 as a linear map
        sq = min(opnorm(jj - np.eye(len(j0))), opnorm(jj + np.eye(len(j0))))
        checks.append(CheckResult("real_structure_squares_to_sign", sq, tol))

    if triple.base_indices:
        base = [basis[i] for i in triple.base_indices]
        res = max(opnorm(commutator(commutator(d, b), a)) for b in base for a in basis)
        checks.append(CheckResult("first_order_condition", res, tol))

    if closure_check:
        res = max(_span_residual(q, commutator(d, a) @ commutator(d, a)) for a in basis)
        checks.append(CheckResult("dirac_commutator_closure", res, tol))

    return ValidationReport(tuple(checks))


def product(tm: FiniteSpectralTriple, tf: FiniteSpectralTriple) -> FiniteSpectralTriple:
    """Graded product: D = D_M (x) 1 + gamma_M (x) D_F, gamma = gamma_M (x) gamma_F.

    The first factor must be even (it supplies the twist); the cross terms of
    D^2 then cancel and D^2 = D_M^2 (x) 1 + 1 (x) D_F^2.
    """
    if tm.grading is None:
        raise GradingError("the first factor of a product must carry a grading")
    dm, df = asarray(tm.dirac), asarray(tf.dirac)
    eye_f = np.eye(tf.hilbert_dim)
    d = np.kron(dm, eye_f) + np.kron(tm.grading, df)
    grading = None
    if tf.grading is not None:
        grading = np.kron(tm.grading, tf.grading)
    basis = tuple(
        GradedMatrix(np.kron(asarray(a), asarray(b)))
        for a in tm.algebra_basis
        for b in tf.algebra_basis
    )
    j0 = None
    if tm.real_structure is not None and tf.real_structure is not None:
        j0 = np.kron(tm.real_structure, tf.real_structure)
    return FiniteSpectralTriple(
        hilbert_dim=tm.hilbert_dim * tf.hilbert_dim,
        algebra_basis=basis,
        dirac=GradedMatrix(d, grading=grading) if grading is not None else GradedMatrix(d),
        grading=grading,
        real_structure=j0,
    )


def perturb(triple: FiniteSpectralTriple, a) -> FiniteSpectralTriple:
    """Fluctuate the Dirac operator by a Hermitian (odd, if graded) endomorphism."""
    m = asarray(a)
    if m.shape != (triple.hilbert_dim, triple.hilbert_dim):
        raise DimensionMismatch("perturbation on the wrong space")
    if opnorm(m - m.conj().T) > 1e-10:
        raise NotHermitianError("perturbation must be Hermitian")
    if triple.grading is not None:
        if opnorm(anticommutator(triple.grading, m)) > 1e-10 * max(1.0, opnorm(m)):
            raise GradingError("perturbation must be odd with respect to the grading")
    d = asarray(triple.dirac) + m
    dirac = GradedMatrix(d, grading=triple.grading) if triple.grading is not None else GradedMatrix(d)
    return FiniteSpectralTriple(
        hilbert_dim=triple.hilbert_dim,
        algebra_basis=triple.algebra_basis,
        dirac=dirac,
        grading=triple.grading,
        real_structure=triple.real_structure,
        base_indices=triple.base_indices,
    )


# --- JSON document form -----------------------------------------------------
#
# {hilbert_dim, algebra_basis: [matrix...], D: matrix, gamma?, J0?, base_indices?}
# with matrices as row-major nested arrays of [re, im] pairs.


def complex_matrix_to_json(m) -> list:
    arr = asarray(m)
    return [[[float(z.real), float(z.imag)] for z in row] for row in arr]


def complex_matrix_from_json(doc) -> np.ndarray:
    try:
        arr = np.asarray(doc, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed complex matrix document: {exc}") from exc
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValueError("complex matrix document must be rows of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def triple_to_json(triple: FiniteSpectralTriple) -> dict:
    doc = {
        "hilbert_dim": triple.hilbert_dim,
        "algebra_basis": [complex_matrix_to_json(a) for a in triple.algebra_basis],
        "D": complex_matrix_to_json(triple.dirac),
    }
    if triple.grading is not None:
        doc["gamma"] = complex_matrix_to_json(triple.grading)
    if triple.real_structure is not None:
        doc["J0"] = complex_matrix_to_json(triple.real_structure)
    if triple.base_indices is not None:
        doc["base_indices"] = list(triple.base_indices)
    return doc


def triple_from_json(doc) -> FiniteSpectralTriple:
    if isinstance(doc, str):
        doc = json.loads(doc)
    missing = {"hilbert_dim", "algebra_basis", "D"} - set(doc)
    if missing:
        raise ValueError(f"triple document missing fields: {sorted(missing)}")
    grading = complex_matrix_from_json(doc["gamma"]) if "gamma" in doc else None
    dirac = complex_matrix_from_json(doc["D"])
    triple = FiniteSpectralTriple(
        hilbert_dim=int(doc["hilbert_dim"]),
        algebra_basis=tuple(
            GradedMatrix(complex_matrix_from_json(a)) for a in doc["algebra_basis"]
        ),
        dirac=GradedMatrix(dirac, grading=grading) if grading is not None else GradedMatrix(dirac),
        grading=grading,
        real_structure=complex_matrix_from_json(doc["J0"]) if "J0" in doc else None,
        base_indices=tuple(doc["base_indices"]) if "base_indices" in doc else None,
    )
    return triple
