import json

import numpy as np
import pytest

from ncg import sampling
from ncg.linalg import GradedMatrix, GradingError, NotHermitianError, asarray, opnorm
from ncg.triples import (
    FiniteSpectralTriple,
    perturb,
    product,
    triple_from_json,
    triple_to_json,
    validate,
)

SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.diag([1.0, -1.0]).astype(complex)


def even_qubit_triple():
    return FiniteSpectralTriple.build(
        algebra_basis=[np.eye(2), SIGMA3],
        dirac=GradedMatrix(SIGMA1, grading=SIGMA3),
        grading=SIGMA3,
    )


def finite_triple(dim, seed=0):
    d = sampling.random_hermitian(sampling.generator(seed), dim)
    return FiniteSpectralTriple.build(algebra_basis=[np.eye(dim)], dirac=d / max(opnorm(d), 1e-3))


class TestValidate:
    def test_good_triple_passes(self):
        report = validate(even_qubit_triple())
        assert report.passed
        names = {c.name for c in report}
        assert "grading_anticommutes_dirac" in names

    def test_commuting_grading_fails_with_residual_two(self):
        t = FiniteSpectralTriple.build(
            algebra_basis=[np.eye(2)], dirac=SIGMA3, grading=SIGMA3
        )
        report = validate(t)
        assert not report.passed
        assert report["grading_anticommutes_dirac"].residual == pytest.approx(2.0)

    def test_non_hermitian_dirac(self):
        e12 = np.array([[0, 1], [0, 0]], dtype=complex)
        report = validate(FiniteSpectralTriple.build(algebra_basis=[np.eye(2)], dirac=e12))
        assert report["dirac_selfadjoint"].residual == pytest.approx(1.0)
        assert not report.passed

    def test_report_is_total(self):
        # several failures at once, all reported
        e12 = np.array([[0, 1], [0, 0]], dtype=complex)
        t = FiniteSpectralTriple.build(
            algebra_basis=[SIGMA1 + 1j * np.eye(2)], dirac=e12, grading=SIGMA3
        )
        report = validate(t)
        failing = [c.name for c in report if not c.passed]
        assert len(failing) >= 3

    def test_first_order_condition(self):
        # base {I, gamma}: [D, gamma] = 2 D gamma is odd, commutators with the
        # diagonal algebra vanish only if the algebra is scalar on each block.
        t = FiniteSpectralTriple.build(
            algebra_basis=[np.eye(2), SIGMA3],
            dirac=GradedMatrix(SIGMA1, grading=SIGMA3),
            grading=SIGMA3,
            base_indices=[0],
        )
        report = validate(t)
        assert report["first_order_condition"].residual <= 1e-12

    def test_closure_check_is_optional(self):
        t = even_qubit_triple()
        assert "dirac_commutator_closure" not in {c.name for c in validate(t)}
        report = validate(t, closure_check=True)
        # [D, sigma3]^2 is proportional to the identity, inside the span
        assert report["dirac_commutator_closure"].residual <= 1e-10


class TestProduct:
    def test_square_decomposition(self):
        tm, tf = even_qubit_triple(), finite_triple(3)
        prod = product(tm, tf)
        d = asarray(prod.dirac)
        dm, df = asarray(tm.dirac), asarray(tf.dirac)
        residual = opnorm(d @ d - np.kron(dm @ dm, np.eye(3)) - np.kron(np.eye(2), df @ df))
        assert residual <= 1e-12

    def test_zero_finite_dirac_multiplies_spectrum(self):
        tf = FiniteSpectralTriple.build(algebra_basis=[np.eye(3)], dirac=np.zeros((3, 3)))
        prod = product(even_qubit_triple(), tf)
        w = np.linalg.eigvalsh(asarray(prod.dirac))
        wm = np.linalg.eigvalsh(SIGMA1)
        assert np.allclose(w, np.repeat(wm, 3))

    def test_order_symmetry_of_squared_spectra(self):
        tm, tf = even_qubit_triple(), finite_triple(3, seed=2)
        d1 = asarray(product(tm, tf).dirac)
        # swapped roles: tf has no grading, so give it the trivial one on dim 3? Not
        # possible for odd dims; swap with another even triple instead.
        tm2 = FiniteSpectralTriple.build(
            algebra_basis=[np.eye(2)],
            dirac=GradedMatrix(SIGMA2, grading=SIGMA3),
            grading=SIGMA3,
        )
        a = asarray(product(tm, tm2).dirac)
        b = asarray(product(tm2, tm).dirac)
        assert np.allclose(np.linalg.eigvalsh(a @ a), np.linalg.eigvalsh(b @ b), atol=1e-10)

    def test_product_of_valid_triples_validates(self):
        tm = even_qubit_triple()
        tf = FiniteSpectralTriple.build(
            algebra_basis=[np.eye(2)],
            dirac=GradedMatrix(SIGMA2, grading=SIGMA3),
            grading=SIGMA3,
        )
        assert validate(product(tm, tf)).passed

    def test_requires_grading_on_first_factor(self):
        with pytest.raises(GradingError):
            product(finite_triple(2), even_qubit_triple())

    def test_real_structures_combine_componentwise(self):
        tm = FiniteSpectralTriple.build(
            algebra_basis=[np.eye(2)],
            dirac=GradedMatrix(SIGMA1, grading=SIGMA3),
            grading=SIGMA3,
            real_structure=SIGMA2,
        )
        tf = FiniteSpectralTriple.build(
            algebra_basis=[np.eye(2)], dirac=SIGMA1, real_structure=np.eye(2)
        )
        prod = product(tm, tf)
        assert np.allclose(prod.real_structure, np.kron(SIGMA2, np.eye(2)))
        # one missing real structure drops it from the product
        tf_bare = finite_triple(2)
        assert product(tm, tf_bare).real_structure is None

    def test_embedding_is_isometric(self):
        rng = sampling.generator(21)
        a = sampling.random_matrix(rng, 3)
        assert opnorm(np.kron(np.eye(4), a)) == pytest.approx(opnorm(a), rel=1e-12)


class TestPerturb:
    def test_zero_perturbation(self):
        t = even_qubit_triple()
        t2 = perturb(t, np.zeros((2, 2)))
        assert np.array_equal(asarray(t2.dirac), asarray(t.dirac))

    def test_odd_perturbation_keeps_anticommutation(self):
        t2 = perturb(even_qubit_triple(), SIGMA2)
        assert validate(t2).passed

    def test_rejects_even_perturbation(self):
        with pytest.raises(GradingError):
            perturb(even_qubit_triple(), SIGMA3)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            perturb(even_qubit_triple(), np.array([[0, 1], [0, 0]], dtype=complex))


class TestJson:
    def test_roundtrip(self):
        t = FiniteSpectralTriple.build(
            algebra_basis=[np.eye(2), SIGMA3],
            dirac=GradedMatrix(SIGMA1, grading=SIGMA3),
            grading=SIGMA3,
            real_structure=SIGMA2,
            base_indices=[0],
        )
        doc = json.dumps(triple_to_json(t))
        t2 = triple_from_json(doc)
        assert t2.hilbert_dim == 2
        assert np.allclose(asarray(t2.dirac), SIGMA1)
        assert np.allclose(t2.grading, SIGMA3)
        assert np.allclose(t2.real_structure, SIGMA2)
        assert t2.base_indices == (0,)
        assert validate(t2).passed

    def test_missing_fields(self):
        with pytest.raises(ValueError, match="missing"):
            triple_from_json({"hilbert_dim": 2})

    def test_malformed_matrix(self):
        with pytest.raises(ValueError):
            triple_from_json(
                {"hilbert_dim": 1, "algebra_basis": [[[1.0]]], "D": [[[0.0]]]}
            )
