import numpy as np
import pytest
from scipy.linalg import expm as matrix_exp

from ncg import sampling
from ncg.fock import (
    ToyFockModel,
    adaptedness_residual,
    adjoint_symmetry_residual,
    convergence_study,
    exp_vector_inner,
    full_flow,
    one_slot_map,
    slot_unitary,
    structure_maps,
    structure_relation_residual,
    vacuum_compression,
    vacuum_dilation_error,
)
from ncg.linalg import DimensionMismatch, NotHermitianError, opnorm
from ncg.qds import is_cp, lindblad_generator

SIGMA3 = np.diag([1.0, -1.0]).astype(complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)


class TestExpVectorInner:
    def test_vacuum_overlap(self):
        assert exp_vector_inner([0, 0], [0, 0]) == pytest.approx(1.0)

    def test_euler(self):
        assert exp_vector_inner([1.0], [1j * np.pi]) == pytest.approx(-1.0)

    def test_gram_matrix_psd(self):
        for i in range(5):
            u = sampling.generator(81, i).normal(size=3) + 1j * sampling.generator(82, i).normal(size=3)
            gram = np.array(
                [
                    [exp_vector_inner(a, b) for b in (np.zeros(3), u)]
                    for a in (np.zeros(3), u)
                ]
            )
            assert np.min(np.linalg.eigvalsh(gram)) >= -1e-12

    def test_rejects_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            exp_vector_inner([0.0], [0.0, 0.0])


class TestSlotUnitary:
    def test_trivial_interaction(self):
        v = slot_unitary(np.zeros((2, 2)), [], 0.5)
        assert np.allclose(v, np.eye(2))

    def test_pure_hamiltonian(self):
        v = slot_unitary(SIGMA3, [], 0.3)
        assert np.allclose(v, matrix_exp(-0.3j * SIGMA3))

    @pytest.mark.parametrize("dt", [1e-1, 1e-2, 1e-3])
    def test_unitarity(self, dt):
        rng = sampling.generator(83)
        hm = sampling.random_hermitian(rng, 2)
        l = sampling.random_matrix(rng, 2)
        v = slot_unitary(hm, [l], dt)
        assert opnorm(v @ v.conj().T - np.eye(4)) <= 1e-10

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            slot_unitary(SIGMA_MINUS, [], 0.1)


class TestOneSlotMap:
    def test_unital(self):
        phi = one_slot_map(SIGMA3, [SIGMA_MINUS], 0.25)
        assert opnorm(phi.apply(np.eye(2)) - np.eye(2)) <= 1e-13

    def test_cp_even_at_large_step(self):
        phi = one_slot_map(np.zeros((2, 2)), [SIGMA_MINUS], 1.0)
        ok, mn = is_cp(phi, 1e-9)
        assert ok, mn

    def test_generator_limit_rate(self):
        gen = lindblad_generator(SIGMA3, [SIGMA_MINUS])
        errs = []
        for dt in (1e-2, 1e-3, 1e-4):
            phi = one_slot_map(SIGMA3, [SIGMA_MINUS], dt)
            errs.append(opnorm((phi.rep - np.eye(4)) / dt - gen.rep))
        assert errs[0] > errs[1] > errs[2]
        # bounded by C sqrt(dt) with a modest constant
        for dt, err in zip((1e-2, 1e-3, 1e-4), errs):
            assert err <= 10.0 * np.sqrt(dt)


class TestVacuumDilation:
    def test_pure_hamiltonian_is_exact(self):
        for n in (1, 7, 64):
            assert vacuum_dilation_error(SIGMA3, [], 1.0, n) <= 1e-10

    def test_time_zero(self):
        assert vacuum_dilation_error(SIGMA3, [SIGMA_MINUS], 0.0, 4) == 0.0

    def test_first_order_halving(self):
        e1024 = vacuum_dilation_error(SIGMA3, [SIGMA_MINUS], 1.0, 1024)
        e2048 = vacuum_dilation_error(SIGMA3, [SIGMA_MINUS], 1.0, 2048)
        assert e2048 <= 0.5 * e1024 + 1e-6

    def test_convergence_study_order(self):
        study = convergence_study(SIGMA3, [SIGMA_MINUS], 1.0, [2**k for k in range(7, 13)])
        assert study["order"] >= 0.9
        assert len(study["rows"]) == 6


class TestFullFlow:
    def model(self):
        return ToyFockModel(2, 1, 6, 1.0 / 6)

    def test_initial_condition(self):
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        js = full_flow(self.model(), SIGMA3, [SIGMA_MINUS], x)
        assert np.allclose(js[0], np.kron(x, np.eye(64)))
        assert len(js) == 7

    def test_star_homomorphism(self):
        rng = sampling.generator(84)
        x = sampling.random_matrix(rng, 2)
        y = sampling.random_matrix(rng, 2)
        m = self.model()
        jx = full_flow(m, SIGMA3, [SIGMA_MINUS], x)
        jy = full_flow(m, SIGMA3, [SIGMA_MINUS], y)
        jxy = full_flow(m, SIGMA3, [SIGMA_MINUS], x @ y)
        jxs = full_flow(m, SIGMA3, [SIGMA_MINUS], x.conj().T)
        for k in range(m.slots + 1):
            assert opnorm(jxy[k] - jx[k] @ jy[k]) <= 1e-9
            assert opnorm(jxs[k] - jx[k].conj().T) <= 1e-9

    def test_adaptedness(self):
        m = self.model()
        x = sampling.random_hermitian(sampling.generator(85), 2)
        js = full_flow(m, SIGMA3, [SIGMA_MINUS], x)
        for k in range(m.slots + 1):
            assert adaptedness_residual(js[k], m, k) <= 1e-9

    def test_vacuum_matrix_elements_match_iterated_map(self):
        m = self.model()
        x = sampling.random_matrix(sampling.generator(86), 2)
        js = full_flow(m, SIGMA3, [SIGMA_MINUS], x)
        phi = one_slot_map(SIGMA3, [SIGMA_MINUS], m.dt)
        iterated = x
        for _ in range(m.slots):
            iterated = phi.apply(iterated)
        assert opnorm(vacuum_compression(js[m.slots], m) - iterated) <= 1e-10

    def test_size_cap(self):
        big = ToyFockModel(2, 1, 12, 0.1)
        with pytest.raises(ValueError, match="cap"):
            full_flow(big, SIGMA3, [SIGMA_MINUS], np.eye(2))


class TestStructureMaps:
    def test_corner_is_lindblad_generator(self):
        sm = structure_maps(SIGMA3, [SIGMA_MINUS])
        gen = lindblad_generator(SIGMA3, [SIGMA_MINUS])
        assert opnorm(sm[0, 0].rep - gen.rep) <= 1e-12

    def test_relation_and_adjoint_symmetry_on_draws(self):
        worst_rel = worst_adj = 0.0
        for i in range(100):
            rng = sampling.generator(87, i)
            n = int(rng.integers(2, 5))
            hm = sampling.random_hermitian(rng, n)
            ls = [sampling.random_matrix(rng, n) for _ in range(int(rng.integers(1, 3)))]
            sm = structure_maps(hm, ls)
            x = sampling.random_matrix(rng, n)
            y = sampling.random_matrix(rng, n)
            worst_rel = max(worst_rel, structure_relation_residual(sm, x, y))
            worst_adj = max(worst_adj, adjoint_symmetry_residual(sm, x))
        assert worst_rel <= 1e-10
        assert worst_adj <= 1e-10

    def test_derivation_defect_matches_commutator_product(self):
        # L(xy) - L(x)y - x L(y) = sum_k [L_k*, x][y, L_k] for the GKSL corner
        rng = sampling.generator(88)
        hm = sampling.random_hermitian(rng, 3)
        ls = [sampling.random_matrix(rng, 3)]
        sm = structure_maps(hm, ls)
        x, y = sampling.random_matrix(rng, 3), sampling.random_matrix(rng, 3)
        gen = sm[0, 0]
        defect = gen.apply(x @ y) - gen.apply(x) @ y - x @ gen.apply(y)
        lk = ls[0]
        product = (lk.conj().T @ x - x @ lk.conj().T) @ (y @ lk - lk @ y)
        assert opnorm(defect - product) <= 1e-12

    def test_no_noise_reduces_to_hamiltonian_derivation(self):
        sm = structure_maps(SIGMA3, [])
        assert sm.noise_dim == 0
        x = np.array([[1, 2], [3, 4]], dtype=complex)
        assert np.allclose(sm[0, 0].apply(x), 1j * (SIGMA3 @ x - x @ SIGMA3))

    def test_gauge_corner_vanishes(self):
        sm = structure_maps(SIGMA3, [SIGMA_MINUS])
        assert opnorm(sm[1, 1].rep) == 0.0
