"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line (run with ``pytest -s`` to see them
on passing runs) and enforces the stated tolerance and time budget.
"""

import time

import numpy as np
import pytest
from scipy.linalg import expm as matrix_exp

from ncg import sampling
from ncg.clifford import build_clifford, commutant, twist
from ncg.dirichlet import QuadraticForm, dirichlet_check, standard_lipschitz_family
from ncg.fock import (
    ToyFockModel,
    adjoint_symmetry_residual,
    convergence_study,
    full_flow,
    structure_maps,
    structure_relation_residual,
)
from ncg.homogeneous import (
    dirac_square_spectrum_symmetric,
    smoothness_constant,
    su2_irrep,
    tensor_laplacian_check,
    verify_commutator_lemma,
)
from ncg.linalg import asarray, opnorm
from ncg.qds import (
    check_covariance,
    endomorphism_laplacian_generator,
    evolve,
    is_cp,
    kraus_heat_semigroup,
    transpose_map,
)
from ncg.triples import FiniteSpectralTriple, product
from ncg.linalg import GradedMatrix

SIGMA3 = np.diag([1.0, -1.0]).astype(complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)


def report(number, name, passed, detail, budget_s, elapsed):
    verdict = "PASS" if passed else "FAIL"
    print(f"ACCEPTANCE {number:2d} {name}: {verdict} ({detail}, {elapsed:.2f}s/{budget_s:.0f}s)")
    assert passed, f"criterion {number} ({name}): {detail}"
    assert elapsed < budget_s, f"criterion {number} exceeded {budget_s}s budget ({elapsed:.1f}s)"


def test_01_sphere_dirac_squared_spectrum():
    start = time.perf_counter()
    spec = dirac_square_spectrum_symmetric(10.5)
    worst = 0.0
    for k in range(11):
        value, mult = spec.entries[k]
        worst = max(worst, abs(value - (k + 1) ** 2), abs(mult - 4 * (k + 1)))
    elapsed = time.perf_counter() - start
    report(1, "sphere_dirac_squared_spectrum", worst <= 1e-10, f"max residual {worst:.2e}", 1, elapsed)


def test_02_product_triple_decomposition():
    start = time.perf_counter()
    worst = 0.0
    for i in range(100):
        rng = sampling.generator(2024, i)
        dim_m = int(rng.choice([2, 4, 6, 8]))
        dim_f = int(rng.integers(1, 9))
        gamma = np.diag(np.where(np.arange(dim_m) < dim_m // 2, 1.0, -1.0)).astype(complex)
        dm = sampling.random_odd_hermitian(rng, gamma)
        dm = dm / max(opnorm(dm), 1e-3)
        df = sampling.random_hermitian(rng, dim_f)
        df = df / max(opnorm(df), 1e-3)
        tm = FiniteSpectralTriple(
            dim_m,
            (GradedMatrix(np.eye(dim_m, dtype=complex)),),
            GradedMatrix(dm, grading=gamma),
            gamma,
        )
        tf = FiniteSpectralTriple(
            dim_f, (GradedMatrix(np.eye(dim_f, dtype=complex)),), GradedMatrix(df)
        )
        d = asarray(product(tm, tf).dirac)
        res = opnorm(
            d @ d - np.kron(dm @ dm, np.eye(dim_f)) - np.kron(np.eye(dim_m), df @ df)
        )
        worst = max(worst, res)
    elapsed = time.perf_counter() - start
    report(2, "product_triple_decomposition", worst <= 1e-12, f"max residual {worst:.2e}", 5, elapsed)


def test_03_commutant_theorem():
    start = time.perf_counter()
    mismatches = []
    for n in (2, 4):
        for dim_w in (1, 2, 3):
            basis = commutant(twist(build_clifford(n), dim_w).action_matrices)
            if len(basis) != dim_w * dim_w:
                mismatches.append((n, dim_w, len(basis)))
    elapsed = time.perf_counter() - start
    report(3, "commutant_theorem", not mismatches, f"mismatches {mismatches}", 10, elapsed)


def test_04_cp_battery():
    start = time.perf_counter()
    worst = 0.0
    for i in range(50):
        rng = sampling.generator(4096, i)
        dim = int(rng.integers(2, 7))
        dsq = sampling.random_psd(rng, dim, scale=2.0)
        for t in (0.1, 1.0, 10.0):
            _, mn = is_cp(kraus_heat_semigroup(dsq, t), 1e-9)
            worst = max(worst, -mn)
    _, mn_control = is_cp(transpose_map(2), 1e-9)
    control_ok = abs(mn_control + 1.0) <= 1e-9
    elapsed = time.perf_counter() - start
    report(
        4,
        "cp_battery",
        worst <= 1e-9 and control_ok,
        f"worst Choi deficit {worst:.2e}, transpose min eig {mn_control:+.9f}",
        30,
        elapsed,
    )


def test_05_conservativity():
    start = time.perf_counter()
    worst_unital = worst_cp = 0.0
    for j in (0.5, 1.0, 1.5):
        rep = su2_irrep(j)
        gen = endomorphism_laplacian_generator([1j * x for x in rep.generators])
        eye = np.eye(rep.dim)
        for t in (0.1, 1.0, 10.0):
            tt = evolve(gen, t)
            worst_unital = max(worst_unital, opnorm(tt.apply(eye) - eye))
            _, mn = is_cp(tt, 1e-9)
            worst_cp = max(worst_cp, -min(mn, 0.0))
    elapsed = time.perf_counter() - start
    report(
        5,
        "conservativity",
        worst_unital <= 1e-9 and worst_cp <= 1e-9,
        f"unitality {worst_unital:.2e}, Choi deficit {worst_cp:.2e}",
        10,
        elapsed,
    )


def test_06_dirichlet_inequality():
    start = time.perf_counter()
    worst = -np.inf
    for n_amp in (1, 2, 3):
        for block in range(5):
            rng = sampling.generator(6000 + n_amp, block)
            dim = int(rng.integers(2, 7))
            form = QuadraticForm.from_generator(sampling.random_psd(rng, dim, scale=2.0))
            if n_amp > 1:
                form = form.amplified(n_amp)
            fns = standard_lipschitz_family(sampling.generator(6100 + n_amp, block), random_fns=1)
            worst = max(
                worst,
                dirichlet_check(form, fns, 200, sampling.derive_seed(6200 + n_amp, block)),
            )
    elapsed = time.perf_counter() - start
    report(6, "dirichlet_inequality", worst <= 1e-9, f"max violation {worst:+.2e} over 3000 samples", 60, elapsed)


def test_07_covariance():
    start = time.perf_counter()
    worst = 0.0
    for j in (0.5, 1.0, 1.5):
        rep = su2_irrep(j)
        gen = endomorphism_laplacian_generator([1j * x for x in rep.generators])
        unitaries = []
        for i in range(20):
            coeffs = sampling.generator(7000, int(2 * j), i).normal(size=3)
            unitaries.append(matrix_exp(sum(c * x for c, x in zip(coeffs, rep.generators))))
        worst = max(worst, check_covariance(gen, unitaries))
    elapsed = time.perf_counter() - start
    report(7, "covariance", worst <= 1e-9, f"max residual {worst:.2e}", 5, elapsed)


def test_08_exact_operator_identities():
    start = time.perf_counter()
    worst = 0.0
    spins = (0.5, 1.0, 1.5, 2.0)
    for j in spins:
        worst = max(worst, verify_commutator_lemma(su2_irrep(j).generators))
    for js, je in ((0.5, 0.5), (0.5, 1.0), (1.0, 1.5), (1.5, 2.0)):
        worst = max(
            worst, tensor_laplacian_check(su2_irrep(js).generators, su2_irrep(je).generators)
        )
    elapsed = time.perf_counter() - start
    report(8, "exact_operator_identities", worst <= 1e-10, f"max residual {worst:.2e}", 5, elapsed)


def test_09_dilation_convergence():
    start = time.perf_counter()
    study = convergence_study(SIGMA3, [SIGMA_MINUS], 1.0, [2**k for k in range(7, 13)])
    order = study["order"]

    model = ToyFockModel(2, 1, 6, 1.0 / 6)
    worst_hom = 0.0
    for i in range(5):
        rng = sampling.generator(9000, i)
        x = sampling.random_matrix(rng, 2)
        y = sampling.random_matrix(rng, 2)
        jx = full_flow(model, SIGMA3, [SIGMA_MINUS], x)
        jy = full_flow(model, SIGMA3, [SIGMA_MINUS], y)
        jxy = full_flow(model, SIGMA3, [SIGMA_MINUS], x @ y)
        for k in range(model.slots + 1):
            worst_hom = max(worst_hom, opnorm(jxy[k] - jx[k] @ jy[k]))
    elapsed = time.perf_counter() - start
    report(
        9,
        "dilation_convergence",
        order >= 0.9 and worst_hom <= 1e-9,
        f"order {order:.3f}, homomorphism residual {worst_hom:.2e}",
        120,
        elapsed,
    )


def test_10_structure_relations():
    start = time.perf_counter()
    worst_rel = worst_adj = 0.0
    for i in range(100):
        rng = sampling.generator(10000, i)
        n = int(rng.integers(2, 5))
        hm = sampling.random_hermitian(rng, n)
        ls = [sampling.random_matrix(rng, n) for _ in range(int(rng.integers(1, 3)))]
        sm = structure_maps(hm, ls)
        x = sampling.random_matrix(rng, n)
        y = sampling.random_matrix(rng, n)
        worst_rel = max(worst_rel, structure_relation_residual(sm, x, y))
        worst_adj = max(worst_adj, adjoint_symmetry_residual(sm, x))
    elapsed = time.perf_counter() - start
    report(
        10,
        "structure_relations",
        worst_rel <= 1e-10 and worst_adj <= 1e-10,
        f"relation {worst_rel:.2e}, adjoint {worst_adj:.2e}",
        10,
        elapsed,
    )


def test_11_smoothness_constants():
    start = time.perf_counter()
    rep = su2_irrep(0.5)
    gen = endomorphism_laplacian_generator([1j * x for x in rep.generators])
    c500 = smoothness_constant(gen, 1, 2, rep.generators, 500, 1111)
    c1000 = smoothness_constant(gen, 1, 2, rep.generators, 1000, 1111)
    drift = abs(c1000 - c500) / c500
    ok = np.isfinite(c1000) and c1000 > 0 and drift < 0.05
    elapsed = time.perf_counter() - start
    report(
        11,
        "smoothness_constants",
        ok,
        f"constant {c1000:.6f}, drift {100 * drift:.2f}% on doubling",
        30,
        elapsed,
    )
