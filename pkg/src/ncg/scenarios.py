"""Scenario-driven verification runner.

A scenario is a JSON object {kind, params, seed, tolerances}; a scenario
file holds one object or an array.  Running a batch produces report rows
{check_name, passed, residual, tolerance, params, seed, wall_ms} plus named
artifacts (CSV tables, JSON summaries) as in-memory strings, so the same
runner backs the command line and the HTTP service.

Seeds are mandatory for every kind that samples; identical (scenario, seed)
inputs reproduce the report bit for bit apart from wall_ms.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, ValidationError, model_validator
from scipy.linalg import expm as _matrix_exp

from . import clifford, dirichlet, fock, homogeneous, qds, sampling, triples
from .linalg import GradedMatrix, asarray, opnorm

__all__ = [
    "Scenario",
    "ScenarioError",
    "ReportRow",
    "KIND_ORDER",
    "parse_scenarios",
    "run_scenarios",
    "list_checks",
    "kind_specs",
]


class ScenarioError(ValueError):
    """A scenario file or document failed to parse or validate."""


# --- matrix lexicon ----------------------------------------------------------

_S1 = np.array([[0, 1], [1, 0]], dtype=complex)
_S2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
_S3 = np.array([[1, 0], [0, -1]], dtype=complex)

NAMED_MATRICES = {
    "sigma1": _S1,
    "sigma2": _S2,
    "sigma3": _S3,
    "sigma_x": _S1,
    "sigma_y": _S2,
    "sigma_z": _S3,
    "sigma_plus": np.array([[0, 1], [0, 0]], dtype=complex),
    "sigma_minus": np.array([[0, 0], [1, 0]], dtype=complex),
    "identity2": np.eye(2, dtype=complex),
    "zero2": np.zeros((2, 2), dtype=complex),
}

MatrixSpec = Union[str, list]


def parse_matrix(spec: MatrixSpec) -> np.ndarray:
    if isinstance(spec, str):
        try:
            return NAMED_MATRICES[spec].copy()
        except KeyError:
            raise ScenarioError(
                f"unknown matrix name {spec!r}; known: {sorted(NAMED_MATRICES)}"
            ) from None
    try:
        return triples.complex_matrix_from_json(spec)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


def _spin_from(two_j: Optional[int], irrep_j: Optional[float], default: float) -> float:
    """Spins arrive as a doubled integer two_j, or as an exact half-integer float."""
    if two_j is not None and irrep_j is not None:
        raise ValueError("give two_j or irrep_j, not both")
    if two_j is not None:
        if two_j < 0:
            raise ValueError("two_j must be nonnegative")
        return two_j / 2
    if irrep_j is not None:
        if irrep_j < 0 or abs(2 * irrep_j - round(2 * irrep_j)) > 1e-12:
            raise ValueError(f"irrep_j must be a nonnegative half-integer, got {irrep_j}")
        return round(2 * irrep_j) / 2
    return default


# --- per-kind parameter models ------------------------------------------------


class _Params(BaseModel):
    model_config = ConfigDict(extra="forbid")


class TripleValidateParams(_Params):
    triple: Optional[dict] = None
    triple_file: Optional[str] = None
    closure_check: bool = False

    @model_validator(mode="after")
    def _load(self):
        if (self.triple is None) == (self.triple_file is None):
            raise ValueError("give exactly one of 'triple' or 'triple_file'")
        if self.triple_file is not None:
            path = Path(self.triple_file)
            if not path.is_file():
                raise ValueError(f"triple file not found: {path}")
            self.triple = json.loads(path.read_text())
        triples.triple_from_json(self.triple)  # validate the document shape now
        return self


class ProductCheckParams(_Params):
    pairs: int = Field(100, ge=1, le=10000)
    max_dim_m: int = Field(8, ge=2, le=8)
    max_dim_f: int = Field(8, ge=1, le=8)

    @model_validator(mode="after")
    def _even(self):
        if self.max_dim_m % 2 != 0:
            raise ValueError("max_dim_m must be even (the first factor carries a grading)")
        return self


class CommutantParams(_Params):
    n: int = Field(2, description="number of Clifford generators (even)")
    dim_w: int = Field(1, ge=1, le=6)

    @model_validator(mode="after")
    def _even(self):
        if self.n % 2 != 0 or self.n < 2 or self.n > 6:
            raise ValueError("n must be an even integer in 2..6")
        return self


class SpectrumParams(_Params):
    operator: Literal["dirac_square", "connection"] = "dirac_square"
    h_weight: int = 1
    two_j_max: int = Field(21, ge=0)

    @model_validator(mode="after")
    def _reachable(self):
        if self.operator == "dirac_square" and self.two_j_max < 1:
            raise ValueError("dirac_square needs two_j_max >= 1 (lowest spinor sector)")
        if self.operator == "connection" and self.two_j_max < abs(self.h_weight):
            raise ValueError("two_j_max must reach the minimal sector |h_weight|")
        return self


class QdsBatteryParams(_Params):
    generator: Literal["endomorphism", "lindblad", "kraus_heat"]
    two_j: Optional[int] = None
    irrep_j: Optional[float] = None
    hamiltonian: Optional[MatrixSpec] = None
    lindblads: list[MatrixSpec] = Field(default_factory=list)
    times: list[float] = Field(default_factory=lambda: [0.1, 1.0])
    dim: int = Field(4, ge=1, le=6)
    draws: int = Field(10, ge=1, le=200)
    markov_samples: int = Field(20, ge=1, le=1000)

    @model_validator(mode="after")
    def _check(self):
        _spin_from(self.two_j, self.irrep_j, 0.5)
        if any(t < 0 for t in self.times):
            raise ValueError("times must be nonnegative")
        if self.generator == "lindblad":
            if self.hamiltonian is None:
                raise ValueError("lindblad battery needs a 'hamiltonian'")
            parse_matrix(self.hamiltonian)
            for l in self.lindblads:
                parse_matrix(l)
        return self

    @property
    def spin(self) -> float:
        return _spin_from(self.two_j, self.irrep_j, 0.5)


class DirichletParams(_Params):
    dim: int = Field(4, ge=1, le=6)
    samples: int = Field(200, ge=1, le=100000)
    n_amp: int = Field(1, ge=1, le=dirichlet.AMPLIFICATION_CAP)
    random_fns: int = Field(1, ge=0, le=10)


class CovarianceParams(_Params):
    two_j: Optional[int] = None
    irrep_j: Optional[float] = None
    n_unitaries: int = Field(20, ge=1, le=500)

    @model_validator(mode="after")
    def _check(self):
        _spin_from(self.two_j, self.irrep_j, 0.5)
        return self

    @property
    def spin(self) -> float:
        return _spin_from(self.two_j, self.irrep_j, 0.5)


class SmoothnessParams(_Params):
    two_j: Optional[int] = None
    irrep_j: Optional[float] = None
    order: int = Field(1, ge=0, le=homogeneous.SOBOLEV_ORDER_CAP - 2)
    degree: int = Field(2, ge=0, le=2)
    samples: int = Field(500, ge=2, le=100000)

    @model_validator(mode="after")
    def _check(self):
        _spin_from(self.two_j, self.irrep_j, 0.5)
        return self

    @property
    def spin(self) -> float:
        return _spin_from(self.two_j, self.irrep_j, 0.5)


class DilationParams(_Params):
    hamiltonian: MatrixSpec = "sigma3"
    lindblads: list[MatrixSpec] = Field(default_factory=lambda: ["sigma_minus"])
    t: float = Field(1.0, gt=0)
    n_list: list[int] = Field(default_factory=lambda: [2**k for k in range(7, 13)])
    min_order: float = 0.9
    flow_slots: int = Field(6, ge=1, le=10)
    flow_checks: int = Field(5, ge=1, le=100)

    @model_validator(mode="after")
    def _check(self):
        hm = parse_matrix(self.hamiltonian)
        for l in self.lindblads:
            parse_matrix(l)
        if len(self.n_list) < 2 or any(n < 1 for n in self.n_list):
            raise ValueError("n_list needs at least two positive step counts")
        total = hm.shape[0] * (1 + len(self.lindblads)) ** self.flow_slots
        if total > fock.FULL_FLOW_DIM_CAP:
            raise ValueError(
                f"flow dimension {total} exceeds the cap {fock.FULL_FLOW_DIM_CAP}; "
                "reduce flow_slots"
            )
        return self


KINDS = {
    "triple_validate": TripleValidateParams,
    "product_check": ProductCheckParams,
    "commutant": CommutantParams,
    "spectrum": SpectrumParams,
    "qds_battery": QdsBatteryParams,
    "dirichlet": DirichletParams,
    "covariance": CovarianceParams,
    "smoothness": SmoothnessParams,
    "dilation": DilationParams,
}

KIND_ORDER = list(KINDS)

#: Kinds that draw random samples and therefore require a seed.
SAMPLING_KINDS = {
    "product_check",
    "qds_battery",
    "dirichlet",
    "covariance",
    "smoothness",
    "dilation",
}


class Scenario(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: str
    params: dict = Field(default_factory=dict)
    seed: Optional[int] = None
    tolerances: dict[str, float] = Field(default_factory=dict)
    _parsed_params: object = PrivateAttr(default=None)

    @model_validator(mode="after")
    def _validate(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown scenario kind {self.kind!r}; known: {KIND_ORDER}")
        if self.kind in SAMPLING_KINDS and self.seed is None:
            raise ValueError(f"kind {self.kind!r} samples randomly and requires a seed")
        model = KINDS[self.kind]
        try:
            self._parsed_params = model.model_validate(self.params)
        except ValidationError as exc:
            raise ValueError(f"bad params for kind {self.kind!r}: {exc}") from exc
        return self

    @property
    def parsed_params(self):
        return self._parsed_params


class ReportRow(BaseModel):
    check_name: str
    passed: bool
    residual: float
    tolerance: float
    params: dict
    seed: Optional[int]
    wall_ms: float


def parse_scenarios(doc) -> list[Scenario]:
    """Accept a scenario object, an array of them, or JSON text of either."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"scenario file is not valid JSON: {exc}") from exc
    if isinstance(doc, dict):
        doc = [doc]
    if not isinstance(doc, list):
        raise ScenarioError("scenario document must be an object or an array")
    out = []
    for i, item in enumerate(doc):
        try:
            out.append(Scenario.model_validate(item))
        except (ValidationError, ValueError) as exc:
            raise ScenarioError(f"scenario #{i}: {exc}") from exc
    return out


# --- check collection ----------------------------------------------------------


@dataclass
class _Checks:
    overrides: dict[str, float]
    tol_scale: float
    rows: list = field(default_factory=list)

    def add(self, name: str, residual: float, default_tol: float):
        tol = self.overrides.get(name, default_tol) * self.tol_scale
        self.rows.append((name, float(residual), float(tol)))


# --- runners -------------------------------------------------------------------


def _run_triple_validate(p: TripleValidateParams, seed, checks: _Checks, artifacts, prefix):
    triple = triples.triple_from_json(p.triple)
    report = triples.validate(triple, closure_check=p.closure_check)
    for row in report:
        checks.add(row.name, row.residual, row.tolerance)


def _random_even_triple(rng, dim_m):
    gamma = np.diag(np.where(np.arange(dim_m) < dim_m // 2, 1.0, -1.0)).astype(complex)
    d = sampling.random_odd_hermitian(rng, gamma)
    d = d / max(opnorm(d), 1e-3)
    basis = (GradedMatrix(np.eye(dim_m, dtype=complex)), GradedMatrix(gamma))
    return triples.FiniteSpectralTriple(dim_m, basis, GradedMatrix(d, grading=gamma), gamma)


def _random_finite_triple(rng, dim_f):
    d = sampling.random_hermitian(rng, dim_f)
    d = d / max(opnorm(d), 1e-3)
    return triples.FiniteSpectralTriple(
        dim_f, (GradedMatrix(np.eye(dim_f, dtype=complex)),), GradedMatrix(d)
    )


def _run_product_check(p: ProductCheckParams, seed, checks: _Checks, artifacts, prefix):
    worst_sq = 0.0
    worst_validation = 0.0
    for i in range(p.pairs):
        rng = sampling.generator(seed, i)
        dim_m = int(rng.choice(np.arange(2, p.max_dim_m + 1, 2)))
        dim_f = int(rng.integers(1, p.max_dim_f + 1))
        tm = _random_even_triple(rng, dim_m)
        tf = _random_finite_triple(rng, dim_f)
        prod = triples.product(tm, tf)
        d = asarray(prod.dirac)
        dm, df = asarray(tm.dirac), asarray(tf.dirac)
        res = opnorm(
            d @ d - np.kron(dm @ dm, np.eye(dim_f)) - np.kron(np.eye(dim_m), df @ df)
        )
        worst_sq = max(worst_sq, res)
        report = triples.validate(prod)
        worst_validation = max(worst_validation, max(r.residual for r in report))
    checks.add("product_square_decomposition", worst_sq, 1e-12)
    checks.add("product_triples_valid", worst_validation, 1e-10)


def _run_commutant(p: CommutantParams, seed, checks: _Checks, artifacts, prefix):
    rep = clifford.build_clifford(p.n, "minus")
    action = clifford.twist(rep, p.dim_w)
    basis = clifford.commutant(action.action_matrices)
    expected = p.dim_w * p.dim_w
    checks.add("commutant_dimension", abs(len(basis) - expected), 0.0)
    worst = max(
        opnorm(asarray(x) @ asarray(m) - asarray(m) @ asarray(x))
        for x in basis
        for m in action.action_matrices
    )
    checks.add("commutant_elements_commute", worst, 1e-9)


def _run_spectrum(p: SpectrumParams, seed, checks: _Checks, artifacts, prefix):
    j_max = p.two_j_max / 2
    if p.operator == "dirac_square":
        spec = homogeneous.dirac_square_spectrum_symmetric(j_max)
        worst = 0.0
        for k, (value, mult) in enumerate(spec.entries):
            worst = max(worst, abs(value - (k + 1) ** 2), abs(mult - 4 * (k + 1)))
        checks.add("dirac_square_closed_form", worst, 1e-10)
    else:
        bundle = homogeneous.decompose_induced_bundle(p.h_weight, j_max)
        spec = homogeneous.connection_laplacian_spectrum(bundle)
        min_eig = min(v for v, _ in spec.entries) if spec.entries else 0.0
        checks.add("connection_laplacian_nonnegative", max(0.0, -min_eig), 0.0)
        mirrored = homogeneous.connection_laplacian_spectrum(
            homogeneous.decompose_induced_bundle(-p.h_weight, j_max)
        )
        sym = 0.0 if mirrored.entries == spec.entries else 1.0
        checks.add("weight_sign_symmetry", sym, 0.0)
    artifacts[f"{prefix}_spectrum.csv"] = spec.to_csv()


def _casimir_family(spin):
    rep = homogeneous.su2_irrep(spin)
    return rep, [1j * x for x in rep.generators]


def _run_qds_battery(p: QdsBatteryParams, seed, checks: _Checks, artifacts, prefix):
    if p.generator == "endomorphism":
        rep, bs = _casimir_family(p.spin)
        gen = qds.endomorphism_laplacian_generator(bs)
        eye = np.eye(gen.dim)
        worst_unital = worst_cp = 0.0
        for t in p.times:
            tt = qds.evolve(gen, t)
            worst_unital = max(worst_unital, opnorm(tt.apply(eye) - eye))
            _, mn = qds.is_cp(tt, 1e-9)
            worst_cp = max(worst_cp, -min(mn, 0.0))
        checks.add("conservativity", worst_unital, 1e-9)
        checks.add("complete_positivity", worst_cp, 1e-9)
        one_parameter = [_matrix_exp(x) for x in rep.generators]
        checks.add("covariance", qds.check_covariance(gen, one_parameter), 1e-9)
        checks.add("markov", qds.check_markov(qds.evolve(gen, 1.0), p.markov_samples, seed), 1e-9)
    elif p.generator == "lindblad":
        hm = parse_matrix(p.hamiltonian)
        ls = [parse_matrix(l) for l in p.lindblads]
        gen = qds.lindblad_generator(hm, ls)
        eye = np.eye(gen.dim)
        worst_unital = worst_cp = 0.0
        for t in p.times:
            tt = qds.evolve(gen, t)
            worst_unital = max(worst_unital, opnorm(tt.apply(eye) - eye))
            _, mn = qds.is_cp(tt, 1e-9)
            worst_cp = max(worst_cp, -min(mn, 0.0))
        checks.add("conservativity", worst_unital, 1e-9)
        checks.add("complete_positivity", worst_cp, 1e-9)
        checks.add("markov", qds.check_markov(qds.evolve(gen, 1.0), p.markov_samples, seed), 1e-9)
    else:  # kraus_heat
        worst_cp = worst_contract = worst_sym = 0.0
        for i in range(p.draws):
            rng = sampling.generator(seed, i)
            dsq = sampling.random_psd(rng, p.dim, scale=2.0)
            for t in p.times:
                tt = qds.kraus_heat_semigroup(dsq, t)
                _, mn = qds.is_cp(tt, 1e-9)
                worst_cp = max(worst_cp, -min(mn, 0.0))
                worst_contract = max(worst_contract, opnorm(tt.rep) - 1.0)
                worst_sym = max(worst_sym, opnorm(tt.rep - tt.rep.conj().T))
        checks.add("complete_positivity", worst_cp, 1e-9)
        checks.add("contractivity", max(worst_contract, 0.0), 1e-9)
        checks.add("hs_symmetry", worst_sym, 1e-9)
        _, mn = qds.is_cp(qds.transpose_map(2), 1e-9)
        checks.add("transpose_control", abs(mn + 1.0), 1e-9)


def _run_dirichlet(p: DirichletParams, seed, checks: _Checks, artifacts, prefix):
    rng = sampling.generator(seed, 0)
    dsq = sampling.random_psd(rng, p.dim, scale=2.0)
    form = dirichlet.QuadraticForm.from_generator(dsq)
    fns = dirichlet.standard_lipschitz_family(sampling.generator(seed, 1), p.random_fns)
    checks.add(
        "dirichlet_violation",
        dirichlet.dirichlet_check(form, fns, p.samples, sampling.derive_seed(seed, 2)),
        1e-9,
    )
    if p.n_amp > 1:
        checks.add(
            "complete_dirichlet_violation",
            dirichlet.complete_dirichlet_check(
                form, p.n_amp, fns, max(1, p.samples // 2), sampling.derive_seed(seed, 3)
            ),
            1e-9,
        )
    s = sampling.random_matrix(sampling.generator(seed, 4), p.dim)
    factored = dirichlet.QuadraticForm.from_factor(s)
    worst = 0.0
    for i in range(10):
        x = sampling.random_hermitian(sampling.generator(seed, 5, i), p.dim)
        direct = dirichlet.form_value(factored, x)
        via_norm = np.linalg.norm(s @ x, "fro") ** 2
        worst = max(worst, abs(direct - via_norm))
    checks.add("factorization_consistency", worst, 1e-10)


def _run_covariance(p: CovarianceParams, seed, checks: _Checks, artifacts, prefix):
    rep, bs = _casimir_family(p.spin)
    gen = qds.endomorphism_laplacian_generator(bs)
    unitaries = []
    for i in range(p.n_unitaries):
        rng = sampling.generator(seed, i)
        coeffs = rng.normal(size=3)
        g = sum(c * x for c, x in zip(coeffs, rep.generators))
        unitaries.append(_matrix_exp(g))
    checks.add("covariance_residual", qds.check_covariance(gen, unitaries), 1e-9)


def _run_smoothness(p: SmoothnessParams, seed, checks: _Checks, artifacts, prefix):
    rep, bs = _casimir_family(p.spin)
    gen = qds.endomorphism_laplacian_generator(bs)
    ders = list(rep.generators)
    full = homogeneous.smoothness_constant(gen, p.order, p.degree, ders, p.samples, seed)
    half = homogeneous.smoothness_constant(gen, p.order, p.degree, ders, p.samples // 2, seed)
    checks.add("smoothness_constant_finite", full, 1e6)
    drift = abs(full - half) / max(abs(half), 1e-30)
    checks.add("smoothness_sampling_stability", drift, 0.05)


def _run_dilation(p: DilationParams, seed, checks: _Checks, artifacts, prefix):
    hm = parse_matrix(p.hamiltonian)
    ls = [parse_matrix(l) for l in p.lindblads]
    study = fock.convergence_study(hm, ls, p.t, p.n_list)
    order = study["order"]
    checks.add("dilation_convergence_order", max(0.0, p.min_order - order), 0.0)
    csv_lines = ["N,dt,error"]
    for n, dt, err in study["rows"]:
        csv_lines.append(f"{n},{dt:.15g},{err:.15g}")
    artifacts[f"{prefix}_dilation_convergence.csv"] = "\n".join(csv_lines) + "\n"
    artifacts[f"{prefix}_dilation_summary.json"] = json.dumps(
        {
            "order": None if not np.isfinite(order) else order,
            "loglog_slope": None if not np.isfinite(order) else -order,
            "min_order": p.min_order,
            "rows": [
                {"N": n, "dt": dt, "error": err} for n, dt, err in study["rows"]
            ],
        },
        indent=2,
    )

    n_sys = hm.shape[0]
    model = fock.ToyFockModel(n_sys, len(ls), p.flow_slots, p.t / p.flow_slots)
    worst_hom = worst_adapt = worst_vac = 0.0
    phi = fock.one_slot_map(hm, ls, model.dt)
    for i in range(p.flow_checks):
        rng = sampling.generator(seed, i)
        x = sampling.random_matrix(rng, n_sys)
        y = sampling.random_matrix(rng, n_sys)
        jx = fock.full_flow(model, hm, ls, x)
        jy = fock.full_flow(model, hm, ls, y)
        jxy = fock.full_flow(model, hm, ls, x @ y)
        jxs = fock.full_flow(model, hm, ls, x.conj().T)
        for k in range(model.slots + 1):
            worst_hom = max(
                worst_hom,
                opnorm(jxy[k] - jx[k] @ jy[k]),
                opnorm(jxs[k] - jx[k].conj().T),
            )
            worst_adapt = max(worst_adapt, fock.adaptedness_residual(jx[k], model, k))
        compressed = fock.vacuum_compression(jx[model.slots], model)
        iterated = x
        for _ in range(model.slots):
            iterated = phi.apply(iterated)
        worst_vac = max(worst_vac, opnorm(compressed - iterated))
    checks.add("flow_homomorphism", worst_hom, 1e-9)
    checks.add("flow_adaptedness", worst_adapt, 1e-9)
    checks.add("flow_vacuum_consistency", worst_vac, 1e-10)


_RUNNERS = {
    "triple_validate": _run_triple_validate,
    "product_check": _run_product_check,
    "commutant": _run_commutant,
    "spectrum": _run_spectrum,
    "qds_battery": _run_qds_battery,
    "dirichlet": _run_dirichlet,
    "covariance": _run_covariance,
    "smoothness": _run_smoothness,
    "dilation": _run_dilation,
}

_DESCRIPTIONS = {
    "triple_validate": "Structural checks of a finite spectral triple document.",
    "product_check": "Graded product triples: D^2 block decomposition and validity over random pairs.",
    "commutant": "Commutant dimension of a twisted Clifford action (expects dim_w^2).",
    "spectrum": "Closed-form bundle spectra on the 2-sphere, exported as CSV.",
    "qds_battery": "Complete positivity / conservativity / Markov battery for a semigroup family.",
    "dirichlet": "Lipschitz contraction checks for trace quadratic forms, with amplification.",
    "covariance": "Generator covariance under sampled group unitaries.",
    "smoothness": "Empirical smoothness constants for the Casimir generator.",
    "dilation": "Repeated-interaction dilation: convergence order and flow checks.",
}

_EXAMPLES = {
    "triple_validate": {
        "kind": "triple_validate",
        "params": {
            "triple": {
                "hilbert_dim": 2,
                "algebra_basis": [
                    [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
                    [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-1.0, 0.0]]],
                ],
                "D": [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]],
                "gamma": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-1.0, 0.0]]],
            }
        },
    },
    "product_check": {"kind": "product_check", "seed": 7, "params": {"pairs": 20}},
    "commutant": {"kind": "commutant", "params": {"n": 2, "dim_w": 3}},
    "spectrum": {"kind": "spectrum", "params": {"h_weight": 1, "two_j_max": 21}},
    "qds_battery": {
        "kind": "qds_battery",
        "seed": 11,
        "params": {"generator": "endomorphism", "irrep_j": 0.5},
    },
    "dirichlet": {"kind": "dirichlet", "seed": 13, "params": {"dim": 4, "samples": 200, "n_amp": 2}},
    "covariance": {"kind": "covariance", "seed": 17, "params": {"two_j": 1, "n_unitaries": 20}},
    "smoothness": {"kind": "smoothness", "seed": 19, "params": {"two_j": 1, "samples": 200}},
    "dilation": {
        "kind": "dilation",
        "seed": 23,
        "params": {"t": 1.0, "n_list": [128, 256, 512, 1024], "flow_slots": 6},
    },
}


def kind_specs() -> list[dict]:
    """Machine-readable description of every scenario kind."""
    out = []
    for kind in KIND_ORDER:
        out.append(
            {
                "kind": kind,
                "description": _DESCRIPTIONS[kind],
                "requires_seed": kind in SAMPLING_KINDS,
                "params_schema": KINDS[kind].model_json_schema(),
                "example": _EXAMPLES[kind],
            }
        )
    return out


def list_checks() -> str:
    """Human-readable kind listing; each example line parses as a scenario."""
    lines = ["Available scenario kinds:", ""]
    for spec in kind_specs():
        lines.append(spec["kind"])
        lines.append(f"  {spec['description']}")
        fields = KINDS[spec["kind"]].model_fields
        rendered = ", ".join(sorted(fields))
        lines.append(f"  params: {rendered or '(none)'}")
        if spec["requires_seed"]:
            lines.append("  seed: required")
        lines.append(f"  example: {json.dumps(spec['example'], sort_keys=True)}")
        lines.append("")
    return "\n".join(lines)


def _run_one(index: int, scenario: Scenario, tol_scale: float):
    checks = _Checks(scenario.tolerances, tol_scale)
    artifacts: dict[str, str] = {}
    start = time.perf_counter()
    _RUNNERS[scenario.kind](scenario.parsed_params, scenario.seed, checks, artifacts, f"{index:03d}")
    wall_ms = (time.perf_counter() - start) * 1000.0
    rows = [
        ReportRow(
            check_name=f"{scenario.kind}.{name}",
            passed=bool(residual <= tol),
            residual=residual,
            tolerance=tol,
            params=scenario.params,
            seed=scenario.seed,
            wall_ms=wall_ms,
        )
        for name, residual, tol in checks.rows
    ]
    return rows, artifacts


def run_scenarios(
    scenarios: list[Scenario],
    jobs: int = 1,
    tol_scale: float = 1.0,
    seed_override: Optional[int] = None,
) -> tuple[list[ReportRow], dict[str, str]]:
    """Run a batch; report order matches input order regardless of completion."""
    if seed_override is not None:
        scenarios = parse_scenarios(
            [
                {
                    "kind": s.kind,
                    "params": s.params,
                    "seed": seed_override,
                    "tolerances": s.tolerances,
                }
                for s in scenarios
            ]
        )
    report: list[ReportRow] = []
    artifacts: dict[str, str] = {}
    if jobs <= 1 or len(scenarios) <= 1:
        results = [_run_one(i, s, tol_scale) for i, s in enumerate(scenarios)]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_run_one, i, s, tol_scale) for i, s in enumerate(scenarios)
            ]
            results = [f.result() for f in futures]
    for rows, arts in results:
        report.extend(rows)
        artifacts.update(arts)
    return report, artifacts
