"""Discrete repeated-interaction model of the Fock-space dilation.

Time [0, t] is cut into N slots; each slot carries a (1+d)-dimensional
space (vacuum plus d noise directions) and interacts with the system once
through a fixed unitary V.  Compressing a single interaction to the slot
vacuum gives a unital CP map whose N-fold iterate converges to the
Lindblad semigroup at first order in 1/N, and the un-compressed conjugation
flow is a *-homomorphism that is adapted to the slot filtration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DimensionMismatch,
    NotHermitianError,
    asarray,
    funcalc,
    opnorm,
)
from .qds import Superoperator, lindblad_generator, evolve

__all__ = [
    "ToyFockModel",
    "StructureMaps",
    "FULL_FLOW_DIM_CAP",
    "exp_vector_inner",
    "slot_unitary",
    "one_slot_map",
    "vacuum_dilation_error",
    "full_flow",
    "adaptedness_residual",
    "vacuum_compression",
    "structure_maps",
    "structure_relation_residual",
    "adjoint_symmetry_residual",
    "convergence_study",
]

FULL_FLOW_DIM_CAP = 4096


@dataclass(frozen=True)
class ToyFockModel:
    """Slot layout for the discrete flow: system (x) slot_1 (x) ... (x) slot_N."""

    sys_dim: int
    noise_dim: int
    slots: int
    dt: float

    def __post_init__(self):
        if self.slots < 1:
            raise ValueError("need at least one slot")
        if self.dt <= 0:
            raise ValueError("step must be positive")
        if self.sys_dim < 1 or self.noise_dim < 0:
            raise ValueError("bad dimensions")

    @property
    def slot_dim(self) -> int:
        return 1 + self.noise_dim

    @property
    def total_dim(self) -> int:
        return self.sys_dim * self.slot_dim**self.slots

    def check_full_flow_size(self):
        if self.total_dim > FULL_FLOW_DIM_CAP:
            raise ValueError(
                f"full flow needs dimension {self.total_dim} > cap {FULL_FLOW_DIM_CAP}"
            )


def exp_vector_inner(u, v) -> complex:
    """<E(u), E(v)> = exp <u, v> for exponential vectors."""
    ua, va = np.asarray(u, dtype=complex).reshape(-1), np.asarray(v, dtype=complex).reshape(-1)
    if ua.shape != va.shape:
        raise DimensionMismatch("exponential-vector arguments must have equal length")
    return complex(np.exp(np.vdot(ua, va)))


def _check_interaction(hm, ls):
    h = asarray(hm)
    if opnorm(h - h.conj().T) > 1e-10:
        raise NotHermitianError("Hamiltonian must be Hermitian")
    mats = [asarray(l) for l in ls]
    for l in mats:
        if l.shape != h.shape:
            raise DimensionMismatch("jump operators must act on the system space")
    return h, mats


def slot_unitary(hm, ls, dt: float) -> np.ndarray:
    """One-step interaction unitary V = exp(-i G) on system (x) slot.

    G = dt (H (x) 1) + sqrt(dt) sum_k (i L_k (x) |k><0| - i L_k* (x) |0><k|),
    which is Hermitian, so V is exactly unitary.  The sqrt(dt) coupling is
    what makes the vacuum compression reproduce the GKSL generator at first
    order.
    """
    if dt <= 0:
        raise ValueError("step must be positive")
    h, mats = _check_interaction(hm, ls)
    n = h.shape[0]
    s = 1 + len(mats)
    g = dt * np.kron(h, np.eye(s))
    for k, l in enumerate(mats, start=1):
        ket_k_bra_0 = np.zeros((s, s), dtype=complex)
        ket_k_bra_0[k, 0] = 1.0
        g = g + np.sqrt(dt) * (
            1j * np.kron(l, ket_k_bra_0) - 1j * np.kron(l.conj().T, ket_k_bra_0.conj().T)
        )
    return asarray(funcalc(g, lambda r: np.exp(-1j * r)))


def one_slot_map(hm, ls, dt: float) -> Superoperator:
    """Vacuum compression of one interaction: Phi(x) = <0| V* (x (x) 1) V |0>.

    Unital and completely positive for every dt (it is a compression of a
    unitary conjugation in Stinespring form).
    """
    h, mats = _check_interaction(hm, ls)
    n = h.shape[0]
    s = 1 + len(mats)
    v = slot_unitary(hm, ls, dt)
    e0 = np.zeros((s, 1), dtype=complex)
    e0[0, 0] = 1.0
    w = v @ np.kron(np.eye(n), e0)  # isometry (n s) x n
    kraus = []
    for mu in range(s):
        bra = np.zeros((1, s), dtype=complex)
        bra[0, mu] = 1.0
        kraus.append(np.kron(np.eye(n), bra) @ w)
    return Superoperator.from_kraus(
        kraus, dim=n, tags=("hermiticity_preserving", "unital", "cp_expected")
    )


def vacuum_dilation_error(hm, ls, t: float, n_steps: int) -> float:
    """|| Phi_(t/N)^N - e^(t L) || in superoperator (spectral) norm."""
    if t < 0:
        raise ValueError("time must be nonnegative")
    if n_steps < 1:
        raise ValueError("need at least one step")
    if t == 0:
        return 0.0
    phi = one_slot_map(hm, ls, t / n_steps)
    iterated = np.linalg.matrix_power(phi.rep, n_steps)
    target = evolve(lindblad_generator(hm, ls), t)
    return opnorm(iterated - target.rep)


def convergence_study(hm, ls, t: float, n_list) -> dict:
    """Dilation errors over a list of step counts and the fitted log-log slope.

    The returned ``order`` is the decay exponent (positive means the error
    shrinks like N^-order).
    """
    ns = sorted(int(n) for n in n_list)
    if len(ns) < 2:
        raise ValueError("need at least two step counts to fit a slope")
    rows = []
    for n in ns:
        rows.append((n, t / n, vacuum_dilation_error(hm, ls, t, n)))
    errors = np.array([r[2] for r in rows])
    if np.any(errors <= 0):
        order = np.inf  # exact case (e.g. no jumps): errors at roundoff
    else:
        slope = np.polyfit(np.log([r[0] for r in rows]), np.log(errors), 1)[0]
        order = -float(slope)
    return {"rows": rows, "order": order}


def _apply_slot_left(v, u, n, s, n_slots, k):
    """V_k @ U where V_k acts on (system, slot_k) inside system (x) slots 1..N."""
    cols = u.shape[1]
    t = u.reshape([n] + [s] * n_slots + [cols])
    vt = v.reshape(n, s, n, s)
    out = np.tensordot(vt, t, axes=([2, 3], [0, k]))
    # tensordot leaves the fresh (system, slot) axes in front; restore slot k.
    out = np.moveaxis(out, 1, k)
    return out.reshape(n * s**n_slots, cols)


def full_flow(model: ToyFockModel, hm, ls, x) -> list[np.ndarray]:
    """Flow j_k(x) = U_k* (x (x) 1) U_k with U_k = V_k ... V_1, for k = 0..N.

    Each j_k is a *-homomorphism of the system algebra (a unitary
    conjugation of x -> x (x) 1) and acts as the identity on slots beyond k.
    """
    model.check_full_flow_size()
    h, mats = _check_interaction(hm, ls)
    if h.shape[0] != model.sys_dim or len(mats) != model.noise_dim:
        raise DimensionMismatch("interaction does not match the model layout")
    xm = asarray(x)
    if xm.shape != (model.sys_dim, model.sys_dim):
        raise DimensionMismatch("argument must act on the system space")
    n, s, n_slots = model.sys_dim, model.slot_dim, model.slots
    v = slot_unitary(hm, ls, model.dt)
    x_amb = np.kron(xm, np.eye(s**n_slots))
    u = np.eye(model.total_dim, dtype=complex)
    js = [x_amb]
    for k in range(1, n_slots + 1):
        u = _apply_slot_left(v, u, n, s, n_slots, k)
        js.append(u.conj().T @ x_amb @ u)
    return js


def adaptedness_residual(jk: np.ndarray, model: ToyFockModel, k: int) -> float:
    """Distance of j_k(x) from (operator on system+slots<=k) (x) identity."""
    a = model.sys_dim * model.slot_dim**k
    b = model.slot_dim ** (model.slots - k)
    t = jk.reshape(a, b, a, b)
    m = np.einsum("abcb->ac", t) / b
    return opnorm(jk - np.kron(m, np.eye(b)))


def vacuum_compression(jk: np.ndarray, model: ToyFockModel) -> np.ndarray:
    """<omega| j_k(x) |omega> over the all-vacuum slot state."""
    omega = np.zeros((model.slot_dim**model.slots, 1), dtype=complex)
    omega[0, 0] = 1.0
    p = np.kron(np.eye(model.sys_dim), omega)
    return p.conj().T @ jk @ p


@dataclass(frozen=True)
class StructureMaps:
    """Flow coefficients theta[mu][nu] for mu, nu in 0..d (gauge part fixed to 1).

    theta[0][0] is the GKSL generator, theta[0][k](x) = [L_k*, x],
    theta[k][0](x) = [x, L_k], and theta[k][l] = 0 -- the pure-Lindblad
    convention with no scattering.
    """

    noise_dim: int
    maps: tuple[tuple[Superoperator, ...], ...]

    def __getitem__(self, idx: tuple[int, int]) -> Superoperator:
        mu, nu = idx
        return self.maps[mu][nu]


def structure_maps(hm, ls) -> StructureMaps:
    h, mats = _check_interaction(hm, ls)
    n = h.shape[0]
    d = len(mats)
    eye = np.eye(n)

    def commutator_with(a, side: str) -> Superoperator:
        if side == "left":  # x -> [a, x]
            rep = np.kron(eye, a) - np.kron(a.T, eye)
        else:  # x -> [x, a]
            rep = np.kron(a.T, eye) - np.kron(eye, a)
        return Superoperator(n, rep, frozenset())

    rows = []
    for mu in range(d + 1):
        row = []
        for nu in range(d + 1):
            if mu == 0 and nu == 0:
                row.append(lindblad_generator(hm, mats))
            elif mu == 0:
                row.append(commutator_with(mats[nu - 1].conj().T, "left"))
            elif nu == 0:
                row.append(commutator_with(mats[mu - 1], "right"))
            else:
                row.append(Superoperator.zero(n))
        rows.append(tuple(row))
    return StructureMaps(d, tuple(rows))


def structure_relation_residual(sm: StructureMaps, x, y) -> float:
    """Residual of theta(xy) = theta(x) y + x theta(y) + sum_k theta[mu][k](x) theta[k][nu](y)."""
    xm, ym = asarray(x), asarray(y)
    d = sm.noise_dim
    worst = 0.0
    for mu in range(d + 1):
        for nu in range(d + 1):
            lhs = sm[mu, nu].apply(xm @ ym)
            rhs = sm[mu, nu].apply(xm) @ ym + xm @ sm[mu, nu].apply(ym)
            for k in range(1, d + 1):
                rhs += sm[mu, k].apply(xm) @ sm[k, nu].apply(ym)
            worst = max(worst, opnorm(lhs - rhs))
    return worst


def adjoint_symmetry_residual(sm: StructureMaps, x) -> float:
    """Residual of theta[mu][nu](x)* = theta[nu][mu](x*)."""
    xm = asarray(x)
    d = sm.noise_dim
    worst = 0.0
    for mu in range(d + 1):
        for nu in range(d + 1):
            lhs = sm[mu, nu].apply(xm).conj().T
            rhs = sm[nu, mu].apply(xm.conj().T)
            worst = max(worst, opnorm(lhs - rhs))
    return worst
