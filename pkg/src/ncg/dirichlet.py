"""Noncommutative Dirichlet-form checks.

The quadratic form is E(x) = Tr(x* L x) for a PSD generator L (equivalently
||S x||_HS^2 when L = S* S).  The Dirichlet property is the Lipschitz
contraction E(f(x)) <= ||f||_lip^2 E(x) for piecewise-linear f fixing 0,
checked by seeded sampling; the complete version amplifies the generator to
L (x) 1_n.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

import numpy as np

from . import sampling
from .linalg import (
    DimensionMismatch,
    asarray,
    funcalc,
    hs_inner,
    is_psd,
    opnorm,
)

__all__ = [
    "QuadraticForm",
    "LipschitzFn",
    "form_value",
    "dirichlet_check",
    "complete_dirichlet_check",
    "standard_lipschitz_family",
    "AMPLIFICATION_CAP",
]

AMPLIFICATION_CAP = 3


@dataclass(frozen=True)
class QuadraticForm:
    """E(x) = Tr(x* L x) with L PSD; optionally built from a factor L = S* S."""

    generator: np.ndarray
    factor: np.ndarray | None = None

    def __post_init__(self):
        gen = np.asarray(self.generator, dtype=complex)
        ok, mn = is_psd(gen, 1e-10 * max(1.0, opnorm(gen)))
        if not ok:
            raise ValueError(f"form generator must be PSD; min eigenvalue {mn}")
        object.__setattr__(self, "generator", gen)

    @classmethod
    def from_generator(cls, gen) -> "QuadraticForm":
        return cls(asarray(gen))

    @classmethod
    def from_factor(cls, s) -> "QuadraticForm":
        sm = asarray(s)
        return cls(sm.conj().T @ sm, factor=sm)

    @property
    def dim(self) -> int:
        return self.generator.shape[0]

    def amplified(self, n_amp: int) -> "QuadraticForm":
        if not 1 <= n_amp <= AMPLIFICATION_CAP:
            raise ValueError(f"amplification must lie in 1..{AMPLIFICATION_CAP}")
        if n_amp == 1:
            return self
        return QuadraticForm(np.kron(self.generator, np.eye(n_amp)))


@dataclass(frozen=True)
class LipschitzFn:
    """Piecewise-linear real function with f(0) = 0.

    ``breakpoints`` are the sorted interior knots; ``slopes`` has one more
    entry than breakpoints, one slope per segment from left to right.
    """

    name: str
    breakpoints: tuple[float, ...]
    slopes: tuple[float, ...]

    def __post_init__(self):
        if len(self.slopes) != len(self.breakpoints) + 1:
            raise ValueError("need exactly one slope per segment")
        if any(b2 <= b1 for b1, b2 in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    @property
    def lip_norm(self) -> float:
        return max(abs(s) for s in self.slopes)

    def __call__(self, r: float) -> float:
        # Integrate slopes from 0 to r so f(0) = 0 holds exactly.
        knots = self.breakpoints
        value = 0.0
        if r >= 0:
            left = 0.0
            seg = bisect.bisect_right(knots, 0.0)
            while seg < len(knots) and knots[seg] < r:
                value += self.slopes[seg] * (knots[seg] - left)
                left = knots[seg]
                seg += 1
            value += self.slopes[seg] * (r - left)
        else:
            right = 0.0
            seg = bisect.bisect_right(knots, 0.0)
            while seg > 0 and knots[seg - 1] > r:
                value -= self.slopes[seg] * (right - knots[seg - 1])
                right = knots[seg - 1]
                seg -= 1
            value -= self.slopes[seg] * (right - r)
        return value


def standard_lipschitz_family(rng: np.random.Generator | None = None, random_fns: int = 1):
    """Absolute value, symmetric clamp, positive part, plus random 3-piece contractions."""
    fns = [
        LipschitzFn("abs", (0.0,), (-1.0, 1.0)),
        LipschitzFn("clamp", (-1.0, 1.0), (0.0, 1.0, 0.0)),
        LipschitzFn("positive_part", (0.0,), (0.0, 1.0)),
    ]
    if rng is not None:
        for k in range(random_fns):
            knots = np.sort(rng.uniform(-2.0, 2.0, size=2))
            while knots[1] - knots[0] < 1e-6:
                knots = np.sort(rng.uniform(-2.0, 2.0, size=2))
            slopes = rng.uniform(-1.0, 1.0, size=3)
            fns.append(LipschitzFn(f"random3_{k}", tuple(knots), tuple(slopes)))
    return fns


def form_value(form: QuadraticForm, x) -> float:
    """Tr(x* L x); real and >= 0 up to roundoff."""
    m = asarray(x)
    if m.shape != form.generator.shape:
        raise DimensionMismatch("argument on the wrong space")
    value = hs_inner(m, form.generator @ m)
    return float(value.real)


def dirichlet_check(form: QuadraticForm, fns, samples: int, seed: int) -> float:
    """max over samples and functions of E(f(x)) - ||f||_lip^2 E(x).

    Violations are reported signed so systematic near-zero positives stay
    visible; theory puts the true value at <= 0 for PSD generators.
    """
    if not fns:
        raise ValueError("need at least one Lipschitz function")
    worst = -np.inf
    for i in range(samples):
        rng = sampling.generator(seed, i)
        x = sampling.random_hermitian(rng, form.dim)
        ex = form_value(form, x)
        for f in fns:
            fx = asarray(funcalc(x, f))
            violation = form_value(form, fx) - f.lip_norm**2 * ex
            worst = max(worst, violation)
    return float(worst)


def complete_dirichlet_check(form: QuadraticForm, n_amp: int, fns, samples: int, seed: int) -> float:
    """Dirichlet check for the amplified form with generator L (x) 1_n."""
    return dirichlet_check(form.amplified(n_amp), fns, samples, seed)
