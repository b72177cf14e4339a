"""Estimation of an unknown SU(2) action from n uses.

The covariant design over the irrep blocks of the n-fold tensor power
reduces to the phase-estimation quadratic form (odd n exactly; even n with
an extra a_0/4 penalty from the trivial block).  Self-entangled designs
replace the external reference by the permutation multiplicity spaces,
usable wherever multiplicity >= irrep dimension.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import integrals
from .phase import (
    PhaseInputState,
    SeedMatrix,
    min_covariant_error,
    optimal_input,
    optimal_seed,
    phase_error,
)
from .su2 import multiplicity_spectrum

EXTERNAL = "external"
SELF_ENTANGLED = "self-entangled"

_NORM_TOL = 1e-12
_BRUTE_FORCE_MAX_BLOCKS = 10


@dataclass(frozen=True)
class Su2BlockAmplitudes:
    """Nonnegative amplitudes over the irrep blocks of the n-use problem."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        a = np.atleast_1d(np.array(self.amplitudes, dtype=float))
        expected = (self.n + 1) // 2 if self.n % 2 == 1 else self.n // 2 + 1
        if a.size != expected:
            raise ValueError(
                f"expected {expected} block amplitudes for n={self.n}, got {a.size}"
            )
        if np.any(a < 0.0):
            raise ValueError("block amplitudes must be nonnegative")
        if abs(np.sum(a * a) - 1.0) > _NORM_TOL:
            raise ValueError("block amplitudes must have unit norm")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @property
    def parity(self):
        return "odd" if self.n % 2 == 1 else "even"

    @property
    def block_dims(self):
        if self.parity == "odd":
            return tuple(2 * k for k in range(1, self.amplitudes.size + 1))
        return tuple(2 * k + 1 for k in range(self.amplitudes.size))


@dataclass(frozen=True)
class Su2Design:
    """Block amplitudes, seed, reference mode, and closed-form error."""

    blocks: Su2BlockAmplitudes
    seed: SeedMatrix
    reference_mode: str
    error: float


@dataclass(frozen=True)
class BlockFeasibility:
    dim: int
    multiplicity: int
    reference_dim: int
    feasible: bool


@dataclass(frozen=True)
class FeasibilityReport:
    """Per-block self-entanglement feasibility and the achievable error."""

    n: int
    blocks: tuple
    usable_dims: tuple
    achievable_error: float | None


def single_irrep_error(j):
    """Mean error using one irrep block with a maximally entangled reference."""
    if j < 1:
        raise ValueError("j must be >= 1")
    return 0.75 if j == 1 else 0.5


def _as_phase_state(blocks):
    return PhaseInputState(blocks.amplitudes.astype(complex))


def su2_error_odd(blocks, t):
    """Mean error of the odd-case covariant design; the phase functional."""
    if blocks.parity != "odd":
        raise ValueError("su2_error_odd requires odd n")
    return phase_error(_as_phase_state(blocks), t)


def min_su2_error_odd(blocks):
    """Optimal-seed error (1/2)(1 - sum x_k x_{k+1}) of the odd case."""
    if blocks.parity != "odd":
        raise ValueError("min_su2_error_odd requires odd n")
    return min_covariant_error(_as_phase_state(blocks))


def su2_error_even(blocks):
    """Optimal-seed error of the even case, with the trivial-block penalty a_0/4."""
    if blocks.parity != "even":
        raise ValueError("su2_error_even requires even n >= 2")
    a = blocks.amplitudes
    coupling = float(np.sum(a[:-1] * a[1:])) if a.size > 1 else 0.0
    return 0.5 * (1.0 - coupling) + 0.25 * float(a[0])


def _even_objective(a):
    coupling = float(a[:-1] @ a[1:]) if a.size > 1 else 0.0
    return 0.5 * (1.0 - coupling) + 0.25 * float(a[0])


def _optimize_even_amplitudes(length, rng):
    """Minimize the even-case error over the nonnegative unit sphere.

    Projected quasi-Newton on the ray-invariant objective, multi-start:
    ten random starts plus the phase-optimal profile with a_0 = 0.
    """
    if length < 1:
        raise ValueError("need at least one block")
    if length == 1:
        return np.array([1.0]), 0.75

    def fun(z):
        r = np.linalg.norm(z)
        u = z / r
        g = np.zeros_like(u)
        g[:-1] -= 0.5 * u[1:]
        g[1:] -= 0.5 * u[:-1]
        g[0] += 0.25
        grad = (g - u * float(u @ g)) / r
        return _even_objective(u), grad

    starts = []
    head = np.zeros(length)
    head[1:] = optimal_input(length - 2).input.amplitudes.real
    starts.append(head)
    for _ in range(10):
        starts.append(np.abs(rng.normal(size=length)) + 1e-3)
    best_a, best_f = None, np.inf
    bounds = [(0.0, None)] * length
    for z0 in starts:
        z0 = z0 / np.linalg.norm(z0)
        res = minimize(
            fun,
            z0,
            jac=True,
            method="L-BFGS-B",
            bounds=bounds,
            options={"ftol": 1e-16, "gtol": 1e-12, "maxiter": 10_000},
        )
        z = np.clip(res.x, 0.0, None)
        nrm = np.linalg.norm(z)
        if nrm == 0.0:
            continue
        a = z / nrm
        f = _even_objective(a)
        if f < best_f:
            best_a, best_f = a, f
    return best_a, best_f


def _pad_amplitudes(n, active, total):
    a = np.zeros(total)
    a[: active.size] = active
    return Su2BlockAmplitudes(n, a)


def design_optimal(n, reference_mode=EXTERNAL, rng=None):
    """Optimal (or certified near-optimal) design for n uses.

    Odd external designs delegate to the exact phase optimum over d blocks;
    even external designs run the penalized optimizer and are certified by
    the sandwich bound D_opt^d <= error <= D_opt^{d-1}.  Self-entangled
    designs restrict to blocks whose permutation multiplicity can host the
    reference copy.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if reference_mode not in (EXTERNAL, SELF_ENTANGLED):
        raise ValueError(f"unknown reference mode {reference_mode!r}")
    if rng is None:
        rng = np.random.default_rng(0)
    odd = n % 2 == 1
    d = (n + 1) // 2 if odd else n // 2

    if reference_mode == EXTERNAL:
        if odd:
            pd = optimal_input(d - 1)
            blocks = Su2BlockAmplitudes(n, pd.input.amplitudes.real)
            return Su2Design(blocks, optimal_seed(pd.input), EXTERNAL, pd.error)
        a, err = _optimize_even_amplitudes(d + 1, rng)
        lower = optimal_input(d).error
        upper = optimal_input(d - 1).error
        if not (lower - 1e-10 <= err <= upper + 1e-10):
            raise RuntimeError("even-case optimizer violated the sandwich bound")
        blocks = Su2BlockAmplitudes(n, a)
        return Su2Design(
            blocks, optimal_seed(_as_phase_state(blocks)), EXTERNAL, err
        )

    report = self_entanglement_feasible(n)
    usable = len(report.usable_dims)
    if usable == 0:
        raise ValueError(f"no self-entangleable block for n={n}")
    if odd:
        pd = optimal_input(usable - 1)
        blocks = _pad_amplitudes(n, pd.input.amplitudes.real, d)
        err = pd.error
    else:
        a, _ = _optimize_even_amplitudes(usable, rng)
        blocks = _pad_amplitudes(n, a, d + 1)
        err = su2_error_even(blocks)
    return Su2Design(
        blocks, optimal_seed(_as_phase_state(blocks)), SELF_ENTANGLED, err
    )


def self_entanglement_feasible(n, rng=None):
    """Feasibility of hosting each block's reference inside the multiplicity space.

    A block is usable iff its multiplicity is at least the irrep dimension
    (equality occurs at the second-highest block).  The achievable error is
    the design optimum restricted to the usable blocks.
    """
    spec = multiplicity_spectrum(n)
    blocks = tuple(
        BlockFeasibility(dim, mult, dim, mult >= dim) for dim, mult in spec.entries
    )
    usable = tuple(b.dim for b in blocks if b.feasible)
    u = len(usable)
    if u == 0:
        err = None
    elif n % 2 == 1:
        err = optimal_input(u - 1).error
    else:
        if rng is None:
            rng = np.random.default_rng(0)
        err = _optimize_even_amplitudes(u, rng)[1]
    return FeasibilityReport(n, blocks, usable, err)


def brute_force_su2_error(blocks, t):
    """Quadrature oracle for the odd-case error.

    Assembles sum_{k,l} x_k x_l t_{l,k} I(k,l) with every cross-character
    integral I(k,l) evaluated by class quadrature instead of the closed-form
    delta pattern.
    """
    if blocks.parity != "odd":
        raise ValueError("brute_force_su2_error requires odd n")
    x = blocks.amplitudes
    d = x.size
    if d > _BRUTE_FORCE_MAX_BLOCKS:
        raise ValueError(f"oracle limited to d <= {_BRUTE_FORCE_MAX_BLOCKS}")
    tm = t.entries
    if tm.shape[0] != d:
        raise ValueError("seed matrix dimension mismatch")
    total = 0.0 + 0.0j
    for k in range(d):
        for l in range(d):
            kernel = integrals.su2_error_kernel(k + 1, l + 1)
            total += np.conj(x[k]) * x[l] * tm[l, k] * kernel
    if abs(total.imag) > 1e-10:
        raise ArithmeticError("oracle error has a non-negligible imaginary part")
    return float(total.real)


def asymptotic_error_su2(n):
    """Large-n error scale pi^2 / n^2 for the SU(2) problem."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.pi**2 / (n * n)
