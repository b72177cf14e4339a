"""Class-function integrals over SU(2) and U(1) by periodic quadrature.

Every integrand in scope is a trigonometric polynomial, so the equispaced
periodic rule is exact to roundoff once the node count exceeds the degree.
"""

from dataclasses import dataclass

import numpy as np

from .su2 import character

_IMAG_TOL = 1e-14


@dataclass(frozen=True)
class QuadratureSpec:
    """Equispaced periodic rule on [0, 2*pi) with node_count nodes."""

    node_count: int

    def __post_init__(self):
        if self.node_count < 16:
            raise ValueError("node_count must be >= 16")

    @property
    def nodes(self):
        return 2.0 * np.pi * np.arange(self.node_count) / self.node_count

    @property
    def weight(self):
        return 2.0 * np.pi / self.node_count


def class_integral(f, spec):
    """Integral of f(theta) against the class measure sin^2(theta/2)/pi d theta.

    `f` must accept an array of angles.  Exact to roundoff for trigonometric
    polynomials of degree < node_count - 2.
    """
    theta = spec.nodes
    vals = np.asarray(f(theta))
    return float(np.sum(vals * np.sin(theta / 2.0) ** 2) / np.pi * spec.weight)


def su2_error_kernel(k, l):
    """Class integral of sin^2(theta/2) chi^{2k} chi^{2l}.

    Equals (1/2) delta_{k,l} - (1/4) delta_{k,l-1} - (1/4) delta_{k-1,l}.
    """
    if k < 1 or l < 1:
        raise ValueError("k and l must be >= 1")
    spec = QuadratureSpec(2 * (k + l) + 16)
    return class_integral(
        lambda t: np.sin(t / 2.0) ** 2 * character(2 * k, t) * character(2 * l, t),
        spec,
    )


def su2_single_irrep_integral(j):
    """Class integral of sin^2(theta/2) chi^j(theta)^2: 3/4 at j=1, else 1/2."""
    if j < 1:
        raise ValueError("j must be >= 1")
    spec = QuadratureSpec(2 * j + 16)
    return class_integral(lambda t: np.sin(t / 2.0) ** 2 * character(j, t) ** 2, spec)


def phase_error_kernel(k, l):
    """(1/2 pi) integral of sin^2(theta/2) e^{i(k-l) theta} over [0, 2*pi).

    Equals (1/2) delta_{k,l} - (1/4) delta_{k,l-1} - (1/4) delta_{k-1,l};
    normalized so the constant function integrates to one.
    """
    if k < 0 or l < 0:
        raise ValueError("k and l must be >= 0")
    n = 2 * abs(k - l) + 16
    theta = 2.0 * np.pi * np.arange(n) / n
    out = np.mean(np.sin(theta / 2.0) ** 2 * np.exp(1j * (k - l) * theta))
    if abs(out.imag) > _IMAG_TOL:
        raise ArithmeticError("phase kernel has a non-negligible imaginary part")
    return float(out.real)
