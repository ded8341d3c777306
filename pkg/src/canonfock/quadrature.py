"""Gauss-Hermite integration against the Gaussian measure on the plane.

``dlambda(z) = exp(-|z|^2) dA(z) / pi`` is discretised by the tensor product
of a one-dimensional Gauss-Hermite rule. The same grids drive the closed-form
Gaussian integral checks and the ``F^p`` norm oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import DivergenceError
from .scalar import principal_sqrt

DEFAULT_ORDER = 96


@dataclass(frozen=True)
class QuadratureGrid:
    """One-dimensional Gauss-Hermite nodes and weights for ``exp(-x^2)``."""

    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def plane(self, scale: float = 1.0):
        """Tensor nodes ``scale * (x_i + i y_j)`` and product weights."""
        x = self.nodes
        z = scale * (x[:, None] + 1j * x[None, :])
        w = self.weights[:, None] * self.weights[None, :]
        return z, w


@lru_cache(maxsize=None)
def gauss_hermite(order: int = DEFAULT_ORDER) -> QuadratureGrid:
    """Cached Gauss-Hermite rule, weights renormalised to sum to ``sqrt(pi)``."""
    if order < 1:
        raise ValueError("quadrature order must be positive")
    nodes, weights = np.polynomial.hermite.hermgauss(order)
    weights = weights * (math.sqrt(math.pi) / math.fsum(weights))
    # symmetrise so the rule is exactly even
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureGrid(order, nodes, weights)


def integrate_gaussian_plane(
    f: Callable[[np.ndarray], np.ndarray],
    grid: QuadratureGrid | None = None,
    scale: float = 1.0,
    center: complex = 0j,
) -> complex:
    """Approximate ``int_C f dlambda`` with the tensor rule.

    ``f`` must accept a complex array. The substitution ``z = center + scale * u``
    is applied first; move ``center`` to where ``|f| e^{-|z|^2}`` peaks and pick
    ``scale`` to match its width when ``f`` carries its own Gaussian factor.
    """
    grid = grid or gauss_hermite()
    u, w = grid.plane()
    center = complex(center)
    z = center + scale * u
    vals = np.asarray(f(z), dtype=complex)
    if scale != 1.0 or center != 0:
        vals = vals * np.exp(np.abs(u) ** 2 - np.abs(z) ** 2) * scale**2
    return complex(np.sum(w * vals) / math.pi)


def integrate_area(
    g: Callable[[np.ndarray], np.ndarray],
    grid: QuadratureGrid | None = None,
    scale: float = 1.0,
) -> complex:
    """Approximate ``int_C g dA`` for a Gaussian-decaying ``g``.

    The weight ``exp(-|u|^2)`` is divided back out node by node, so ``g``
    should decay roughly like ``exp(-|z|^2 / scale^2)`` for good accuracy.
    """
    grid = grid or gauss_hermite()
    x = grid.nodes
    # log-combine so e^{x^2} never overflows on its own
    ew = grid.weights * np.exp(x**2)
    u = x[:, None] + 1j * x[None, :]
    vals = np.asarray(g(scale * u), dtype=complex)
    return complex(np.sum(ew[:, None] * ew[None, :] * vals) * scale**2)


@dataclass(frozen=True)
class GaussianIntegralParams:
    """Coefficients of ``exp(gamma w^2/2 + a w) * conj-part(delta, b)``."""

    gamma: complex
    delta: complex
    a: complex
    b: complex

    def __post_init__(self):
        if abs(complex(self.gamma) + complex(self.delta)) ** 2 >= 4:
            raise DivergenceError("Gaussian integral diverges: |gamma + delta|^2 >= 4")


def gaussian_integrand(p: GaussianIntegralParams) -> Callable[[np.ndarray], np.ndarray]:
    """The integrand whose ``dlambda`` integral :func:`gaussian_integral_closed` gives."""
    g, d, a, b = (complex(v) for v in (p.gamma, p.delta, p.a, p.b))

    def f(w):
        return np.exp(0.5 * g * w**2 + a * w) * np.exp(0.5 * np.conj(d * w**2) + np.conj(b * w))

    return f


def gaussian_integrand_peak(p: GaussianIntegralParams) -> complex:
    """Maximiser of ``|f(w)| e^{-|w|^2}`` for the :func:`gaussian_integrand` ``f``.

    With ``k = gamma + delta`` and ``c = a + b`` the log-modulus is
    ``-|w|^2 + Re(k w^2)/2 + Re(c w)``; setting its ``conj(w)`` derivative to
    zero gives ``w - conj(k) conj(w) / 2 = conj(c) / 2``.
    """
    k = complex(p.gamma) + complex(p.delta)
    c = complex(p.a) + complex(p.b)
    return (c.conjugate() / 2 + k.conjugate() * c / 4) / (1 - abs(k) ** 2 / 4)


def _gaussian_integral(gamma, delta, a, b):
    # vectorised core; callers are responsible for the domain check
    denom = 1 - gamma * np.conj(delta)
    num = np.conj(delta) * a**2 + gamma * np.conj(b) ** 2 + 2 * a * np.conj(b)
    return np.exp(num / (2 * denom)) / principal_sqrt(denom)


def gaussian_integral_closed(p: GaussianIntegralParams) -> complex:
    """Closed form of ``int_C e^{gamma w^2/2 + a w} e^{conj(delta w^2)/2 + conj(b w)} dlambda``.

    Valid when ``|gamma + delta|^2 < 4``, which forces
    ``Re(1 - gamma conj(delta)) > 0`` so the principal root is the analytic one.
    """
    g, d, a, b = (complex(v) for v in (p.gamma, p.delta, p.a, p.b))
    if abs(g + d) ** 2 >= 4:
        raise DivergenceError("Gaussian integral diverges: |gamma + delta|^2 >= 4")
    denom = 1 - g * d.conjugate()
    assert denom.real > 0
    return complex(_gaussian_integral(g, d, a, b))


@dataclass(frozen=True)
class QuadraticForm2:
    """Complex symmetric 2x2 matrix ``[[a11, a12], [a12, a22]]``."""

    a11: complex
    a12: complex
    a22: complex

    @property
    def det(self) -> complex:
        return complex(self.a11) * complex(self.a22) - complex(self.a12) ** 2

    def real_part_positive_definite(self) -> bool:
        r11, r12, r22 = (complex(v).real for v in (self.a11, self.a12, self.a22))
        return r11 > 0 and r11 * r22 - r12 * r12 > 0

    def as_array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a12, self.a22]], dtype=complex)


def gaussian_quadratic_form_r2(A: QuadraticForm2) -> complex:
    """``int_{R^2} exp(-u^T A u) du = pi / sqrt(det A)``.

    Requires ``Re(A)`` positive definite. The eigenvalues of ``A`` then lie in
    the open right half plane, so ``arg det A`` stays inside ``(-pi, pi)`` and
    the principal root coincides with the product of the eigenvalue roots.
    ``det A`` itself may have negative real part.
    """
    if not A.real_part_positive_definite():
        raise DivergenceError("Re(A) is not positive definite")
    return math.pi / principal_sqrt(A.det)


def quadratic_form_r2_numeric(A: QuadraticForm2, grid: QuadratureGrid | None = None) -> complex:
    """Tensor-rule evaluation of ``int_{R^2} exp(-u^T A u) du`` (independent oracle).

    The grid is rescaled to the mean eigenvalue of ``Re(A)``.
    """
    if not A.real_part_positive_definite():
        raise DivergenceError("Re(A) is not positive definite")
    grid = grid or gauss_hermite()
    eig = np.linalg.eigvalsh(A.as_array().real)
    scale = 1.0 / math.sqrt(0.5 * (eig[0] + eig[-1]))
    a11, a12, a22 = (complex(v) for v in (A.a11, A.a12, A.a22))

    def g(z):
        x, y = z.real, z.imag
        return np.exp(-(a11 * x * x + 2 * a12 * x * y + a22 * y * y))

    return integrate_area(g, grid, scale)


def fp_norm_numeric(
    f: Callable[[np.ndarray], np.ndarray],
    p: float,
    grid: QuadratureGrid | None = None,
) -> float:
    """``||f||_p`` of an entire function via Gauss-Hermite.

    Uses ``||f||_p^p = (p / 2pi) int |f|^p e^{-p|z|^2/2} dA`` and the change of
    variables ``z = sqrt(2/p) u``, which turns the weight into ``e^{-|u|^2}``.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    grid = grid or gauss_hermite()
    u, w = grid.plane()
    vals = np.abs(np.asarray(f(math.sqrt(2.0 / p) * u), dtype=complex)) ** p
    return float((np.sum(w * vals) / math.pi) ** (1.0 / p))
