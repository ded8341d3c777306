"""Berezin transforms of ``T^(s,t)`` and its behaviour on ``F^p``.

The bivariate Berezin transform is ``<T k_w, k_z> = e^{-(|z|^2+|w|^2)/2} K(z, w)``.
``||T k_w||_p`` and the ``L^1`` kernel profile serve as boundedness and
compactness indicators on ``F^p``: they stay constant in ``w`` on the unitary
boundary and decay like a Gaussian in the compact regime.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import NotCompactError, OutOfDomainError
from .kernel import (
    BOUNDARY_TOL,
    ParameterPair,
    kernel_bound_constant,
    kernel_exponent,
    log_finfty_kernel_norm,
    log_fp_kernel_norm,
)
from .operator import FockCoefficients
from .scalar import principal_sqrt
from .quadrature import (
    GaussianIntegralParams,
    QuadratureGrid,
    gauss_hermite,
    integrate_area,
)


def _require_kernel_in_f2(p: ParameterPair) -> None:
    if abs(p.s) <= abs(p.t):
        raise OutOfDomainError("Berezin transform requires |s| > |t|")


def berezin(p: ParameterPair, z, w=None):
    """``<T k_w, k_z>``; with ``w`` omitted, the Berezin transform at ``z``."""
    _require_kernel_in_f2(p)
    z = np.asarray(z, dtype=complex)
    w = z if w is None else np.asarray(w, dtype=complex)
    expo = kernel_exponent(p, z, w) - (np.abs(z) ** 2 + np.abs(w) ** 2) / 2
    out = np.exp(expo) / principal_sqrt(p.s)
    return complex(out) if np.ndim(out) == 0 else out


def berezin_bound(p: ParameterPair, z, w=None, tol: float = BOUNDARY_TOL):
    """Smallest applicable Gaussian upper estimate of ``|<T k_w, k_z>|``.

    The general estimate holds for ``|s| > |t|``; on and inside the boundedness
    region the ``|z + s w|^2`` form is also available, and the minimum of all
    applicable estimates is returned.
    """
    _require_kernel_in_f2(p)
    z = np.asarray(z, dtype=complex)
    w = z if w is None else np.asarray(w, dtype=complex)
    c = kernel_bound_constant(p)
    a, b = p.abs_s2, p.abs_t2
    d = p.discriminant
    rate = d / (2 * a * (3 * a - b + 1))
    general = c * np.exp(-rate * (a * (np.abs(z) ** 2 + np.abs(w) ** 2) + 2 * np.real(p.s * np.conj(z) * w)))
    candidates = [general]
    if d >= -tol:
        candidates.append(c * np.exp(-rate * np.abs(z + p.s * w) ** 2))
    out = np.minimum.reduce(candidates)
    return float(out) if np.ndim(out) == 0 else out


def berezin_modsq_pointwise(p: ParameterPair, z):
    """Berezin transform of ``|T|^2`` at ``z``: ``e^{-|z|^2} ||K_z^(s,t)||_2^2``."""
    if not p.discriminant > BOUNDARY_TOL:
        raise NotCompactError("Berezin transform of |T|^2 is integrable only in the compact regime")
    out = np.exp(2 * log_fp_kernel_norm(p, z, 2.0) - np.abs(np.asarray(z)) ** 2)
    return float(out) if np.ndim(out) == 0 else out


def log_kernel_norm_sq_gaussian(p: ParameterPair, z):
    """``log ||K_z^(s,t)||_2^2`` from the complex Gaussian integral identity.

    An independent route to ``2 log fp_kernel_norm(p, z, 2)``, built from
    ``|K(u, z)|^2 = |s|^{-1} |e^{-conj(t z^2)/2s}|^2 |e^{(t/s) u^2/2 + (conj z/s) u}|^2``
    and the closed ``dlambda`` integral with ``gamma = delta = t/s``,
    ``a = b = conj(z)/s``. The integral is positive, so only real parts of
    the logarithm survive.
    """
    _require_kernel_in_f2(p)
    g = p.t / p.s
    GaussianIntegralParams(g, g, 0, 0)  # domain check
    z = np.asarray(z, dtype=complex)
    a = np.conj(z) / p.s
    denom = 1 - g * np.conj(g)
    num = np.conj(g) * a**2 + g * np.conj(a) ** 2 + 2 * a * np.conj(a)
    log_integral = np.real(num / (2 * denom)) - 0.5 * math.log(abs(denom))
    log_pref = 2 * np.real(-np.conj(p.t * z**2) / (2 * p.s)) - math.log(abs(p.s))
    out = log_pref + log_integral
    return float(out) if np.ndim(out) == 0 else out


def kernel_norm_sq_gaussian(p: ParameterPair, z):
    out = np.exp(log_kernel_norm_sq_gaussian(p, z))
    return float(out) if np.ndim(out) == 0 else out


def berezin_modsq_lp_norm(p: ParameterPair, pexp: float) -> float:
    """``|| Berezin(|T|^2) ||_{L^{p/2}(C, dA)}`` in closed form (compact regime)."""
    if not p.discriminant > BOUNDARY_TOL:
        raise NotCompactError("needs |s|^2 > |t|^2 + 1")
    if not pexp > 0:
        raise ValueError("p must be positive")
    inner = 2 * math.pi * abs(p.s) / (pexp * p.discriminant * p.gap ** ((pexp - 2) / 4))
    return inner ** (2 / pexp)


def berezin_modsq_lp_norm_numeric(p: ParameterPair, pexp: float, grid: QuadratureGrid | None = None) -> float:
    """Quadrature of ``int (e^{-|z|^2} ||K_z||_2^2)^{p/2} dA`` raised to ``2/p``.

    The pointwise values come from :func:`log_kernel_norm_sq_gaussian`, not from
    the closed norm formula; the grid is scaled to the integrand's mean decay rate.
    """
    if not p.discriminant > BOUNDARY_TOL:
        raise NotCompactError("needs |s|^2 > |t|^2 + 1")
    grid = grid or gauss_hermite()
    rate = pexp * p.discriminant / (2 * p.gap)
    scale = 1.0 / math.sqrt(rate)

    def g(z):
        return np.exp(pexp / 2 * (log_kernel_norm_sq_gaussian(p, z) - np.abs(z) ** 2))

    total = integrate_area(g, grid, scale).real
    return total ** (2 / pexp)


def tkw_fp_norm(p: ParameterPair, w, pnorm: float):
    """``||T k_w||_p = e^{-|w|^2/2} ||K_w^(s,t)||_p`` for ``0 < p <= infinity``.

    ``p = inf`` uses the exact maximiser of the concave log-modulus.
    """
    _require_kernel_in_f2(p)
    w = np.asarray(w, dtype=complex)
    if math.isinf(pnorm):
        logn = log_finfty_kernel_norm(p, w)
    else:
        logn = log_fp_kernel_norm(p, w, pnorm)
    out = np.exp(logn - np.abs(w) ** 2 / 2)
    return float(out) if np.ndim(out) == 0 else out


def kernel_l1_profile(p: ParameterPair, w, tol: float = BOUNDARY_TOL):
    """``int |K(z, w)| e^{-(|z|^2+|w|^2)/2} dA(z) = 2 pi e^{-|w|^2/2} ||K_w||_1``."""
    if not p.is_bounded(tol):
        raise OutOfDomainError("L^1 kernel profile requires |s|^2 >= |t|^2 + 1")
    return 2 * math.pi * tkw_fp_norm(p, w, 1.0)


def kernel_l1_profile_numeric(p: ParameterPair, w: complex, grid: QuadratureGrid | None = None) -> float:
    """Quadrature version of :func:`kernel_l1_profile` for a single ``w``."""
    grid = grid or gauss_hermite()
    w = complex(w)
    # |K(z, w)| e^{-|z|^2/2} decays like e^{-c|z|^2} with c near (1 - |t|/|s|)/2 .. 1/2
    scale = 1.0 / math.sqrt(0.5 * (1 - 0.5 * abs(p.t) / abs(p.s)))

    def g(z):
        return np.exp(np.real(kernel_exponent(p, z, w)) - (np.abs(z) ** 2 + abs(w) ** 2) / 2) / math.sqrt(abs(p.s))

    return integrate_area(g, grid, scale).real


def l1_profile_ceiling(p: ParameterPair) -> float:
    """``2 pi sqrt(|s|) / sqrt(|s|^2 - |t|^2)``, the supremum of the profile."""
    return 2 * math.pi * math.sqrt(abs(p.s)) / math.sqrt(p.gap)


def operator_norm_ceiling(p: ParameterPair) -> float:
    """``2 sqrt(|s|) / sqrt(|s|^2 - |t|^2)``, bounding ``||T||`` on every ``F^p``."""
    return 2 * math.sqrt(abs(p.s)) / math.sqrt(p.gap)


def weyl_apply(u: complex, f: FockCoefficients | Callable) -> Callable:
    """``W_u f(z) = k_u(z) f(z - u) = e^{z conj(u) - |u|^2/2} f(z - u)``."""
    u = complex(u)
    fn = f if callable(f) else FockCoefficients(f)

    def shifted(z):
        z = np.asarray(z, dtype=complex)
        return np.exp(z * u.conjugate() - abs(u) ** 2 / 2) * fn(z - u)

    return shifted


def finfty_norm_numeric(
    f: Callable,
    radius: float = 4.0,
    points: int = 201,
    max_radius: float = 64.0,
    tail_ratio: float = 1e-10,
    refine_steps: int = 40,
) -> float:
    """Grid supremum of ``|f(z)| e^{-|z|^2/2}`` over the plane.

    The square ``[-R, R]^2`` is doubled until the values on its outer ring
    fall below ``tail_ratio`` times the current maximum, then the maximiser is
    located by repeatedly zooming a small grid around the best point.
    """

    def weighted(z):
        z = np.asarray(z, dtype=complex)
        return np.abs(f(z)) * np.exp(-np.abs(z) ** 2 / 2)

    r = radius
    while True:
        xs = np.linspace(-r, r, points)
        z = xs[:, None] + 1j * xs[None, :]
        vals = weighted(z)
        best = float(vals.max())
        ring = np.abs(z) > 0.9 * r
        if vals[ring].max() < tail_ratio * best or r >= max_radius:
            break
        r *= 2
    k = int(np.argmax(vals))
    center = z.flat[k]
    half = 2 * (xs[1] - xs[0])
    for _ in range(refine_steps):
        xs = np.linspace(-half, half, 21)
        zz = center + xs[:, None] + 1j * xs[None, :]
        v = weighted(zz)
        k = int(np.argmax(v))
        center = zz.flat[k]
        best = max(best, float(v.flat[k]))
        half *= 0.5
    return best


def profile_samples(radii=(0.0, 1.0, 2.0, 4.0, 8.0), rays: int = 8):
    """``(|w|, arg w)`` pairs along equally spaced rays."""
    return [(r, 2 * math.pi * j / rays) for j in range(rays) for r in radii]
