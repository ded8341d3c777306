"""Branch-correct complex scalars and special-function primitives.

Every square root in the package goes through :func:`principal_sqrt`, which
fixes the argument range to ``(-pi, pi]``. On the negative real axis this
forces the root into the upper half plane, including for inputs that carry a
negative-zero imaginary part.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from .errors import DivergenceError, DomainError

# Factorial tables cover truncation dimensions up to 256 with headroom for
# products such as (2k)! and m! * n!.
LOG_FACTORIAL_MAX = 512


def _check_finite(z) -> None:
    if not np.all(np.isfinite(z)):
        raise DomainError(f"non-finite complex input: {z!r}")


def principal_sqrt(z):
    """Principal square root with argument in ``(-pi/2, pi/2]``.

    Works on Python scalars and NumPy arrays. A negative-zero imaginary part
    is normalised to ``+0`` first, so ``principal_sqrt(-4 - 0j) == 2j``.
    """
    if isinstance(z, np.ndarray):
        _check_finite(z)
        # -0.0 + 0.0 == +0.0 in IEEE arithmetic
        return np.sqrt(z.astype(complex) + 0j)
    z = complex(z)
    _check_finite(z)
    return cmath.sqrt(complex(z.real, z.imag + 0.0))


@lru_cache(maxsize=1)
def _log_factorial_table() -> np.ndarray:
    return np.array([math.lgamma(k + 1) for k in range(LOG_FACTORIAL_MAX + 1)])


def log_factorial(n):
    """``log(n!)`` from a cached table; accepts ints or integer arrays."""
    table = _log_factorial_table()
    if np.any(np.asarray(n) > LOG_FACTORIAL_MAX) or np.any(np.asarray(n) < 0):
        raise DomainError(f"log_factorial index outside [0, {LOG_FACTORIAL_MAX}]")
    return table[n]


def double_factorial(n: int) -> int:
    """``n!!`` with the convention ``(-1)!! = 0!! = 1``."""
    if n < -1:
        raise DomainError("double factorial undefined below -1")
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def hermite(n: int, x):
    """Physicists' Hermite polynomial ``H_n(x)`` by the three-term recurrence."""
    if n < 0:
        raise DomainError("Hermite degree must be non-negative")
    h_prev = np.ones_like(x, dtype=complex) if isinstance(x, np.ndarray) else 1.0 + 0j
    if n == 0:
        return h_prev
    h = 2 * x * h_prev
    for k in range(1, n):
        h_prev, h = h, 2 * x * h - 2 * k * h_prev
    return h


def hermite_coeffs(n: int) -> np.ndarray:
    """Monomial coefficients of ``H_n``, lowest degree first (exact integers)."""
    if n < 0:
        raise DomainError("Hermite degree must be non-negative")
    prev = [1]
    if n == 0:
        return np.array(prev, dtype=float)
    cur = [0, 2]
    for k in range(1, n):
        nxt = [0] * (k + 2)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(prev):
            nxt[i] -= 2 * k * c
        prev, cur = cur, nxt
    return np.array(cur, dtype=float)


def gaussian_moment_coeffs(k: int, nu: complex) -> np.ndarray:
    """Coefficients (in powers of the shift ``m``) of the integral
    ``int_R x^k exp(-nu (x - m)^2) dx``.

    Entry ``i`` multiplies ``m**i``; the polynomial has degree ``k``.
    """
    nu = complex(nu)
    _check_finite(nu)
    if nu.real <= 0:
        raise DivergenceError(f"Gaussian moment diverges for Re(nu) = {nu.real:g} <= 0")
    mass = principal_sqrt(math.pi / nu)
    out = np.zeros(k + 1, dtype=complex)
    for j in range(0, k + 1, 2):
        out[k - j] = mass * math.comb(k, j) * double_factorial(j - 1) * (2 * nu) ** (-(j // 2))
    return out


def gaussian_moment(k: int, nu: complex, m: complex) -> complex:
    """``int_R x^k exp(-nu (x - m)^2) dx`` in closed form, ``Re(nu) > 0``.

    >>> abs(gaussian_moment(1, 1, 3) - 3 * math.sqrt(math.pi)) < 1e-14
    True
    """
    coeffs = gaussian_moment_coeffs(k, nu)
    m = complex(m)
    return complex(sum(c * m**i for i, c in enumerate(coeffs)))
