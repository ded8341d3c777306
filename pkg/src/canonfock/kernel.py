"""The canonical integral kernel ``K^(s,t)`` and its pointwise estimates.

``K^(s,t)(z, w) = s^{-1/2} exp[(t z^2 - conj(t w^2) + 2 z conj(w)) / (2 s)]``

Besides evaluation this module classifies a parameter pair into one of the
four operator regimes, evaluates the kernel upper bound and its constant
``C``, and gives the ``F^p`` / ``F^infty`` norms of the kernel functions
``K_w^(s,t) = K^(s,t)(., w)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidParameterError,
    KernelNotInFpError,
    KernelOverflowError,
    OutOfDomainError,
)
from .scalar import principal_sqrt

#: default tolerance on ``|s|^2 - |t|^2 - 1`` for detecting the unitary boundary
BOUNDARY_TOL = 1e-12
#: largest real part of a kernel exponent we are willing to exponentiate
EXPONENT_LIMIT = 700.0


@dataclass(frozen=True)
class ParameterPair:
    """The pair ``(s, t)`` indexing the operator family; ``s != 0``."""

    s: complex
    t: complex

    def __post_init__(self):
        s, t = complex(self.s), complex(self.t)
        if not (np.isfinite(s) and np.isfinite(t)):
            raise InvalidParameterError(f"non-finite parameters s={s!r}, t={t!r}")
        if s == 0:
            raise InvalidParameterError("s must be nonzero")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    @property
    def abs_s2(self) -> float:
        return abs(self.s) ** 2

    @property
    def abs_t2(self) -> float:
        return abs(self.t) ** 2

    @property
    def gap(self) -> float:
        """``|s|^2 - |t|^2``, positive exactly when the kernel functions are in F^2."""
        return self.abs_s2 - self.abs_t2

    @property
    def discriminant(self) -> float:
        """``|s|^2 - |t|^2 - 1``: zero on the unitary boundary, positive when compact."""
        return self.abs_s2 - self.abs_t2 - 1.0

    def conjugate(self) -> "ParameterPair":
        """The pair ``(conj s, -t)`` of the adjoint operator."""
        return ParameterPair(self.s.conjugate(), -self.t)

    def is_compact(self, tol: float = BOUNDARY_TOL) -> bool:
        return self.discriminant > tol

    def is_bounded(self, tol: float = BOUNDARY_TOL) -> bool:
        return abs(self.s) > abs(self.t) and self.discriminant >= -tol


def unitary_pair(t: complex, theta: float = 0.0) -> ParameterPair:
    """A pair on the unitary boundary: ``s = sqrt(|t|^2 + 1) e^{i theta}``."""
    t = complex(t)
    return ParameterPair(math.sqrt(abs(t) ** 2 + 1.0) * complex(math.cos(theta), math.sin(theta)), t)


class OperatorTag(str, enum.Enum):
    KERNEL_NOT_IN_F2 = "kernel_not_in_f2"
    DENSELY_DEFINED_UNBOUNDED = "densely_defined_unbounded"
    UNITARY = "unitary"
    COMPACT = "compact"


@dataclass(frozen=True)
class OperatorClass:
    tag: OperatorTag
    discriminant: float


def classify(p: ParameterPair, tol: float = BOUNDARY_TOL) -> OperatorClass:
    """Regime of ``T^(s,t)`` on ``F^2``.

    ``|s| <= |t|``: kernel functions leave ``F^2``. Otherwise the sign of the
    discriminant (with ``tol`` slack) separates unbounded, unitary and
    compact operators.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    d = p.discriminant
    if abs(p.s) <= abs(p.t):
        tag = OperatorTag.KERNEL_NOT_IN_F2
    elif abs(d) <= tol:
        tag = OperatorTag.UNITARY
    elif d > tol:
        tag = OperatorTag.COMPACT
    else:
        tag = OperatorTag.DENSELY_DEFINED_UNBOUNDED
    return OperatorClass(tag, d)


def kernel_exponent(p: ParameterPair, z, w):
    """The exponent ``(t z^2 - conj(t w^2) + 2 z conj(w)) / (2 s)``."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return (p.t * z**2 - np.conj(p.t * w**2) + 2 * z * np.conj(w)) / (2 * p.s)


def kernel_eval(p: ParameterPair, z, w):
    """``K^(s,t)(z, w)``; broadcasts over array arguments.

    Raises :class:`KernelOverflowError` rather than returning ``inf`` when an
    exponent's real part exceeds ``EXPONENT_LIMIT``.
    """
    expo = kernel_exponent(p, z, w)
    re = np.real(expo)
    if np.any(re > EXPONENT_LIMIT):
        raise KernelOverflowError(complex(np.ravel(expo)[np.argmax(re)]), EXPONENT_LIMIT)
    out = np.exp(expo) / principal_sqrt(p.s)
    return complex(out) if out.ndim == 0 else out


def adjoint_phase(s: complex) -> complex:
    """``sqrt(conj s) / conj(sqrt s)``: ``-1`` on the negative real axis, else ``+1``."""
    s = complex(s)
    if s == 0:
        raise InvalidParameterError("s must be nonzero")
    return principal_sqrt(s.conjugate()) / principal_sqrt(s).conjugate()


def kernel_bound_constant(p: ParameterPair) -> float:
    """The constant ``C >= |s|^{-1/2}`` of the kernel upper bound (needs ``|s| > |t|``)."""
    a, b = p.abs_s2, p.abs_t2
    if abs(p.s) <= abs(p.t):
        raise OutOfDomainError("kernel bound requires |s| > |t|")
    q = 4 * a - b
    bracket = 2 * abs(p.s) / math.sqrt(q)
    return abs(p.s) ** -0.5 * bracket ** (2 * q / (3 * a - b + 1))


def kernel_bound(p: ParameterPair, z, w):
    """Upper bound on ``|K^(s,t)(z, w)|`` valid for ``|s| > |t|``.

    Returns ``(bound, C)``; ``bound`` broadcasts over ``z`` and ``w``.
    """
    c = kernel_bound_constant(p)
    a, b = p.abs_s2, p.abs_t2
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    denom = 3 * a - b + 1
    expo = (a + 1) * (np.abs(z) ** 2 + np.abs(w) ** 2) / denom - (
        p.discriminant * np.real(p.s * np.conj(z) * w) / (a * denom)
    )
    bound = c * np.exp(expo)
    return (float(bound) if bound.ndim == 0 else bound), c


def log_fp_kernel_norm(p: ParameterPair, w, pnorm: float):
    """``log ||K_w^(s,t)||_p`` for ``0 < p < infinity`` (vectorised in ``w``)."""
    if abs(p.s) <= abs(p.t):
        raise KernelNotInFpError("K_w belongs to F^p only when |s| > |t|")
    if not 0 < pnorm < math.inf:
        raise ValueError("pnorm must lie in (0, inf)")
    w = np.asarray(w, dtype=complex)
    gap = p.gap
    phase_coeff = p.t * (-p.discriminant) / (2 * p.s.conjugate() * gap)
    out = (
        (1.0 / pnorm - 0.5) * math.log(abs(p.s))
        - math.log(gap) / (2 * pnorm)
        + np.abs(w) ** 2 / (2 * gap)
        + np.real(phase_coeff * w**2)
    )
    return float(out) if out.ndim == 0 else out


def fp_kernel_norm(p: ParameterPair, w, pnorm: float):
    """Closed form of ``||K_w^(s,t)||_p``, ``0 < p < infinity``, ``|s| > |t|``."""
    out = np.exp(log_fp_kernel_norm(p, w, pnorm))
    return float(out) if np.ndim(out) == 0 else out


def log_finfty_kernel_norm(p: ParameterPair, w):
    """``log ||K_w^(s,t)||_infty`` by exact maximisation (``|s| > |t|``).

    ``log(|K_w(z)| e^{-|z|^2/2})`` is a concave quadratic in ``(Re z, Im z)``
    when ``|t| < |s|``, so its supremum is attained at the unique critical
    point and has the closed value ``k - c^T H^{-1} c / 2``.
    """
    if abs(p.s) <= abs(p.t):
        raise KernelNotInFpError("closed sup-norm needs |s| > |t|")
    w = np.asarray(w, dtype=complex)
    alpha = p.t / (2 * p.s)
    beta = np.conj(w) / p.s
    h11 = 2 * alpha.real - 1
    h22 = -2 * alpha.real - 1
    h12 = -2 * alpha.imag
    det = h11 * h22 - h12 * h12
    c1, c2 = beta.real, -beta.imag
    # c^T H^{-1} c with H^{-1} = [[h22, -h12], [-h12, h11]] / det
    quad = (h22 * c1 * c1 - 2 * h12 * c1 * c2 + h11 * c2 * c2) / det
    const = np.real(-np.conj(p.t * w**2) / (2 * p.s)) - 0.5 * math.log(abs(p.s))
    out = const - 0.5 * quad
    return float(out) if out.ndim == 0 else out


def finfty_kernel_norm(p: ParameterPair, w):
    """``sup_z |K_w^(s,t)(z)| e^{-|z|^2/2}``."""
    out = np.exp(log_finfty_kernel_norm(p, w))
    return float(out) if np.ndim(out) == 0 else out


def optimal_epsilon(p: ParameterPair) -> float:
    """Maximiser ``1 / (|s| (|s| - |t|))`` of the sup-norm lower bound."""
    if abs(p.s) <= abs(p.t):
        raise OutOfDomainError("optimal epsilon needs |s| > |t|")
    return 1.0 / (abs(p.s) * (abs(p.s) - abs(p.t)))


def finfty_norm_bounds(
    p: ParameterPair, w: complex, eps: float = -1.0, tol: float = BOUNDARY_TOL
) -> tuple[float, float | None]:
    """Lower and upper bounds on ``||K_w^(s,t)||_infty``.

    A negative ``eps`` selects the maximising value from :func:`optimal_epsilon`.
    ``upper`` is ``None`` below the unitary boundary, where no upper estimate
    is available.
    """
    if abs(p.s) < abs(p.t):
        raise OutOfDomainError("sup-norm bounds need |s| >= |t|")
    w = complex(w)
    a, b = p.abs_s2, p.abs_t2
    if eps < 0:
        eps = optimal_epsilon(p)
    aw2 = abs(w) ** 2
    lower = (
        abs(p.s) ** -0.5
        * math.exp(((eps**2 * a - 1) * (p.s * p.t * w * w)).real / (2 * a))
        * math.exp((2 * eps - eps**2 * a) * aw2 / 2)
    )
    upper = None
    if p.discriminant >= -tol:
        c = kernel_bound_constant(p)
        d = max(p.discriminant, 0.0)
        upper = math.exp(aw2 / 2) * c * math.exp(-d * (a - 1) * aw2 / (2 * a * (3 * a - b + 1)))
    return lower, upper
