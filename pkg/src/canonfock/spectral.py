"""Singular values, Schatten norms, trace and eigenfunctions of compact ``T^(s,t)``.

Closed forms are paired with finite-section numerics: the singular values of
an ``N x N`` section come from a Hermitian eigensolve of ``M^H M``, and the
eigenfunctions ``Q_n(z) exp(gamma z^2 / 2)`` are checked directly against that
Gram matrix.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, DomainError, InternalConsistencyError, NotCompactError
from .kernel import BOUNDARY_TOL, ParameterPair, kernel_exponent
from .operator import MAX_DIM, FockCoefficients, TruncatedOperator, build_matrix, trace_diagonal
from .quadrature import QuadraticForm2, QuadratureGrid, gauss_hermite, gaussian_quadratic_form_r2, integrate_area
from .scalar import gaussian_moment_coeffs, hermite_coeffs, log_factorial, principal_sqrt

MAX_EIGEN_INDEX = 32
TAIL_TARGET = 1e-12


def _require_compact(p: ParameterPair) -> None:
    # same boundary tolerance as classify, so a pair tagged unitary is never treated as compact
    if not p.discriminant > BOUNDARY_TOL:
        raise NotCompactError(
            f"T^(s,t) is not compact: |s|^2 - |t|^2 - 1 = {p.discriminant:.6g} <= 0"
        )


@dataclass(frozen=True)
class GammaSolution:
    """Root of ``conj(st) g^2 + (|s|^2+|t|^2+1) g + st = 0`` inside the unit disk."""

    gamma: complex
    lambda0: float
    ratio: float
    #: ``|s|^2 + gamma conj(st)``, real and larger than ``|s|``
    shifted: float


def gamma_root(p: ParameterPair) -> GammaSolution:
    """The unique root in the unit disk, computed without cancellation.

    The two roots multiply to ``st / conj(st)`` (modulus one). The large root
    has no cancellation, and dividing it out gives
    ``gamma = -2 st / (B + sqrt((|s|^2-|t|^2-1)^2 + 4|s|^2))`` with
    ``B = |s|^2 + |t|^2 + 1``.
    """
    _require_compact(p)
    a, b = p.abs_s2, p.abs_t2
    if p.t == 0:
        gamma = 0j
        shifted = a
    else:
        big_b = a + b + 1
        root = math.sqrt(p.discriminant**2 + 4 * a)
        gamma = -2 * p.s * p.t / (big_b + root)
        gamma_far = -(big_b + root) / (2 * (p.s * p.t).conjugate())
        if not (abs(gamma) < 1 < abs(gamma_far)):
            raise InternalConsistencyError("expected exactly one root in the unit disk")
        g_st = gamma * (p.s * p.t).conjugate()
        if abs(g_st.imag) > 1e-12 * max(1.0, abs(g_st)):
            raise InternalConsistencyError(f"gamma conj(st) not real: {g_st!r}")
        shifted = a + g_st.real
    ratio = abs(p.s) / shifted
    return GammaSolution(complex(gamma), ratio, ratio, shifted)


def gamma_residual(p: ParameterPair, sol: GammaSolution) -> float:
    g = sol.gamma
    st = p.s * p.t
    return abs(st.conjugate() * g * g + (p.abs_s2 + p.abs_t2 + 1) * g + st)


def singular_value_base(p: ParameterPair) -> float:
    """Geometric ratio ``2|s| / (d + sqrt(d^2 + 4|s|^2))``, ``d = |s|^2-|t|^2-1``."""
    _require_compact(p)
    d = p.discriminant
    return 2 * abs(p.s) / (d + math.sqrt(d * d + 4 * p.abs_s2))


def closed_singular_values(p: ParameterPair, count: int) -> np.ndarray:
    """``mu_n = base^{n + 1/2}`` for ``n < count``, in decreasing order.

    The base is computed twice, once directly from ``|s|, |t|`` and once via
    :func:`gamma_root`; a disagreement beyond ``1e-13`` is an error.
    """
    if count < 1:
        raise DomainError("count must be positive")
    base = singular_value_base(p)
    via_gamma = gamma_root(p).ratio
    if abs(base - via_gamma) > 1e-13 * base:
        raise InternalConsistencyError(f"singular value bases disagree: {base!r} vs {via_gamma!r}")
    return base ** (np.arange(count) + 0.5)


def numeric_singular_values(T: TruncatedOperator, count: int | None = None) -> np.ndarray:
    """Largest singular values of the section, from ``eigvalsh(M^H M)``."""
    count = T.dim if count is None else count
    if not 1 <= count <= T.dim:
        raise DomainError(f"count must lie in [1, {T.dim}]")
    ev = np.linalg.eigvalsh(T.gram())
    sv = np.sqrt(np.clip(ev, 0.0, None))[::-1]
    return sv[:count]


def auto_dim(p: ParameterPair, target: float = TAIL_TARGET, start: int = 16) -> int:
    """Smallest ``16 * 2^k`` with ``mu_N / mu_0 < target``, capped at 256."""
    base = singular_value_base(p)
    n = start
    while base**n >= target and n < MAX_DIM:
        n *= 2
    return min(n, MAX_DIM)


def schatten_norm_closed(p: ParameterPair, pexp: float) -> float:
    """``||T||_{S_p} = mu_0 (1 - mu_0^{2p})^{-1/p}``; ``pexp = inf`` gives ``mu_0``."""
    if not pexp > 0:
        raise DomainError("Schatten exponent must be positive")
    mu0 = math.sqrt(singular_value_base(p))
    if math.isinf(pexp):
        return mu0
    return mu0 * (1.0 - mu0 ** (2 * pexp)) ** (-1.0 / pexp)


def schatten_power_sum_gamma(p: ParameterPair, pexp: float) -> float:
    """``sum mu_n^p`` written through ``gamma``: ``[|s| X]^{p/2} / (X^p - |s|^p)``."""
    x = gamma_root(p).shifted
    a = abs(p.s)
    return (a * x) ** (pexp / 2) / (x**pexp - a**pexp)


def hilbert_schmidt_closed(p: ParameterPair) -> float:
    """``||T||_{S_2}^2 = |s| / (|s|^2 - |t|^2 - 1)``."""
    _require_compact(p)
    return abs(p.s) / p.discriminant


def schatten_norm_numeric(svals: np.ndarray, pexp: float) -> float:
    svals = np.asarray(svals, dtype=float)
    if math.isinf(pexp):
        return float(svals.max())
    return float(np.sum(svals**pexp) ** (1.0 / pexp))


class BoundSide(str, enum.Enum):
    UPPER = "upper"
    LOWER = "lower"
    BOTH = "both"


def schatten_bounds(p: ParameterPair, pexp: float) -> tuple[float, str]:
    """Kernel-estimate bound on ``||T||_{S_p}^p`` (the p-th power).

    The value ``2|s| / (p d (|s|^2-|t|^2)^{(p-2)/4})`` bounds from above for
    ``p <= 2``, from below for ``p >= 2``, and is exact at ``p = 2``.
    """
    _require_compact(p)
    if not pexp > 0:
        raise DomainError("Schatten exponent must be positive")
    value = 2 * abs(p.s) / (pexp * p.discriminant * p.gap ** ((pexp - 2) / 4))
    if pexp == 2:
        side = BoundSide.BOTH
    elif pexp < 2:
        side = BoundSide.UPPER
    else:
        side = BoundSide.LOWER
    return value, side


def trace_matrix(p: ParameterPair) -> QuadraticForm2:
    """The symmetric matrix ``A`` with ``Berezin(x + iy) e^{...} = e^{-u^T A u} / sqrt(s)``."""
    s, t = p.s, p.t
    tc = t.conjugate()
    return QuadraticForm2(
        a11=-(t - tc - 2 * s + 2) / (2 * s),
        a12=-(t + tc) * 1j / (2 * s),
        a22=-(-t + tc - 2 * s + 2) / (2 * s),
    )


def trace_closed(p: ParameterPair) -> complex:
    """``tr T = s^{-1/2} sqrt(s^2 / ((s-1)^2 + |t|^2))``.

    Cross-checked against ``pi / sqrt(det A)`` from the two-dimensional
    Gaussian integral of the Berezin transform.
    """
    _require_compact(p)
    s = p.s
    value = principal_sqrt(s * s / ((s - 1) ** 2 + p.abs_t2)) / principal_sqrt(s)
    via_form = gaussian_quadratic_form_r2(trace_matrix(p)) / (math.pi * principal_sqrt(s))
    if abs(value - via_form) > 1e-10 * abs(value):
        raise InternalConsistencyError(f"trace routes disagree: {value!r} vs {via_form!r}")
    return complex(value)


def trace_section(p: ParameterPair, rtol: float = 1e-14) -> tuple[complex, int]:
    """Diagonal sum of a finite section, with its dimension.

    Starts from :func:`auto_dim` and keeps doubling until two successive
    sections agree to ``rtol``: diagonal entries of a non-normal section decay
    more slowly than the singular values that drive :func:`auto_dim`.
    """
    _require_compact(p)
    n = auto_dim(p)
    prev = trace_diagonal(build_matrix(p, n))
    while n < MAX_DIM:
        nxt = min(2 * n, MAX_DIM)
        cur = trace_diagonal(build_matrix(p, nxt))
        n = nxt
        done = abs(cur - prev) <= rtol * max(1.0, abs(cur))
        prev = cur
        if done:
            break
    return prev, n


def trace_quadrature(p: ParameterPair, grid: QuadratureGrid | None = None) -> complex:
    """``(1/pi) int Berezin(T)(z) dA(z)`` by Gauss-Hermite on the raw kernel exponent."""
    _require_compact(p)
    grid = grid or gauss_hermite()
    eig = np.linalg.eigvalsh(trace_matrix(p).as_array().real)
    scale = 1.0 / math.sqrt(0.5 * (eig[0] + eig[-1]))

    root = principal_sqrt(p.s)

    def berezin_diag(z):
        # damping folded into the exponent so large nodes cannot overflow
        return np.exp(kernel_exponent(p, z, z) - np.abs(z) ** 2) / root

    return integrate_area(berezin_diag, grid, scale) / math.pi


@dataclass(frozen=True)
class EigenfunctionSpec:
    """Data of the ``n``-th eigenvector ``Q_n(z) e^{gamma z^2/2}`` of ``|T|^2``."""

    params: ParameterPair
    n: int
    gamma: complex
    nu: complex
    b: complex
    eigenvalue: float
    q_poly: np.ndarray
    fock_coeffs: FockCoefficients
    #: norm of the discarded coefficients (indices dim .. 2*dim) after normalisation
    tail_norm: float


def eigen_parameters(p: ParameterPair) -> tuple[complex, complex, complex]:
    """``(gamma, nu, b)`` of the Hermite eigenfunction family."""
    sol = gamma_root(p)
    x = sol.shifted
    a2 = p.abs_s2**2
    conj_st = (p.s * p.t).conjugate()
    g = sol.gamma
    nu = (x**2 * (x**2 + (g + 1) * conj_st * (-p.discriminant) / 2) - a2) / (x**4 - a2)
    nu = complex(nu)
    if nu.real <= 0:
        raise InternalConsistencyError(f"Re(nu) = {nu.real:g} should be positive")
    b = principal_sqrt(g + 1) / (2 * principal_sqrt(nu))
    return g, nu, b


def q_polynomial(n: int, nu: complex, b: complex) -> np.ndarray:
    """Coefficients of ``Q_n(z) = int H_n(x) exp(-nu (x - b z)^2) dx`` in powers of ``z``."""
    h = hermite_coeffs(n)
    q = np.zeros(n + 1, dtype=complex)
    for k, hk in enumerate(h):
        if hk == 0:
            continue
        q[: k + 1] += hk * gaussian_moment_coeffs(k, nu)
    return q * b ** np.arange(n + 1)


def _times_gaussian(q: np.ndarray, gamma: complex, dim: int) -> np.ndarray:
    # e_m coefficients of Q(z) exp(gamma z^2 / 2):
    # sum_{i + 2k = m} q_i (gamma/2)^k / k! * sqrt(m!)
    half = gamma / 2
    lh = math.log(abs(half)) if half != 0 else -math.inf
    ph = np.angle(half)
    lf = log_factorial(np.arange(dim))
    out = np.zeros(dim, dtype=complex)
    for i, qi in enumerate(q):
        if qi == 0 or i >= dim:
            continue
        m = np.arange(i, dim, 2)
        k = (m - i) // 2
        if lh == -math.inf:
            m, k = m[:1], k[:1]
            logk = np.zeros(1)
        else:
            logk = k * lh
        out[m] += qi * np.exp(0.5 * lf[m] - lf[k] + logk + 1j * k * ph)
    return out


def eigenfunction_coeffs(p: ParameterPair, n: int, N: int) -> EigenfunctionSpec:
    """Unit-norm ``e_m`` coefficients (``m < N``) of ``Q_n(z) e^{gamma z^2/2}``."""
    if not 0 <= n <= MAX_EIGEN_INDEX:
        raise DomainError(f"eigen index must lie in [0, {MAX_EIGEN_INDEX}]")
    if not 1 <= N <= MAX_DIM:
        raise DomainError(f"dimension must lie in [1, {MAX_DIM}]")
    g, nu, b = eigen_parameters(p)
    q = q_polynomial(n, nu, b)
    full = _times_gaussian(q, g, 2 * N)
    full /= np.linalg.norm(full)
    ratio = gamma_root(p).ratio
    return EigenfunctionSpec(
        params=p,
        n=n,
        gamma=g,
        nu=nu,
        b=b,
        eigenvalue=ratio ** (2 * n + 1),
        q_poly=q,
        fock_coeffs=FockCoefficients(full[:N]),
        tail_norm=float(np.linalg.norm(full[N:])),
    )


def verify_eigenpair(T: TruncatedOperator, spec: EigenfunctionSpec) -> float:
    """Relative residual ``||M^H M v - lambda_n v|| / ||v||``."""
    if spec.params != T.params:
        raise DomainError("eigenfunction was built for different parameters")
    if spec.fock_coeffs.dim > T.dim:
        raise DimensionMismatchError("eigenvector longer than the section")
    v = np.zeros(T.dim, dtype=complex)
    v[: spec.fock_coeffs.dim] = spec.fock_coeffs.coeffs
    r = T.gram() @ v - spec.eigenvalue * v
    return float(np.linalg.norm(r) / np.linalg.norm(v))


# -- report -----------------------------------------------------------------

REPORT_EXPONENTS = (1.0, 2.0, 4.0, math.inf)


def _pkey(pexp: float) -> str:
    return "inf" if math.isinf(pexp) else f"{pexp:g}"


@dataclass
class SpectralReport:
    params: ParameterPair
    dim: int
    gamma: GammaSolution
    closed_singular_values: np.ndarray
    numeric_singular_values: np.ndarray
    schatten: dict[str, tuple[float, float]]
    trace_closed: complex
    trace_numeric: complex
    residuals: list[float]
    notes: list[str] = field(default_factory=list)

    @property
    def max_abs_error(self) -> float:
        return float(np.max(np.abs(self.closed_singular_values - self.numeric_singular_values)))

    def to_dict(self) -> dict:
        pr = self.params
        return {
            "s": [pr.s.real, pr.s.imag],
            "t": [pr.t.real, pr.t.imag],
            "dim": self.dim,
            "gamma": [self.gamma.gamma.real, self.gamma.gamma.imag],
            "singular_values": [
                {"n": i, "closed": float(c), "numeric": float(x)}
                for i, (c, x) in enumerate(zip(self.closed_singular_values, self.numeric_singular_values))
            ],
            "schatten": {k: {"closed": c, "numeric": x} for k, (c, x) in self.schatten.items()},
            "trace": {
                "closed": [self.trace_closed.real, self.trace_closed.imag],
                "numeric": [self.trace_numeric.real, self.trace_numeric.imag],
            },
            "residuals": list(self.residuals),
            "notes": list(self.notes),
        }


def spectral_report(p: ParameterPair, count: int, dim: int | None = None, residual_count: int = 4) -> SpectralReport:
    """Closed forms next to their finite-section counterparts."""
    _require_compact(p)
    dim = auto_dim(p) if dim is None else dim
    T = build_matrix(p, dim)
    count = min(count, dim)
    closed = closed_singular_values(p, count)
    all_numeric = numeric_singular_values(T)
    schatten = {
        _pkey(q): (schatten_norm_closed(p, q), schatten_norm_numeric(all_numeric, q)) for q in REPORT_EXPONENTS
    }
    residuals = [
        verify_eigenpair(T, eigenfunction_coeffs(p, n, dim))
        for n in range(min(residual_count, count, MAX_EIGEN_INDEX + 1))
    ]
    notes = []
    if p.t == 0:
        notes.append(
            "t = 0: lambda0 = |s|/(|s|^2 + gamma conj(st)) = 1/|s|, not 1; "
            "the diagonal action T e_n = s^-(n+1/2) e_n confirms 1/|s|"
        )
    return SpectralReport(
        params=p,
        dim=dim,
        gamma=gamma_root(p),
        closed_singular_values=closed,
        numeric_singular_values=all_numeric[:count],
        schatten=schatten,
        trace_closed=trace_closed(p),
        trace_numeric=trace_section(p)[0],
        residuals=residuals,
        notes=notes,
    )
