"""Finite sections of ``T^(s,t)`` in the monomial basis ``e_n = z^n / sqrt(n!)``.

Entries are exact up to roundoff: the kernel factorises as a product of three
exponentials whose power series give

    M[m, n] = sqrt(m! n!) / sqrt(s) * sum_{2j+l=m, 2k+l=n}
              (t/2s)^j/j! * (-conj(t)/2s)^k/k! * (1/s)^l/l!

Magnitudes are accumulated in log space so ``N`` up to 256 never overflows.

The terms of that sum can be as large as ``((|t| + 1) / |s|)^N`` while the
entry itself stays below one, so for ``|s| < |t| + 1`` double precision
cancels catastrophically at large ``N``. There the entries come instead from
the two-term recurrences implied by the kernel's differential equations

    sqrt(n+1) M[0, n+1] = -conj(t) sqrt(n) M[0, n-1] / s
    sqrt(m+1) M[m+1, n] = (t sqrt(m) M[m-1, n] + sqrt(n) M[m, n-1]) / s

run in extended precision with enough guard digits to absorb the growth.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import TextIO

import mpmath
import numpy as np

from .errors import DimensionMismatchError, DomainError, OutOfDomainError
from .kernel import BOUNDARY_TOL, ParameterPair
from .scalar import log_factorial, principal_sqrt

MAX_DIM = 256
#: tolerated growth of summed term magnitudes before switching to extended precision
AMPLIFICATION_LIMIT = 1e2


def monomial_vector(z, dim: int) -> np.ndarray:
    """``[z^n / sqrt(n!)]_{n < dim}``; with ``z`` an array the last axis indexes ``n``."""
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape + (dim,), dtype=complex)
    out[..., 0] = 1.0
    for n in range(1, dim):
        out[..., n] = out[..., n - 1] * z / math.sqrt(n)
    return out


@dataclass(frozen=True)
class FockCoefficients:
    """Coefficients ``<f, e_n>`` of an entire function, truncated to ``dim`` terms."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size == 0:
            raise DomainError("empty coefficient vector")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def dim(self) -> int:
        return self.coeffs.size

    @classmethod
    def basis(cls, n: int, dim: int) -> "FockCoefficients":
        c = np.zeros(dim, dtype=complex)
        c[n] = 1.0
        return cls(c)

    @classmethod
    def kernel(cls, w: complex, dim: int) -> "FockCoefficients":
        """Truncation of the reproducing kernel ``K_w = sum conj(w)^n / sqrt(n!) e_n``."""
        return cls(monomial_vector(np.conj(complex(w)), dim))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def __call__(self, z):
        """Evaluate the partial sum at ``z`` (scalar or array)."""
        vals = monomial_vector(z, self.dim) @ self.coeffs
        return complex(vals) if np.ndim(vals) == 0 else vals


@dataclass(frozen=True)
class TruncatedOperator:
    """``M[m, n] = <T e_n, e_m>`` for ``m, n < dim``; immutable."""

    params: ParameterPair
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatchError(f"expected a square matrix, got {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def gram(self) -> np.ndarray:
        """``M^H M``, the finite-section approximation of ``|T|^2``.

        Formed with an explicit contraction instead of BLAS so the result does
        not depend on the thread count.
        """
        m = self.entries
        return np.einsum("ki,kj->ij", m.conj(), m)


def _log_pow(k: np.ndarray, logabs: float) -> np.ndarray:
    # k * log|x| with the convention 0 * log 0 = 0
    if logabs == -math.inf:
        return np.where(k == 0, 0.0, -math.inf)
    return k * logabs


def amplification(p: ParameterPair, N: int) -> float:
    """Bound on (sum of term magnitudes) / (entry scale) for an ``N x N`` section."""
    return max(1.0, (abs(p.t) + 1.0) / abs(p.s)) ** max(N - 1, 0)


def build_matrix(p: ParameterPair, N: int) -> TruncatedOperator:
    """Exact ``N x N`` finite section of ``T^(s,t)``."""
    if not 1 <= N <= MAX_DIM:
        raise DomainError(f"dimension must lie in [1, {MAX_DIM}]")
    amp = amplification(p, N)
    if amp > AMPLIFICATION_LIMIT:
        return TruncatedOperator(p, _recurrence_entries(p, N, amp) / principal_sqrt(p.s))
    return TruncatedOperator(p, _series_entries(p, N) / principal_sqrt(p.s))


def _series_entries(p: ParameterPair, N: int) -> np.ndarray:
    s, t = p.s, p.t
    alpha = t / (2 * s)
    beta = -t.conjugate() / (2 * s)
    gamma = 1 / s
    la, lb, lc = (math.log(abs(x)) if x != 0 else -math.inf for x in (alpha, beta, gamma))
    pa, pb, pc = (np.angle(x) for x in (alpha, beta, gamma))

    lf = log_factorial(np.arange(N))
    out = np.zeros((N, N), dtype=complex)
    for l in range(N):
        idx = np.arange(l, N, 2)
        j = (idx - l) // 2
        J, K = np.meshgrid(j, j, indexing="ij")
        M_, N_ = np.meshgrid(idx, idx, indexing="ij")
        logmag = (
            0.5 * (lf[M_] + lf[N_])
            - lf[J] - lf[K] - lf[l]
            + _log_pow(J, la) + _log_pow(K, lb) + l * lc
        )
        phase = J * pa + K * pb + l * pc
        out[np.ix_(idx, idx)] += np.exp(logmag + 1j * phase)
    return out


def _recurrence_entries(p: ParameterPair, N: int, amp: float) -> np.ndarray:
    # private context: precision never leaks into the global mpmath state
    ctx = mpmath.MPContext()
    ctx.dps = 30 + int(math.ceil(math.log10(amp)))
    s = ctx.mpc(p.s.real, p.s.imag)
    t = ctx.mpc(p.t.real, p.t.imag)
    tb = ctx.conj(t)
    rt = [ctx.sqrt(k) for k in range(N + 1)]
    zero = ctx.mpc(0)
    m_ = [[zero] * N for _ in range(N)]
    m_[0][0] = ctx.mpc(1)
    for n in range(2, N, 2):
        m_[0][n] = -tb * rt[n - 1] * m_[0][n - 2] / (s * rt[n])
    for n in range(N):
        for m in range(N - 1):
            if (m + 1 + n) % 2:
                continue
            acc = zero
            if m >= 1:
                acc += t * rt[m] * m_[m - 1][n]
            if n >= 1:
                acc += rt[n] * m_[m][n - 1]
            m_[m + 1][n] = acc / (s * rt[m + 1])
    out = np.zeros((N, N), dtype=complex)
    for m in range(N):
        for n in range(m % 2, N, 2):
            out[m, n] = complex(m_[m][n])
    return out


def apply(T: TruncatedOperator, f: FockCoefficients) -> FockCoefficients:
    """Matrix action on a coefficient vector (zero padded to ``T.dim``)."""
    if f.dim > T.dim:
        raise DimensionMismatchError(f"vector of length {f.dim} exceeds operator dimension {T.dim}")
    v = np.zeros(T.dim, dtype=complex)
    v[: f.dim] = f.coeffs
    return FockCoefficients(T.entries @ v)


def generating_function(matrix: np.ndarray, z, w):
    """``sum_{m,n} matrix[m, n] z^m conj(w)^n / sqrt(m! n!)``.

    For the matrix of an operator this rebuilds its integral kernel from the
    finite section.
    """
    n = matrix.shape[0]
    ez = monomial_vector(z, n)
    ew = monomial_vector(np.conj(np.asarray(w, dtype=complex)), n)
    vals = np.einsum("...m,mn,...n->...", ez, matrix, ew)
    return complex(vals) if np.ndim(vals) == 0 else vals


def modsq_kernel_eval(p: ParameterPair, z, w, tol: float = BOUNDARY_TOL):
    """Integral kernel of ``|T^(s,t)|^2 = T* T``; needs ``|s|^2 >= |t|^2 + 1``."""
    if p.discriminant < -tol:
        raise OutOfDomainError("|T|^2 kernel requires |s|^2 >= |t|^2 + 1")
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    gap = p.gap
    c = -p.discriminant / gap
    expo = z * np.conj(w) / gap + c * (p.t / (2 * p.s.conjugate()) * z**2 + p.t.conjugate() / (2 * p.s) * np.conj(w) ** 2)
    out = np.exp(expo) / math.sqrt(gap)
    return complex(out) if out.ndim == 0 else out


def trace_diagonal(T: TruncatedOperator) -> complex:
    return complex(np.sum(np.diag(T.entries)))


# -- export -----------------------------------------------------------------


def matrix_header(T: TruncatedOperator) -> dict:
    return {
        "s": [T.params.s.real, T.params.s.imag],
        "t": [T.params.t.real, T.params.t.imag],
        "dim": T.dim,
    }


def write_matrix_csv(T: TruncatedOperator, out: TextIO) -> None:
    """CSV export: a ``# {json header}`` line, then ``m,n,re,im`` for nonzero entries."""
    out.write("# " + json.dumps(matrix_header(T), separators=(",", ":")) + "\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["m", "n", "re", "im"])
    rows, cols = np.nonzero(T.entries)
    for m, n in zip(rows, cols):
        v = T.entries[m, n]
        writer.writerow([int(m), int(n), repr(float(v.real)), repr(float(v.imag))])


def read_matrix_csv(src: TextIO) -> TruncatedOperator:
    """Inverse of :func:`write_matrix_csv`."""
    first = src.readline()
    if not first.startswith("#"):
        raise ValueError("missing JSON header line")
    header = json.loads(first[1:])
    dim = int(header["dim"])
    entries = np.zeros((dim, dim), dtype=complex)
    for row in csv.DictReader(src):
        entries[int(row["m"]), int(row["n"])] = complex(float(row["re"]), float(row["im"]))
    p = ParameterPair(complex(*header["s"]), complex(*header["t"]))
    return TruncatedOperator(p, entries)


def matrix_to_csv_string(T: TruncatedOperator) -> str:
    buf = io.StringIO()
    write_matrix_csv(T, buf)
    return buf.getvalue()
