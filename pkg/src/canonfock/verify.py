"""Named invariant checks over every module, grouped into ``fast`` and ``full`` suites.

Each check draws its random samples from a generator seeded by the suite seed
and a CRC of the check name, so results do not depend on which checks run or
in what order. A check returns the worst error it observed next to the
tolerance it was held to.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import fockp, kernel, operator, quadrature, scalar, spectral
from .kernel import ParameterPair, unitary_pair

DEFAULT_SEED = 0x5EED
FAULTS = ("conj-phase",)

ACCEPTANCE_PAIRS = ((2, 0), (2, 1), (2, 1j), (3, 1 + 1j))
COMPACT_DECAY_PAIRS = ((2, 0), (3, 1 + 1j), (4, 1))
UNITARY_PAIRS = ((0.0, 0.0), (1.0, 0.7), (1 + 1j, -2.0))
BLOCK_PAIRS = ((0.0, 0.3), (0.05, 0.0), (0.1j, 1.2))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tol: float


@dataclass(frozen=True)
class SuiteConfig:
    name: str
    max_dim: int
    draws: int
    points: int
    seed: int = DEFAULT_SEED
    fault: str | None = None

    def rng(self, check: str) -> np.random.Generator:
        return np.random.default_rng([self.seed, zlib.crc32(check.encode())])


SUITES = {
    "fast": dict(max_dim=64, draws=50, points=1000),
    "full": dict(max_dim=128, draws=100, points=4000),
}


def suite_config(name: str, seed: int = DEFAULT_SEED, fault: str | None = None) -> SuiteConfig:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    return SuiteConfig(name=name, seed=seed, fault=fault, **SUITES[name])


_REGISTRY: dict[str, Callable[[SuiteConfig], tuple[float, float]]] = {}


def invariant(name: str):
    def deco(fn):
        _REGISTRY[name] = fn
        return fn

    return deco


def registered() -> list[str]:
    return list(_REGISTRY)


def _pairs(pairs):
    return [ParameterPair(s, t) for s, t in pairs]


def _random_complex(rng, n, radius):
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    return r * np.exp(2j * math.pi * rng.uniform(0, 1, n))


def random_kernel_pairs(rng, n) -> list[ParameterPair]:
    """Pairs with ``|s| > |t|``, spread over all three regimes."""
    t = _random_complex(rng, n, 2.0)
    s_abs = np.abs(t) + rng.uniform(0.05, 2.0, n)
    phase = np.exp(2j * math.pi * rng.uniform(0, 1, n))
    return [ParameterPair(a * ph, b) for a, ph, b in zip(s_abs, phase, t)]


def random_compact_pairs(rng, n) -> list[ParameterPair]:
    t = _random_complex(rng, n, 2.0)
    d = rng.uniform(0.2, 4.0, n)
    s_abs = np.sqrt(np.abs(t) ** 2 + 1 + d)
    phase = np.exp(2j * math.pi * rng.uniform(0, 1, n))
    return [ParameterPair(a * ph, b) for a, ph, b in zip(s_abs, phase, t)]


def _rel(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


# -- scalar-core ----------------------------------------------------------------


@invariant("sqrt_square")
def _sqrt_square(cfg):
    rng = cfg.rng("sqrt_square")
    z = _random_complex(rng, cfg.points, 10.0)
    z = np.concatenate([z, -rng.uniform(0.1, 10, 50) + 0j, [4, -4, 2j, -1j]])
    r = scalar.principal_sqrt(z)
    worst = float(np.max(np.abs(r * r - z) / (np.abs(z) * np.finfo(float).eps)))
    return worst, 4.0


@invariant("sqrt_branch")
def _sqrt_branch(cfg):
    rng = cfg.rng("sqrt_branch")
    z = _random_complex(rng, cfg.points, 10.0)
    off = scalar.principal_sqrt(np.conj(z)) - np.conj(scalar.principal_sqrt(z))
    neg = -rng.uniform(0.1, 10, 50) + 0j
    on = scalar.principal_sqrt(np.conj(neg)) + np.conj(scalar.principal_sqrt(neg))
    args = np.angle(scalar.principal_sqrt(np.concatenate([z, neg])))
    in_half = float(np.all((args > -math.pi / 2) & (args <= math.pi / 2)))
    return max(float(np.max(np.abs(off))), float(np.max(np.abs(on))), 1.0 - in_half), 1e-14


@invariant("hermite_derivative")
def _hermite_derivative(cfg):
    x = np.linspace(-2.0, 2.0, 17)
    h = 1e-5
    worst = 0.0
    for n in range(1, 21):
        fd = (scalar.hermite(n, x + h) - scalar.hermite(n, x - h)) / (2 * h)
        ex = 2 * n * scalar.hermite(n - 1, x)
        scale = np.maximum(np.abs(ex), np.max(np.abs(ex)) * 1e-3)
        worst = max(worst, float(np.max(np.abs(fd - ex) / scale)))
    return worst, 1e-6


def _moment_oracle(k: int, nu: complex, m: complex) -> complex:
    # composite 40-point Gauss-Legendre on 80 panels spanning the Gaussian
    # support; |e^{-nu (x-m)^2}| peaks at Re m - Im nu Im m / Re nu
    x, w = np.polynomial.legendre.leggauss(40)
    half = math.sqrt(60 / nu.real)
    centre = m.real - nu.imag * m.imag / nu.real
    edges = np.linspace(centre - half, centre + half, 81)
    mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
    rad = 0.5 * (edges[1] - edges[0])
    xs = (mid + rad * x[None, :]).ravel()
    ws = np.tile(rad * w, edges.size - 1)
    return complex(np.sum(ws * xs**k * np.exp(-nu * (xs - m) ** 2)))


@invariant("gaussian_moment_quadrature")
def _gaussian_moment_quadrature(cfg):
    rng = cfg.rng("gaussian_moment_quadrature")
    worst = 0.0
    for _ in range(20 if cfg.name == "fast" else 100):
        re_nu = rng.uniform(0.3, 3)
        # milder oscillation keeps the double-precision oracle well conditioned
        nu = complex(re_nu, rng.uniform(-1, 1) * re_nu)
        m = complex(rng.uniform(-1.5, 1.5), rng.uniform(-0.5, 0.5))
        for k in range(11):
            num = _moment_oracle(k, nu, m)
            worst = max(worst, abs(scalar.gaussian_moment(k, nu, m) - num) / abs(num))
    return worst, 1e-9


# -- quadrature -----------------------------------------------------------------


@invariant("grid_normalization")
def _grid_normalization(cfg):
    worst = 0.0
    for order in (16, 64, 96, 192):
        g = quadrature.gauss_hermite(order)
        worst = max(worst, abs(math.fsum(g.weights) / math.sqrt(math.pi) - 1))
        if not (np.all(np.diff(g.nodes) > 0) and np.array_equal(g.nodes, -g.nodes[::-1])):
            worst = math.inf
    return worst, 1e-12


def random_eqic_params(rng, n) -> list[quadrature.GaussianIntegralParams]:
    out = []
    while len(out) < n:
        g, d = _random_complex(rng, 2, 1.0)
        if abs(g + d) > 1.6:
            continue
        a, b = _random_complex(rng, 2, 2.0)
        out.append(quadrature.GaussianIntegralParams(g, d, a, b))
    return out


@invariant("gaussian_integral_identity")
def _gaussian_integral_identity(cfg):
    grid = quadrature.gauss_hermite(96)
    worst = 0.0
    for prm in random_eqic_params(cfg.rng("gaussian_integral_identity"), 200):
        num = quadrature.integrate_gaussian_plane(
            quadrature.gaussian_integrand(prm), grid, center=quadrature.gaussian_integrand_peak(prm)
        )
        worst = max(worst, _rel(num, quadrature.gaussian_integral_closed(prm)))
    return worst, 1e-8


def random_quadratic_forms(rng, n) -> list[quadrature.QuadraticForm2]:
    out = []
    while len(out) < n:
        re = rng.normal(size=(2, 2))
        re = re @ re.T + 0.3 * np.eye(2)
        im = rng.normal(size=(2, 2))
        im = 0.5 * (im + im.T)
        a = re + 1j * im
        form = quadrature.QuadraticForm2(a[0, 0], a[0, 1], a[1, 1])
        eig = np.linalg.eigvalsh(re)
        if eig[-1] / eig[0] < 8 and np.max(np.abs(im)) < 1.5 * eig[0] + 1:
            out.append(form)
    return out


@invariant("quadratic_form_identity")
def _quadratic_form_identity(cfg):
    worst = 0.0
    for form in random_quadratic_forms(cfg.rng("quadratic_form_identity"), 100):
        num = quadrature.quadratic_form_r2_numeric(form)
        worst = max(worst, _rel(num, quadrature.gaussian_quadratic_form_r2(form)))
    return worst, 1e-8


@invariant("order_doubling")
def _order_doubling(cfg):
    g96, g192 = quadrature.gauss_hermite(96), quadrature.gauss_hermite(192)
    worst = 0.0
    for p in _pairs(ACCEPTANCE_PAIRS):
        worst = max(worst, _rel(spectral.trace_quadrature(p, g96), spectral.trace_quadrature(p, g192)))
        for q in (1.0, 2.0, 4.0):
            a = fockp.berezin_modsq_lp_norm_numeric(p, q, g96)
            b = fockp.berezin_modsq_lp_norm_numeric(p, q, g192)
            worst = max(worst, _rel(a, b))
    return worst, 1e-6


@invariant("fp_norm_quadrature")
def _fp_norm_quadrature(cfg):
    worst = 0.0
    pairs = _pairs(ACCEPTANCE_PAIRS + ((1, 0), (1.5, 0.4j)))
    for p in pairs:
        for w in (0.0, 0.7 - 0.3j):
            for q in (1.0, 2.0, 3.0):
                num = quadrature.fp_norm_numeric(lambda z: kernel.kernel_eval(p, z, w), q)
                worst = max(worst, _rel(num, kernel.fp_kernel_norm(p, w, q)))
    return worst, 1e-8


# -- kernel ---------------------------------------------------------------------


@invariant("conjugate_symmetry")
def _conjugate_symmetry(cfg):
    rng = cfg.rng("conjugate_symmetry")
    xs = np.linspace(-1.5, 1.5, 20)
    grid = xs[:, None] + 1j * xs[None, :]
    z, w = np.meshgrid(grid.ravel(), grid.ravel()[::7], indexing="ij")
    pairs = [ParameterPair(s, t) for s, t in ((-2, 0.5), (-1.5, 1j), (1j, 0.3), (2, 1))]
    pairs += random_kernel_pairs(rng, 8)
    worst = 0.0
    for p in pairs:
        q = p.conjugate()
        phase = kernel.adjoint_phase(p.s)
        if cfg.fault == "conj-phase":
            phase = -phase
        lhs = np.conj(kernel.kernel_eval(p, z, w))
        rhs = phase * kernel.kernel_eval(q, w, z)
        worst = max(worst, _rel(lhs, rhs))
    return worst, 1e-12


@invariant("kernel_bound")
def _kernel_bound(cfg):
    rng = cfg.rng("kernel_bound")
    worst = 0.0
    for p in random_kernel_pairs(rng, cfg.draws):
        z = _random_complex(rng, cfg.points, 4.0)
        w = _random_complex(rng, cfg.points, 4.0)
        bound, _ = kernel.kernel_bound(p, z, w)
        worst = max(worst, float(np.max(np.abs(kernel.kernel_eval(p, z, w)) / bound)))
    # ratio <= 1 up to a relative float slack
    return worst - 1.0, 1e-12


@invariant("fp2_norm_via_gaussian_integral")
def _fp2_norm_identity(cfg):
    rng = cfg.rng("fp2_norm_via_gaussian_integral")
    worst = 0.0
    for p in random_kernel_pairs(rng, cfg.draws):
        w = _random_complex(rng, 8, 2.0)
        a = 2 * kernel.log_fp_kernel_norm(p, w, 2.0)
        b = fockp.log_kernel_norm_sq_gaussian(p, w)
        worst = max(worst, float(np.max(np.abs(np.expm1(a - b)))))
    return worst, 1e-10


@invariant("finfty_bounds_order")
def _finfty_bounds_order(cfg):
    rng = cfg.rng("finfty_bounds_order")
    worst = -math.inf
    pairs = [p for p in random_kernel_pairs(rng, 2 * cfg.draws) if p.is_bounded()][: cfg.draws]
    pairs += [unitary_pair(t, th) for t, th in UNITARY_PAIRS]
    for p in pairs:
        for w in _random_complex(rng, 10, 3.0):
            lo, hi = kernel.finfty_norm_bounds(p, w)
            exact = kernel.finfty_kernel_norm(p, w)
            # lower <= exact <= upper, as relative excesses
            worst = max(worst, lo / exact - 1.0, exact / hi - 1.0)
    return worst, 1e-12


@invariant("classify_conjugation")
def _classify_conjugation(cfg):
    rng = cfg.rng("classify_conjugation")
    bad = 0
    t = _random_complex(rng, cfg.points, 3.0)
    s = _random_complex(rng, cfg.points, 3.0) + 0.01
    for a, b in zip(s, t):
        p = ParameterPair(a, b)
        bad += kernel.classify(p).tag != kernel.classify(p.conjugate()).tag
    for tt, th in UNITARY_PAIRS:
        u = unitary_pair(tt, th)
        bad += kernel.classify(u).tag is not kernel.OperatorTag.UNITARY
    return float(bad), 0.0


# -- operator-matrix ------------------------------------------------------------


@invariant("parity_zeros")
def _parity_zeros(cfg):
    worst = 0.0
    n = cfg.max_dim
    odd = (np.arange(n)[:, None] + np.arange(n)[None, :]) % 2 == 1
    for p in _pairs(ACCEPTANCE_PAIRS) + random_kernel_pairs(cfg.rng("parity_zeros"), 4):
        m = operator.build_matrix(p, n).entries
        worst = max(worst, float(np.max(np.abs(m[odd]))))
    return worst, 0.0


@invariant("adjoint_relation")
def _adjoint_relation(cfg):
    worst = 0.0
    pairs = _pairs(ACCEPTANCE_PAIRS + ((-2, 0.5), (1j, 0.2)))
    for p in pairs:
        a = operator.build_matrix(p, 64).entries
        b = operator.build_matrix(p.conjugate(), 64).entries
        worst = max(worst, float(np.max(np.abs(kernel.adjoint_phase(p.s) * b - a.conj().T))))
    return worst, 1e-12


@invariant("generating_function")
def _generating_function(cfg):
    rng = cfg.rng("generating_function")
    worst = 0.0
    z = _random_complex(rng, 200, 1.0)
    w = _random_complex(rng, 200, 1.0)
    for p in _pairs(ACCEPTANCE_PAIRS) + random_kernel_pairs(rng, 4):
        m = operator.build_matrix(p, 64).entries
        gf = operator.generating_function(m, z, w)
        worst = max(worst, float(np.max(np.abs(gf - kernel.kernel_eval(p, z, w)))))
    return worst, 1e-8


@invariant("unitary_block")
def _unitary_block(cfg):
    worst = 0.0
    for t, th in BLOCK_PAIRS:
        g = operator.build_matrix(unitary_pair(t, th), 64).gram()
        worst = max(worst, float(np.max(np.abs(g[:32, :32] - np.eye(32)))))
    return worst, 1e-8


@invariant("modsq_kernel")
def _modsq_kernel(cfg):
    rng = cfg.rng("modsq_kernel")
    z = _random_complex(rng, 200, 1.0)
    w = _random_complex(rng, 200, 1.0)
    worst = 0.0
    pairs = _pairs(ACCEPTANCE_PAIRS) + [unitary_pair(t, th) for t, th in BLOCK_PAIRS]
    for p in pairs:
        g = operator.build_matrix(p, 64).gram()
        worst = max(worst, float(np.max(np.abs(operator.generating_function(g, z, w) - operator.modsq_kernel_eval(p, z, w)))))
    return worst, 1e-8


@invariant("diagonal_real_s")
def _diagonal_real_s(cfg):
    worst = 0.0
    for s in (1.0, 1.5, 2.0, 3.0):
        m = operator.build_matrix(ParameterPair(s, 0), cfg.max_dim).entries
        d = s ** -(np.arange(cfg.max_dim) + 0.5)
        worst = max(worst, _rel(np.diag(m), d), float(np.max(np.abs(m - np.diag(np.diag(m))))))
    return worst, 1e-13


# -- spectral -------------------------------------------------------------------


@invariant("gamma_root")
def _gamma_root(cfg):
    worst = 0.0
    for p in random_compact_pairs(cfg.rng("gamma_root"), cfg.draws) + _pairs(ACCEPTANCE_PAIRS):
        sol = spectral.gamma_root(p)
        g_st = sol.gamma * (p.s * p.t).conjugate()
        worst = max(
            worst,
            spectral.gamma_residual(p, sol),
            abs(g_st.imag),
            float(abs(sol.gamma) >= 1),
            float(not 0 < sol.ratio < 1),
            # strict positivity of (|s|^2 + gamma conj(st)) (|s|^2 - |t|^2 - 1)
            float(sol.shifted * p.discriminant <= 0),
        )
    return worst, 1e-12


@invariant("singular_value_formulas")
def _singular_value_formulas(cfg):
    worst = 0.0
    for p in random_compact_pairs(cfg.rng("singular_value_formulas"), 100):
        a = spectral.singular_value_base(p)
        b = spectral.gamma_root(p).ratio
        worst = max(worst, abs(a - b) / a)
    return worst, 1e-13


@invariant("singular_values_match")
def _singular_values_match(cfg):
    worst = 0.0
    for p in _pairs(ACCEPTANCE_PAIRS):
        num = spectral.numeric_singular_values(operator.build_matrix(p, 64), 8)
        worst = max(worst, float(np.max(np.abs(num - spectral.closed_singular_values(p, 8)))))
    return worst, 1e-8


@invariant("finite_section_convergence")
def _finite_section_convergence(cfg):
    lo, hi = (48, 64) if cfg.max_dim <= 64 else (64, 128)
    worst = 0.0
    for p in _pairs(ACCEPTANCE_PAIRS):
        a = spectral.numeric_singular_values(operator.build_matrix(p, lo), 8)
        b = spectral.numeric_singular_values(operator.build_matrix(p, hi), 8)
        worst = max(worst, float(np.max(np.abs(a - b))))
    return worst, 1e-10


@invariant("eigenvalue_is_singular_value_squared")
def _lambda_mu(cfg):
    worst = 0.0
    for p in random_compact_pairs(cfg.rng("eigenvalue_is_singular_value_squared"), 20):
        mu = spectral.closed_singular_values(p, 17)
        lam = spectral.gamma_root(p).ratio ** (2 * np.arange(17) + 1)
        worst = max(worst, float(np.max(np.abs(mu**2 - lam))))
    return worst, 1e-12


@invariant("hilbert_schmidt_sum")
def _hilbert_schmidt_sum(cfg):
    worst = 0.0
    for p in _pairs(ACCEPTANCE_PAIRS):
        m = operator.build_matrix(p, 64).entries
        hs = spectral.hilbert_schmidt_closed(p)
        worst = max(worst, abs(float(np.sum(np.abs(m) ** 2)) - hs), abs(spectral.schatten_norm_closed(p, 2) ** 2 - hs))
    return worst, 1e-8


@invariant("trace_diagonal")
def _trace_diagonal(cfg):
    worst = 0.0
    for p in _pairs(ACCEPTANCE_PAIRS):
        if cfg.max_dim <= 64:
            num = operator.trace_diagonal(operator.build_matrix(p, 64))
        else:
            num = spectral.trace_section(p)[0]
        worst = max(worst, abs(num - spectral.trace_closed(p)))
    return worst, 1e-10


@invariant("trace_quadrature")
def _trace_quadrature(cfg):
    worst = 0.0
    for p in _pairs(ACCEPTANCE_PAIRS) + random_compact_pairs(cfg.rng("trace_quadrature"), 10):
        closed = spectral.trace_closed(p)
        worst = max(worst, abs(spectral.trace_quadrature(p) - closed) / abs(closed))
    return worst, 1e-6


@invariant("singular_value_simplicity")
def _simplicity(cfg):
    worst = -math.inf
    for p in _pairs(ACCEPTANCE_PAIRS):
        sv = spectral.numeric_singular_values(operator.build_matrix(p, 64), 8)
        ratio = spectral.singular_value_base(p)
        need = (1 - ratio) * sv[7] / 2
        # positive when some gap is smaller than required
        worst = max(worst, float(need - np.min(-np.diff(sv))))
    return worst, 0.0


@invariant("schatten_bounds")
def _schatten_bounds(cfg):
    worst = -math.inf
    for p in _pairs(ACCEPTANCE_PAIRS) + random_compact_pairs(cfg.rng("schatten_bounds"), 20):
        for q in (0.5, 1.0, 1.5, 2.0, 3.0, 4.0):
            value, side = spectral.schatten_bounds(p, q)
            actual = spectral.schatten_norm_closed(p, q) ** q
            if side is spectral.BoundSide.UPPER:
                worst = max(worst, actual / value - 1)
            elif side is spectral.BoundSide.LOWER:
                worst = max(worst, value / actual - 1)
            else:
                worst = max(worst, abs(value / actual - 1))
    return worst, 1e-12


@invariant("eigenfunction_residuals")
def _eigen_residuals(cfg):
    worst = 0.0
    for p in _pairs(ACCEPTANCE_PAIRS):
        t_ = operator.build_matrix(p, 64)
        for n in range(4):
            worst = max(worst, spectral.verify_eigenpair(t_, spectral.eigenfunction_coeffs(p, n, 64)))
    return worst, 1e-6


# -- berezin / F^p --------------------------------------------------------------


@invariant("berezin_bound")
def _berezin_bound(cfg):
    rng = cfg.rng("berezin_bound")
    worst = 0.0
    for p in random_kernel_pairs(rng, cfg.draws):
        z = _random_complex(rng, cfg.points, 4.0)
        w = _random_complex(rng, cfg.points, 4.0)
        ratio = np.abs(fockp.berezin(p, z, w)) / fockp.berezin_bound(p, z, w)
        worst = max(worst, float(np.max(ratio)))
    return worst - 1.0, 1e-12


@invariant("berezin_diagonal_decay")
def _berezin_diagonal_decay(cfg):
    xs = np.linspace(-3, 3, 25)
    z = (xs[:, None] + 1j * xs[None, :]).ravel()
    worst = 0.0
    for s in (1.0, 1.5, 2.0, 4.0):
        exact = s**-0.5 * np.exp((1 / s - 1) * np.abs(z) ** 2)
        worst = max(worst, _rel(np.abs(fockp.berezin(ParameterPair(s, 0), z)), exact))
    return worst, 1e-12


@invariant("berezin_lp_norm")
def _berezin_lp_norm(cfg):
    worst = 0.0
    for p in _pairs(ACCEPTANCE_PAIRS):
        for q in (1.0, 2.0, 4.0):
            worst = max(worst, _rel(fockp.berezin_modsq_lp_norm_numeric(p, q), fockp.berezin_modsq_lp_norm(p, q)))
    return worst, 1e-6


def _ray_samples():
    radii = np.array([0.0, 1.0, 2.0, 4.0, 8.0])
    rays = np.exp(2j * math.pi * np.arange(8) / 8)
    return radii, rays


@invariant("compact_decay")
def _compact_decay(cfg):
    radii, rays = _ray_samples()
    worst = 0.0
    for p in _pairs(COMPACT_DECAY_PAIRS):
        for q in (1.0, 2.0, math.inf):
            for ray in rays:
                v = fockp.tkw_fp_norm(p, radii * ray, q)
                if np.any(np.diff(v) >= 0):
                    return math.inf, 1e-6
                worst = max(worst, float(v[-1]))
    return worst, 1e-6


@invariant("unitary_constancy")
def _unitary_constancy(cfg):
    rng = cfg.rng("unitary_constancy")
    worst = 0.0
    w = _random_complex(rng, 20, 6.0)
    for t, th in UNITARY_PAIRS:
        p = unitary_pair(t, th)
        for q in (1.0, 2.0, math.inf):
            v = fockp.tkw_fp_norm(p, w, q)
            worst = max(worst, float(np.ptp(v) / np.mean(v)))
    return worst, 1e-10


@invariant("operator_norm_ceiling")
def _operator_norm_ceiling(cfg):
    rng = cfg.rng("operator_norm_ceiling")
    worst = -math.inf
    w = _random_complex(rng, 40, 5.0)
    for p in _pairs(ACCEPTANCE_PAIRS) + [unitary_pair(t, th) for t, th in UNITARY_PAIRS]:
        prof = fockp.kernel_l1_profile(p, w)
        worst = max(worst, float(np.max(prof)) / fockp.l1_profile_ceiling(p) - 1)
        if p.is_compact():
            sv0 = spectral.numeric_singular_values(operator.build_matrix(p, 64), 1)[0]
            worst = max(worst, sv0 / fockp.operator_norm_ceiling(p) - 1)
    return worst, 1e-12


@invariant("l1_profile_quadrature")
def _l1_profile_quadrature(cfg):
    worst = 0.0
    for p in _pairs(ACCEPTANCE_PAIRS + ((1, 0),)):
        for w in (0.0, 1 + 1j, -2.0):
            worst = max(worst, _rel(fockp.kernel_l1_profile_numeric(p, w), fockp.kernel_l1_profile(p, w)))
    return worst, 1e-8


@invariant("weyl_isometry")
def _weyl_isometry(cfg):
    p = ParameterPair(2, 0)
    f = lambda z: kernel.kernel_eval(p, z, 1.0)
    base = fockp.finfty_norm_numeric(f)
    worst = abs(base / kernel.finfty_kernel_norm(p, 1.0) - 1)
    for u in (1 + 1j, -0.5 + 2j):
        worst = max(worst, abs(fockp.finfty_norm_numeric(fockp.weyl_apply(u, f)) / base - 1))
    return worst, 1e-6


# -- driver ---------------------------------------------------------------------


def run_check(name: str, cfg: SuiteConfig) -> CheckResult:
    worst, tol = _REGISTRY[name](cfg)
    worst = float(worst)
    return CheckResult(name=name, passed=bool(worst <= tol), worst=worst, tol=float(tol))


def run_suite(cfg: SuiteConfig) -> dict:
    results = [run_check(name, cfg) for name in _REGISTRY]
    return {
        "suite": cfg.name,
        "seed": cfg.seed,
        "fault": cfg.fault,
        "passed": all(r.passed for r in results),
        "invariants": [asdict(r) for r in results],
    }
