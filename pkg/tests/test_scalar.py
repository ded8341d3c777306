import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from canonfock.errors import DivergenceError, DomainError
from canonfock.scalar import (
    double_factorial,
    gaussian_moment,
    hermite,
    hermite_coeffs,
    log_factorial,
    principal_sqrt,
)

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize(
    "z, expected",
    [(4, 2), (-4, 2j), (2j, 1 + 1j), (0, 0), (complex(-4, -0.0), 2j)],
)
def test_principal_sqrt_examples(z, expected):
    assert principal_sqrt(z) == pytest.approx(expected, abs=1e-15)


def test_principal_sqrt_rejects_nonfinite():
    with pytest.raises(DomainError):
        principal_sqrt(complex(math.inf, 0))
    with pytest.raises(DomainError):
        principal_sqrt(np.array([1.0, math.nan]))


@given(finite, finite)
def test_principal_sqrt_squares_back(a, b):
    z = complex(a, b)
    r = principal_sqrt(z)
    # squares of roots of subnormals underflow, so allow one smallest-normal of slack
    assert abs(r * r - z) <= 4 * np.finfo(float).eps * abs(z) + np.finfo(float).tiny
    # arg in (-pi/2, pi/2], stated on components to avoid rounding in phase()
    assert r.real > 0 or (r.real == 0 and r.imag >= 0)


@given(finite, finite)
def test_principal_sqrt_conjugation(a, b):
    z = complex(a, b)
    if z.imag == 0 and z.real < 0:
        assert principal_sqrt(z.conjugate()) == -principal_sqrt(z).conjugate()
    else:
        assert principal_sqrt(z.conjugate()) == pytest.approx(principal_sqrt(z).conjugate(), rel=1e-15, abs=1e-300)


def test_principal_sqrt_vectorised_matches_scalar():
    z = np.array([4, -4, 2j, -1 - 1j, complex(-2, -0.0)])
    vec = principal_sqrt(z)
    assert np.allclose(vec, [principal_sqrt(complex(x)) for x in z], rtol=0, atol=1e-15)


@pytest.mark.parametrize("n, x, expected", [(0, 3.7, 1), (2, 1, 2), (3, 2, 40)])
def test_hermite_examples(n, x, expected):
    assert hermite(n, x) == pytest.approx(expected)


def test_hermite_matches_numpy_physicists():
    x = np.linspace(-3, 3, 31)
    for n in range(12):
        c = np.zeros(n + 1)
        c[n] = 1
        assert np.allclose(hermite(n, x), np.polynomial.hermite.hermval(x, c), rtol=1e-12)
        assert np.array_equal(np.asarray(hermite_coeffs(n), dtype=float), np.polynomial.hermite.herm2poly(c))


def test_hermite_derivative_identity():
    x = np.linspace(-2, 2, 9)
    h = 1e-5
    for n in range(1, 21):
        fd = (hermite(n, x + h) - hermite(n, x - h)) / (2 * h)
        ex = 2 * n * hermite(n - 1, x)
        assert np.allclose(fd, ex, rtol=1e-6, atol=1e-6 * np.max(np.abs(ex)))


def test_factorials():
    assert log_factorial(0) == 0
    assert log_factorial(10) == pytest.approx(math.log(math.factorial(10)), rel=1e-14)
    assert np.isfinite(log_factorial(511))
    assert [double_factorial(k) for k in (-1, 0, 1, 5, 6)] == [1, 1, 1, 15, 48]


@pytest.mark.parametrize(
    "k, nu, m, expected",
    [
        (0, 1, 0, math.sqrt(math.pi)),
        (1, 1, 3, 3 * math.sqrt(math.pi)),
        (2, 2, 0, math.sqrt(math.pi / 2) / 4),
    ],
)
def test_gaussian_moment_examples(k, nu, m, expected):
    assert gaussian_moment(k, nu, m) == pytest.approx(expected, rel=1e-14)


def test_gaussian_moment_example_against_scipy():
    num, _ = integrate.quad(lambda x: x * x * math.exp(-2 * x * x), -math.inf, math.inf, epsabs=0, epsrel=1e-13)
    assert gaussian_moment(2, 2, 0) == pytest.approx(num, rel=1e-12)


def _quad_complex(f, lo, hi):
    re, _ = integrate.quad(lambda x: f(x).real, lo, hi, epsabs=1e-14, epsrel=1e-12, limit=400)
    im, _ = integrate.quad(lambda x: f(x).imag, lo, hi, epsabs=1e-14, epsrel=1e-12, limit=400)
    return complex(re, im)


def test_gaussian_moment_adaptive_quadrature():
    rng = np.random.default_rng(7)
    for _ in range(8):
        re_nu = rng.uniform(0.4, 3)
        nu = complex(re_nu, rng.uniform(-1, 1) * re_nu)
        m = complex(rng.uniform(-1.5, 1.5), rng.uniform(-0.5, 0.5))
        centre = m.real - nu.imag * m.imag / nu.real
        half = math.sqrt(60 / nu.real)
        for k in range(11):
            f = lambda x: x**k * cmath.exp(-nu * (x - m) ** 2)
            num = _quad_complex(f, centre - half, centre + half)
            assert abs(gaussian_moment(k, nu, m) - num) <= 1e-9 * abs(num)


def test_gaussian_moment_divergent():
    with pytest.raises(DivergenceError):
        gaussian_moment(2, -1 + 1j, 0)
    with pytest.raises(DivergenceError):
        gaussian_moment(0, 2j, 0)
