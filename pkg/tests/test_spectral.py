import math

import numpy as np
import pytest

from canonfock import spectral as sp
from canonfock.errors import DomainError, NotCompactError
from canonfock.kernel import ParameterPair
from canonfock.operator import TruncatedOperator, build_matrix
from canonfock.quadrature import gauss_hermite

GOLDEN = (math.sqrt(5) - 1) / 2  # 0.618034
PAIRS = [ParameterPair(*st) for st in [(2, 0), (2, 1), (2, 1j), (3, 1 + 1j)]]


@pytest.mark.parametrize(
    "s, t, gamma",
    [(2, 0, 0), (2, 1, (-3 + math.sqrt(5)) / 2), (2, 1j, 1j * (-3 + math.sqrt(5)) / 2)],
)
def test_gamma_root_examples(s, t, gamma):
    p = ParameterPair(s, t)
    sol = sp.gamma_root(p)
    assert sol.gamma == pytest.approx(gamma, abs=1e-15)
    assert sp.gamma_residual(p, sol) <= 1e-14
    if t != 0:
        assert sol.lambda0 == pytest.approx(GOLDEN, rel=1e-14)


def test_gamma_root_lambda0_without_t():
    # with t = 0 the root gives 1/|s|, matching the diagonal action
    assert sp.gamma_root(ParameterPair(3, 0)).lambda0 == pytest.approx(1 / 3)


@pytest.mark.parametrize("s, t", [(1, 0), (1.2, 1), (0.5, 0), (math.sqrt(2), 1)])
def test_not_compact(s, t):
    p = ParameterPair(s, t)
    for fn in (sp.gamma_root, lambda q: sp.closed_singular_values(q, 3), sp.trace_closed):
        with pytest.raises(NotCompactError):
            fn(p)


def test_closed_singular_values_examples():
    np.testing.assert_allclose(
        sp.closed_singular_values(ParameterPair(2, 0), 6), 2.0 ** -(np.arange(6) + 0.5), rtol=1e-15
    )
    mu = sp.closed_singular_values(ParameterPair(2, 1), 2)
    assert mu[0] == pytest.approx(0.786151, abs=5e-7)
    assert mu[1] == pytest.approx(0.485868, abs=5e-7)
    with pytest.raises(DomainError):
        sp.closed_singular_values(ParameterPair(2, 1), 0)


def test_numeric_singular_values_examples():
    assert np.allclose(sp.numeric_singular_values(TruncatedOperator(ParameterPair(1, 0), np.eye(5))), 1)
    d = TruncatedOperator(ParameterPair(2, 0), np.diag([0.1, -3, 2j, 0.5]))
    np.testing.assert_allclose(sp.numeric_singular_values(d), [3, 2, 0.5, 0.1], rtol=1e-14)
    T = build_matrix(ParameterPair(2, 1), 64)
    np.testing.assert_allclose(
        sp.numeric_singular_values(T, 5), sp.closed_singular_values(T.params, 5), rtol=0, atol=1e-8
    )
    with pytest.raises(DomainError):
        sp.numeric_singular_values(T, 65)


@pytest.mark.parametrize(
    "s, t, pexp, expected",
    [
        (2, 0, 2, math.sqrt(2 / 3)),
        (2, 1, 2, 1.0),
        (2, 1, math.inf, math.sqrt(GOLDEN)),
        (2, 0, 1, math.sqrt(2)),
    ],
)
def test_schatten_norm_examples(s, t, pexp, expected):
    assert sp.schatten_norm_closed(ParameterPair(s, t), pexp) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("p", PAIRS, ids=str)
@pytest.mark.parametrize("pexp", [1.0, 2.0, 3.0, 4.0])
def test_schatten_norm_matches_section(p, pexp):
    sv = sp.numeric_singular_values(build_matrix(p, 96))
    # square roots of Gram eigenvalues at roundoff level add ~1e-9 to the S_1 sum
    rel = 1e-8 if pexp == 1 else 1e-10
    assert sp.schatten_norm_numeric(sv, pexp) == pytest.approx(sp.schatten_norm_closed(p, pexp), rel=rel)


def test_schatten_bounds_examples():
    p = ParameterPair(2, 0)
    v, side = sp.schatten_bounds(p, 2)
    assert v == pytest.approx(2 / 3) and side == "both"
    v, side = sp.schatten_bounds(p, 1)
    assert v == pytest.approx(4 / (3 * 4**-0.25), rel=1e-14) and side == "upper"
    assert sp.schatten_norm_closed(p, 1) <= v
    v, side = sp.schatten_bounds(p, 4)
    assert v == pytest.approx(1 / 6) and side == "lower"
    assert sp.schatten_norm_closed(p, 4) ** 4 == pytest.approx(4 / 15)
    assert v <= 4 / 15


@pytest.mark.parametrize("p", PAIRS + [ParameterPair(5, -2), ParameterPair(1.5, 0.5j)], ids=str)
@pytest.mark.parametrize("pexp", [0.5, 1.0, 1.5, 2.0, 3.0, 6.0])
def test_schatten_bounds_hold(p, pexp):
    v, side = sp.schatten_bounds(p, pexp)
    actual = sp.schatten_norm_closed(p, pexp) ** pexp
    if side in ("upper", "both"):
        assert actual <= v * (1 + 1e-12)
    if side in ("lower", "both"):
        assert actual >= v * (1 - 1e-12)


@pytest.mark.parametrize("s, t, expected", [(2, 0, math.sqrt(2)), (2, 1, 1.0), (3, 0, math.sqrt(3) / 2)])
def test_trace_closed_examples(s, t, expected):
    p = ParameterPair(s, t)
    assert sp.trace_closed(p) == pytest.approx(expected, rel=1e-14)
    value, _ = sp.trace_section(p)
    assert abs(value - expected) <= 1e-12


@pytest.mark.parametrize("p", PAIRS + [ParameterPair(1.5, 1j), ParameterPair(-2, 0.5), ParameterPair(2j, 1)], ids=str)
def test_trace_routes_agree(p):
    closed = sp.trace_closed(p)
    assert abs(sp.trace_quadrature(p, gauss_hermite(96)) - closed) <= 1e-6 * abs(closed)
    value, n = sp.trace_section(p)
    assert n <= 256
    if p != ParameterPair(1.5, 1j):
        assert abs(value - closed) <= 1e-10 * abs(closed)


def test_eigenfunction_examples():
    e0 = sp.eigenfunction_coeffs(ParameterPair(2, 0), 0, 16)
    np.testing.assert_allclose(e0.fock_coeffs.coeffs, np.eye(16)[0], rtol=0, atol=1e-15)
    spec = sp.eigenfunction_coeffs(ParameterPair(2, 1), 0, 32)
    c = spec.fock_coeffs.coeffs
    assert c[1] == 0 and c[3] == 0
    assert c[2] / c[0] == pytest.approx(spec.gamma * math.sqrt(2) / 2, rel=1e-14)
    assert (c[2] / c[0]).real == pytest.approx((math.sqrt(5) - 3) / (2 * math.sqrt(2)), rel=1e-14)
    odd = sp.eigenfunction_coeffs(ParameterPair(2, 1), 1, 32).fock_coeffs.coeffs
    assert np.all(odd[::2] == 0) and np.linalg.norm(odd) == pytest.approx(1)
    with pytest.raises(DomainError):
        sp.eigenfunction_coeffs(ParameterPair(2, 1), 33, 32)


def test_eigen_parameters_for_2_1():
    g, nu, b = sp.eigen_parameters(ParameterPair(2, 1))
    assert nu.real > 0
    assert b == pytest.approx(np.sqrt(g + 1) / (2 * np.sqrt(nu)))


def test_q_polynomial_degree_and_parity():
    g, nu, b = sp.eigen_parameters(ParameterPair(2, 1j))
    for n in range(6):
        q = sp.q_polynomial(n, nu, b)
        assert q.size == n + 1 and q[n] != 0
        assert np.all(q[(n + 1) % 2 :: 2] == 0)


@pytest.mark.parametrize(
    "s, t, n, tol, lam",
    [(2, 0, 0, 1e-12, 0.5), (2, 1, 0, 1e-6, GOLDEN), (2, 1, 1, 1e-6, GOLDEN**3)],
)
def test_verify_eigenpair_examples(s, t, n, tol, lam):
    p = ParameterPair(s, t)
    spec = sp.eigenfunction_coeffs(p, n, 64)
    assert spec.eigenvalue == pytest.approx(lam, rel=1e-14)
    assert sp.verify_eigenpair(build_matrix(p, 64), spec) <= tol


@pytest.mark.parametrize("p", PAIRS, ids=str)
def test_eigen_residuals_small_for_low_modes(p):
    T = build_matrix(p, 64)
    for n in range(6):
        assert sp.verify_eigenpair(T, sp.eigenfunction_coeffs(p, n, 64)) <= 1e-8


def test_verify_eigenpair_rejects_mismatch():
    spec = sp.eigenfunction_coeffs(ParameterPair(2, 1), 0, 16)
    with pytest.raises(DomainError):
        sp.verify_eigenpair(build_matrix(ParameterPair(2, 0), 16), spec)


def test_spectral_report():
    rep = sp.spectral_report(ParameterPair(2, 1), 8, 64)
    assert rep.max_abs_error <= 1e-8
    assert rep.trace_closed == pytest.approx(1) and abs(rep.trace_numeric - 1) <= 1e-12
    assert all(r <= 1e-6 for r in rep.residuals)
    c, x = rep.schatten["2"]
    assert c == pytest.approx(1) and x == pytest.approx(1, rel=1e-10)
    d = rep.to_dict()
    assert d["singular_values"][0]["n"] == 0 and set(d["schatten"]) == {"1", "2", "4", "inf"}
    assert rep.notes == []
    assert sp.spectral_report(ParameterPair(2, 0), 4).notes
    with pytest.raises(NotCompactError):
        sp.spectral_report(ParameterPair(1, 0), 4)


def test_auto_dim_is_power_of_two_multiple():
    for p in PAIRS:
        n = sp.auto_dim(p)
        assert n in (16, 32, 64, 128, 256)
        assert sp.singular_value_base(p) ** n < sp.TAIL_TARGET or n == 256
