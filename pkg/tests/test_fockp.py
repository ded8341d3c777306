import cmath
import math

import numpy as np
import pytest

from canonfock import fockp
from canonfock.errors import NotCompactError, OutOfDomainError
from canonfock.kernel import ParameterPair, fp_kernel_norm, kernel_bound_constant, kernel_eval, unitary_pair
from canonfock.operator import FockCoefficients, build_matrix
from canonfock.quadrature import fp_norm_numeric, gauss_hermite
from canonfock.spectral import numeric_singular_values
from canonfock.verify import random_kernel_pairs

ACCEPTANCE = [ParameterPair(*st) for st in [(2, 0), (2, 1), (2, 1j), (3, 1 + 1j)]]
UNITARY = [unitary_pair(0, 0), unitary_pair(1, 0.7), unitary_pair(1 + 1j, -2.0), ParameterPair(math.sqrt(2), 1)]


@pytest.mark.parametrize(
    "s, t, z, expected",
    [(4, 0.3 + 1j, 0, 0.5), (4, -2, 0, 0.5), (2, 0, 1, math.exp(-0.5) / math.sqrt(2)), (1, 0, 0.7 - 2j, 1.0)],
)
def test_berezin_examples(s, t, z, expected):
    assert fockp.berezin(ParameterPair(s, t), z) == pytest.approx(expected, rel=1e-14)


def test_berezin_bivariate_matches_kernel():
    p = ParameterPair(2, 1j)
    z, w = 0.4 - 1j, 1.2
    expected = cmath.exp(-(abs(z) ** 2 + abs(w) ** 2) / 2) * kernel_eval(p, z, w)
    assert fockp.berezin(p, z, w) == pytest.approx(expected, rel=1e-13)


def test_berezin_domain():
    with pytest.raises(OutOfDomainError):
        fockp.berezin(ParameterPair(1, 1), 0)
    with pytest.raises(OutOfDomainError):
        fockp.berezin_bound(ParameterPair(1, 2), 0)


def test_berezin_diagonal_decay_real_s():
    xs = np.linspace(-3, 3, 31)
    z = xs[:, None] + 1j * xs[None, :]
    for s in (1.5, 2.0, 5.0):
        got = np.abs(fockp.berezin(ParameterPair(s, 0), z))
        expected = s**-0.5 * np.exp((1 / s - 1) * np.abs(z) ** 2)
        np.testing.assert_allclose(got, expected, rtol=1e-12)


def test_berezin_bound_examples():
    p = ParameterPair(2, 0)
    assert fockp.berezin_bound(p, 0, 0) == pytest.approx(1 / math.sqrt(2), rel=1e-15)
    assert fockp.berezin_bound(p, 1, 1) == pytest.approx(math.exp(-9 / 26) / math.sqrt(2), rel=1e-14)
    q = unitary_pair(1 + 0.5j, 0.3)
    z = np.array([0, 1, 3j, -2 + 2j])
    np.testing.assert_allclose(fockp.berezin_bound(q, z, z[::-1]), kernel_bound_constant(q), rtol=1e-12)


def test_berezin_bound_holds_on_random_draws():
    rng = np.random.default_rng(21)
    for p in random_kernel_pairs(rng, 50):
        z = 4 * np.sqrt(rng.uniform(size=1000)) * np.exp(2j * np.pi * rng.uniform(size=1000))
        w = 4 * np.sqrt(rng.uniform(size=1000)) * np.exp(2j * np.pi * rng.uniform(size=1000))
        assert np.all(np.abs(fockp.berezin(p, z, w)) <= fockp.berezin_bound(p, z, w) * (1 + 1e-12))


@pytest.mark.parametrize("s, t, pexp, expected", [(2, 0, 2, 2 * math.pi / 3), (2, 1, 2, math.pi)])
def test_modsq_lp_norm_examples(s, t, pexp, expected):
    p = ParameterPair(s, t)
    assert fockp.berezin_modsq_lp_norm(p, pexp) == pytest.approx(expected, rel=1e-14)
    assert fockp.berezin_modsq_lp_norm_numeric(p, pexp) == pytest.approx(expected, rel=1e-6)


def test_modsq_pointwise_example():
    p = ParameterPair(2, 1)
    assert fockp.berezin_modsq_pointwise(p, 0) == pytest.approx(1 / math.sqrt(3), rel=1e-14)
    assert fockp.berezin_modsq_pointwise(p, 0) == pytest.approx(fp_kernel_norm(p, 0, 2) ** 2, rel=1e-14)


def test_kernel_norm_routes_agree():
    rng = np.random.default_rng(3)
    z = rng.normal(size=50) + 1j * rng.normal(size=50)
    for p in ACCEPTANCE + [ParameterPair(1.1, 0.4j)]:
        a = fockp.log_kernel_norm_sq_gaussian(p, z)
        b = 2 * np.log([fp_kernel_norm(p, zz, 2) for zz in z])
        np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("p", ACCEPTANCE, ids=str)
@pytest.mark.parametrize("pexp", [1.0, 2.0, 4.0])
def test_modsq_lp_norm_closed_vs_quadrature(p, pexp):
    closed = fockp.berezin_modsq_lp_norm(p, pexp)
    assert fockp.berezin_modsq_lp_norm_numeric(p, pexp) == pytest.approx(closed, rel=1e-6)


def test_modsq_lp_norm_domain():
    with pytest.raises(NotCompactError):
        fockp.berezin_modsq_lp_norm(ParameterPair(1, 0), 2)
    with pytest.raises(NotCompactError):
        fockp.berezin_modsq_pointwise(ParameterPair(math.sqrt(2), 1), 0)


@pytest.mark.parametrize(
    "s, t, pnorm, w, expected",
    [
        (math.sqrt(2), 1, 2.0, 0, 1.0),
        (math.sqrt(2), 1, 2.0, 3 - 1j, 1.0),
        (2, 0, 2.0, 2, 4**-0.25 * math.exp(-1.5)),
        (2, 0, 2.0, 0, 4**-0.25),
    ],
)
def test_tkw_examples(s, t, pnorm, w, expected):
    assert fockp.tkw_fp_norm(ParameterPair(s, t), w, pnorm) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("p", UNITARY, ids=str)
@pytest.mark.parametrize("pnorm", [1.0, 2.0, 3.0, math.inf])
def test_tkw_constant_on_unitary_boundary(p, pnorm):
    w = np.array([0, 1, -2j, 3 + 4j, 7.5])
    vals = fockp.tkw_fp_norm(p, w, pnorm)
    expected = abs(p.s) ** ((0 if math.isinf(pnorm) else 1 / pnorm) - 0.5)
    np.testing.assert_allclose(vals, expected, rtol=1e-12)


def test_tkw_matches_quadrature():
    for p in ACCEPTANCE[:3]:
        for w in (0, 1 - 0.5j):
            for pnorm in (1.0, 2.0):
                num = math.exp(-abs(w) ** 2 / 2) * fp_norm_numeric(lambda z: kernel_eval(p, z, w), pnorm)
                assert fockp.tkw_fp_norm(p, w, pnorm) == pytest.approx(num, rel=1e-9)


@pytest.mark.parametrize("p", ACCEPTANCE + [ParameterPair(1.5, 0.2)], ids=str)
@pytest.mark.parametrize("pnorm", [1.0, 2.0, math.inf])
def test_tkw_decreases_along_rays(p, pnorm):
    r = np.linspace(0, 8, 33)
    for theta in np.linspace(0, 2 * np.pi, 8, endpoint=False):
        vals = fockp.tkw_fp_norm(p, r * np.exp(1j * theta), pnorm)
        assert np.all(np.diff(vals) < 0)


def test_kernel_l1_profile_examples():
    assert fockp.kernel_l1_profile(ParameterPair(1, 0), 0) == pytest.approx(2 * math.pi, rel=1e-15)
    p = ParameterPair(2, 0)
    assert fockp.kernel_l1_profile(p, 0) == pytest.approx(math.pi * math.sqrt(2), rel=1e-14)
    assert fockp.kernel_l1_profile_numeric(p, 0) == pytest.approx(math.pi * math.sqrt(2), rel=1e-10)


@pytest.mark.parametrize("p", ACCEPTANCE + [ParameterPair(5, 4.5j)], ids=str)
def test_kernel_l1_profile_decay(p):
    rate = p.discriminant * 16 / (2 * abs(p.s) * (abs(p.s) + abs(p.t)))
    for theta in (0, 1, 2.5):
        w4 = 4 * cmath.exp(1j * theta)
        assert fockp.kernel_l1_profile(p, w4) <= fockp.kernel_l1_profile(p, 0) * math.exp(-rate)


@pytest.mark.parametrize("p", ACCEPTANCE + UNITARY, ids=str)
def test_kernel_l1_profile_ceiling_and_quadrature(p):
    ceiling = fockp.l1_profile_ceiling(p)
    for w in (0, 1 + 1j, -3):
        v = fockp.kernel_l1_profile(p, w)
        assert v <= ceiling * (1 + 1e-12)
        if abs(w) <= 1.5:
            assert fockp.kernel_l1_profile_numeric(p, w, gauss_hermite(128)) == pytest.approx(v, rel=1e-6)


def test_kernel_l1_profile_domain():
    with pytest.raises(OutOfDomainError):
        fockp.kernel_l1_profile(ParameterPair(1.2, 1), 0)


@pytest.mark.parametrize("p", ACCEPTANCE, ids=str)
def test_operator_norm_ceiling(p):
    assert numeric_singular_values(build_matrix(p, 64), 1)[0] <= fockp.operator_norm_ceiling(p)


def test_weyl_examples():
    f = FockCoefficients([1, 0.5, -0.25j])
    z = np.array([0, 1 + 1j, -2j])
    np.testing.assert_allclose(fockp.weyl_apply(0, f)(z), f(z), rtol=1e-15)
    u = 0.5 - 1j
    k_u = np.exp(z * np.conj(u) - abs(u) ** 2 / 2)
    np.testing.assert_allclose(fockp.weyl_apply(u, lambda x: np.ones_like(x))(z), k_u, rtol=1e-15)


def test_weyl_isometry_on_finfty():
    p = ParameterPair(2, 0)

    def f(z):
        return kernel_eval(p, z, 1)

    before = fockp.finfty_norm_numeric(f)
    after = fockp.finfty_norm_numeric(fockp.weyl_apply(1 + 1j, f))
    assert after == pytest.approx(before, rel=1e-6)


def test_profile_samples_layout():
    s = fockp.profile_samples()
    assert len(s) == 40 and s[0] == (0.0, 0.0) and s[-1][0] == 8.0


@pytest.mark.parametrize("t", [1, 1j])
def test_slowest_ray_for_small_gap_pairs(t):
    # along the slowest ray (2, 1) and (2, i) still sit near 1.8e-5 at |w| = 8;
    # they cross 1e-6 only a little further out
    p = ParameterPair(2, t)
    ring = np.exp(2j * np.pi * np.arange(720) / 720)
    at8 = fockp.tkw_fp_norm(p, 8 * ring, 2.0).max()
    assert 1e-6 < at8 < 1e-4
    assert fockp.tkw_fp_norm(p, 10 * ring, 2.0).max() < 1e-6
