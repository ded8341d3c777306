import math

import pytest

from canonfock import verify

NAMES = verify.registered()


def test_registry_covers_every_module():
    assert len(NAMES) == len(set(NAMES)) >= 35
    for name in ("conjugate_symmetry", "trace_quadrature", "eigenfunction_residuals", "compact_decay"):
        assert name in NAMES


@pytest.mark.parametrize("suite", ["fast", "full"])
@pytest.mark.parametrize("name", NAMES)
def test_invariant_passes(suite, name):
    res = verify.run_check(name, verify.suite_config(suite))
    assert math.isfinite(res.worst)
    assert res.passed, f"{name}: worst {res.worst:.3g} > tol {res.tol:.3g}"


def test_fault_injection_breaks_only_conjugate_symmetry():
    rep = verify.run_suite(verify.suite_config("fast", fault="conj-phase"))
    assert rep["passed"] is False and rep["fault"] == "conj-phase"
    assert [c["name"] for c in rep["invariants"] if not c["passed"]] == ["conjugate_symmetry"]


def test_full_suite_checks_trace_quadrature_at_1e_6():
    res = verify.run_check("trace_quadrature", verify.suite_config("full"))
    assert res.tol <= 1e-6 and res.passed


def test_checks_do_not_depend_on_order():
    cfg = verify.suite_config("fast", seed=7)
    a = verify.run_check("kernel_bound", cfg)
    verify.run_check("gaussian_integral_identity", cfg)
    assert verify.run_check("kernel_bound", cfg) == a


def test_seed_changes_draws():
    a = verify.run_check("gaussian_integral_identity", verify.suite_config("fast", seed=1))
    b = verify.run_check("gaussian_integral_identity", verify.suite_config("fast", seed=2))
    assert a.worst != b.worst


def test_suite_config_rejects_unknowns():
    with pytest.raises(ValueError):
        verify.suite_config("huge")
    with pytest.raises(ValueError):
        verify.suite_config("fast", fault="other")
