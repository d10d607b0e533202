import math

import numpy as np
import pytest

from orderedbeta import (
    DomainError,
    EvalRequest,
    PrecisionConfig,
    PrefixEvaluator,
    beta_complete,
    beta_scaled,
    classical_beta,
    evaluate,
    identity_residuals,
    incomplete_beta,
    oracle_quadrature,
    reverse_swap,
    validate_params,
)

from helpers import GOLD1, GOLD3, random_params, rel_err, set1, set3


def unit_params(n):
    return validate_params([1] * n, [1] * n)


def test_single_uniform_is_identity():
    res = incomplete_beta(unit_params(1), 0.3)
    assert res.value == pytest.approx(0.3, rel=1e-14)


def test_two_uniform_below_half():
    # B(1,1;1,1|z) = z^2/2
    res = incomplete_beta(unit_params(2), 0.5)
    assert res.value == pytest.approx(0.125, rel=1e-13)
    assert res.scaled_value == pytest.approx(0.5, rel=1e-13)


def test_two_uniform_above_half_uses_reduction():
    res = incomplete_beta(unit_params(2), 0.7)
    assert res.value == pytest.approx(0.49 / 2.0, rel=1e-12)


def test_zero_endpoint():
    res = incomplete_beta(set1(), 0.0)
    assert res.value == 0.0
    assert res.scaled_value is None
    assert res.log_value == -math.inf


def test_unit_endpoint_equals_complete():
    p = set1()
    assert incomplete_beta(p, 1.0).value == beta_complete(p)


def test_value_closed_form_two_level():
    # exact antiderivative: B(0.5,1.5; 2,1 | z) = z^2 - (2/9) z^3
    p = validate_params([0.5, 1.5], [2.0, 1.0])
    for z in (0.3, 0.8):
        want = z**2 - (2.0 / 9.0) * z**3
        assert incomplete_beta(p, z).value == pytest.approx(want, rel=1e-12)


def test_beta_scaled_matches_closed_form():
    p = validate_params([0.5, 1.5], [2.0, 1.0])
    want = (0.3**2 - (2.0 / 9.0) * 0.3**3) / 0.3**p.a_total
    assert beta_scaled(p, 0.3) == pytest.approx(want, rel=1e-12)
    with pytest.raises(DomainError):
        beta_scaled(p, 0.7)
    with pytest.raises(DomainError):
        beta_scaled(p, 0.0)


def test_complete_single_level_is_classical():
    p = validate_params([2], [3])
    assert beta_complete(p) == pytest.approx(1.0 / 12.0, rel=1e-13)
    assert beta_complete(p) == pytest.approx(classical_beta(2.0, 3.0), rel=1e-13)


def test_complete_reference_set_both_methods():
    assert rel_err(beta_complete(set1(), method="chebyshev"), GOLD1) <= 1e-12
    assert rel_err(beta_complete(set1(), method="taylor", N=128), GOLD1) <= 1e-12


def test_prefix_value_conventions():
    ev = PrefixEvaluator(set1())
    assert ev.prefix_value(0, 0.3) == 1.0
    assert ev.prefix_value(1, 0.0) == 0.0
    with pytest.raises(DomainError):
        ev.prefix_value(4, 0.3)
    with pytest.raises(DomainError):
        ev.prefix_value(1, 1.2)


def test_prefix_value_vectorized_matches_scalar():
    ev = PrefixEvaluator(set1())
    zs = np.array([0.0, 0.1, 0.4, 0.5])
    vec = ev.prefix_value(2, zs)
    assert vec == pytest.approx([ev.prefix_value(2, z) for z in zs], rel=1e-14)
    with pytest.raises(DomainError):
        ev.prefix_value(2, np.array([0.2, 1.4]))


def test_reduction_consistent_with_partition_identity():
    # above 1/2 the evaluator solves the partition identity for the longest
    # prefix; rebuild that sum from an independently constructed evaluator
    # of the reverse-swapped vector and compare
    rng = np.random.default_rng(13)
    for _ in range(6):
        n = int(rng.integers(1, 5))
        p = random_params(rng, n)
        z = float(rng.uniform(0.55, 0.999))
        ev = PrefixEvaluator(p)
        rev = PrefixEvaluator(reverse_swap(p))
        direct = ev.prefix_value(n, z)
        acc = ev.complete(n)
        for k in range(n):
            acc -= ev.prefix_value(k, z) * rev.prefix_value(n - k, 1.0 - z)
        assert abs(direct - acc) <= 1e-11 * ev.complete(n)


def test_result_scaling_invariant():
    for z in (0.2, 0.5, 0.9):
        res = incomplete_beta(set1(), z)
        assert res.value == res.scaled_value * res.z**res.a_total


def test_bounds_and_monotonicity():
    rng = np.random.default_rng(19)
    for _ in range(4):
        n = int(rng.integers(1, 4))
        p = random_params(rng, n)
        cap = 1.0
        for ai, bi in zip(p.a, p.b):
            cap *= classical_beta(ai, bi)
        ev = PrefixEvaluator(p)
        zs = np.linspace(0.0, 1.0, 64)
        vals = np.array([ev.prefix_value(n, float(z)) for z in zs])
        assert np.all(vals >= 0.0)
        assert np.all(vals <= cap * (1.0 + 1e-12))
        assert np.all(np.diff(vals) >= -1e-12 * cap)


def test_log_value_deep_underflow():
    # value underflows the double range but the scaled factorization does not
    p = validate_params([600.0], [1.0])
    res = incomplete_beta(p, 0.05, method="chebyshev")
    assert res.value == 0.0
    want = 600.0 * math.log(0.05) - math.log(600.0)
    assert res.log_value == pytest.approx(want, rel=1e-13)


def test_log_value_hundred_levels():
    res = incomplete_beta(set3(), 1.0, method="chebyshev", N=24)
    assert res.log_value == pytest.approx(math.log(GOLD3), rel=1e-12)


def test_oracle_agreement_small_cases():
    rng = np.random.default_rng(37)
    for _ in range(6):
        n = int(rng.integers(1, 4))
        p = random_params(rng, n)
        z = float(rng.uniform(0.05, 1.0))
        res = incomplete_beta(p, z)
        est = oracle_quadrature(p, z)
        assert abs(res.value - est.value) <= est.error_bound + 1e-11 * abs(est.value)


def test_identity_residuals_uniform():
    r = identity_residuals(unit_params(2), 0.5)
    assert r.max_residual <= 1e-13


def test_identity_residuals_reference_set():
    r = identity_residuals(set1(), 0.3)
    assert r.max_residual <= 1e-10
    d = r.as_dict()
    assert set(d) == {
        "symmetry",
        "partition",
        "alternating",
        "nested_integral",
        "complete_integral",
    }


def test_identity_residuals_random():
    rng = np.random.default_rng(43)
    for _ in range(10):
        n = int(rng.integers(1, 5))
        p = random_params(rng, n)
        z = float(rng.uniform(0.05, 0.95))
        method = "taylor" if rng.integers(2) else "chebyshev"
        r = identity_residuals(p, z, method=method)
        assert r.max_residual <= 1e-9


def test_identity_residuals_domain():
    with pytest.raises(DomainError):
        identity_residuals(set1(), 0.0)
    with pytest.raises(DomainError):
        identity_residuals(set1(), 1.0)


def test_request_wrapper_matches_direct_call():
    req = EvalRequest(params=set1(), z=0.42, method="taylor", N=80)
    assert evaluate(req) == incomplete_beta(set1(), 0.42, method="taylor", N=80)


def test_domain_validation():
    p = set1()
    with pytest.raises(DomainError):
        incomplete_beta(p, 1.2)
    with pytest.raises(DomainError):
        incomplete_beta(p, -0.1)
    with pytest.raises(DomainError):
        incomplete_beta(p, float("nan"))
    with pytest.raises(DomainError):
        incomplete_beta(p, 0.5, method="simpson")
    with pytest.raises(DomainError):
        incomplete_beta(p, 0.5, method="chebyshev", precision=PrecisionConfig.extended())
