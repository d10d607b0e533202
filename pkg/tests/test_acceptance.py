"""Acceptance gate: the shipped accuracy and behavior bar, one test each.

Every test measures its quantities at the advertised tolerances, prints one
PASS/FAIL line with the numbers (echoed again in the terminal summary), and
asserts.  Tolerances here are the product contract; loosening them is a
release decision, not a test fix.
"""

import math
import time
import warnings

import numpy as np
import scipy.integrate
import scipy.stats

from orderedbeta import (
    ChebTable,
    ObservationBatch,
    OrderedBetaDist,
    PrecisionConfig,
    PrecisionWarning,
    beta_complete,
    cheb_analysis,
    cheb_assemble,
    cheb_backward_recursion,
    cheb_synthesis,
    cheb_eval,
    identity_residuals,
    incomplete_beta,
    oracle_montecarlo,
    oracle_quadrature,
)
from orderedbeta.chebyshev import default_order as cheb_default_order

from _report import record
from helpers import GOLD1, GOLD2, GOLD3, random_params, rel_err, set1, set2, set3


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    val = fn(*args, **kw)
    return val, time.perf_counter() - t0


def test_golden_easy_parameters():
    # moderate parameters: both engines reach machine double fast
    beta_complete(set1(), "chebyshev", 8)  # warm transforms outside the timer
    vc, tc = timed(beta_complete, set1(), "chebyshev", 64)
    vt, tt = timed(beta_complete, set1(), "taylor", 128)
    rc, rt = rel_err(vc, GOLD1), rel_err(vt, GOLD1)
    ok = rc <= 1e-12 and rt <= 1e-12 and tc < 0.1 and tt < 0.1
    line = record(
        "golden-1 easy parameters",
        ok,
        f"cheb N=64 rel {rc:.2e} in {tc * 1e3:.1f} ms, "
        f"taylor N=128 rel {rt:.2e} in {tt * 1e3:.1f} ms (need <=1e-12, <100 ms)",
    )
    assert ok, line


def test_golden_large_parameter():
    # a_1 = 50.8: the chebyshev engine holds 1e-9, the machine-double taylor
    # path cancels down to 4-7 digits by design, extended recovers 1e-12
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PrecisionWarning)
        vc = beta_complete(set2(), "chebyshev", 64)
        vt = beta_complete(set2(), "taylor", 200)
        vx = beta_complete(set2(), "taylor", 200, PrecisionConfig.extended(120))
    rc, rt, rx = rel_err(vc, GOLD2), rel_err(vt, GOLD2), rel_err(vx, GOLD2)
    ok = rc <= 1e-9 and 1e-8 < rt <= 1e-4 and rx <= 1e-12
    line = record(
        "golden-2 large parameter",
        ok,
        f"cheb N=64 rel {rc:.2e} (<=1e-9), taylor double rel {rt:.2e} "
        f"(expected in (1e-8, 1e-4]), taylor extended rel {rx:.2e} (<=1e-12)",
    )
    assert ok, line


def test_golden_hundred_levels():
    vt, tt = timed(beta_complete, set3(), "taylor", 50)
    vc, tc = timed(beta_complete, set3(), "chebyshev", 20)
    rt, rc = rel_err(vt, GOLD3), rel_err(vc, GOLD3)
    ok = rt <= 1e-11 and rc <= 1e-11 and tt < 1.0 and tc < 1.0
    line = record(
        "golden-3 hundred levels",
        ok,
        f"taylor N=50 rel {rt:.2e} in {tt * 1e3:.0f} ms, "
        f"cheb N=20 rel {rc:.2e} in {tc * 1e3:.0f} ms (need <=1e-11, <1 s)",
    )
    assert ok, line


def test_convergence_shape():
    # error vs N must drop at least 2x per taylor term and 3x per chebyshev
    # term before the double floor, and chebyshev must hit 1e-12 first
    p = set1()
    orders = list(range(4, 49, 4))
    err_t = [max(rel_err(beta_complete(p, "taylor", N), GOLD1), 1e-17) for N in orders]
    err_c = [max(rel_err(beta_complete(p, "chebyshev", N), GOLD1), 1e-17) for N in orders]

    def fit_slope(errs):
        pts = [(N, e) for N, e in zip(orders, errs) if e > 1e-14]
        ns = np.array([n for n, _ in pts], dtype=float)
        return float(np.polyfit(ns, np.log([e for _, e in pts]), 1)[0])

    def first_below(errs, tol=1e-12):
        hits = [N for N, e in zip(orders, errs) if e <= tol]
        return min(hits) if hits else None

    st, sc = fit_slope(err_t), fit_slope(err_c)
    ft, fc = first_below(err_t), first_below(err_c)
    ok = (
        st <= -math.log(2.0)
        and sc <= -math.log(3.0)
        and ft is not None
        and fc is not None
        and fc < ft
    )
    line = record(
        "convergence shape",
        ok,
        f"taylor slope {st:.3f}/term (need <= -ln2 = -0.693), "
        f"cheb slope {sc:.3f}/term (need <= -ln3 = -1.099); "
        f"1e-12 reached at N={fc} (cheb) vs N={ft} (taylor)",
    )
    assert ok, line


def test_identity_suite():
    rng = np.random.default_rng(2026)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 5))
        p = random_params(rng, n)
        for z in (0.1, 0.3, 0.5, 0.7, 0.9):
            r = identity_residuals(p, z)
            worst = max(worst, r.max_residual)
    ok = worst <= 1e-9
    line = record(
        "identity suite",
        ok,
        f"max residual {worst:.2e} over 100 random parameter sets x 5 z points (need <=1e-9)",
    )
    assert ok, line


def test_oracle_equivalence():
    rng = np.random.default_rng(77)
    quad_ok, worst_quad = True, 0.0
    for _ in range(50):
        n = int(rng.integers(1, 4))
        p = random_params(rng, n)
        z = float(rng.uniform(0.05, 1.0))
        v = incomplete_beta(p, z, method="chebyshev", N=64).value
        est = oracle_quadrature(p, z)
        quad_ok &= abs(v - est.value) <= est.error_bound
        if est.error_bound > 0:
            worst_quad = max(worst_quad, abs(v - est.value) / est.error_bound)
    mc_ok, worst_mc = True, 0.0
    for _ in range(10):
        n = int(rng.integers(1, 4))
        p = random_params(rng, n)
        z = float(rng.uniform(0.05, 1.0))
        v = incomplete_beta(p, z, method="chebyshev", N=64).value
        est = oracle_montecarlo(p, z, samples=10**6, seed=int(rng.integers(1 << 30)))
        mc_ok &= abs(v - est.value) <= 3.0 * est.stderr
        worst_mc = max(worst_mc, abs(v - est.value) / est.stderr)
    ok = quad_ok and mc_ok
    line = record(
        "oracle equivalence",
        ok,
        f"50 quadrature cases worst diff/bound {worst_quad:.2f} (need <=1), "
        f"10 monte-carlo cases worst diff/stderr {worst_mc:.2f} (need <=3)",
    )
    assert ok, line


def test_distribution_suite():
    sub = {}
    rng = np.random.default_rng(99)

    worst_part = 0.0
    for _ in range(25):
        n = int(rng.integers(1, 5))
        d = OrderedBetaDist(random_params(rng, n))
        k = int(rng.integers(1, n + 1))
        z = float(rng.uniform())
        worst_part = max(
            worst_part, abs(d.marginal_cdf(k, z) + d.marginal_survival(k, z) - 1.0)
        )
    sub["cdf+survival<=1e-11"] = worst_part <= 1e-11

    d1 = OrderedBetaDist(set1())
    worst_mass = max(
        abs(scipy.integrate.quad(lambda x: d1.marginal_pdf(k, x), 0.0, 1.0, limit=200)[0] - 1.0)
        for k in (1, 2, 3)
    )
    sub["marginal-mass<=1e-7"] = worst_mass <= 1e-7

    obs = ObservationBatch((2, 0, 1), (1, 3, 0))
    post = d1.posterior_update(obs)
    want_a = tuple(a + m for a, m in zip(d1.a, obs.m))
    want_b = tuple(b + k for b, k in zip(d1.b, obs.k))
    sub["posterior-exact"] = (
        post.a == want_a and post.b == want_b and post.C == OrderedBetaDist(want_a, want_b).C
    )

    moments_ok = True
    for arr in (
        d1.sample(4000, seed=4).array,
        d1.sample(1200, seed=6, method="gibbs", burn_in=60).array,
    ):
        for k in range(1, 4):
            col = arr[:, k - 1]
            se = col.std(ddof=1) / math.sqrt(len(col))
            moments_ok &= abs(col.mean() - d1.mean(k)) <= 4.0 * se
    sub["sampler-moments<=4se"] = moments_ok

    m = 2000
    single = OrderedBetaDist([2.0], [1.5])
    ks_ok = True
    for method, burn in (("rejection", 0), ("gibbs", 3)):
        draws = single.sample(m, seed=8, method=method, burn_in=burn).array[:, 0]
        stat = scipy.stats.kstest(
            draws, lambda z: scipy.stats.beta.cdf(z, 2.0, 1.5)
        ).statistic
        ks_ok &= stat <= 1.6276 / math.sqrt(m)
    sub["n1-ks-1pct"] = ks_ok

    ok = all(sub.values())
    detail = ", ".join(f"{name} {'ok' if good else 'FAIL'}" for name, good in sub.items())
    line = record("distribution suite", ok, detail)
    assert ok, line


def test_stability_probe():
    # a tail-seed error delta in the backward recursion may move the final
    # value by at most 6 (N + 2) delta; probe each stage of the easy chain
    p = set1()
    N = cheb_default_order()
    delta = 1e-8

    def final_value(pert_stage):
        xi = np.zeros(N + 1)
        xi[0] = 2.0
        for m in range(p.n):
            v = cheb_synthesis(xi, N)
            eta = cheb_analysis(v, p.b[m], N)
            seed = (delta, delta) if m == pert_stage else (0.0, 0.0)
            mu = cheb_backward_recursion(eta, p.prefix_sums[m], N, seed=seed)
            xi = cheb_assemble(eta[0], mu, p.prefix_sums[m], N)
        return cheb_eval(ChebTable(params=p, N=N, coeffs=xi), 0.5)

    base = final_value(None)
    worst = max(abs(final_value(s) - base) for s in range(p.n))
    bound = 6.0 * (N + 2) * delta
    ok = worst <= bound
    line = record(
        "stability probe",
        ok,
        f"worst final-value shift {worst:.2e} from a {delta:g} seed perturbation "
        f"(bound 6(N+2)delta = {bound:.2e} at N={N})",
    )
    assert ok, line
