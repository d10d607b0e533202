"""Reference evaluators that share no code with the series engines.

Target quantity, for validated shapes (a_1..a_n, b_1..b_n) and 0 <= z <= 1:

    B(a; b | z) = int over {0 <= x_1 <= ... <= x_n <= z}
                  prod_i x_i^(a_i - 1) (1 - x_i)^(b_i - 1) dx

Two independent estimators are provided.

oracle_quadrature unrolls the ordered region into nested one-dimensional
integrals, B_m(x) = int_0^x t^(a_m-1) (1-t)^(b_m-1) B_{m-1}(t) dt, and
applies Gauss-Legendre per level.  Near t = 0 the iterate behaves like
t^(A_m) times an analytic function (A_m = a_1 + .. + a_m), so the recursion
is carried on the scaled iterate phi_m(x) = B_m(x) / x^(A_m) in the
scale-free form

    phi_m(x) = int_0^1 sigma^(A_m - 1) (1 - x sigma)^(b_m - 1)
               phi_{m-1}(x sigma) dsigma,          x <= 1/2,

with a graded substitution sigma = s^k (see _quad) absorbing the endpoint
power; this keeps every level spectral and free of underflow.  For x > 1/2
the remainder over (1/2, x) is reflected (r = 1 - x) and graded at the other
end, where the kernel carries r^(b_m - 1).  Cost grows like nodes^n; levels
above 4 are refused.  The error bound is the difference between runs at
`nodes` and `2 * nodes` points plus a small roundoff allowance; the value
reported is the finer run.

oracle_montecarlo draws each coordinate from the classical Beta(a_i, b_i)
law and counts draws that are ordered with x_n <= z, so

    B(a; b | z) = prod_i Beta(a_i, b_i) * P(ordered and below z).

Both are meant for verification, not speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._quad import grade_exponent, graded_map, unit_gauss
from .errors import (
    DimensionTooLarge,
    DomainError,
    NonFiniteParameter,
    OverflowDomain,
)
from .params import ParamVector

__all__ = ["OracleEstimate", "classical_beta", "oracle_quadrature", "oracle_montecarlo"]

# Largest flat work array a recursion level may allocate at once.
_CHUNK_ELEMENTS = 4_000_000
# Relative roundoff allowance added to the node-doubling difference: the
# nested sums accumulate a few hundred ulps before the difference says
# anything about truncation.
_ROUNDOFF_ALLOWANCE = 5e-14
_MAX_LEVELS = 4


@dataclass(frozen=True)
class OracleEstimate:
    """Value plus exactly one uncertainty field, tagged by its source."""

    value: float
    source: str
    error_bound: float | None = None
    stderr: float | None = None


def classical_beta(a: float, b: float) -> float:
    """Euler beta via log-gamma, valid on the double-precision range (0, 171)."""
    for name, x in (("a", a), ("b", b)):
        if math.isnan(x):
            raise NonFiniteParameter(f"{name} = {x!r}")
        if not 0.0 < x < 171.0:
            raise OverflowDomain(f"{name} = {x!r} outside (0, 171)")
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def _check_z(z: float) -> float:
    z = float(z)
    if not math.isfinite(z) or not 0.0 <= z <= 1.0:
        raise DomainError(f"z = {z!r} outside [0, 1]")
    return z


def _chunked(fn, x: np.ndarray, K: int) -> np.ndarray:
    step = max(1, _CHUNK_ELEMENTS // (2 * K))
    if len(x) <= step:
        return fn(x)
    out = np.empty_like(x)
    for start in range(0, len(x), step):
        sl = slice(start, start + step)
        out[sl] = fn(x[sl])
    return out


def _phi(p: ParamVector, m: int, x: np.ndarray, K: int, cache: dict) -> np.ndarray:
    """Scaled iterate phi_m at each point of the flat array x; all x <= 1/2."""
    if m == 0:
        return np.ones_like(x)
    A = p.prefix_sums[m - 1]
    b = p.b[m - 1]
    k = grade_exponent(A)
    s, gw = unit_gauss(K)
    sk = s**k
    # sigma = s^k turns sigma^(A-1) dsigma into k s^(kA-1) ds; the weight row
    # is shared by every x because the inner argument is just x * sigma.
    w = k * s ** (k * A - 1.0) * gw

    def level(xs: np.ndarray) -> np.ndarray:
        t = xs[:, None] * sk[None, :]
        inner = _phi(p, m - 1, t.ravel(), K, cache).reshape(t.shape)
        return ((1.0 - t) ** (b - 1.0) * inner) @ w

    return _chunked(level, x, K)


def _value_above_half(p: ParamVector, m: int, x: np.ndarray, K: int, cache: dict) -> np.ndarray:
    """Unscaled B_m at each point of the flat array x; all x in (1/2, 1]."""
    if m == 0:
        return np.ones_like(x)
    A = p.prefix_sums[m - 1]
    a = p.a[m - 1]
    b = p.b[m - 1]
    key = (m, K)
    if key not in cache:
        cache[key] = 0.5**A * _phi(p, m, np.array([0.5]), K, cache)[0]
    at_half = cache[key]
    kp = grade_exponent(b)
    s, gw = unit_gauss(K)

    def level(xs: np.ndarray) -> np.ndarray:
        # Reflected remainder over (1/2, x): r = 1 - t runs from 1-x up to
        # 1/2 and the kernel r^(b-1) is steep at the r0 end exactly when x
        # is near 1, so the graded map clusters nodes there.
        lo = (1.0 - xs) ** (1.0 / kp)
        dr = 0.5 ** (1.0 / kp) - lo
        rho = lo[:, None] + dr[:, None] * s[None, :]
        r = rho**kp
        jac = kp * dr[:, None] * rho ** (kp - 1) * gw[None, :]
        t = 1.0 - r
        inner = _value_above_half(p, m - 1, t.ravel(), K, cache).reshape(t.shape)
        kern = r ** (b - 1.0) * t ** (a - 1.0)
        return at_half + np.einsum("ij,ij,ij->i", jac, kern, inner)

    return _chunked(level, x, K)


def _tensor_value(p: ParamVector, z: float, K: int) -> float:
    cache: dict = {}
    if z <= 0.5:
        return z**p.a_total * float(_phi(p, p.n, np.array([z]), K, cache)[0])
    return float(_value_above_half(p, p.n, np.array([z]), K, cache)[0])


def oracle_quadrature(p: ParamVector, z: float, nodes: int = 64) -> OracleEstimate:
    """Nested Gauss-Legendre estimate with a node-doubling error bound."""
    z = _check_z(z)
    if p.n > _MAX_LEVELS:
        raise DimensionTooLarge(f"tensor quadrature supports n <= {_MAX_LEVELS}, got n = {p.n}")
    if nodes < 2:
        raise DomainError(f"nodes = {nodes} must be >= 2")
    if z == 0.0:
        return OracleEstimate(value=0.0, source="quadrature", error_bound=0.0)
    coarse = _tensor_value(p, z, nodes)
    fine = _tensor_value(p, z, 2 * nodes)
    bound = abs(fine - coarse) + _ROUNDOFF_ALLOWANCE * abs(fine)
    return OracleEstimate(value=fine, source="quadrature", error_bound=bound)


def oracle_montecarlo(p: ParamVector, z: float, samples: int = 1_000_000, seed: int = 0) -> OracleEstimate:
    """Acceptance-rate estimate; reproducible for a fixed seed.

    The scale factor prod Beta(a_i, b_i) is accumulated in log space so very
    long parameter vectors cannot overflow before the (often tiny) acceptance
    probability is multiplied back in.
    """
    z = _check_z(z)
    samples = int(samples)
    if samples < 1_000:
        raise DomainError(f"samples = {samples} must be >= 1000")
    log_scale = 0.0
    for ai, bi in zip(p.a, p.b):
        classical_beta(ai, bi)  # range check, with its own diagnostics
        log_scale += math.lgamma(ai) + math.lgamma(bi) - math.lgamma(ai + bi)
    rng = np.random.default_rng(seed)
    a = np.asarray(p.a)
    b = np.asarray(p.b)
    hits = 0
    remaining = samples
    step = max(1, _CHUNK_ELEMENTS // p.n)
    while remaining > 0:
        m = min(step, remaining)
        draws = rng.beta(a, b, size=(m, p.n))
        ok = draws[:, -1] <= z
        if p.n > 1:
            ok &= np.all(np.diff(draws, axis=1) >= 0.0, axis=1)
        hits += int(np.count_nonzero(ok))
        remaining -= m
    p_hat = hits / samples
    value = math.exp(log_scale + math.log(p_hat)) if hits else 0.0
    # The 1/samples^2 term keeps the estimate honest when no draw lands in
    # the region: the rate is then known only to be below ~1/samples.
    spread = math.sqrt(p_hat * (1.0 - p_hat) / samples + 1.0 / samples**2)
    stderr = math.exp(log_scale + math.log(spread))
    return OracleEstimate(value=value, source="montecarlo", stderr=stderr)
