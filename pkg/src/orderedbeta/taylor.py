"""Taylor-series engine for the scaled ordered-simplex beta function.

The scaled function beta(a_1..a_m; b_1..b_m | z) has the expansion
sum_k c_k^(m) z^k on |z| < 1, built level by level:

    c_k^(1) = (1 - b_1)_k / ((a_1 + k) k!),
    c_k^(m) = (1 / (k + A_m)) * sum_{l=0}^{k} c_{k-l}^(m-1) (1 - b_m)_l / l!,

with A_m = a_1 + ... + a_m.  Each lift is one polynomial product followed by
an elementwise division, so a full table costs O(n N log N) through the FFT.
Truncating at N leaves an error O(2^-N) for z <= 1/2, which is where the
series is ever evaluated; larger z is handled upstream by a reduction
identity.

The recursion is generic over the arithmetic type: the machine path runs on
float64 arrays (FFT above a crossover order, direct convolution below), and
the extended path runs the same recursion on mpmath reals.  Extended mode
exists because the Pochhammer rows alternate with huge magnitude once some
parameter is large (failures appear once a parameter reaches ~50), which
cancels catastrophically in doubles; machine-double pipelines emit
PrecisionWarning beyond a configurable threshold.  Floats entering the
extended path are converted through their shortest decimal repr, so an input
written as 0.8 means the decimal 0.8, not the nearest binary double.

FFT convolution smears an absolute error of order eps * max|row| across
every output coefficient, while the direct sum keeps each coefficient's
error proportional to its own summands.  For rows with large dynamic range
the two differ by many digits, so the lift falls back to the direct sum
whenever the row peak exceeds ROW_MAGNITUDE_LIMIT, independent of N.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .errors import DomainError, LengthMismatch, PrecisionWarning
from .params import ParamVector, pochhammer_row

__all__ = [
    "FFT_CROSSOVER",
    "ROW_MAGNITUDE_LIMIT",
    "PRECISION_WARNING_THRESHOLD",
    "PrecisionConfig",
    "TaylorTable",
    "taylor_base_coeffs",
    "taylor_lift",
    "taylor_pipeline",
    "taylor_eval",
    "default_order",
]

# Below this order a direct O(N^2) convolution is faster than FFT setup and
# keeps a fixed operation order, which helps reproducibility comparisons.
FFT_CROSSOVER = 64
# Pochhammer rows whose peak magnitude exceeds this are convolved directly:
# FFT rounding is absolute at the scale of the row peak, so a 1e8 peak turns
# eps-level noise into ~1e-8 absolute error on every coefficient at once.
ROW_MAGNITUDE_LIMIT = 1e8
PRECISION_WARNING_THRESHOLD = 20.0


@dataclass(frozen=True)
class PrecisionConfig:
    """Working-precision descriptor for the series arithmetic."""

    mode: str = "machine-double"
    digits: int = 120

    def __post_init__(self) -> None:
        if self.mode not in ("machine-double", "extended"):
            raise DomainError(f"unknown precision mode {self.mode!r}")
        if self.mode == "extended" and self.digits < 16:
            raise DomainError(f"extended mode needs digits >= 16, got {self.digits}")

    @classmethod
    def double(cls) -> "PrecisionConfig":
        return cls("machine-double")

    @classmethod
    def extended(cls, digits: int = 120) -> "PrecisionConfig":
        return cls("extended", digits)

    @property
    def is_extended(self) -> bool:
        return self.mode == "extended"


@dataclass(frozen=True)
class TaylorTable:
    """Coefficients c_k^(n), k = 0..N, of the scaled function for `params`."""

    params: ParamVector
    N: int
    precision: PrecisionConfig
    coeffs: object  # float64 array (machine) or tuple of mpf (extended)


def default_order(tol: float = 1e-13) -> int:
    """Truncation order for a target tolerance at z <= 1/2.

    The truncation error decays like 2^-N, so log2(1/tol) terms reach the
    target and 10 guard terms cover the unknown constant.
    """
    if not 0.0 < tol < 1.0:
        raise DomainError(f"tol = {tol!r} outside (0, 1)")
    return math.ceil(math.log2(1.0 / tol)) + 10


def _check_order(N: int) -> int:
    N = int(N)
    if N < 0:
        raise DomainError(f"order N must be >= 0, got {N}")
    return N


def taylor_base_coeffs(a1: float, b1: float, N: int) -> np.ndarray:
    """c_k^(1) = (1 - b1)_k / ((a1 + k) k!) for k = 0..N."""
    N = _check_order(N)
    row = pochhammer_row(b1, N).terms
    return row / (a1 + np.arange(N + 1.0))


def _convolve_head(x: np.ndarray, y: np.ndarray, use_fft: bool | None = None) -> np.ndarray:
    """First len(x) coefficients of the polynomial product x * y."""
    n = len(x)
    if use_fft is None:
        use_fft = n - 1 >= FFT_CROSSOVER
    if not use_fft:
        return np.convolve(x, y)[:n]
    size = 1
    while size < 2 * n - 1:
        size *= 2
    prod = np.fft.irfft(np.fft.rfft(x, size) * np.fft.rfft(y, size), size)
    return prod[:n]


def taylor_lift(prev: np.ndarray, A_m: float, b_m: float, N: int | None = None) -> np.ndarray:
    """One level of the recursion: convolve with the b_m Pochhammer row, then
    divide by (k + A_m)."""
    prev = np.asarray(prev, dtype=float)
    if N is None:
        N = len(prev) - 1
    elif len(prev) != N + 1:
        raise LengthMismatch(f"prev has length {len(prev)}, expected N+1 = {N + 1}")
    if A_m <= 0.0:
        raise DomainError(f"A_m = {A_m!r} must be > 0")
    row = pochhammer_row(b_m, N).terms
    use_fft = N >= FFT_CROSSOVER and np.max(np.abs(row)) <= ROW_MAGNITUDE_LIMIT
    conv = _convolve_head(prev, row, use_fft)
    return conv / (np.arange(N + 1.0) + A_m)


def _mp_pochhammer_terms(b: mp.mpf, N: int) -> list:
    terms = [mp.mpf(1)]
    for l in range(1, N + 1):
        terms.append(terms[-1] * (l - b) / l)
    return terms


def _to_mp(x: float) -> mp.mpf:
    # repr gives the shortest decimal that round-trips, recovering the
    # decimal the caller typed rather than its binary approximation.
    return mp.mpf(repr(float(x)))


def _extended_stage_coeffs(p: ParamVector, N: int, digits: int) -> list[tuple]:
    stages = []
    with mp.workdps(digits):
        a = [_to_mp(x) for x in p.a]
        b = [_to_mp(x) for x in p.b]
        A = a[0]
        row = _mp_pochhammer_terms(b[0], N)
        coeffs = [row[k] / (a[0] + k) for k in range(N + 1)]
        stages.append(tuple(coeffs))
        for m in range(1, p.n):
            A = A + a[m]
            row = _mp_pochhammer_terms(b[m], N)
            coeffs = [
                sum(coeffs[k - l] * row[l] for l in range(k + 1)) / (k + A)
                for k in range(N + 1)
            ]
            stages.append(tuple(coeffs))
    return stages


def _chain(
    p: ParamVector,
    N: int,
    prec: PrecisionConfig,
    warn_threshold: float = PRECISION_WARNING_THRESHOLD,
) -> list[TaylorTable]:
    """Tables for every parameter prefix, sharing one pass of the recursion."""
    N = _check_order(N)
    if prec.is_extended:
        stage_coeffs = _extended_stage_coeffs(p, N, prec.digits)
        return [TaylorTable(p.prefix(m + 1), N, prec, c) for m, c in enumerate(stage_coeffs)]
    big = max(max(p.a), max(p.b))
    if big > warn_threshold:
        warnings.warn(
            f"max shape parameter {big} exceeds {warn_threshold}: Pochhammer rows "
            "alternate with large magnitude and the machine-double convolution "
            "cancels; consider PrecisionConfig.extended()",
            PrecisionWarning,
            stacklevel=3,
        )
    coeffs = taylor_base_coeffs(p.a[0], p.b[0], N)
    tables = [TaylorTable(p.prefix(1), N, prec, coeffs)]
    for m in range(1, p.n):
        coeffs = taylor_lift(coeffs, p.prefix_sums[m], p.b[m], N)
        tables.append(TaylorTable(p.prefix(m + 1), N, prec, coeffs))
    return tables


def taylor_pipeline(
    p: ParamVector,
    N: int,
    prec: PrecisionConfig | None = None,
    warn_threshold: float = PRECISION_WARNING_THRESHOLD,
) -> TaylorTable:
    """Full coefficient table for the scaled function of `p` at order N."""
    return _chain(p, N, prec or PrecisionConfig.double(), warn_threshold)[-1]


def _check_eval_point(z) -> None:
    zarr = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(zarr)) or np.any(zarr <= 0.0) or np.any(zarr > 0.5):
        bad = zarr if zarr.ndim == 0 else zarr[(~np.isfinite(zarr)) | (zarr <= 0.0) | (zarr > 0.5)][0]
        raise DomainError(f"z = {bad} outside (0, 1/2]; reduce larger z upstream")


def taylor_eval(t: TaylorTable, z):
    """Horner evaluation of the truncated series at z in (0, 1/2].

    Machine tables accept scalars or arrays; extended tables are evaluated
    in their working precision and returned as float.
    """
    _check_eval_point(z)
    if t.precision.is_extended:
        with mp.workdps(t.precision.digits):
            zm = _to_mp(z)
            acc = mp.mpf(0)
            for c in reversed(t.coeffs):
                acc = acc * zm + c
            return float(acc)
    coeffs = t.coeffs
    zarr = np.asarray(z, dtype=float)
    acc = np.full_like(zarr, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * zarr + c
    return float(acc) if acc.ndim == 0 else acc
