"""Chebyshev-basis engine for the scaled ordered-simplex beta function.

On z in (0, 1/2] the scaled function is represented in shifted Chebyshev
polynomials T_k(4z - 1) with the halved-first-coefficient convention

    f(z) = xi_0/2 + sum_{k>=1} xi_k T_k(4z - 1).

One level of the recursion turns the coefficients of beta^(m-1) into those
of beta^(m) in four steps:

  1. synthesis: values v_j of the current expansion at the half-sample nodes
     x_j = cos(pi (j+1/2)/(N+1)), z_j = (1+x_j)/4;
  2. analysis: cosine-transform the weighted values
     (1-z_j)^(b_m-1) v_j into eta_k;
  3. backward recursion: solve the coefficient three-term relation for the
     auxiliary mu_k downward from mu_N = mu_{N+1} = 0 (downward because the
     unstable direction of the relation decays that way; the proof-side
     bound ||u_k|| < 6(2+N-k) ||u_{N+1}|| is probed in the tests by
     injecting seed perturbations);
  4. assemble: xi_0 = (eta_0 - (mu_0+mu_1)/4)/A_m, xi_k = (mu_{k-1} -
     mu_{k+1})/(8k).

Both transforms are one complex FFT of length 2(N+1) with half-sample phase
factors; below a crossover the O(N^2) cosine matrix is used instead, which
doubles as an independent check of the FFT path.  Coefficients decay like
rho^-k with rho about 5.8 (the Bernstein ellipse of the mapped interval), so
the table is short: machine accuracy near N = 27.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, LengthMismatch
from .params import ParamVector

__all__ = [
    "DCT_CROSSOVER",
    "ChebNodes",
    "ChebTable",
    "cheb_nodes",
    "cheb_synthesis",
    "cheb_analysis",
    "cheb_backward_recursion",
    "cheb_assemble",
    "cheb_pipeline",
    "cheb_eval",
    "default_order",
]

# Below this order the direct cosine matrix beats FFT setup cost and gives a
# second, independently coded transform for tests.
DCT_CROSSOVER = 32


@dataclass(frozen=True)
class ChebNodes:
    """Half-sample Chebyshev nodes and their images in (0, 1/2)."""

    N: int
    x: np.ndarray
    z: np.ndarray


@dataclass(frozen=True)
class ChebTable:
    """Coefficients xi_k, k = 0..N, halved-first convention, for `params`."""

    params: ParamVector
    N: int
    coeffs: np.ndarray


def cheb_nodes(N: int) -> ChebNodes:
    j = np.arange(N + 1)
    x = np.cos(np.pi * (j + 0.5) / (N + 1))
    return ChebNodes(N=N, x=x, z=(1.0 + x) / 4.0)


def default_order(tol: float = 1e-13) -> int:
    """Truncation order for a target tolerance: coefficients decay ~5.8^-k,
    so log_5(1/tol) terms suffice with 8 guard terms for the constant."""
    if not 0.0 < tol < 1.0:
        raise DomainError(f"tol = {tol!r} outside (0, 1)")
    return math.ceil(math.log(1.0 / tol) / math.log(5.0)) + 8


def _resolve_order(seq, N: int | None, what: str) -> int:
    if N is None:
        return len(seq) - 1
    if len(seq) != N + 1:
        raise LengthMismatch(f"{what} has length {len(seq)}, expected N+1 = {N + 1}")
    return N


def cheb_synthesis(coeffs: np.ndarray, N: int | None = None) -> np.ndarray:
    """Values v_j = coeffs_0/2 + sum_k coeffs_k cos(pi k (j+1/2)/(N+1))."""
    coeffs = np.asarray(coeffs, dtype=float)
    N = _resolve_order(coeffs, N, "coeffs")
    M = N + 1
    half = coeffs.copy()
    half[0] *= 0.5
    if N < DCT_CROSSOVER:
        k = np.arange(M)
        j = np.arange(M)
        return half @ np.cos(np.pi * np.outer(k, j + 0.5) / M)
    phased = half * np.exp(1j * np.pi * np.arange(M) / (2 * M))
    return np.real(np.fft.ifft(phased, 2 * M) * (2 * M))[:M]


def cheb_analysis(v: np.ndarray, b_m: float, N: int | None = None) -> np.ndarray:
    """eta_k = (2/(N+1)) sum_j (1-z_j)^(b_m-1) v_j cos(pi k (j+1/2)/(N+1))."""
    v = np.asarray(v, dtype=float)
    N = _resolve_order(v, N, "v")
    M = N + 1
    z = cheb_nodes(N).z
    # log1p keeps the weight accurate as z_j -> 1/2 and costs nothing else.
    u = v * np.exp((b_m - 1.0) * np.log1p(-z))
    if N < DCT_CROSSOVER:
        k = np.arange(M)
        j = np.arange(M)
        return (2.0 / M) * (np.cos(np.pi * np.outer(k, j + 0.5) / M) @ u)
    spec = np.fft.fft(u, 2 * M)[:M]
    return (2.0 / M) * np.real(np.exp(-1j * np.pi * np.arange(M) / (2 * M)) * spec)


def cheb_backward_recursion(
    eta: np.ndarray,
    A_m: float,
    N: int | None = None,
    seed: tuple[float, float] = (0.0, 0.0),
) -> np.ndarray:
    """mu_0..mu_{N+1} from mu_{k-1} = (8 eta_k - 2 mu_k - mu_{k+1}(1 - A_m/k)) / (1 + A_m/k).

    `seed` overrides the (mu_N, mu_{N+1}) starting pair; nonzero values model
    tail-truncation error for stability probes.
    """
    if A_m <= 0.0:
        raise DomainError(f"A_m = {A_m!r} must be > 0")
    eta = np.asarray(eta, dtype=float)
    N = _resolve_order(eta, N, "eta")
    mu = np.zeros(N + 2)
    mu[N], mu[N + 1] = seed
    e = eta.tolist()
    hi, lo = mu[N], mu[N + 1]
    for k in range(N, 0, -1):
        ratio = A_m / k
        prev = (8.0 * e[k] - 2.0 * hi - lo * (1.0 - ratio)) / (1.0 + ratio)
        mu[k - 1] = prev
        lo = hi
        hi = prev
    return mu


def cheb_assemble(eta0: float, mu: np.ndarray, A_m: float, N: int | None = None) -> np.ndarray:
    """xi_0 = (eta0 - (mu_0+mu_1)/4)/A_m; xi_k = (mu_{k-1} - mu_{k+1})/(8k)."""
    if A_m <= 0.0:
        raise DomainError(f"A_m = {A_m!r} must be > 0")
    mu = np.asarray(mu, dtype=float)
    if N is None:
        N = len(mu) - 2
    elif len(mu) < N + 2:
        raise LengthMismatch(f"mu has length {len(mu)}, needs at least N+2 = {N + 2}")
    xi = np.empty(N + 1)
    xi[0] = (eta0 - 0.25 * (mu[0] + mu[1])) / A_m
    k = np.arange(1.0, N + 1.0)
    xi[1:] = (mu[0:N] - mu[2 : N + 2]) / (8.0 * k)
    return xi


def _chain(p: ParamVector, N: int) -> list[ChebTable]:
    """Tables for every parameter prefix, sharing one pass of the recursion."""
    N = int(N)
    if N < 0:
        raise DomainError(f"order N must be >= 0, got {N}")
    xi = np.zeros(N + 1)
    xi[0] = 2.0
    tables = []
    for m in range(p.n):
        v = cheb_synthesis(xi, N)
        eta = cheb_analysis(v, p.b[m], N)
        mu = cheb_backward_recursion(eta, p.prefix_sums[m], N)
        xi = cheb_assemble(eta[0], mu, p.prefix_sums[m], N)
        tables.append(ChebTable(params=p.prefix(m + 1), N=N, coeffs=xi))
    return tables


def cheb_pipeline(p: ParamVector, N: int) -> ChebTable:
    """Coefficient table for the scaled function of `p` at order N."""
    return _chain(p, N)[-1]


def _check_eval_point(z) -> None:
    zarr = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(zarr)) or np.any(zarr <= 0.0) or np.any(zarr > 0.5):
        bad = zarr if zarr.ndim == 0 else zarr[(~np.isfinite(zarr)) | (zarr <= 0.0) | (zarr > 0.5)][0]
        raise DomainError(f"z = {bad} outside (0, 1/2]; reduce larger z upstream")


def cheb_eval(t: ChebTable, z):
    """Clenshaw evaluation at 4z - 1; scalars or arrays."""
    _check_eval_point(z)
    x = 4.0 * np.asarray(z, dtype=float) - 1.0
    c = t.coeffs
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    for k in range(t.N, 0, -1):
        b1, b2 = 2.0 * x * b1 - b2 + c[k], b1
    acc = x * b1 - b2 + 0.5 * c[0]
    return float(acc) if acc.ndim == 0 else acc
