"""The ordered beta distribution on the simplex 0 <= x_1 <= ... <= x_n <= 1.

The density is proportional to prod x_i^(a_i-1) (1-x_i)^(b_i-1) restricted
to the ordered simplex, so the normalizing constant C is the complete
ordered-simplex beta value B(a; b | 1).  Everything else reduces to products
of prefix values B_k(z) = B(a_1..a_k; b_1..b_k | z) and reversed-suffix
values S_j(w) = B(b_n..b_{n-j+1}; a_n..a_{n-j+1} | w):

    pdf_k(x)              = C^-1 x^(a_k-1) (1-x)^(b_k-1) B_{k-1}(x) S_{n-k}(1-x)
    P(X_k <= z < X_{k+1}) = C^-1 B_k(z) S_{n-k}(1-z)
    P(X_k <= z)           = sum_{j=k}^{n} C^-1 B_j(z) S_{n-j}(1-z)
    E[prod X_i^alpha_i (1-X_i)^beta_i] = B(a+alpha; b+beta | 1) / C

Reversing the chain, (1-X_n, ..., 1-X_1), is again ordered beta with the
reversed-swapped parameters and the same C.  Observation counts (m
successes, k failures per level) update conjugately to (a+m, b+k).

Two samplers: rejection (independent Beta(a_i, b_i) draws accepted when
ordered) and a Gibbs ensemble of independent chains, one per requested
point, whose coordinate conditionals are Beta(a_i, b_i) truncated to the
neighbor bracket [x_{i-1}, x_{i+1}], drawn by inverse-cdf bisection on
one-variable engine tables (chebyshev machine-double: its default order
already sits below the 1e-12 bisection tolerance).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chebyshev import cheb_eval, default_order as _cheb_order, _chain as _cheb_chain
from .errors import DomainError, LengthMismatch, MomentDomainError, RejectionStall
from .evaluate import DEFAULT_METHOD, PrefixEvaluator
from .params import ParamVector, reverse_swap, validate_params
from .taylor import PrecisionConfig

__all__ = [
    "GIBBS_BURN_IN",
    "BISECT_TOL",
    "STALL_FLOOR",
    "STALL_WINDOW",
    "SimplexPoint",
    "ObservationBatch",
    "SampleBatch",
    "OrderedBetaDist",
]

GIBBS_BURN_IN = 100
BISECT_TOL = 1e-12
STALL_FLOOR = 1e-4
STALL_WINDOW = 10**5
# Rejection draws are batched; cap the per-chunk element count so adversarial
# acceptance rates do not balloon memory.
_CHUNK_BUDGET = 1_000_000


@dataclass(frozen=True)
class SimplexPoint:
    """A point of the closed ordered simplex 0 <= x_1 <= ... <= x_n <= 1.

    Construction does not enforce the ordering: off-support points must be
    representable so the density can score them as -inf.  `in_support`
    reports whether the invariants actually hold.
    """

    x: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def in_support(self) -> bool:
        arr = np.asarray(self.x)
        if arr.size == 0 or not np.all(np.isfinite(arr)):
            return False
        if arr[0] < 0.0 or arr[-1] > 1.0:
            return False
        return bool(np.all(np.diff(arr) >= 0.0))


@dataclass(frozen=True)
class ObservationBatch:
    """Per-level success counts m and failure counts k."""

    m: tuple
    k: tuple

    def __post_init__(self):
        m = self._counts(self.m, "m")
        k = self._counts(self.k, "k")
        if len(m) != len(k):
            raise LengthMismatch(f"m has length {len(m)}, k has length {len(k)}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "k", k)

    @staticmethod
    def _counts(seq, name: str) -> tuple:
        out = []
        for v in seq:
            iv = int(v)
            if iv != v or iv < 0:
                raise DomainError(f"{name} entries must be non-negative integers, got {v!r}")
            out.append(iv)
        return tuple(out)

    @property
    def n(self) -> int:
        return len(self.m)


@dataclass(frozen=True)
class SampleBatch:
    """Sampler output: ordered points plus how they were produced."""

    points: tuple
    method: str
    acceptance_rate: float | None = None
    diagnostics: dict | None = None

    @property
    def array(self) -> np.ndarray:
        return np.array([p.x for p in self.points], dtype=float)

    def __len__(self) -> int:
        return len(self.points)


class OrderedBetaDist:
    """Immutable ordered beta distribution; C is computed eagerly.

    Engine settings (method, N, precision) are fixed at construction and
    inherited by every derived quantity, so ratios of complete values from
    identical parameters cancel exactly.
    """

    def __init__(
        self,
        a,
        b=None,
        method: str = DEFAULT_METHOD,
        N: int | None = None,
        precision: PrecisionConfig | None = None,
        _reuse_C: float | None = None,
    ):
        if isinstance(a, ParamVector):
            if b is not None:
                raise DomainError("pass either a ParamVector or two sequences, not both")
            p = a
        else:
            p = validate_params(a, b)
        self.params = p
        self._fwd = PrefixEvaluator(p, method, N, precision)
        self._rev = PrefixEvaluator(reverse_swap(p), method, N, precision)
        self.method = self._fwd.method
        self.N = self._fwd.N
        self.precision = self._fwd.precision
        self.C = float(_reuse_C) if _reuse_C is not None else float(self._fwd.complete())
        self._gibbs: list | None = None

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def a(self) -> tuple:
        return self.params.a

    @property
    def b(self) -> tuple:
        return self.params.b

    # -- densities ---------------------------------------------------------

    def log_pdf(self, x) -> float:
        """Log density at x; -inf marks off-support points.

        The exponent convention 0 * log(0) = 0 applies, so boundary points
        stay finite whenever the corresponding exponent vanishes.
        """
        pt = x if isinstance(x, SimplexPoint) else SimplexPoint(tuple(x))
        if pt.n != self.n:
            raise LengthMismatch(f"point has {pt.n} coordinates, expected {self.n}")
        if not pt.in_support:
            return -math.inf
        arr = np.asarray(pt.x)
        ea = np.asarray(self.params.a) - 1.0
        eb = np.asarray(self.params.b) - 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(ea != 0.0, ea * np.log(arr), 0.0)
            terms = terms + np.where(eb != 0.0, eb * np.log1p(-arr), 0.0)
        return float(-math.log(self.C) + np.sum(terms))

    def pdf(self, x) -> float:
        return math.exp(self.log_pdf(x))

    def _index(self, k: int, hi: int) -> int:
        k = int(k)
        if not 1 <= k <= hi:
            raise DomainError(f"index k = {k} outside 1..{hi}")
        return k

    def _bracket_term(self, j: int, z: float) -> float:
        # B_j(z) * S_{n-j}(1-z); the j = 0 / j = n factors are 1 by the
        # empty-product convention built into prefix_value.
        return self._fwd.prefix_value(j, z) * self._rev.prefix_value(self.n - j, 1.0 - z)

    def marginal_pdf(self, k: int, x):
        """Density of X_k at x in (0, 1); x may be a scalar or an array."""
        k = self._index(k, self.n)
        scalar = np.ndim(x) == 0
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        if arr.size and (arr.min() <= 0.0 or arr.max() >= 1.0):
            raise DomainError("marginal_pdf needs x strictly inside (0, 1)")
        ea = self.params.a[k - 1] - 1.0
        eb = self.params.b[k - 1] - 1.0
        val = (
            arr**ea
            * (1.0 - arr) ** eb
            * self._fwd.prefix_value(k - 1, arr)
            * self._rev.prefix_value(self.n - k, 1.0 - arr)
            / self.C
        )
        return float(val[0]) if scalar else val

    def bracket_prob(self, k: int, z: float) -> float:
        """P(X_k <= z < X_{k+1}) for k = 1..n-1 and z in (0, 1)."""
        k = self._index(k, self.n - 1)
        z = float(z)
        if not 0.0 < z < 1.0:
            raise DomainError(f"z = {z!r} outside (0, 1)")
        return self._bracket_term(k, z) / self.C

    def marginal_cdf(self, k: int, z: float) -> float:
        """P(X_k <= z): at least k coordinates fall at or below z."""
        k = self._index(k, self.n)
        z = self._unit(z)
        return sum(self._bracket_term(j, z) for j in range(k, self.n + 1)) / self.C

    def marginal_survival(self, k: int, z: float) -> float:
        """P(X_k > z): fewer than k coordinates fall at or below z."""
        k = self._index(k, self.n)
        z = self._unit(z)
        return sum(self._bracket_term(j, z) for j in range(k)) / self.C

    @staticmethod
    def _unit(z: float) -> float:
        z = float(z)
        if not 0.0 <= z <= 1.0:
            raise DomainError(f"z = {z!r} outside [0, 1]")
        return z

    # -- moments and transforms ---------------------------------------------

    def mixed_moment(self, alpha, beta) -> float:
        """E[prod X_i^alpha_i (1-X_i)^beta_i]; scalars broadcast across levels."""
        a = np.asarray(self.params.a)
        b = np.asarray(self.params.b)
        al = np.broadcast_to(np.asarray(alpha, dtype=float), (self.n,)).copy()
        be = np.broadcast_to(np.asarray(beta, dtype=float), (self.n,)).copy()
        if not np.all(al > -a):
            raise MomentDomainError(f"need alpha_i > -a_i for all i, got alpha = {al.tolist()}")
        if not np.all(be > -b):
            raise MomentDomainError(f"need beta_i > -b_i for all i, got beta = {be.tolist()}")
        shifted = validate_params(a + al, b + be)
        num = PrefixEvaluator(shifted, self.method, self.N, self.precision).complete()
        return num / self.C

    def mean(self, k: int) -> float:
        """E[X_k] via the one-hot mixed moment."""
        k = self._index(k, self.n)
        alpha = np.zeros(self.n)
        alpha[k - 1] = 1.0
        return self.mixed_moment(alpha, 0.0)

    def reverse(self) -> "OrderedBetaDist":
        """Distribution of (1-X_n, ..., 1-X_1); same C by the reversal symmetry."""
        return OrderedBetaDist(
            reverse_swap(self.params),
            method=self.method,
            N=self.N,
            precision=self.precision,
            _reuse_C=self.C,
        )

    def posterior_update(self, obs: ObservationBatch) -> "OrderedBetaDist":
        """Conjugate update to parameters (a + m, b + k); C is recomputed."""
        if obs.n != self.n:
            raise LengthMismatch(f"observation batch has {obs.n} levels, expected {self.n}")
        new_a = tuple(ai + mi for ai, mi in zip(self.params.a, obs.m))
        new_b = tuple(bi + ki for bi, ki in zip(self.params.b, obs.k))
        return OrderedBetaDist(new_a, new_b, method=self.method, N=self.N, precision=self.precision)

    # -- sampling ------------------------------------------------------------

    def sample(
        self,
        count: int,
        seed: int = 0,
        method: str = "rejection",
        burn_in: int = GIBBS_BURN_IN,
        stall_floor: float = STALL_FLOOR,
        stall_window: int = STALL_WINDOW,
    ) -> SampleBatch:
        """Draw `count` points; deterministic for a given seed.

        rejection: independent Beta(a_i, b_i) rows kept when ordered; raises
        RejectionStall when a full stall_window of trials accepts at a rate
        below stall_floor (the Gibbs sampler handles those cases).
        gibbs: one independent chain per point, systematic-scan truncated
        Beta conditionals, burn_in sweeps discarded.
        """
        count = int(count)
        if count < 1:
            raise DomainError(f"count must be >= 1, got {count}")
        rng = np.random.default_rng(seed)
        if method == "rejection":
            arr, rate = self._sample_rejection(count, rng, stall_floor, stall_window)
            diag = {"trials_per_accept": (1.0 / rate) if rate > 0 else math.inf}
            return SampleBatch(self._wrap(arr), "rejection", acceptance_rate=rate, diagnostics=diag)
        if method == "gibbs":
            arr = self._sample_gibbs(count, rng, int(burn_in))
            diag = {"chains": count, "burn_in": int(burn_in), "bisect_tol": BISECT_TOL}
            return SampleBatch(self._wrap(arr), "gibbs", acceptance_rate=None, diagnostics=diag)
        raise DomainError(f"unknown sampling method {method!r}")

    @staticmethod
    def _wrap(arr: np.ndarray) -> tuple:
        return tuple(SimplexPoint(tuple(row)) for row in arr)

    def _sample_rejection(self, count, rng, floor, window):
        a = np.asarray(self.params.a)
        b = np.asarray(self.params.b)
        chunk = max(min(2 * count, _CHUNK_BUDGET // max(self.n, 1)), 1024)
        kept: list[np.ndarray] = []
        have = trials = accepts = win_trials = win_accepts = 0
        while have < count:
            draws = rng.beta(a, b, size=(chunk, self.n))
            ok = np.all(draws[:, 1:] >= draws[:, :-1], axis=1)
            got = int(np.count_nonzero(ok))
            trials += chunk
            accepts += got
            win_trials += chunk
            win_accepts += got
            if got:
                kept.append(draws[ok])
                have += got
            if win_trials >= window and have < count:
                if win_accepts / win_trials < floor:
                    raise RejectionStall(
                        f"acceptance rate {win_accepts / win_trials:.3e} over the last "
                        f"{win_trials} trials is below {floor:g}; use method='gibbs'"
                    )
                win_trials = win_accepts = 0
        out = np.concatenate(kept, axis=0)[:count]
        return out, accepts / trials

    # One-variable cdf tables for the Gibbs conditionals: per coordinate the
    # forward (a_i; b_i) and swapped (b_i; a_i) chebyshev tables plus the
    # complete value, giving F_i on [0, 1] through the reflection identity
    # B(a; b | z) = C - B(b; a | 1-z) for z > 1/2.
    def _gibbs_tables(self) -> list:
        if self._gibbs is None:
            order = _cheb_order()
            tabs = []
            for ai, bi in zip(self.params.a, self.params.b):
                fwd = _cheb_chain(validate_params([ai], [bi]), order)[0]
                rev = _cheb_chain(validate_params([bi], [ai]), order)[0]
                ev = PrefixEvaluator(validate_params([ai], [bi]), "chebyshev")
                tabs.append((float(ai), float(bi), fwd, rev, float(ev.complete())))
            self._gibbs = tabs
        return self._gibbs

    def _coord_cdf(self, i: int, z: np.ndarray) -> np.ndarray:
        ai, bi, fwd, rev, c1 = self._gibbs_tables()[i]
        z = np.asarray(z, dtype=float)
        out = np.zeros_like(z)
        lo = (z > 0.0) & (z <= 0.5)
        hi = (z > 0.5) & (z < 1.0)
        if np.any(lo):
            zl = z[lo]
            out[lo] = zl**ai * cheb_eval(fwd, zl) / c1
        if np.any(hi):
            w = 1.0 - z[hi]
            out[hi] = 1.0 - w**bi * cheb_eval(rev, w) / c1
        out[z >= 1.0] = 1.0
        return out

    def _inverse_cdf(self, i: int, target: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        lo = lo.copy()
        hi = hi.copy()
        for _ in range(80):
            if np.max(hi - lo) <= BISECT_TOL:
                break
            mid = 0.5 * (lo + hi)
            below = self._coord_cdf(i, mid) < target
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        return 0.5 * (lo + hi)

    def _sample_gibbs(self, count, rng, burn_in):
        if burn_in < 0:
            raise DomainError(f"burn_in must be >= 0, got {burn_in}")
        n = self.n
        half = np.array([0.5])
        medians = np.array(
            [self._inverse_cdf(i, half, np.zeros(1), np.ones(1))[0] for i in range(n)]
        )
        chains = np.tile(np.sort(medians), (count, 1))
        zeros = np.zeros(count)
        ones = np.ones(count)
        for _ in range(burn_in + 1):
            for i in range(n):
                lo = chains[:, i - 1] if i > 0 else zeros
                hi = chains[:, i + 1] if i < n - 1 else ones
                flo = self._coord_cdf(i, lo)
                fhi = self._coord_cdf(i, hi)
                target = flo + rng.random(count) * (fhi - flo)
                chains[:, i] = self._inverse_cdf(i, target, lo, hi)
        return chains
