"""Validated shape-parameter vectors and Pochhammer coefficient rows.

The integrals computed by this package are indexed by paired positive shape
vectors (a_1..a_n, b_1..b_n).  Everything downstream keys off the running
sums A_m = a_1 + ... + a_m, so they are computed once here and carried along.

pochhammer_row supplies the scaled rising-factorial coefficients

    t_l = (1 - b)_l / l!,   t_0 = 1,   t_l = t_{l-1} * (l - b) / l,

which are the Taylor coefficients of (1 - u)^(b-1) and the building block of
both series engines.  For integer b >= 1 the row terminates: t_l = 0 for
l >= b, because the factor (l - b) hits zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import LengthMismatch, NonFiniteParameter, NonPositiveParameter

__all__ = [
    "ParamVector",
    "PochhammerRow",
    "validate_params",
    "reverse_swap",
    "pochhammer_row",
]


@dataclass(frozen=True)
class ParamVector:
    """Immutable pair of validated shape vectors with cached prefix sums.

    prefix_sums[m] == a[0] + ... + a[m]; strictly increasing since a_i > 0.
    """

    a: tuple[float, ...]
    b: tuple[float, ...]
    prefix_sums: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def a_total(self) -> float:
        return self.prefix_sums[-1]

    def prefix(self, k: int) -> "ParamVector":
        """First k coordinate pairs as a standalone vector (1 <= k <= n)."""
        if not 1 <= k <= self.n:
            raise LengthMismatch(f"prefix length {k} out of range 1..{self.n}")
        return ParamVector(self.a[:k], self.b[:k], self.prefix_sums[:k])


def validate_params(a: Iterable[float] | Sequence[float], b: Iterable[float] | Sequence[float]) -> ParamVector:
    """Check positivity, finiteness and pairing; return the frozen vector."""
    ta = tuple(float(x) for x in a)
    tb = tuple(float(x) for x in b)
    if len(ta) == 0 or len(tb) == 0:
        raise LengthMismatch("parameter vectors must be non-empty")
    if len(ta) != len(tb):
        raise LengthMismatch(f"len(a)={len(ta)} but len(b)={len(tb)}")
    for name, vec in (("a", ta), ("b", tb)):
        for i, x in enumerate(vec):
            if not math.isfinite(x):
                raise NonFiniteParameter(f"{name}[{i}] = {x!r} is not finite")
            if x <= 0.0:
                raise NonPositiveParameter(f"{name}[{i}] = {x!r} must be > 0")
    sums = tuple(np.cumsum(ta).tolist())
    # Positivity guarantees strict growth in exact arithmetic; a tie here means
    # an a_i vanished at working precision and every downstream division by
    # (k + A_m - A_{m-1}) distinctions would be meaningless.
    for m in range(1, len(sums)):
        if not sums[m] > sums[m - 1]:
            raise NonPositiveParameter(
                f"a[{m}] = {ta[m]!r} is below resolution of the running sum {sums[m - 1]!r}"
            )
    return ParamVector(ta, tb, sums)


def reverse_swap(p: ParamVector) -> ParamVector:
    """Reverse both vectors and swap their roles: (a, b) -> (rev b, rev a).

    This is the parameter map under x_i -> 1 - x_{n+1-i}, which maps the
    ordered simplex to itself; applying it twice returns the original vector.
    """
    ra = tuple(reversed(p.b))
    rb = tuple(reversed(p.a))
    return ParamVector(ra, rb, tuple(np.cumsum(ra).tolist()))


@dataclass(frozen=True)
class PochhammerRow:
    """Row of (1 - b)_l / l! for l = 0..N, stored as a float64 array."""

    b: float
    terms: np.ndarray

    @property
    def order(self) -> int:
        return len(self.terms) - 1


def pochhammer_row(b: float, N: int) -> PochhammerRow:
    """Coefficients t_l = (1 - b)_l / l! for l = 0..N via the ratio recurrence."""
    if N < 0:
        raise LengthMismatch(f"order N must be >= 0, got {N}")
    bf = float(b)
    if not math.isfinite(bf):
        raise NonFiniteParameter(f"b = {b!r} is not finite")
    terms = np.empty(N + 1)
    terms[0] = 1.0
    if N > 0:
        l = np.arange(1.0, N + 1.0)
        terms[1:] = np.cumprod((l - bf) / l)
    return PochhammerRow(bf, terms)
