"""Tail bounds for the sphere empirical-CDF deviation and its ingredients.

The deviation of the empirical CDF of sqrt(N) * X, for X uniform on the unit
sphere in R^N, splits into an i.i.d. Gaussian part controlled by the
Dvoretzky-Kiefer-Wolfowitz inequality and a scale part controlled by
chi-square tails (Laurent and Massart, 2000).  For every epsilon > 0 and
t in [0, 1) the three-term bound

    Pr( KS distance > epsilon + gamma(t) )
        <= 2 exp(-2 N epsilon^2) + exp(-N g_plus(t)^2) + exp(-N g_minus(t)^2)

holds, where g_plus and g_minus are the exponent rates of the scale factor
lambda = sqrt(N)/|Z| leaving [1-t, 1+t].  Replacing gamma(t), g_plus(t),
g_minus(t) by their global secant bounds t/2, (3/8) t, t gives the simplified
variant with explicit constants.

This module evaluates both bounds term by term, exposes the chi-square tail
inequalities in the raw deviation form and the rearranged threshold form, and
optimizes the free (epsilon, t) split for a total deviation budget, which
inverts the bound into a conservative p-value for observed KS statistics.

Exponents are assembled in log space before exponentiation, so dimensions up
to 1e9 and beyond do not overflow.  All functions are pure and thread-safe.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .deformation import DeformationParam, gamma_closed, _t_value
from .errors import DomainError

__all__ = [
    "BoundInputs",
    "BoundBreakdown",
    "OptimizedBound",
    "ChiSquareTailQuery",
    "LaurentMassartBound",
    "g_plus",
    "g_minus",
    "dkw_bound",
    "lm_upper",
    "lm_lower",
    "chisq_tail_upper",
    "chisq_tail_lower",
    "lambda_concentration_bound",
    "theorem_bound",
    "corollary_bound",
    "optimize_split",
    "p_value_bound",
]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _check_dim(N) -> int:
    try:
        n = int(N)
    except (TypeError, ValueError):
        raise DomainError(f"dimension must be a positive integer, got {N!r}") from None
    if n < 1 or n != N:
        raise DomainError(f"dimension must be a positive integer, got {N!r}")
    return n


def _check_positive(value, name: str) -> float:
    v = float(value)
    if not math.isfinite(v) or v <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return v


@dataclass(frozen=True)
class BoundInputs:
    """Inputs of the three-term bound: dimension N, tube half-width epsilon, scale window t."""

    N: int
    epsilon: float
    t: float

    def __post_init__(self):
        object.__setattr__(self, "N", _check_dim(self.N))
        object.__setattr__(self, "epsilon", _check_positive(self.epsilon, "epsilon"))
        object.__setattr__(self, "t", _t_value(self.t))


@dataclass(frozen=True)
class BoundBreakdown:
    """Per-term values of a three-term tail bound.

    threshold is the deviation being bounded (epsilon + gamma(t), or
    epsilon + t/2 for the simplified variant).  total may exceed 1; a vacuous
    bound is legal and is reported as is.
    """

    dkw_term: float
    gplus_term: float
    gminus_term: float
    total: float
    threshold: float

    def __post_init__(self):
        if abs(self.total - (self.dkw_term + self.gplus_term + self.gminus_term)) > 1e-12:
            raise DomainError("total must equal the sum of the three terms")


@dataclass(frozen=True)
class OptimizedBound:
    """Result of minimizing the bound total over splits epsilon + cost(t) = delta."""

    delta: float
    best_epsilon: float
    best_t: float
    best_total: float
    mode: str


@dataclass(frozen=True)
class ChiSquareTailQuery:
    """A chi-square tail question: N degrees of freedom, deviation x, threshold y."""

    N: int
    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "N", _check_dim(self.N))
        if not (math.isfinite(self.x) and self.x >= 0.0):
            raise DomainError(f"deviation x must be >= 0, got {self.x}")
        if not math.isfinite(self.y):
            raise DomainError(f"threshold y must be finite, got {self.y}")


class LaurentMassartBound(NamedTuple):
    """A tail probability bound together with the deviation threshold it certifies."""

    bound: float
    threshold: float


def g_plus(t):
    """Exponent rate for the upper scale excursion: (1 - (1+t)^-2) / 2.

    Zero at t = 0, strictly increasing, with limit 3/8 as t -> 1.  Accepts a
    scalar or ndarray with entries in [0, 1).
    """
    tv = _g_arg(t)
    out = 0.5 * (1.0 - 1.0 / (1.0 + tv) ** 2)
    return float(out) if np.ndim(t) == 0 else out


def g_minus(t):
    """Exponent rate for the lower scale excursion: (sqrt(2 (1-t)^-2 - 1) - 1) / 2.

    Zero at t = 0, strictly increasing, and divergent as t -> 1.  Accepts a
    scalar or ndarray with entries in [0, 1).
    """
    tv = _g_arg(t)
    out = 0.5 * (np.sqrt(2.0 / (1.0 - tv) ** 2 - 1.0) - 1.0)
    return float(out) if np.ndim(t) == 0 else out


def _g_arg(t):
    if isinstance(t, DeformationParam):
        return t.t
    arr = np.asarray(t, dtype=np.float64)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr >= 1.0):
        raise DomainError(f"t must lie in [0, 1), got {t!r}")
    return arr


def dkw_bound(N, epsilon) -> float:
    """Two-sided DKW tail 2 exp(-2 N epsilon^2) for an i.i.d. empirical CDF."""
    n = _check_dim(N)
    eps = _check_positive(epsilon, "epsilon")
    return 2.0 * math.exp(-2.0 * n * eps * eps)


def lm_upper(N, x) -> LaurentMassartBound:
    """Upper chi-square tail: Pr(U - N >= 2 sqrt(N x) + 2 x) <= exp(-x).

    Returns the bound exp(-x) paired with the certified deviation threshold
    2 sqrt(N x) + 2 x (Laurent and Massart, 2000).
    """
    n = _check_dim(N)
    xv = _lm_x(x)
    return LaurentMassartBound(math.exp(-xv), 2.0 * math.sqrt(n * xv) + 2.0 * xv)


def lm_lower(N, x) -> LaurentMassartBound:
    """Lower chi-square tail: Pr(N - U >= 2 sqrt(N x)) <= exp(-x).

    Returns the bound exp(-x) paired with the certified deviation threshold
    2 sqrt(N x).
    """
    n = _check_dim(N)
    xv = _lm_x(x)
    return LaurentMassartBound(math.exp(-xv), 2.0 * math.sqrt(n * xv))


def _lm_x(x) -> float:
    xv = float(x)
    if not math.isfinite(xv) or xv < 0.0:
        raise DomainError(f"chi-square deviation x must be >= 0, got {x!r}")
    return xv


def chisq_tail_upper(N, y) -> float:
    """Pr(U > y) <= exp(-(N/4) (sqrt(2 y / N - 1) - 1)^2) for y >= N.

    The threshold form of the upper chi-square tail; substituting
    y = N + 2 sqrt(N x) + 2 x recovers exp(-x) exactly.
    """
    n = _check_dim(N)
    yv = float(y)
    if not math.isfinite(yv) or yv < n:
        raise DomainError(f"upper threshold y must satisfy y >= N, got {y!r}")
    root = math.sqrt(1.0 - 2.0 * (1.0 - yv / n))
    return math.exp(-0.25 * n * (root - 1.0) ** 2)


def chisq_tail_lower(N, y) -> float:
    """Pr(U < y) <= exp(-(N/4) (y/N - 1)^2) for 0 <= y <= N.

    The threshold form of the lower chi-square tail; substituting
    y = N - 2 sqrt(N x) recovers exp(-x) exactly.
    """
    n = _check_dim(N)
    yv = float(y)
    if not math.isfinite(yv) or not 0.0 <= yv <= n:
        raise DomainError(f"lower threshold y must satisfy 0 <= y <= N, got {y!r}")
    return math.exp(-0.25 * n * (yv / n - 1.0) ** 2)


def lambda_concentration_bound(N, t) -> float:
    """Pr(|1 - lambda| > t) <= exp(-N g_plus(t)^2) + exp(-N g_minus(t)^2)."""
    n = _check_dim(N)
    tv = _t_value(t)
    return math.exp(-n * g_plus(tv) ** 2) + math.exp(-n * g_minus(tv) ** 2)


def theorem_bound(inputs: BoundInputs) -> BoundBreakdown:
    """Three-term bound with the exact gap and exponent-rate functions.

    threshold = epsilon + gamma(t); total = DKW term + both scale terms.
    """
    if not isinstance(inputs, BoundInputs):
        inputs = BoundInputs(*inputs)
    n, eps, tv = inputs.N, inputs.epsilon, inputs.t
    dkw = 2.0 * math.exp(-2.0 * n * eps * eps)
    gp = math.exp(-n * g_plus(tv) ** 2)
    gm = math.exp(-n * g_minus(tv) ** 2)
    return BoundBreakdown(
        dkw_term=dkw,
        gplus_term=gp,
        gminus_term=gm,
        total=dkw + gp + gm,
        threshold=eps + gamma_closed(tv).gamma,
    )


def corollary_bound(N, epsilon, t) -> BoundBreakdown:
    """Simplified three-term bound with explicit constants.

    threshold = epsilon + t/2;
    total = 2 exp(-2 N eps^2) + exp(-(9/64) N t^2) + exp(-N t^2).
    Dominates the exact-variant total at every (N, epsilon, t).
    """
    n = _check_dim(N)
    eps = _check_positive(epsilon, "epsilon")
    tv = _t_value(t)
    dkw = 2.0 * math.exp(-2.0 * n * eps * eps)
    gp = math.exp(-(9.0 / 64.0) * n * tv * tv)
    gm = math.exp(-n * tv * tv)
    return BoundBreakdown(
        dkw_term=dkw,
        gplus_term=gp,
        gminus_term=gm,
        total=dkw + gp + gm,
        threshold=eps + 0.5 * tv,
    )


def _split_cost(mode: str):
    if mode == "exact_gamma":
        return lambda t: gamma_closed(t).gamma
    if mode == "corollary":
        return lambda t: 0.5 * t
    raise DomainError(f"mode must be 'exact_gamma' or 'corollary', got {mode!r}")


def _split_total(n: int, mode: str, eps: float, t: float) -> float:
    dkw = 2.0 * math.exp(-2.0 * n * eps * eps)
    if mode == "exact_gamma":
        gp = math.exp(-n * g_plus(t) ** 2)
        gm = math.exp(-n * g_minus(t) ** 2)
    else:
        gp = math.exp(-(9.0 / 64.0) * n * t * t)
        gm = math.exp(-n * t * t)
    return dkw + gp + gm


def optimize_split(N, delta, mode: str = "exact_gamma") -> OptimizedBound:
    """Best split of a total deviation budget delta into epsilon + cost(t).

    Minimizes the bound total over the one-parameter family
    epsilon(t) = delta - cost(t) > 0, where cost(t) is gamma(t) in
    "exact_gamma" mode and t/2 in "corollary" mode.  A 512-point coarse grid
    over the feasible t range is refined by golden-section search; the result
    never exceeds any probed value.

    Note the t = 0 endpoint keeps both (vacuous) scale terms, so its total is
    the DKW term plus 2; dropping them has no backing once the sample lives on
    the sphere rather than being i.i.d.
    """
    n = _check_dim(N)
    dv = _check_positive(delta, "delta")
    cost = _split_cost(mode)

    # feasible range: cost is strictly increasing from 0 toward 1/2
    if dv < 0.5:
        lo, hi = 0.0, 1.0 - 1e-12
        while hi - lo > 1e-12:
            mid = 0.5 * (lo + hi)
            if cost(mid) < dv:
                lo = mid
            else:
                hi = mid
        t_max = lo
    else:
        t_max = 1.0 - 1e-12

    ts = np.linspace(0.0, t_max, 512, endpoint=False)
    totals = [_split_total(n, mode, dv - cost(t), t) for t in ts]
    k = int(np.argmin(totals))
    best_t, best_total = float(ts[k]), totals[k]

    a = float(ts[max(k - 1, 0)])
    b = float(ts[k + 1]) if k + 1 < len(ts) else t_max

    def objective(t):
        eps = dv - cost(t)
        if eps <= 0.0:
            return math.inf
        return _split_total(n, mode, eps, t)

    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = objective(c), objective(d)
    while b - a > 1e-12:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = objective(d)
        for tt, ff in ((c, fc), (d, fd)):
            if ff < best_total:
                best_t, best_total = tt, ff

    best_eps = dv - cost(best_t)
    if best_eps <= 0.0:
        best_t, best_eps = 0.0, dv
        best_total = _split_total(n, mode, dv, 0.0)
    return OptimizedBound(delta=dv, best_epsilon=best_eps, best_t=best_t,
                          best_total=best_total, mode=mode)


def p_value_bound(N, observed_ks) -> float:
    """Conservative p-value for an observed KS deviation under the uniform-sphere null.

    Optimizes the (epsilon, t) split of the exact bound at budget observed_ks
    and clamps the total at 1.  Monotone nonincreasing in the observed value.
    """
    n = _check_dim(N)
    ks = float(observed_ks)
    if not math.isfinite(ks) or not 0.0 < ks <= 1.0:
        raise DomainError(f"observed KS statistic must lie in (0, 1], got {observed_ks!r}")
    return min(1.0, optimize_split(n, ks, "exact_gamma").best_total)
