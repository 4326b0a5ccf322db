"""Empirical CDFs, exact Kolmogorov-Smirnov distance to the Gaussian, rescaling.

For a sorted sample the one-sample KS statistic against a continuous CDF is
attained at a jump point, so it reduces to the exact maximum over

    i/N - Phi(x_(i))   and   Phi(x_(i)) - (i-1)/N

in sorted order; no grid search is involved.  Rescaling a sample by a positive
factor rescales its empirical CDF's argument, which is the mechanism behind
the tube-inflation property: an empirical CDF within epsilon of Phi stays
within epsilon + gamma(t) after rescaling by any lambda with |1-lambda| <= t.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .deformation import gamma_closed, _t_value
from .errors import DomainError

__all__ = ["EmpiricalCdfView", "KsResult", "build_ecdf", "ks_to_normal",
           "rescale_cdf", "check_tube_inflation"]


@dataclass(frozen=True)
class EmpiricalCdfView:
    """Sorted sample values; evaluation counts entries <= x (right-continuous)."""

    sorted_values: np.ndarray

    def __post_init__(self):
        v = np.array(self.sorted_values, dtype=np.float64, copy=True)
        if v.ndim != 1 or v.size == 0:
            raise DomainError("an empirical CDF needs a nonempty 1-D sample")
        if not np.all(np.isfinite(v)):
            raise DomainError("sample values must be finite")
        if np.any(np.diff(v) < 0.0):
            raise DomainError("values must be sorted ascending; use build_ecdf")
        v.setflags(write=False)
        object.__setattr__(self, "sorted_values", v)

    @property
    def n(self) -> int:
        return self.sorted_values.size

    def evaluate(self, x):
        """Fraction of sample values <= x; scalar in, scalar out."""
        arr = np.asarray(x, dtype=np.float64)
        out = np.searchsorted(self.sorted_values, arr, side="right") / self.n
        if arr.ndim == 0:
            return float(out)
        return out


@dataclass(frozen=True)
class KsResult:
    """Exact KS statistic, the sorted value attaining it, and which side wins.

    side is "upper" when the empirical CDF exceeds Phi at the witness and
    "lower" when Phi exceeds the empirical CDF just before the jump.
    """

    statistic: float
    argmax_location: float
    side: str


def build_ecdf(values) -> EmpiricalCdfView:
    """Sort a copy of the sample into an empirical CDF view; ties stack."""
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1 or v.size == 0:
        raise DomainError("build_ecdf needs a nonempty 1-D sample")
    if not np.all(np.isfinite(v)):
        raise DomainError("build_ecdf requires finite values")
    return EmpiricalCdfView(np.sort(v))


def _sorted_ks_gaps(sorted_values: np.ndarray):
    """Upper and lower jump-point gap arrays against the standard Gaussian CDF.

    Works on a 1-D sample or a (batch, N) matrix of row-sorted samples; the
    gap maxima along the last axis give the exact statistic.
    """
    n = sorted_values.shape[-1]
    p = special.ndtr(sorted_values)
    hi = np.arange(1, n + 1) / n
    lo = np.arange(0, n) / n
    return hi - p, p - lo


def ks_to_normal(ecdf: EmpiricalCdfView) -> KsResult:
    """Exact KS distance between the empirical CDF and the standard Gaussian.

    Ties in the gap value resolve to the upper side first and then to the
    lowest index, so the reported witness is deterministic.
    """
    v = ecdf.sorted_values
    upper, lower = _sorted_ks_gaps(v)
    iu = int(np.argmax(upper))
    il = int(np.argmax(lower))
    if upper[iu] >= lower[il]:
        return KsResult(statistic=float(upper[iu]), argmax_location=float(v[iu]),
                        side="upper")
    return KsResult(statistic=float(lower[il]), argmax_location=float(v[il]),
                    side="lower")


def rescale_cdf(ecdf: EmpiricalCdfView, lam: float) -> EmpiricalCdfView:
    """View of the sample rescaled by lam > 0 (its CDF maps x to F(x/lam))."""
    lv = float(lam)
    if not math.isfinite(lv) or lv <= 0.0:
        raise DomainError(f"rescale factor must be positive, got {lam!r}")
    return EmpiricalCdfView(ecdf.sorted_values * lv)


def check_tube_inflation(ecdf: EmpiricalCdfView, lam: float, epsilon: float, t,
                         tol: float = 1e-12) -> bool:
    """Tube-inflation predicate for one instance.

    When the hypotheses hold (the sample's KS distance to Phi is at most
    epsilon and |1 - lam| <= t), checks that the rescaled sample stays within
    epsilon + gamma(t) + tol.  Returns vacuous True when a hypothesis fails.
    """
    lv = float(lam)
    ev = float(epsilon)
    tv = _t_value(t)
    if not math.isfinite(lv) or lv <= 0.0:
        raise DomainError(f"rescale factor must be positive, got {lam!r}")
    if not math.isfinite(ev) or ev <= 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")
    if ks_to_normal(ecdf).statistic > ev or abs(1.0 - lv) > tv:
        return True
    inflated = ks_to_normal(rescale_cdf(ecdf, lv)).statistic
    return inflated <= ev + gamma_closed(tv).gamma + tol
