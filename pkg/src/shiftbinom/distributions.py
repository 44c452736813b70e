"""Exact Poisson-binomial law and the six approximating distributions.

Everything is represented as a finitely supported PMF on the integers
(:class:`IntegerDistribution`). The centerpiece is the three-parameter
shifted binomial fit: trials, success probability, and an integer shift
chosen to match the first three moments of the target sum as closely as
integer rounding allows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .ensemble import BernoulliEnsemble, MomentSummary

__all__ = [
    "IntegerDistribution",
    "ShiftedBinomialFit",
    "DegenerateEnsembleError",
    "FitRangeError",
    "exact_pmf",
    "brute_force_pmf",
    "fit_shifted_binomial",
    "shifted_binomial_pmf",
    "poisson_pmf",
    "shifted_poisson_pmf",
    "one_param_binomial_pmf",
    "two_param_binomial_pmf",
    "discretized_normal_pmf",
    "fractional_binomial_loglik",
]

BRUTE_FORCE_MAX_M = 20

# Rounding slop when splitting n*, s* into integer and fractional parts.
# Exact-fit families (i.i.d., {p,1}-valued) produce integer n*, s* only up
# to float rounding; without the snap, floor() would land one below.
_INT_SNAP = 1e-9


class DegenerateEnsembleError(ValueError):
    """The ensemble has no usable spread (e.g. sigma^2 = 0) for this fit."""


class FitRangeError(ValueError):
    """Rounded fit parameters fell outside their valid range."""


@dataclass(frozen=True)
class IntegerDistribution:
    """PMF on the integers: entry k of ``pmf`` is P(X = offset + k).

    Construct via :meth:`from_masses`, which trims zero-mass tails so the
    stored support is tight.
    """

    offset: int
    pmf: np.ndarray

    @classmethod
    def from_masses(cls, offset: int, masses: np.ndarray) -> "IntegerDistribution":
        arr = np.asarray(masses, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("pmf must be a non-empty 1-d array")
        if np.any(arr < 0.0):
            worst = float(arr.min())
            raise ValueError(f"pmf has negative mass {worst!r}")
        nonzero = np.flatnonzero(arr)
        if nonzero.size == 0:
            raise ValueError("pmf has no mass")
        lo, hi = int(nonzero[0]), int(nonzero[-1])
        arr = arr[lo : hi + 1].copy()
        arr.flags.writeable = False
        return cls(offset=offset + lo, pmf=arr)

    def __len__(self) -> int:
        return len(self.pmf)

    @property
    def support_min(self) -> int:
        return self.offset

    @property
    def support_max(self) -> int:
        return self.offset + len(self.pmf) - 1

    def support(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + len(self.pmf))

    def prob(self, k: int) -> float:
        idx = k - self.offset
        if 0 <= idx < len(self.pmf):
            return float(self.pmf[idx])
        return 0.0

    def tail_above(self, k: int) -> float:
        """P(X > k)."""
        idx = k - self.offset + 1
        if idx <= 0:
            return float(np.sum(self.pmf))
        if idx >= len(self.pmf):
            return 0.0
        return float(np.sum(self.pmf[idx:]))

    def total_mass(self) -> float:
        return float(np.sum(self.pmf))

    def mean(self) -> float:
        return float(np.dot(self.support(), self.pmf))

    def variance(self) -> float:
        mu = self.mean()
        return float(np.dot((self.support() - mu) ** 2, self.pmf))

    def third_central_moment(self) -> float:
        mu = self.mean()
        return float(np.dot((self.support() - mu) ** 3, self.pmf))


@dataclass(frozen=True)
class ShiftedBinomialFit:
    """Three-parameter fit: exact real solution plus rounded integers.

    (n_star, p_star, s_star) solve the moment equations exactly; (n, p, s)
    are the usable parameters with n = floor(n_star), s = floor(s_star) and
    p re-perturbed so that n*p + s reproduces the target mean exactly.
    """

    n_star: float
    p_star: float
    s_star: float
    n: int
    s: int
    p: float
    frac_n: float
    frac_s: float


def _floor_frac(x: float) -> tuple[int, float]:
    # Snap to the nearest integer when within _INT_SNAP (relative), so that
    # analytically-integer solutions are not split as (k-1, 0.999...).
    nearest = round(x)
    if abs(x - nearest) <= _INT_SNAP * max(1.0, abs(x)):
        return int(nearest), 0.0
    f = math.floor(x)
    return int(f), x - f


def exact_pmf(e: BernoulliEnsemble) -> IntegerDistribution:
    """Exact law of the Bernoulli sum by iterative convolution.

    Folds one Bernoulli at a time into the running PMF:
    new[k] = old[k]*(1-p) + old[k-1]*p. O(m^2) and exact to rounding.
    """
    dist = np.array([1.0])
    for p in e.probs:
        grown = np.empty(len(dist) + 1)
        grown[0] = dist[0] * (1.0 - p)
        grown[1:-1] = dist[1:] * (1.0 - p) + dist[:-1] * p
        grown[-1] = dist[-1] * p
        dist = grown
    return IntegerDistribution.from_masses(0, dist)


def brute_force_pmf(e: BernoulliEnsemble) -> IntegerDistribution:
    """Oracle PMF from explicit enumeration of all 2^m outcome vectors.

    Exists to cross-check :func:`exact_pmf`; refuses m > 20.
    """
    m = e.m
    if m > BRUTE_FORCE_MAX_M:
        raise ValueError(f"brute force enumeration capped at m={BRUTE_FORCE_MAX_M}, got {m}")
    # One array entry per outcome vector: probabilities and success counts
    # double with each variable folded in.
    outcome_prob = np.array([1.0])
    outcome_count = np.array([0])
    for p in e.probs:
        outcome_prob = np.concatenate([outcome_prob * (1.0 - p), outcome_prob * p])
        outcome_count = np.concatenate([outcome_count, outcome_count + 1])
    masses = np.bincount(outcome_count, weights=outcome_prob, minlength=m + 1)
    return IntegerDistribution.from_masses(0, masses)


def fit_shifted_binomial(ms: MomentSummary) -> ShiftedBinomialFit:
    """Solve the three-moment equations and round to integer (n, s).

    The exact solution is p* = (l2-l3)/(l1-l2), n* = (l1-l2)/(p*(1-p*)),
    s* = l1 - n*p*. Rounding keeps the mean matched exactly via
    p = (n*p* + {s*})/n, computed as the algebraically equal (l1 - s)/n,
    which avoids routing p through the cancellation-prone n*p* product.
    """
    if ms.sigma2 <= 0.0:
        raise DegenerateEnsembleError(
            "degenerate ensemble: sigma^2 = 0, no shifted binomial fit exists"
        )
    if ms.lambda2 <= ms.lambda3:
        raise DegenerateEnsembleError(
            "degenerate ensemble: lambda2 = lambda3 forces p* = 0"
        )
    p_star = (ms.lambda2 - ms.lambda3) / ms.sigma2
    n_star = ms.sigma2 / (p_star * (1.0 - p_star))
    s_star = ms.lambda1 - n_star * p_star

    n, frac_n = _floor_frac(n_star)
    s, frac_s = _floor_frac(s_star)
    if n < 1:
        raise FitRangeError(f"fit out of range: n* = {n_star:.6g} rounds below 1")
    p = (ms.lambda1 - s) / n
    # Clamping p would silently break the mean match, so fail instead.
    if not (0.0 < p < 1.0):
        raise FitRangeError(f"fit out of range: perturbed p = {p:.6g} not in (0, 1)")
    return ShiftedBinomialFit(
        n_star=n_star,
        p_star=p_star,
        s_star=s_star,
        n=n,
        s=s,
        p=p,
        frac_n=frac_n,
        frac_s=frac_s,
    )


def shifted_binomial_pmf(fit: ShiftedBinomialFit) -> IntegerDistribution:
    """Binomial(n, p) masses translated to offset s."""
    k = np.arange(fit.n + 1)
    masses = stats.binom.pmf(k, fit.n, fit.p)
    return IntegerDistribution.from_masses(fit.s, masses)


def poisson_pmf(lam: float, mass_floor: float = 1e-14) -> IntegerDistribution:
    """Poisson(lam) truncated where the right tail drops below mass_floor.

    The truncated mass is not renormalized; it stays below mass_floor and is
    absorbed by distance tolerances downstream.
    """
    if lam < 0.0 or not math.isfinite(lam):
        raise ValueError(f"Poisson rate must be finite and >= 0, got {lam}")
    if not (0.0 < mass_floor <= 1e-10):
        raise ValueError(f"mass_floor must be in (0, 1e-10], got {mass_floor}")
    if lam == 0.0:
        return IntegerDistribution.from_masses(0, np.array([1.0]))
    kmax = int(stats.poisson.isf(mass_floor, lam)) + 1
    # isf is approximate this deep in the tail; walk right until the
    # survival function actually honors the floor
    while stats.poisson.sf(kmax, lam) > mass_floor:
        kmax += 1
    masses = stats.poisson.pmf(np.arange(kmax + 1), lam)
    return IntegerDistribution.from_masses(0, masses)


def shifted_poisson_pmf(ms: MomentSummary, mass_floor: float = 1e-14) -> IntegerDistribution:
    """Translated Poisson matching the first two moments.

    Shift s = floor(l1 - sigma^2); rate picks up the fractional remainder so
    the mean is matched exactly and the variance overshoots by less than 1.
    """
    if ms.sigma2 <= 0.0:
        raise DegenerateEnsembleError("degenerate ensemble: sigma^2 = 0")
    shift, frac = _floor_frac(ms.lambda1 - ms.sigma2)
    rate = ms.sigma2 + frac
    base = poisson_pmf(rate, mass_floor)
    return IntegerDistribution(offset=base.offset + shift, pmf=base.pmf)


def one_param_binomial_pmf(e: BernoulliEnsemble) -> IntegerDistribution:
    """Binomial(m, l1/m): trials fixed at m, p matched to the mean."""
    p = sum(e.probs) / e.m
    masses = stats.binom.pmf(np.arange(e.m + 1), e.m, p)
    return IntegerDistribution.from_masses(0, masses)


def two_param_binomial_pmf(ms: MomentSummary) -> IntegerDistribution:
    """Binomial with n = floor(l1^2/l2) and p = l1/n (two-moment match)."""
    if ms.lambda2 <= 0.0:
        raise DegenerateEnsembleError("degenerate ensemble: lambda2 = 0")
    n, _ = _floor_frac(ms.lambda1**2 / ms.lambda2)
    p = ms.lambda1 / n
    if p > 1.0:
        raise FitRangeError(f"fit out of range: p = lambda1/n = {p:.6g} exceeds 1")
    masses = stats.binom.pmf(np.arange(n + 1), n, p)
    return IntegerDistribution.from_masses(0, masses)


def discretized_normal_pmf(
    mean: float, variance: float, support: tuple[int, int]
) -> IntegerDistribution:
    """Normal law discretized to integer cells with continuity correction.

    Cell k gets Phi(k+1/2) - Phi(k-1/2) (standardized); the two extreme
    cells absorb the remaining tails so the masses sum to 1 exactly.
    """
    if variance <= 0.0:
        raise DegenerateEnsembleError(f"variance must be positive, got {variance}")
    lo, hi = int(support[0]), int(support[1])
    if hi < lo:
        raise ValueError(f"empty support range ({lo}, {hi})")
    sd = math.sqrt(variance)
    edges = (np.arange(lo, hi + 2) - 0.5 - mean) / sd
    cdf = stats.norm.cdf(edges)
    cdf[0] = 0.0
    cdf[-1] = 1.0
    return IntegerDistribution.from_masses(lo, np.diff(cdf))


def fractional_binomial_loglik(x: int, n: float, p: float) -> float:
    """Unnormalized binomial log-likelihood x*log(p) + (n-x)*log(1-p).

    n may be fractional: the value interpolates linearly between the
    log-likelihoods of the two nearest integer-n models. No binomial
    coefficient is included (it is constant in p).
    """
    if n <= 0.0 or not math.isfinite(n):
        raise ValueError(f"n must be finite and positive, got {n}")
    if x < 0 or x > math.ceil(n):
        raise ValueError(f"x must be in [0, ceil(n)] = [0, {math.ceil(n)}], got {x}")
    if p == 0.0:
        if x > 0:
            raise ValueError("p = 0 is incompatible with x > 0")
        return 0.0
    if p == 1.0:
        if x != n:
            raise ValueError("p = 1 is incompatible with x != n")
        return 0.0
    if not (0.0 < p < 1.0):
        raise ValueError(f"p must be inside [0, 1], got {p}")
    return x * math.log(p) + (n - x) * math.log1p(-p)
