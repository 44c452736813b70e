"""Exact distances between finitely supported integer distributions."""

from __future__ import annotations

import numpy as np

from .distributions import IntegerDistribution

__all__ = ["tv_distance", "loc_distance"]


def _aligned(a: IntegerDistribution, b: IntegerDistribution) -> tuple[np.ndarray, np.ndarray]:
    """Pad both PMFs with zeros onto the union of their supports."""
    lo = min(a.support_min, b.support_min)
    hi = max(a.support_max, b.support_max)
    pa = np.zeros(hi - lo + 1)
    pb = np.zeros(hi - lo + 1)
    pa[a.support_min - lo : a.support_max - lo + 1] = a.pmf
    pb[b.support_min - lo : b.support_max - lo + 1] = b.pmf
    return pa, pb


def tv_distance(a: IntegerDistribution, b: IntegerDistribution) -> float:
    """Total variation distance: half the l1 distance between the PMFs."""
    pa, pb = _aligned(a, b)
    return 0.5 * float(np.sum(np.abs(pa - pb)))


def loc_distance(a: IntegerDistribution, b: IntegerDistribution) -> float:
    """Local distance: largest absolute pointwise PMF difference."""
    pa, pb = _aligned(a, b)
    return float(np.max(np.abs(pa - pb)))
