"""Combining per-fold statistics into one p-value."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .numeric import probability, two_sided_p

__all__ = [
    "Method",
    "AggregationResult",
    "aggregate_naive",
    "aggregate_median",
    "aggregate_sequential",
]


class Method(enum.Enum):
    NAIVE = "naive"
    MEDIAN = "median"
    SEQUENTIAL = "sequential"


@dataclass(frozen=True)
class AggregationResult:
    method: Method
    p: float
    per_fold: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"method": self.method.value, "p": self.p,
                "per_fold": [s.as_dict() for s in self.per_fold]}


def _pooled_z(ts) -> float:
    ts = [float(t) for t in ts]
    if not ts:
        raise DomainError("need at least one statistic")
    if not all(math.isfinite(t) for t in ts):
        raise DomainError("statistics must be finite")
    # fsum is exactly rounded, hence independent of input order
    return math.fsum(ts) / math.sqrt(len(ts))


def aggregate_naive(ts) -> float:
    """``2 * Phi(-|sum(T_k) / sqrt(K)|)`` over cross-fold statistics.

    Treats the K statistics as independent, which they are not when the
    training sets overlap; kept for comparison.
    """
    return probability(two_sided_p(_pooled_z(ts)))


def aggregate_sequential(ts) -> float:
    """``2 * Phi(-|sum(T_k) / sqrt(K - 1)|)`` over statistics from folds 2..K.

    Same reducer as :func:`aggregate_naive`; validity comes from how the
    statistics were produced (each fit only on earlier folds).
    """
    return probability(two_sided_p(_pooled_z(ts)))


def aggregate_median(ps) -> float:
    """Sample median of per-fold p-values (midpoint for even K)."""
    ps = np.sort(np.array([probability(p) for p in ps], dtype=np.float64))
    if ps.size == 0:
        raise DomainError("need at least one p-value")
    mid = ps.size // 2
    if ps.size % 2:
        return float(ps[mid])
    return probability(0.5 * (ps[mid - 1] + ps[mid]))
