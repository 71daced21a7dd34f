"""Random K-fold partitions and the two training regimes built on them.

Fold labels run 1..K; unit indices are ordinary 0-based numpy indices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .rng import RngStream

__all__ = [
    "FoldPlan",
    "make_plan",
    "eval_indices",
    "train_indices_crossfold",
    "train_indices_sequential",
]


@dataclass(frozen=True, eq=False)
class FoldPlan:
    assignments: np.ndarray
    K: int

    def __post_init__(self):
        a = np.array(self.assignments, dtype=np.int64)
        if a.ndim != 1:
            raise DomainError("assignments must be a vector")
        if self.K < 2:
            raise DomainError(f"need K >= 2, got {self.K}")
        if a.size and (a.min() < 1 or a.max() > self.K):
            raise DomainError(f"fold labels must lie in 1..{self.K}")
        if np.unique(a).size != self.K:
            raise DomainError("every fold label 1..K must appear")
        a.setflags(write=False)
        object.__setattr__(self, "assignments", a)

    @property
    def n(self) -> int:
        return self.assignments.size

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignments, minlength=self.K + 1)[1:]

    def _check_label(self, k: int) -> None:
        if not 1 <= k <= self.K:
            raise DomainError(f"fold label {k} outside 1..{self.K}")


def make_plan(n: int, K: int, rng: RngStream) -> FoldPlan:
    """Randomly split ``n`` units into ``K`` near-equal folds.

    A uniform permutation is cut into K consecutive blocks; block j gets
    label j + 1, and the first ``n % K`` blocks hold one extra unit.
    """
    if K < 2 or K > n:
        raise DomainError(f"need 2 <= K <= n, got K={K}, n={n}")
    perm = rng.sampler().permutation(n)
    base, extra = divmod(n, K)
    sizes = np.full(K, base, dtype=np.int64)
    sizes[:extra] += 1
    labels = np.repeat(np.arange(1, K + 1), sizes)
    assignments = np.empty(n, dtype=np.int64)
    assignments[perm] = labels
    return FoldPlan(assignments, K)


def eval_indices(plan: FoldPlan, k: int) -> np.ndarray:
    plan._check_label(k)
    return np.flatnonzero(plan.assignments == k)


def train_indices_crossfold(plan: FoldPlan, k: int) -> np.ndarray:
    """All units outside fold ``k``."""
    plan._check_label(k)
    return np.flatnonzero(plan.assignments != k)


def train_indices_sequential(plan: FoldPlan, k: int) -> np.ndarray:
    """All units in folds ``1..k-1``; fold 1 is never evaluated."""
    plan._check_label(k)
    if k == 1:
        raise DomainError("sequential training needs k >= 2 (fold 1 has no predecessors)")
    return np.flatnonzero(plan.assignments < k)
