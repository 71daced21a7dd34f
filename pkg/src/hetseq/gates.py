"""Two-group GATES statistic on one evaluation fold.

Units are split at the median of their predicted CATE; the statistic is
the difference between the treatment effects of the top and bottom halves,
standardised by a delete-one jackknife standard error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import DegenerateFoldError, DomainError
from .numeric import two_sided_p

__all__ = [
    "FoldStatistic",
    "assign_groups",
    "contrast",
    "jackknife_se",
    "welch_se",
    "CELLS",
    "CELL_NAMES",
]

# (group, arm) cells and their sign in the contrast
CELLS = ((1, 1), (1, 0), (0, 1), (0, 0))
_SIGN = {(1, 1): 1.0, (1, 0): -1.0, (0, 1): -1.0, (0, 0): 1.0}
CELL_NAMES = ("top_treated", "top_control", "bottom_treated", "bottom_control")


def _named(counts) -> dict:
    return {name: counts[c] for name, c in zip(CELL_NAMES, CELLS)}


@dataclass(frozen=True)
class FoldStatistic:
    delta: float
    sigma: float
    sigma_welch: float
    t: float
    p: float
    cell_counts: tuple
    fold: int | None = None

    def as_dict(self) -> dict:
        return {"fold": self.fold, "delta": self.delta, "sigma": self.sigma,
                "sigma_welch": self.sigma_welch, "t": self.t, "p": self.p,
                "cell_counts": dict(zip(CELL_NAMES, self.cell_counts))}


def assign_groups(tau_hat) -> np.ndarray:
    """Label the top ceil(m/2) units by predicted CATE as group 1.

    Ranks are taken with ties broken by position, earlier units ranking
    lower, so the two groups always differ in size by at most one.
    """
    tau_hat = np.asarray(tau_hat, dtype=np.float64)
    m = tau_hat.size
    if m < 2:
        raise DomainError(f"need at least 2 units to split, got {m}")
    order = np.argsort(tau_hat, kind="stable")
    labels = np.zeros(m, dtype=np.int8)
    labels[order[m // 2:]] = 1
    return labels


def _cells(data: Dataset, eval_idx, groups):
    eval_idx = np.asarray(eval_idx, dtype=np.int64)
    groups = np.asarray(groups)
    if groups.shape != eval_idx.shape:
        raise DomainError("groups must align with the evaluation indices")
    y = data.y[eval_idx]
    d = data.d[eval_idx]
    masks = {c: (groups == c[0]) & (d == c[1]) for c in CELLS}
    counts = {c: int(masks[c].sum()) for c in CELLS}
    return y, masks, counts


def _centered(v: np.ndarray):
    """Mean and deviations, shifted by the first element so constant cells are exact."""
    shift = v[0]
    mean = shift + (v - shift).sum() / v.size
    return mean, v - mean


def _check_nonempty(counts, minimum: int, what: str):
    bad = [c for c in CELLS if counts[c] < minimum]
    if bad:
        name = CELL_NAMES[CELLS.index(bad[0])]
        raise DegenerateFoldError(
            f"{what}: cell {name} has {counts[bad[0]]} unit(s); counts={_named(counts)}",
            cell_counts=_named(counts),
        )


def _delta(y, masks) -> float:
    return math.fsum(_SIGN[c] * _centered(y[masks[c]])[0] for c in CELLS)


def jackknife_se(data: Dataset, eval_idx, groups) -> float:
    """Delete-one jackknife standard error of the contrast.

    Removing unit i from cell c moves that cell's mean by
    (mean_c - y_i) / (n_c - 1), so every leave-one-out contrast is
    available in O(1) from the full-sample cell means.
    """
    y, masks, counts = _cells(data, eval_idx, groups)
    _check_nonempty(counts, 2, "jackknife needs every cell to keep a unit")
    m = y.size
    shifts = np.empty(m)
    for c in CELLS:
        _, dev = _centered(y[masks[c]])
        shifts[masks[c]] = -_SIGN[c] * dev / (counts[c] - 1)
    centered = shifts - shifts.mean()
    return math.sqrt((m - 1) / m * float(np.dot(centered, centered)))


def welch_se(data: Dataset, eval_idx, groups) -> float:
    """Closed-form SE: sqrt(sum over cells of s_c^2 / n_c)."""
    y, masks, counts = _cells(data, eval_idx, groups)
    _check_nonempty(counts, 2, "sample variance needs two units per cell")
    total = 0.0
    for c in CELLS:
        _, dev = _centered(y[masks[c]])
        total += float(np.dot(dev, dev)) / (counts[c] - 1) / counts[c]
    return math.sqrt(total)


def contrast(data: Dataset, eval_idx, groups) -> FoldStatistic:
    """Treatment-effect contrast between the two groups, with T and p.

    Raises
    ------
    DegenerateFoldError
        If a (group, arm) cell has fewer than two units or the jackknife
        standard error is zero.
    """
    y, masks, counts = _cells(data, eval_idx, groups)
    _check_nonempty(counts, 1, "empty cell")
    delta = _delta(y, masks)
    sigma = jackknife_se(data, eval_idx, groups)
    sigma_welch = welch_se(data, eval_idx, groups)
    if sigma == 0.0:
        raise DegenerateFoldError(f"zero outcome variance within cells; counts={_named(counts)}",
                                  cell_counts=_named(counts))
    t = delta / sigma
    return FoldStatistic(delta=delta, sigma=sigma, sigma_welch=sigma_welch,
                         t=t, p=two_sided_p(t), cell_counts=tuple(counts[c] for c in CELLS))
