"""CATE learners: fit on a training index set, predict on new covariates."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import ConfigError, DomainError, FitError
from .rng import RngStream

__all__ = ["LearnerKind", "LearnerSpec", "CateModel", "ZeroModel", "KnnTModel", "fit", "predict"]

# bytes of scratch used per distance block
_BLOCK_BYTES = 1 << 25


class LearnerKind(enum.Enum):
    ZERO = "zero"
    KNN_T = "knn"


@dataclass(frozen=True)
class LearnerSpec:
    """Which learner to fit.

    ``knn_k=None`` means automatic: ceil(sqrt(min(n_treated, n_control)))
    over the training set.
    """

    kind: LearnerKind = LearnerKind.KNN_T
    knn_k: int | None = None

    def __post_init__(self):
        if not isinstance(self.kind, LearnerKind):
            object.__setattr__(self, "kind", LearnerKind(self.kind))
        if self.knn_k is not None and int(self.knn_k) < 1:
            raise ConfigError(f"knn_k must be >= 1, got {self.knn_k}")


class CateModel:
    """A fitted CATE predictor."""

    p: int

    def predict(self, z_rows) -> np.ndarray:
        z = np.asarray(z_rows, dtype=np.float64)
        if z.ndim == 1:
            z = z[None, :]
        if z.ndim != 2 or z.shape[1] != self.p:
            raise DomainError(f"expected rows with {self.p} covariates, got shape {z.shape}")
        return self._predict(z)

    def _predict(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class ZeroModel(CateModel):
    def __init__(self, p: int):
        self.p = p

    def _predict(self, z):
        return np.zeros(z.shape[0])


def _knn_mean(query: np.ndarray, points: np.ndarray, values: np.ndarray, k: int) -> np.ndarray:
    """Mean of ``values`` over the ``k`` nearest ``points`` for each query row.

    Distance ties at the k-th neighbour go to the lowest index in ``points``.
    """
    n, p = points.shape
    if k >= n:
        return np.full(query.shape[0], values.mean())
    out = np.empty(query.shape[0])
    rows = max(1, _BLOCK_BYTES // (16 * n))
    for start in range(0, query.shape[0], rows):
        q = query[start:start + rows]
        # coordinate-wise accumulation keeps each distance independent of row order
        dist = (q[:, 0:1] - points[:, 0]) ** 2
        for j in range(1, p):
            dist += (q[:, j:j + 1] - points[:, j]) ** 2
        nearest = np.argpartition(dist, k - 1, axis=1)[:, :k]
        kth = np.take_along_axis(dist, nearest, axis=1).max(axis=1, keepdims=True)
        ties = np.flatnonzero((dist <= kth).sum(axis=1) > k)
        for r in ties:
            closer = np.flatnonzero(dist[r] < kth[r])
            tied = np.flatnonzero(dist[r] == kth[r])
            nearest[r] = np.concatenate([closer, tied[:k - closer.size]])
        nearest.sort(axis=1)
        out[start:start + rows] = values[nearest].sum(axis=1) / k
    return out


class KnnTModel(CateModel):
    """T-learner: kNN mean outcome among treated minus among controls."""

    def __init__(self, z1, y1, z0, y0, k1: int, k0: int):
        self.z1, self.y1, self.z0, self.y0 = z1, y1, z0, y0
        self.k1, self.k0 = k1, k0
        self.p = z1.shape[1]

    def _predict(self, z):
        return _knn_mean(z, self.z1, self.y1, self.k1) - _knn_mean(z, self.z0, self.y0, self.k0)


def fit(spec: LearnerSpec, data: Dataset, train, rng: RngStream | None = None) -> CateModel:
    """Fit a CATE model on ``data`` restricted to the ``train`` indices.

    ``rng`` is accepted for learners with internal randomness; the built-in
    learners are deterministic and ignore it.

    Raises
    ------
    FitError
        If ``train`` is empty, or for the kNN T-learner if either arm is empty.
    """
    train = np.asarray(train, dtype=np.int64)
    if train.size == 0:
        raise FitError("empty training set")
    if spec.kind is LearnerKind.ZERO:
        return ZeroModel(data.p)

    train = np.sort(train)
    d = data.d[train]
    treated, control = train[d == 1], train[d == 0]
    n1, n0 = treated.size, control.size
    if n1 == 0 or n0 == 0:
        raise FitError(f"training set has an empty arm (treated={n1}, control={n0})",
                       cell_counts={"treated": n1, "control": n0})
    if spec.knn_k is None:
        k = math.ceil(math.sqrt(min(n1, n0)))
        k1 = k0 = k
    else:
        k1 = min(int(spec.knn_k), n1)
        k0 = min(int(spec.knn_k), n0)
    return KnnTModel(data.z[treated], data.y[treated], data.z[control], data.y[control], k1, k0)


def predict(model: CateModel, z_rows) -> np.ndarray:
    return model.predict(z_rows)
