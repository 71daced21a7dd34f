"""Cross-fold and sequential validation of CATE estimates on one dataset.

Both pipelines share the same steps: split, fit on a training set, predict
on the evaluation fold, split that fold at the median prediction and form
the GATES statistic. They differ only in the training set: all other folds
(cross-fold) or all earlier folds (sequential).

Random streams: the fold plan uses lane 0 of the supplied stream, the
cross-fold learner for fold k lane k, and the sequential learner for
fold k lane K + k.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from .aggregate import (
    AggregationResult,
    Method,
    aggregate_median,
    aggregate_naive,
    aggregate_sequential,
)
from .data import Dataset
from .errors import ConfigError, DegenerateFoldError, DegenerateRunError, DomainError
from .folds import (
    FoldPlan,
    eval_indices,
    make_plan,
    train_indices_crossfold,
    train_indices_sequential,
)
from .gates import assign_groups, contrast
from .learner import LearnerSpec, fit
from .rng import RngStream

__all__ = [
    "Scheme",
    "DegeneratePolicy",
    "RunConfig",
    "RunResult",
    "run_crossfold",
    "run_sequential",
    "run",
]


class Scheme(enum.Enum):
    NAIVE = "naive"
    MEDIAN = "median"
    SEQUENTIAL = "sequential"
    ALL = "all"

    def methods(self) -> tuple:
        if self is Scheme.ALL:
            return (Method.NAIVE, Method.MEDIAN, Method.SEQUENTIAL)
        return (Method(self.value),)


class DegeneratePolicy(enum.Enum):
    ERROR = "error"
    SKIP_FOLD = "skip"


@dataclass(frozen=True)
class RunConfig:
    K: int = 5
    learner: LearnerSpec = field(default_factory=LearnerSpec)
    scheme: Scheme = Scheme.ALL
    alpha: float = 0.05
    degenerate_policy: DegeneratePolicy = DegeneratePolicy.ERROR

    def __post_init__(self):
        if not isinstance(self.scheme, Scheme):
            object.__setattr__(self, "scheme", Scheme(self.scheme))
        if not isinstance(self.degenerate_policy, DegeneratePolicy):
            object.__setattr__(self, "degenerate_policy", DegeneratePolicy(self.degenerate_policy))
        if int(self.K) < 2:
            raise ConfigError(f"K must be >= 2, got {self.K}")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")

    def as_dict(self) -> dict:
        return {"K": self.K, "learner": self.learner.kind.value,
                "knn_k": "auto" if self.learner.knn_k is None else self.learner.knn_k,
                "scheme": self.scheme.value, "alpha": self.alpha,
                "degenerate_policy": self.degenerate_policy.value}


@dataclass(frozen=True)
class RunResult:
    results: dict
    rejected: dict
    skipped_folds: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "results": {m.value: r.as_dict() for m, r in self.results.items()},
            "rejected": {m.value: r for m, r in self.rejected.items()},
            "skipped_folds": list(self.skipped_folds),
        }


def _fold_statistic(data, cfg, train, ev, k, rng):
    model = fit(cfg.learner, data, train, rng)
    tau_hat = model.predict(data.z[ev])
    stat = contrast(data, ev, assign_groups(tau_hat))
    return replace(stat, fold=k)


def _collect(data, cfg, rng, plan, folds, train_of, lane_offset, pipeline):
    stats, skipped = [], []
    for k in folds:
        ev = eval_indices(plan, k)
        try:
            stats.append(_fold_statistic(data, cfg, train_of(plan, k), ev, k,
                                         rng.with_lane(lane_offset + k)))
        except DegenerateFoldError as exc:
            exc.fold = k
            if cfg.degenerate_policy is DegeneratePolicy.ERROR:
                raise DegenerateFoldError(f"{pipeline} fold {k}: {exc}", exc.cell_counts, fold=k) from exc
            skipped.append({"pipeline": pipeline, "fold": k, "reason": str(exc)})
    return stats, skipped


def _plan(data: Dataset, cfg: RunConfig, rng: RngStream, plan: FoldPlan | None) -> FoldPlan:
    if plan is None:
        return make_plan(data.n, cfg.K, rng.with_lane(0))
    if plan.n != data.n or plan.K != cfg.K:
        raise DomainError("fold plan does not match data size or K")
    return plan


def _crossfold(data, cfg, rng, plan):
    return _collect(data, cfg, rng, plan, range(1, cfg.K + 1),
                    train_indices_crossfold, 0, "crossfold")


def _sequential(data, cfg, rng, plan):
    return _collect(data, cfg, rng, plan, range(2, cfg.K + 1),
                    train_indices_sequential, cfg.K, "sequential")


def run_crossfold(data: Dataset, cfg: RunConfig, rng: RngStream,
                  plan: FoldPlan | None = None) -> list:
    """One statistic per fold, each from a model fit on the other K - 1 folds.

    Folds skipped under ``DegeneratePolicy.SKIP_FOLD`` are simply absent.
    """
    return _crossfold(data, cfg, rng, _plan(data, cfg, rng, plan))[0]


def run_sequential(data: Dataset, cfg: RunConfig, rng: RngStream,
                   plan: FoldPlan | None = None) -> list:
    """Statistics for folds 2..K, each from a model fit on folds 1..k-1 only."""
    return _sequential(data, cfg, rng, _plan(data, cfg, rng, plan))[0]


def run(data: Dataset, cfg: RunConfig, rng: RngStream, plan: FoldPlan | None = None) -> RunResult:
    """Run the requested scheme(s) and aggregate.

    Under ``Scheme.ALL`` both pipelines use the same fold plan, so the three
    methods are compared on identical splits.

    Raises
    ------
    DegenerateFoldError
        Under ``DegeneratePolicy.ERROR``, for the first degenerate fold.
    DegenerateRunError
        If skipping leaves a pipeline without any usable fold.
    """
    plan = _plan(data, cfg, rng, plan)
    methods = cfg.scheme.methods()
    results, skipped = {}, []

    if Method.NAIVE in methods or Method.MEDIAN in methods:
        stats, sk = _crossfold(data, cfg, rng, plan)
        skipped += sk
        if not stats:
            raise DegenerateRunError("every cross-fold statistic was degenerate")
        if Method.NAIVE in methods:
            results[Method.NAIVE] = AggregationResult(
                Method.NAIVE, aggregate_naive([s.t for s in stats]), stats)
        if Method.MEDIAN in methods:
            results[Method.MEDIAN] = AggregationResult(
                Method.MEDIAN, aggregate_median([s.p for s in stats]), stats)

    if Method.SEQUENTIAL in methods:
        stats, sk = _sequential(data, cfg, rng, plan)
        skipped += sk
        if not stats:
            raise DegenerateRunError("every sequential statistic was degenerate")
        results[Method.SEQUENTIAL] = AggregationResult(
            Method.SEQUENTIAL, aggregate_sequential([s.t for s in stats]), stats)

    rejected = {m: r.p <= cfg.alpha for m, r in results.items()}
    return RunResult(results=results, rejected=rejected, skipped_folds=skipped)
