"""Tests for treatment heterogeneity in randomized trials.

Validates CATE estimates on held-out folds with a two-group GATES
statistic and combines fold-level evidence by naive pooling, median
p-value or sequential (prefix-trained) pooling.
"""

from .aggregate import AggregationResult, Method, aggregate_median, aggregate_naive, aggregate_sequential
from .data import Dataset, DgpConfig, TauSpec, generate, read_csv, true_cate
from .errors import (
    ConfigError,
    DegenerateFoldError,
    DegenerateRunError,
    DomainError,
    FitError,
    HetseqError,
    ParseError,
)
from .folds import FoldPlan, eval_indices, make_plan, train_indices_crossfold, train_indices_sequential
from .gates import FoldStatistic, assign_groups, contrast, jackknife_se, welch_se
from .learner import CateModel, LearnerKind, LearnerSpec, fit, predict
from .numeric import normal_cdf, probability, two_sided_p
from .pipeline import DegeneratePolicy, RunConfig, RunResult, Scheme, run, run_crossfold, run_sequential
from .rng import RngStream
from .simharness import SimConfig, SimulationReport, format_table, simulate, validate_file

__version__ = "0.1.0"
