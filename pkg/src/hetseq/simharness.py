"""Monte-Carlo rejection-rate studies and validation of user data files.

Replication r (1-based) draws its dataset from stream ``(base_seed, r)`` and
runs the pipeline on stream ``(base_seed, r + 2**63)``, so fold and learner
randomness never shifts the simulated data and vice versa. Replications are
independent and collected in order, which makes the report identical for
any degree of parallelism.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .aggregate import Method
from .data import DgpConfig, TauSpec, generate, read_csv
from .errors import ConfigError, DegenerateFoldError, DegenerateRunError
from .pipeline import DegeneratePolicy, RunConfig, RunResult, run
from .rng import RngStream

__all__ = [
    "PIPELINE_STREAM_OFFSET",
    "SimConfig",
    "MethodSummary",
    "SimulationReport",
    "simulate",
    "replicate",
    "resolve_parallelism",
    "format_table",
    "validate_file",
    "format_run",
]

PIPELINE_STREAM_OFFSET = 1 << 63
THREADS_ENV = "HETSEQ_THREADS"


@dataclass(frozen=True)
class SimConfig:
    """``parallelism=None`` means one worker per CPU (or ``$HETSEQ_THREADS``)."""

    dgp: DgpConfig
    run: RunConfig = field(default_factory=lambda: RunConfig(degenerate_policy=DegeneratePolicy.SKIP_FOLD))
    reps: int = 2000
    base_seed: int = 0
    parallelism: int | None = 1

    def __post_init__(self):
        if int(self.reps) < 1:
            raise ConfigError(f"reps must be >= 1, got {self.reps}")
        if self.parallelism is not None and int(self.parallelism) < 1:
            raise ConfigError(f"parallelism must be >= 1, got {self.parallelism}")
        if self.reps >= PIPELINE_STREAM_OFFSET:
            raise ConfigError("reps must stay below 2**63")


@dataclass(frozen=True)
class MethodSummary:
    rejection_rate: float
    mc_stderr: float
    reps_used: int
    degenerate_count: int
    rejections: int

    def as_dict(self) -> dict:
        return {"rejection_rate": self.rejection_rate, "mc_stderr": self.mc_stderr,
                "reps_used": self.reps_used, "degenerate_count": self.degenerate_count,
                "rejections": self.rejections}


@dataclass(frozen=True)
class SimulationReport:
    methods: dict
    skipped_folds: int
    config: SimConfig

    def rate(self, method: Method) -> float:
        return self.methods[method].rejection_rate

    def stderr(self, method: Method) -> float:
        return self.methods[method].mc_stderr

    def as_dict(self) -> dict:
        dgp = self.config.dgp
        return {
            "methods": {m.value: s.as_dict() for m, s in self.methods.items()},
            "skipped_folds": self.skipped_folds,
            "metadata": {
                "dgp": {"n": dgp.n, "p": dgp.p, "pi": dgp.pi,
                        "tau": dgp.tau_spec.value, "noise_sd": dgp.noise_sd},
                "run": self.config.run.as_dict(),
                "reps": self.config.reps,
                "base_seed": self.config.base_seed,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"


def resolve_parallelism(requested: int | None) -> int:
    """Worker count: ``$HETSEQ_THREADS`` if set, else ``requested``, else CPU count."""
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {env!r}") from None
        if value < 1:
            raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {env!r}")
        return value
    if requested is None:
        return os.cpu_count() or 1
    return int(requested)


def replicate(cfg: SimConfig, r: int) -> RunResult | None:
    """Run replication ``r`` (1-based); ``None`` if it was degenerate."""
    data = generate(cfg.dgp, RngStream(cfg.base_seed, r))
    try:
        return run(data, cfg.run, RngStream(cfg.base_seed, r + PIPELINE_STREAM_OFFSET))
    except (DegenerateRunError, DegenerateFoldError):
        return None


def _replicate(cfg: SimConfig, r: int):
    result = replicate(cfg, r)
    if result is None:
        return None
    return {m.value: bool(v) for m, v in result.rejected.items()}, len(result.skipped_folds)


def _replicate_chunk(args):
    cfg, reps = args
    return [_replicate(cfg, r) for r in reps]


def _outcomes(cfg: SimConfig, workers: int) -> list:
    reps = range(1, cfg.reps + 1)
    if workers <= 1 or cfg.reps == 1:
        return [_replicate(cfg, r) for r in reps]
    size = max(1, math.ceil(cfg.reps / (4 * workers)))
    chunks = [(cfg, list(reps[i:i + size])) for i in range(0, cfg.reps, size)]
    out = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_replicate_chunk, chunks):
            out.extend(part)
    return out


def simulate(cfg: SimConfig) -> SimulationReport:
    """Estimate rejection rates over ``cfg.reps`` simulated trials.

    Raises
    ------
    DegenerateRunError
        If every replication was degenerate.
    """
    outcomes = _outcomes(cfg, resolve_parallelism(cfg.parallelism))
    used = [o for o in outcomes if o is not None]
    if not used:
        raise DegenerateRunError(f"all {cfg.reps} replications were degenerate")
    degenerate = len(outcomes) - len(used)
    methods = {}
    for m in cfg.run.scheme.methods():
        hits = sum(o[0][m.value] for o in used)
        rate = hits / len(used)
        methods[m] = MethodSummary(
            rejection_rate=rate,
            mc_stderr=math.sqrt(rate * (1.0 - rate) / len(used)),
            reps_used=len(used),
            degenerate_count=degenerate,
            rejections=hits,
        )
    return SimulationReport(methods=methods, skipped_folds=sum(o[1] for o in used), config=cfg)


_TAU_LABEL = {TauSpec.ZERO: "tau(z) = 0", TauSpec.RELU_Z1: "tau(z) = (z1)+"}


def format_table(reports) -> str:
    """Aligned text table: one row per scenario, one column per method."""
    if isinstance(reports, SimulationReport):
        reports = [reports]
    cols = [m for m in Method if any(m in r.methods for r in reports)]
    rows = [["rejection rate"] + [m.value for m in cols]]
    for rep in reports:
        label = f"{_TAU_LABEL[rep.config.dgp.tau_spec]} (n={rep.config.dgp.n})"
        cells = []
        for m in cols:
            s = rep.methods.get(m)
            cells.append("-" if s is None else
                         f"{100 * s.rejection_rate:.2f}% ({100 * s.mc_stderr:.2f})")
        rows.append([label] + cells)
    widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) if j == 0 else c.rjust(w) for j, (c, w) in enumerate(zip(r, widths)))
             for r in rows]
    lines.insert(1, "-" * len(lines[0]))
    reps = sorted({r.config.reps for r in reports})
    lines.append(f"Monte-Carlo standard errors in parentheses; reps = {', '.join(map(str, reps))}; "
                 f"alpha = {reports[0].config.run.alpha}")
    return "\n".join(lines)


def format_run(result: RunResult, alpha: float) -> str:
    """Human-readable summary of a single validation run."""
    lines = []
    shown = set()
    for method, agg in result.results.items():
        pipeline = "sequential" if method is Method.SEQUENTIAL else "crossfold"
        if pipeline not in shown:
            shown.add(pipeline)
            lines.append(f"{pipeline} folds:")
            lines.append(f"  {'fold':>4}  {'delta':>10}  {'se':>10}  {'T':>8}  {'p':>10}")
            for s in agg.per_fold:
                lines.append(f"  {s.fold:>4}  {s.delta:>10.4f}  {s.sigma:>10.4f}  {s.t:>8.3f}  {s.p:>10.4g}")
    for sk in result.skipped_folds:
        lines.append(f"skipped {sk['pipeline']} fold {sk['fold']}: {sk['reason']}")
    lines.append(f"aggregate p-values (alpha = {alpha}):")
    for method, agg in result.results.items():
        verdict = "reject" if result.rejected[method] else "do not reject"
        lines.append(f"  {method.value:<10}  p = {agg.p:.4g}  -> {verdict}")
    return "\n".join(lines)


def validate_file(path, cfg: RunConfig, seed: int = 0):
    """Apply the validation pipeline(s) to a CSV dataset.

    Returns the :class:`RunResult` and a printable report. The pipeline runs
    on stream ``(seed, 0)``.
    """
    data = read_csv(path)
    result = run(data, cfg, RngStream(seed, 0))
    return result, format_run(result, cfg.alpha)
