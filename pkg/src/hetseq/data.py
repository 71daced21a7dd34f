"""RCT datasets: container, synthetic generator and CSV ingestion."""

from __future__ import annotations

import csv
import enum
import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, DomainError, ParseError
from .rng import RngStream

__all__ = ["Dataset", "TauSpec", "DgpConfig", "true_cate", "generate", "read_csv"]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Dataset:
    """One RCT sample: covariates ``z`` (n x p), treatment ``d``, outcome ``y``.

    Arrays are copied and made read-only on construction.
    """

    z: np.ndarray
    d: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.z, dtype=np.float64)
        if z.ndim == 1:
            z = z[:, None]
        d = np.asarray(self.d)
        y = np.asarray(self.y, dtype=np.float64)
        if z.ndim != 2 or d.ndim != 1 or y.ndim != 1:
            raise DomainError("expected z of shape (n, p), d and y of shape (n,)")
        n, p = z.shape
        if n < 1 or p < 1:
            raise DomainError(f"dataset needs n >= 1 and p >= 1, got n={n}, p={p}")
        if d.shape[0] != n or y.shape[0] != n:
            raise DomainError(f"length mismatch: z has {n} rows, d {d.shape[0]}, y {y.shape[0]}")
        if not (np.all(np.isfinite(z)) and np.all(np.isfinite(y))):
            raise DomainError("dataset entries must be finite")
        d_float = d.astype(np.float64)
        if not np.all((d_float == 0.0) | (d_float == 1.0)):
            raise DomainError("treatment entries must be 0 or 1")
        object.__setattr__(self, "z", _frozen(z))
        object.__setattr__(self, "d", _frozen(d_float.astype(np.int8)))
        object.__setattr__(self, "y", _frozen(y))

    @property
    def n(self) -> int:
        return self.z.shape[0]

    @property
    def p(self) -> int:
        return self.z.shape[1]

    def subset(self, idx) -> "Dataset":
        idx = np.asarray(idx)
        return Dataset(self.z[idx], self.d[idx], self.y[idx])

    def equals(self, other: "Dataset") -> bool:
        return (np.array_equal(self.z, other.z) and np.array_equal(self.d, other.d)
                and np.array_equal(self.y, other.y))


class TauSpec(enum.Enum):
    """Ground-truth CATE used by the simulator."""

    ZERO = "zero"
    RELU_Z1 = "relu-z1"


def true_cate(tau_spec: TauSpec, z) -> float | np.ndarray:
    """Evaluate the ground-truth CATE.

    ``z`` may be a single p-vector (returns a float) or an (m, p) matrix
    (returns an m-vector).
    """
    z = np.asarray(z, dtype=np.float64)
    if z.ndim == 0 or z.shape[-1] == 0:
        raise DomainError("true_cate needs at least one covariate")
    if tau_spec is TauSpec.ZERO:
        out = np.zeros(z.shape[:-1])
    elif tau_spec is TauSpec.RELU_Z1:
        out = np.maximum(z[..., 0], 0.0)
    else:
        raise DomainError(f"unknown tau spec {tau_spec!r}")
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class DgpConfig:
    n: int
    p: int
    pi: float = 0.5
    tau_spec: TauSpec = TauSpec.ZERO
    noise_sd: float = 1.0

    def __post_init__(self):
        if self.n < 1 or self.p < 1:
            raise ConfigError(f"need n >= 1 and p >= 1, got n={self.n}, p={self.p}")
        if not 0.0 < self.pi < 1.0:
            raise ConfigError(f"pi must lie in (0, 1), got {self.pi}")
        if not (self.noise_sd > 0.0 and math.isfinite(self.noise_sd)):
            raise ConfigError(f"noise_sd must be positive, got {self.noise_sd}")
        if not isinstance(self.tau_spec, TauSpec):
            object.__setattr__(self, "tau_spec", TauSpec(self.tau_spec))


def generate(config: DgpConfig, rng: RngStream) -> Dataset:
    """Draw one simulated RCT.

    Z ~ Unif[-1, 1]^p, D ~ Bernoulli(pi) independent of Z, and
    Y = D * tau(Z) + noise_sd * N(0, 1). Draws are consumed from the stream
    in the order Z (row-major), D, noise.
    """
    s = rng.sampler()
    z = 2.0 * s.uniform((config.n, config.p)) - 1.0
    d = s.bernoulli(config.pi, config.n)
    eps = s.normal(config.n)
    y = d * true_cate(config.tau_spec, z) + config.noise_sd * eps
    return Dataset(z, d, y)


_Z_COL = re.compile(r"^z([1-9][0-9]*)$")


def read_csv(path) -> Dataset:
    """Load a dataset from a headed CSV with columns ``y``, ``d``, ``z1..zp``.

    Columns are matched by header name, so their order is irrelevant.
    Rows are numbered from 1 starting at the first data row.

    Raises
    ------
    ParseError
        On a missing or duplicated column, a non-numeric cell, a treatment
        value outside {0, 1}, or a file without covariates or rows.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ParseError(f"{path}: empty file") from None
        if len(set(header)) != len(header):
            raise ParseError(f"{path}: duplicated column names in header")
        zcols = {}
        for j, name in enumerate(header):
            m = _Z_COL.match(name)
            if m:
                zcols[int(m.group(1))] = j
            elif name not in ("y", "d"):
                raise ParseError(f"{path}: unexpected column {name!r}", column=name)
        for name in ("y", "d"):
            if name not in header:
                raise ParseError(f"{path}: missing column {name!r}", column=name)
        p = len(zcols)
        if p == 0:
            raise ParseError(f"{path}: no covariate columns (z1..zp)")
        missing = [f"z{k}" for k in range(1, p + 1) if k not in zcols]
        if missing:
            raise ParseError(f"{path}: missing column {missing[0]!r}", column=missing[0])
        order = [("y", header.index("y")), ("d", header.index("d"))]
        order += [(f"z{k}", zcols[k]) for k in range(1, p + 1)]

        rows = []
        for r, record in enumerate(reader, start=1):
            if not record or all(not c.strip() for c in record):
                continue
            if len(record) != len(header):
                raise ParseError(f"{path}: row {r} has {len(record)} fields, expected {len(header)}", row=r)
            values = []
            for name, j in order:
                cell = record[j].strip()
                try:
                    v = float(cell)
                except ValueError:
                    raise ParseError(f"{path}: row {r}, column {name}: non-numeric value {cell!r}",
                                     row=r, column=name) from None
                if not math.isfinite(v):
                    raise ParseError(f"{path}: row {r}, column {name}: non-finite value {cell!r}",
                                     row=r, column=name)
                if name == "d" and v not in (0.0, 1.0):
                    raise ParseError(f"{path}: row {r}, column d: treatment must be 0 or 1, got {cell!r}",
                                     row=r, column="d")
                values.append(v)
            rows.append(values)
    if not rows:
        raise ParseError(f"{path}: no data rows")
    arr = np.array(rows, dtype=np.float64)
    return Dataset(z=arr[:, 2:], d=arr[:, 1], y=arr[:, 0])
