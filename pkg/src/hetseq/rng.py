"""Counter-based random streams keyed by ``(base_seed, stream_id)``.

Every stream is Philox4x64-10 (Salmon et al., SC'11) with the 128-bit key
``base_seed | stream_id << 64``. Philox is defined by its algorithm and
numpy's bit generator reproduces the Random123 known-answer vectors, so the
raw 64-bit words are portable. Uniforms, normals and permutations are
derived from the raw words here rather than through ``numpy.random.Generator``,
whose distribution algorithms are not frozen across numpy releases.

A third coordinate, ``lane``, selects a disjoint region of the Philox
counter space (the third counter word). Lanes let one consumer hand
independent sub-streams to its children without inventing new stream ids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError

__all__ = ["RngStream", "StreamSampler", "MASK64"]

MASK64 = (1 << 64) - 1
_TWO_M53 = 2.0 ** -53


def _u64(value: int, name: str) -> int:
    value = int(value)
    if not 0 <= value <= MASK64:
        raise DomainError(f"{name} must be a 64-bit unsigned integer, got {value}")
    return value


@dataclass(frozen=True)
class RngStream:
    """Immutable address of a random stream.

    The output sequence is a pure function of the three fields. Calling
    :meth:`sampler` always starts from the beginning of the stream.
    """

    base_seed: int
    stream_id: int = 0
    lane: int = 0

    def __post_init__(self):
        object.__setattr__(self, "base_seed", _u64(self.base_seed, "base_seed"))
        object.__setattr__(self, "stream_id", _u64(self.stream_id, "stream_id"))
        object.__setattr__(self, "lane", _u64(self.lane, "lane"))

    def with_lane(self, lane: int) -> "RngStream":
        return replace(self, lane=lane)

    def sampler(self) -> "StreamSampler":
        return StreamSampler(self)


class StreamSampler:
    """Stateful reader over an :class:`RngStream`."""

    def __init__(self, stream: RngStream):
        self.stream = stream
        key = np.array([stream.base_seed, stream.stream_id], dtype=np.uint64)
        # lane L starts at counter L * 2**128; numpy increments before the
        # first block, so seed it one below (mod 2**256)
        start = ((stream.lane << 128) - 1) % (1 << 256)
        counter = np.array([(start >> (64 * w)) & MASK64 for w in range(4)], dtype=np.uint64)
        self._bits = np.random.Philox(key=key, counter=counter)

    def raw(self, size: int) -> np.ndarray:
        """``size`` raw 64-bit words."""
        return self._bits.random_raw(size)

    def uniform(self, size) -> np.ndarray:
        """Uniform doubles on [0, 1) with 53 random bits each."""
        shape = (size,) if np.isscalar(size) else tuple(size)
        n = math.prod(shape)
        words = self.raw(n) >> np.uint64(11)
        return (words.astype(np.float64) * _TWO_M53).reshape(shape)

    def bernoulli(self, prob: float, size: int) -> np.ndarray:
        return (self.uniform(size) < prob).astype(np.int8)

    def normal(self, size: int) -> np.ndarray:
        """Standard normals by the Marsaglia polar method.

        Candidate pairs are drawn in batches; accepted pairs are consumed in
        order, so the output depends only on the stream and ``size``.
        """
        out = np.empty(size, dtype=np.float64)
        filled = 0
        while filled < size:
            need = size - filled
            pairs = max(16, int(need * 0.66) + 8)
            u = 2.0 * self.uniform((pairs, 2)) - 1.0
            s = u[:, 0] ** 2 + u[:, 1] ** 2
            ok = (s > 0.0) & (s < 1.0)
            u, s = u[ok], s[ok]
            f = np.sqrt(-2.0 * np.log(s) / s)
            z = (u * f[:, None]).reshape(-1)
            take = min(need, z.size)
            out[filled:filled + take] = z[:take]
            filled += take
        return out

    def permutation(self, n: int) -> np.ndarray:
        """Uniform random permutation of ``range(n)``.

        Sorting by independent 64-bit keys; a stable sort resolves the
        (probability ~n^2/2^65) key collisions deterministically.
        """
        keys = self.raw(n)
        return np.argsort(keys, kind="stable")
