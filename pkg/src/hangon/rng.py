"""Deterministic random streams for Born-rule sampling.

All randomness flows through ``RngStream``, a thin wrapper around numpy's
Philox counter-based bit generator: identical seed plus identical call
sequence reproduces identical outcomes bit-for-bit, independent of platform.
Child streams are derived by counter offsetting (Philox ``jumped`` strides of
2^128 draws), so a run can hand out non-overlapping per-task streams from one
master seed.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np


class RngStream:
    """A seeded Philox stream; ``derive`` hands out disjoint substreams."""

    __slots__ = ("seed", "offset", "_gen")

    def __init__(self, seed: int, offset: int = 0):
        self.seed = int(seed)
        self.offset = int(offset)
        bitgen = np.random.Philox(key=self.seed)
        if self.offset:
            bitgen = bitgen.jumped(self.offset)
        self._gen = np.random.Generator(bitgen)

    def random(self) -> float:
        """One uniform draw in [0, 1)."""
        return float(self._gen.random())

    def randoms(self, n: int) -> np.ndarray:
        """n uniform draws in [0, 1)."""
        return self._gen.random(int(n))

    def derive(self, index: int) -> "RngStream":
        """Independent substream ``index``, offset by (index+1)*2^128 draws.

        Derivation is anchored to the seed, not to this stream's current
        position, so derive(i) is reproducible regardless of how many draws
        were consumed. Only single-level derivation is supported: deriving
        from a derived stream would re-enter the parent's counter space.
        """
        if self.offset:
            raise ValueError("cannot derive from an already-derived stream")
        if index < 0:
            raise ValueError("derivation index must be non-negative")
        return RngStream(self.seed, offset=index + 1)

    def sample_indices(self, weights: np.ndarray, n: int) -> np.ndarray:
        """n indices sampled from a discrete distribution via inverse CDF."""
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or np.any(w < 0) or w.sum() <= 0:
            raise ValueError("weights must be a non-negative 1-d array with positive sum")
        cdf = np.cumsum(w)
        cdf /= cdf[-1]
        idx = np.searchsorted(cdf, self.randoms(n), side="right")
        return np.minimum(idx, len(w) - 1)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, offset={self.offset})"


class FixedStream:
    """Preset uniform draws; used to steer sampling onto a chosen branch."""

    __slots__ = ("_values", "_pos")

    def __init__(self, values: Sequence[float]):
        self._values = [float(v) for v in values]
        self._pos = 0

    def random(self) -> float:
        if self._pos >= len(self._values):
            raise IndexError("FixedStream exhausted")
        v = self._values[self._pos]
        self._pos += 1
        return v
