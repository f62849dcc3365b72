"""Fringe histograms and the estimators used to verify them.

Visibility is measured at analytically located extrema bins: the mean bin
mass over the maxima versus the minima, (max-min)/(max+min), with a
delta-method standard error under Poisson counting. Fringe-free claims are
tested with a fixed-frequency oscillation fit: regress counts on an
envelope and envelope-modulated cos/sin at the known fringe phase, and ask
whether the fitted oscillation amplitude is consistent with zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import chi2

from .geometry import SlitGeometry, nearest_bins


@dataclass(frozen=True, eq=False)
class FringeHistogram:
    """Counts per screen bin, optionally conditioned on a detector class."""

    bin_edges: np.ndarray
    counts: np.ndarray
    condition: str | None = None

    def __post_init__(self) -> None:
        edges = np.asarray(self.bin_edges, dtype=float)
        counts = np.asarray(self.counts)
        if len(edges) != len(counts) + 1:
            raise ValueError("need one more bin edge than count")
        if np.any(counts < 0):
            raise ValueError("counts must be non-negative")
        edges = edges.copy()
        edges.setflags(write=False)
        counts = counts.copy()
        counts.setflags(write=False)
        object.__setattr__(self, "bin_edges", edges)
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def centers(self) -> np.ndarray:
        return (self.bin_edges[:-1] + self.bin_edges[1:]) / 2.0


def histogram_from_positions(
    g: SlitGeometry, positions: np.ndarray, condition: str | None = None
) -> FringeHistogram:
    counts = np.bincount(nearest_bins(g, positions), minlength=len(g.screen_positions))
    return FringeHistogram(g.bin_edges, counts, condition)


def visibility(values: np.ndarray, max_bins: np.ndarray, min_bins: np.ndarray) -> float:
    """(mean at maxima - mean at minima) / (sum), over located extrema bins."""
    v = np.asarray(values, dtype=float)
    hi = float(v[max_bins].mean())
    lo = float(v[min_bins].mean())
    if hi + lo == 0.0:
        return 0.0
    return (hi - lo) / (hi + lo)


def visibility_stderr(
    counts: np.ndarray, max_bins: np.ndarray, min_bins: np.ndarray
) -> float:
    """Delta-method standard error of the visibility estimator, treating the
    per-bin counts as independent Poisson."""
    c = np.asarray(counts, dtype=float)
    hi = float(c[max_bins].mean())
    lo = float(c[min_bins].mean())
    var_hi = max(float(c[max_bins].sum()), 1.0) / len(max_bins) ** 2
    var_lo = max(float(c[min_bins].sum()), 1.0) / len(min_bins) ** 2
    denom = (hi + lo) ** 2
    if denom == 0.0:
        return float("inf")
    d_hi = 2.0 * lo / denom
    d_lo = 2.0 * hi / denom
    return math.sqrt(d_hi * d_hi * var_hi + d_lo * d_lo * var_lo)


def oscillation_fit(
    counts: np.ndarray, envelope: np.ndarray, phase: np.ndarray
) -> tuple[float, float]:
    """Fitted fringe amplitude and its standard error, relative to the envelope.

    Least-squares fit of counts ~ b0*envelope + b1*envelope*cos(phase)
    + b2*envelope*sin(phase); returns (hypot(b1, b2)/b0, sigma/b0) so the
    amplitude reads as a fringe contrast. For fringe-free data the contrast
    is consistent with zero.
    """
    y = np.asarray(counts, dtype=float)
    env = np.asarray(envelope, dtype=float)
    ph = np.asarray(phase, dtype=float)
    X = np.column_stack([env, env * np.cos(ph), env * np.sin(ph)])
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ coef
    dof = len(y) - 3
    s2 = float(resid @ resid) / max(dof, 1)
    cov = s2 * np.linalg.inv(X.T @ X)
    b0 = float(coef[0])
    if b0 == 0.0:
        return 0.0, float("inf")
    amp = math.hypot(float(coef[1]), float(coef[2])) / abs(b0)
    sigma = math.sqrt(float(cov[1, 1]) + float(cov[2, 2])) / abs(b0)
    return amp, sigma


def chi_square_two_sample(
    counts_a: np.ndarray, counts_b: np.ndarray, min_pool: float = 10.0
) -> tuple[float, int, float]:
    """Two-sample chi-square homogeneity test over matching cells.

    Cells whose combined count falls below ``min_pool`` are pooled into one
    remainder cell. Returns (statistic, dof, p_value).
    """
    a = np.asarray(counts_a, dtype=float).ravel()
    b = np.asarray(counts_b, dtype=float).ravel()
    if a.shape != b.shape:
        raise ValueError("count tables must have identical shape")
    combined = a + b
    big = combined >= min_pool
    cells_a = list(a[big])
    cells_b = list(b[big])
    if np.any(~big):
        cells_a.append(float(a[~big].sum()))
        cells_b.append(float(b[~big].sum()))
    n_a, n_b = sum(cells_a), sum(cells_b)
    stat = 0.0
    used = 0
    for ca, cb in zip(cells_a, cells_b):
        tot = ca + cb
        if tot <= 0:
            continue
        used += 1
        stat += (n_b * ca - n_a * cb) ** 2 / (n_a * n_b * tot)
    dof = max(used - 1, 1)
    return stat, dof, float(chi2.sf(stat, dof))
