"""Delayed-choice quantum eraser at desk scale.

The idler side is a four-detector discrete state entangled with the signal
photon's slit path: with the beam splitter in, D1 and D2 couple to anti-phased
path superpositions (the minimal relative phase that makes the two
post-selected fringe patterns cancel pairwise), while D3 and D4 tag a single
slit; with it out, every detector tags a single slit. The signal side reuses
the two-slit spherical-wave amplitudes: the joint detection density over
(detector, screen bin) is |sum over paths of branch amplitude times slit
wave|^2, so post-selecting on D1 or D2 reveals fringes, their union is
fringe-free, and the unconditioned screen marginal is identical whether or
not the beam splitter is present.

Runs sample either measurement order. The signal-first path draws screen
positions from the beam-splitter-independent marginal before the detector
label is sampled from the configured wave function, structurally enforcing
that recorded positions cannot depend on the later choice.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..engine import Universe, create_universe
from ..errors import ConfigError
from ..rng import RngStream
from ..states import Observable, StateVector, Subsystem, label_observable, make_state, tensor
from .fringes import FringeHistogram
from .geometry import SlitGeometry, default_geometry, path_difference, slit_wave_arrays

DETECTORS = ("D1", "D2", "D3", "D4")
PATHS = ("U", "L")
PERSPECTIVES = ("idler_first", "signal_first")

_HALF = 0.5
_EIGHTH = 1.0 / (2.0 * math.sqrt(2.0))


@dataclass(frozen=True)
class EraserConfig:
    """One eraser run: beam-splitter choice, measurement order, size, seed."""

    bs_present: bool
    perspective: str
    n_photons: int
    geometry: SlitGeometry
    seed: int

    def __post_init__(self) -> None:
        if self.perspective not in PERSPECTIVES:
            raise ConfigError(f"perspective must be one of {PERSPECTIVES}")
        if self.n_photons < 1:
            raise ConfigError("n_photons must be at least 1")


def detector_subsystem() -> Subsystem:
    return Subsystem("detector", DETECTORS)


def path_subsystem() -> Subsystem:
    return Subsystem("path", PATHS)


def branch_amplitudes(
    bs_present: bool, *, printed_equation: bool = False
) -> dict[tuple[str, str], complex]:
    """Amplitude per (detector, path) branch.

    ``printed_equation`` keeps D2 in phase with D1 (both +), the variant that
    breaks the pairwise fringe cancellation; it exists so tests can show that
    it fails the "union equals no interference" identity.
    """
    if not bs_present:
        return {
            ("D1", "U"): _HALF,
            ("D2", "L"): _HALF,
            ("D3", "L"): _HALF,
            ("D4", "U"): _HALF,
        }
    d2_sign = 1.0 if printed_equation else -1.0
    return {
        ("D1", "U"): _EIGHTH,
        ("D1", "L"): _EIGHTH,
        ("D2", "U"): _EIGHTH,
        ("D2", "L"): d2_sign * _EIGHTH,
        ("D3", "L"): _HALF,
        ("D4", "U"): _HALF,
    }


def eraser_state(cfg: EraserConfig, *, printed_equation: bool = False) -> StateVector:
    """The discrete (detector, path) state for the configured device."""
    det, path = detector_subsystem(), path_subsystem()
    amps = branch_amplitudes(cfg.bs_present, printed_equation=printed_equation)
    return make_state([det, path], [((d, p), a) for (d, p), a in amps.items()])


def build_eraser_universe(
    bs_present: bool, *, record: bool = False, printed_equation: bool = False
) -> Universe:
    """Universe over the discrete eraser state; optionally with a record
    pointer subsystem for the observer who measured the signal side."""
    cfg = EraserConfig(bs_present, "idler_first", 1, default_geometry(16), 0)
    state = eraser_state(cfg, printed_equation=printed_equation)
    if record:
        rec = Subsystem("signal_record", ("ready",) + PATHS)
        state = tensor(state, make_state([rec], [(("ready",), 1.0)]))
    return create_universe(state)


def detector_observable() -> Observable:
    return label_observable(detector_subsystem(), name="detector")


def path_observable() -> Observable:
    return label_observable(path_subsystem(), name="path")


def slit_mode_vectors(g: SlitGeometry) -> tuple[np.ndarray, np.ndarray]:
    """Per-slit signal amplitudes over the screen bins, unit-normalized.

    The modes are the raw discretized spherical waves; their residual
    discrete overlap (exactly zero only in the continuum limit) is a
    documented discretization artifact.
    """
    psi_up, psi_low = slit_wave_arrays(g)
    psi_up = psi_up / np.linalg.norm(psi_up)
    psi_low = psi_low / np.linalg.norm(psi_low)
    return psi_up, psi_low


def joint_density(cfg: EraserConfig, *, printed_equation: bool = False) -> np.ndarray:
    """Joint detection distribution over (detector, screen bin), summing to 1.

    Row i is |sum over paths of branch_amplitude(i, path) * mode_path|^2.
    """
    psi = dict(zip(PATHS, slit_mode_vectors(cfg.geometry)))
    amps = branch_amplitudes(cfg.bs_present, printed_equation=printed_equation)
    rho = np.zeros((len(DETECTORS), len(cfg.geometry.screen_positions)))
    for i, det in enumerate(DETECTORS):
        wave = np.zeros_like(psi["U"])
        for p in PATHS:
            a = amps.get((det, p))
            if a is not None:
                wave = wave + a * psi[p]
        rho[i] = np.abs(wave) ** 2
    return rho / rho.sum()


def d0_marginal_density(g: SlitGeometry) -> np.ndarray:
    """Screen marginal of the signal photon, normalized over bins.

    Computed from the slit modes alone: it takes no beam-splitter flag, which
    is the point — nothing about the later choice can reach it.
    """
    psi_up, psi_low = slit_mode_vectors(g)
    m = (np.abs(psi_up) ** 2 + np.abs(psi_low) ** 2) / 2.0
    return m / m.sum()


def detector_conditional_given_bin(
    cfg: EraserConfig, *, printed_equation: bool = False
) -> np.ndarray:
    """Row-stochastic (bin, detector) matrix: which detector the idler twin
    lands in, given the signal photon's recorded position."""
    rho = joint_density(cfg, printed_equation=printed_equation)
    col = rho.sum(axis=0)
    return (rho / col).T


def no_signaling_check(g: SlitGeometry) -> float:
    """Max pointwise difference of the screen marginal with and without the
    beam splitter; the pairwise fringe cancellation makes this vanish."""
    base = EraserConfig(True, "idler_first", 1, g, 0)
    with_bs = joint_density(base).sum(axis=0)
    without = joint_density(EraserConfig(False, "idler_first", 1, g, 0)).sum(axis=0)
    return float(np.max(np.abs(with_bs - without)))


def detector_envelope(cfg: EraserConfig, detector: str) -> np.ndarray:
    """Fringe-free (incoherent) screen density for one detector: the null
    model for oscillation fits."""
    psi = dict(zip(PATHS, slit_mode_vectors(cfg.geometry)))
    env = np.zeros(len(cfg.geometry.screen_positions))
    for p in PATHS:
        a = branch_amplitudes(cfg.bs_present).get((detector, p))
        if a is not None:
            env += abs(a) ** 2 * np.abs(psi[p]) ** 2
    return env


def fringe_phase(g: SlitGeometry) -> np.ndarray:
    """Phase k * (path difference) over the screen bins."""
    return g.wavenumber * np.asarray(path_difference(g, g.screen_positions))


@dataclass(frozen=True, eq=False)
class EraserRun:
    """Sampled joint counts plus the analytic joint they were drawn from."""

    config: EraserConfig
    joint_counts: np.ndarray
    analytic_joint: np.ndarray
    histograms: dict
    detector_counts: dict

    @property
    def n_photons(self) -> int:
        return int(self.joint_counts.sum())


def _sample_idler_first(cfg: EraserConfig, rho: np.ndarray, rng: RngStream):
    det_weights = rho.sum(axis=1)
    dets = rng.sample_indices(det_weights, cfg.n_photons)
    u = rng.randoms(cfg.n_photons)
    bins = np.empty(cfg.n_photons, dtype=int)
    for i in range(len(DETECTORS)):
        mask = dets == i
        if not np.any(mask):
            continue
        cdf = np.cumsum(rho[i])
        cdf /= cdf[-1]
        bins[mask] = np.minimum(
            np.searchsorted(cdf, u[mask], side="right"), rho.shape[1] - 1
        )
    return dets, bins


def _sample_signal_first(cfg: EraserConfig, rng: RngStream, *, printed_equation: bool):
    # Screen positions first, from the choice-independent marginal; the
    # configured wave function is consulted only for the detector labels.
    marginal = d0_marginal_density(cfg.geometry)
    bins = rng.sample_indices(marginal, cfg.n_photons)
    cond = detector_conditional_given_bin(cfg, printed_equation=printed_equation)
    cdf_rows = np.cumsum(cond, axis=1)[bins]
    u = rng.randoms(cfg.n_photons)
    dets = np.minimum(
        np.sum(u[:, None] >= cdf_rows, axis=1), len(DETECTORS) - 1
    ).astype(int)
    return dets, bins


def run_eraser(cfg: EraserConfig, *, printed_equation: bool = False) -> EraserRun:
    """Sample the configured run and build per-detector fringe histograms."""
    rho = joint_density(cfg, printed_equation=printed_equation)
    rng = RngStream(cfg.seed)
    if cfg.perspective == "idler_first":
        dets, bins = _sample_idler_first(cfg, rho, rng)
    else:
        dets, bins = _sample_signal_first(cfg, rng, printed_equation=printed_equation)

    nbins = rho.shape[1]
    joint_counts = np.zeros((len(DETECTORS), nbins), dtype=int)
    np.add.at(joint_counts, (dets, bins), 1)

    edges = cfg.geometry.bin_edges
    histograms = {
        det: FringeHistogram(edges, joint_counts[i], det)
        for i, det in enumerate(DETECTORS)
    }
    histograms["D1+D2"] = FringeHistogram(
        edges, joint_counts[0] + joint_counts[1], "D1+D2"
    )
    histograms["total"] = FringeHistogram(edges, joint_counts.sum(axis=0), None)
    detector_counts = {
        det: int(joint_counts[i].sum()) for i, det in enumerate(DETECTORS)
    }
    return EraserRun(cfg, joint_counts, rho, histograms, detector_counts)


def analytic_joint_by_perspective(
    cfg: EraserConfig, *, printed_equation: bool = False
) -> np.ndarray:
    """The joint (detector, bin) distribution computed along the configured
    perspective's own factorization; both perspectives must agree."""
    if cfg.perspective == "idler_first":
        return joint_density(cfg, printed_equation=printed_equation)
    marginal = d0_marginal_density(cfg.geometry)
    cond = detector_conditional_given_bin(cfg, printed_equation=printed_equation)
    return (cond * marginal[:, None]).T
