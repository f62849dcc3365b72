"""The standard experiments, built on the hang-on engine.

``geometry`` models the two-slit spherical-wave amplitudes, screen sampling
and far-field momentum detection; ``fringes`` holds histograms and the
estimators that verify them; ``epr`` runs the singlet and the partially
determining pair; ``eraser`` runs the delayed-choice quantum eraser from
both measurement orders; ``narrative`` scripts the past-event ledger demos.
"""
from .eraser import (
    DETECTORS,
    PATHS,
    PERSPECTIVES,
    EraserConfig,
    EraserRun,
    analytic_joint_by_perspective,
    branch_amplitudes,
    build_eraser_universe,
    d0_marginal_density,
    detector_conditional_given_bin,
    detector_envelope,
    detector_observable,
    eraser_state,
    fringe_phase,
    joint_density,
    no_signaling_check,
    path_observable,
    run_eraser,
    slit_mode_vectors,
)
from .epr import (
    ORDERS,
    EprRun,
    PartialPairRun,
    build_epr_universe,
    build_partial_pair_universe,
    epr_joint_distribution,
    partial_pair_joint_distribution,
    partial_pair_state,
    run_epr,
    run_partial_pair,
    singlet_state,
)
from .fringes import (
    FringeHistogram,
    chi_square_two_sample,
    histogram_from_positions,
    oscillation_fit,
    visibility,
    visibility_stderr,
)
from .geometry import (
    FAR_FIELD_RATIO,
    SlitGeometry,
    default_geometry,
    double_slit_amplitude,
    fringe_extrema,
    geometry_from_config,
    grid_extrema_indices,
    momentum_detector_probabilities,
    nearest_bins,
    path_difference,
    sample_momentum_clicks,
    sample_screen_hits,
    screen_density,
    slit_wave_arrays,
)
from .narrative import (
    EraserTrace,
    NeedleNarrative,
    run_empty_trace,
    run_eraser_trace,
    run_needle_narrative,
)

__all__ = [
    "DETECTORS",
    "EraserConfig",
    "EraserRun",
    "EraserTrace",
    "EprRun",
    "FAR_FIELD_RATIO",
    "FringeHistogram",
    "NeedleNarrative",
    "ORDERS",
    "PATHS",
    "PERSPECTIVES",
    "PartialPairRun",
    "SlitGeometry",
    "analytic_joint_by_perspective",
    "branch_amplitudes",
    "build_epr_universe",
    "build_eraser_universe",
    "build_partial_pair_universe",
    "chi_square_two_sample",
    "d0_marginal_density",
    "default_geometry",
    "detector_conditional_given_bin",
    "detector_envelope",
    "detector_observable",
    "double_slit_amplitude",
    "epr_joint_distribution",
    "eraser_state",
    "fringe_extrema",
    "fringe_phase",
    "geometry_from_config",
    "grid_extrema_indices",
    "histogram_from_positions",
    "joint_density",
    "momentum_detector_probabilities",
    "nearest_bins",
    "no_signaling_check",
    "oscillation_fit",
    "partial_pair_joint_distribution",
    "partial_pair_state",
    "path_difference",
    "path_observable",
    "run_empty_trace",
    "run_epr",
    "run_eraser",
    "run_eraser_trace",
    "run_needle_narrative",
    "run_partial_pair",
    "sample_momentum_clicks",
    "sample_screen_hits",
    "screen_density",
    "singlet_state",
    "slit_mode_vectors",
    "slit_wave_arrays",
    "visibility",
    "visibility_stderr",
]
