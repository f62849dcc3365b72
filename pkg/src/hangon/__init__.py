"""Observer-relative quantum measurement simulator.

The global entangled state never collapses; each observer builds a private
record by hanging on to Born-sampled branches, and talking to another
observer is just a measurement of that observer's record subsystem. The
``scenarios`` subpackage instantiates the standard experiments (double slit
with momentum detectors, EPR singlet, delayed-choice quantum eraser) on top
of this engine; ``verify`` runs the acceptance checks; ``cli`` exposes both.
"""
from .engine import BranchNode, ObserverHandle, TraceEntry, Universe, create_universe
from .errors import (
    AllOutcomesForbidden,
    ConfigError,
    DuplicateObserver,
    EmptyBranch,
    NotFarField,
    OutOfOrderDetermination,
    PointerNotReady,
    SimulationError,
    SingularPoint,
    SubsystemClash,
    UnknownLabel,
    UnknownOutcome,
    ZeroNorm,
)
from .events import EventLedger, EventRecord, Proposition, Truth
from .rng import FixedStream, RngStream
from .states import (
    Observable,
    StateVector,
    Subsystem,
    label_observable,
    make_state,
    outcome_probability,
    premeasure,
    project,
    state_from_canonical_json,
    tensor,
    to_canonical_json,
)

__version__ = "0.1.0"

__all__ = [
    "AllOutcomesForbidden",
    "BranchNode",
    "ConfigError",
    "DuplicateObserver",
    "EmptyBranch",
    "EventLedger",
    "EventRecord",
    "FixedStream",
    "NotFarField",
    "Observable",
    "ObserverHandle",
    "OutOfOrderDetermination",
    "PointerNotReady",
    "Proposition",
    "RngStream",
    "SimulationError",
    "SingularPoint",
    "StateVector",
    "SubsystemClash",
    "Subsystem",
    "TraceEntry",
    "Truth",
    "Universe",
    "UnknownLabel",
    "UnknownOutcome",
    "ZeroNorm",
    "create_universe",
    "label_observable",
    "make_state",
    "outcome_probability",
    "premeasure",
    "project",
    "state_from_canonical_json",
    "tensor",
    "to_canonical_json",
]
