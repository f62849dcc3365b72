"""The observer-relative measurement engine.

One Universe holds a global entangled state that only ever changes through
deterministic entangling steps (premeasurement); observation never touches
it. Each observer owns a path through a shared branch tree: observing an
observable samples one outcome class Born-weighted within her current
conditional state, then extends her path to the matching daughter branch and
appends an event to her ledger. Asking another observer for a result is the
same operation applied to that observer's record subsystem, which is why two
observers can never report conflicting results to each other: the reply is
sampled inside the asker's own branch.

A Universe and its observers form one mutation domain driven by a single
thread of control; the read-only queries (conditional_state,
branch_probabilities) may run concurrently between mutations, and distinct
universes with distinct seeds parallelize freely.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .errors import AllOutcomesForbidden, DuplicateObserver
from .events import EventLedger, Proposition
from .states import (
    NORM_TOL,
    Observable,
    StateVector,
    Subsystem,
    outcome_probability,
    premeasure,
    project,
)

# Probability mass below which every outcome counts as forbidden. Unreachable
# for a valid partition of a unit-norm conditional state; kept as a guard
# against floating-point pruning emptying a branch.
_FORBIDDEN_TOL = 1e-12


@dataclass(frozen=True)
class BranchNode:
    """One hung-on selector; the root carries no selector."""

    parent: "BranchNode | None"
    selector: tuple[Observable, str] | None
    created_at: int
    depth: int


@dataclass(frozen=True)
class TraceEntry:
    observer: str
    clock: int
    observable: str
    outcome: str
    probability: float


class ObserverHandle:
    """An observer's identity, current branch node, and event ledger."""

    __slots__ = ("id", "ledger", "_node", "_universe")

    def __init__(self, observer_id: str, root: BranchNode, universe: "Universe"):
        self.id = observer_id
        self.ledger = EventLedger(observer_id)
        self._node = root
        self._universe = universe

    @property
    def node(self) -> BranchNode:
        return self._node

    @property
    def depth(self) -> int:
        return self._node.depth

    def path_selectors(self) -> list[tuple[Observable, str]]:
        """Selectors from the root down to the current node."""
        out: list[tuple[Observable, str]] = []
        node = self._node
        while node.selector is not None:
            out.append(node.selector)
            node = node.parent  # type: ignore[assignment]
        out.reverse()
        return out

    def __repr__(self) -> str:
        return f"ObserverHandle({self.id!r}, depth={self.depth})"


class Universe:
    """A shared never-reduced global state plus its branch tree and clock.

    One Universe value is one observer-relative empirical world: other
    observers appear inside it only as pointer subsystems. Observation
    (``observe``/``communicate``) mutates observers and the trace, never the
    global state; only ``entangle_step`` replaces the global state, and it
    does so deterministically.
    """

    def __init__(self, initial: StateVector):
        if abs(initial.norm_squared() - 1.0) > NORM_TOL:
            raise ValueError("initial global state must be normalized")
        self._state = initial
        self._root = BranchNode(parent=None, selector=None, created_at=0, depth=0)
        self._clock = 0
        self._observers: dict[str, ObserverHandle] = {}
        self._trace: list[TraceEntry] = []

    @property
    def global_state(self) -> StateVector:
        return self._state

    @property
    def clock(self) -> int:
        return self._clock

    @property
    def root(self) -> BranchNode:
        return self._root

    @property
    def subsystems(self) -> tuple[Subsystem, ...]:
        return self._state.subsystems

    @property
    def trace(self) -> tuple[TraceEntry, ...]:
        return tuple(self._trace)

    def subsystem(self, name: str) -> Subsystem:
        return self._state.subsystem(name)

    def register_observer(self, observer_id: str) -> ObserverHandle:
        """A fresh observer hanging on at the root with an empty ledger."""
        if observer_id in self._observers:
            raise DuplicateObserver(f"observer {observer_id!r} already registered")
        handle = ObserverHandle(observer_id, self._root, self)
        self._observers[observer_id] = handle
        return handle

    def advance_clock(self, to: int) -> None:
        """Fast-forward the logical clock (narratives supply their own times)."""
        t = int(to)
        if t < self._clock:
            raise ValueError(f"clock cannot move backwards ({t} < {self._clock})")
        self._clock = t

    def _tick(self) -> int:
        t = self._clock
        self._clock = t + 1
        return t

    def _check_registered(self, observer: ObserverHandle) -> None:
        if self._observers.get(observer.id) is not observer:
            raise KeyError(f"observer {observer.id!r} is not registered in this universe")

    def entangle_step(
        self,
        system_obs: Observable,
        pointer: Subsystem,
        correlation: Mapping[str, str],
    ) -> None:
        """Replace the global state by its premeasurement against a pointer.

        No observer's path moves and no event is recorded: for every observer
        here, this interaction produces entanglement, not a definite result.
        """
        self._state = premeasure(self._state, system_obs, pointer, correlation)
        self._tick()

    def conditional_state(self, observer: ObserverHandle) -> StateVector:
        """The global state seen through every selector on the observer's
        path, renormalized. Never mutates the universe."""
        self._check_registered(observer)
        state = self._state
        for obs, outcome in observer.path_selectors():
            state = project(state, obs, outcome)
        return state.normalized()

    def branch_probabilities(self, observer: ObserverHandle, obs: Observable) -> dict[str, float]:
        """The sampling distribution ``observe`` would draw from, untouched."""
        conditional = self.conditional_state(observer)
        return {cls: outcome_probability(conditional, obs, cls) for cls in obs.class_names}

    def observe(
        self,
        observer: ObserverHandle,
        obs: Observable,
        rng,
        t_happened: int | None = None,
    ) -> str:
        """Born-rule branch selection: sample an outcome within the observer's
        conditional state, hang on to the daughter branch, record the event.

        ``t_happened`` dates the recorded fact; it defaults to now. The global
        state is untouched.
        """
        probs = self.branch_probabilities(observer, obs)
        total = sum(probs.values())
        if total <= _FORBIDDEN_TOL:
            raise AllOutcomesForbidden(f"no outcome of {obs.name!r} has support in this branch")
        u = rng.random() * total
        acc = 0.0
        outcome = None
        for cls in obs.class_names:
            p = probs[cls]
            if p > 0.0:
                acc += p
                outcome = cls
                if u < acc:
                    break
        assert outcome is not None
        t = self._tick()
        observer._node = BranchNode(
            parent=observer._node,
            selector=(obs, outcome),
            created_at=t,
            depth=observer._node.depth + 1,
        )
        observer.ledger.record(
            Proposition(
                subsystem=obs.subsystem.name,
                outcome=outcome,
                t_happened=t if t_happened is None else int(t_happened),
            ),
            t_determined=t,
        )
        self._trace.append(TraceEntry(observer.id, t, obs.name, outcome, probs[outcome]))
        return outcome

    def communicate(
        self,
        asker: ObserverHandle,
        record: Observable,
        rng,
        t_happened: int | None = None,
    ) -> str:
        """Ask another observer for a result: a measurement of her record
        subsystem, with exactly the contract of ``observe``. The daughter
        constraint makes the reply consistent with everything the asker has
        already seen."""
        return self.observe(asker, record, rng, t_happened)

    def trace_json(self) -> str:
        """Branch-trace export: one JSON line per observation, in order."""
        lines = []
        for e in self._trace:
            lines.append(
                json.dumps(
                    {
                        "observer": e.observer,
                        "clock": e.clock,
                        "observable": e.observable,
                        "outcome": e.outcome,
                        "probability": e.probability,
                    },
                    separators=(",", ":"),
                )
            )
        return "\n".join(lines)


def create_universe(initial: StateVector) -> Universe:
    """A universe whose branch tree holds only the root, at clock 0."""
    return Universe(initial)


def force_observe(
    universe: Universe,
    observer: ObserverHandle,
    obs: Observable,
    outcome: str,
    t_happened: int | None = None,
) -> float:
    """Extend the observer's path onto a chosen outcome (analysis hook).

    Steers ``observe`` by feeding it the uniform draw that lands inside the
    chosen outcome's probability band, so the real sampling path runs.
    Returns the probability the outcome had. Forcing a zero-probability
    outcome raises EmptyBranch: nothing can hang on to an unsupported branch.
    """
    from .errors import EmptyBranch, UnknownOutcome
    from .rng import FixedStream

    probs = universe.branch_probabilities(observer, obs)
    if outcome not in probs:
        raise UnknownOutcome(f"unknown outcome class {outcome!r} on {obs.name!r}")
    p = probs[outcome]
    if p <= 0.0:
        raise EmptyBranch(f"outcome {outcome!r} has no support on this path")
    total = sum(probs.values())
    acc = 0.0
    for cls in obs.class_names:
        if cls == outcome:
            break
        if probs[cls] > 0.0:
            acc += probs[cls]
    got = universe.observe(observer, obs, FixedStream([(acc + p / 2.0) / total]), t_happened)
    assert got == outcome
    return p
