"""Sparse labeled state vectors over composite finite spaces.

A state is a finite map from composite basis labels (one label per registered
subsystem, in registration order) to complex amplitudes. Everything here is a
pure value operation: construction and normalization, tensor products,
outcome probabilities, branch projection, and the deterministic entangling
premeasurement that correlates a system with a pointer subsystem. Callers'
states are never mutated; observation-style randomness lives elsewhere.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import (
    EmptyBranch,
    PointerNotReady,
    SubsystemClash,
    UnknownLabel,
    UnknownOutcome,
    ZeroNorm,
)

# |norm^2 - 1| tolerance after any normalization.
NORM_TOL = 1e-12
# Squared-modulus floor below which stored amplitudes are pruned.
PRUNE_THRESHOLD = 1e-30


@dataclass(frozen=True)
class Subsystem:
    """A named factor of the composite space with a fixed finite label set."""

    name: str
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("subsystem name must be non-empty")
        if not self.labels:
            raise ValueError(f"subsystem {self.name!r} needs at least one label")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"subsystem {self.name!r} has duplicate labels")
        object.__setattr__(self, "labels", tuple(str(l) for l in self.labels))


class Observable:
    """A projective measurement on one subsystem.

    Outcome classes partition the subsystem's labels; a class may group
    several labels (degenerate outcome). Optional numeric eigenvalues may be
    attached per class. Identity (not structural equality) is what branch
    selectors store, so two separately built observables are distinct
    selectors even if they partition identically.
    """

    __slots__ = ("subsystem", "outcome_classes", "class_names", "eigenvalues", "name", "_class_of")

    def __init__(
        self,
        subsystem: Subsystem,
        outcome_classes: Mapping[str, Iterable[str]],
        *,
        eigenvalues: Mapping[str, float] | None = None,
        name: str | None = None,
    ):
        if len(subsystem.labels) < 2:
            raise ValueError(f"measured subsystem {subsystem.name!r} needs at least 2 labels")
        classes: dict[str, tuple[str, ...]] = {}
        class_of: dict[str, str] = {}
        for cls, labels in outcome_classes.items():
            members = tuple(str(l) for l in labels)
            if not members:
                raise ValueError(f"outcome class {cls!r} is empty")
            for label in members:
                if label not in subsystem.labels:
                    raise UnknownLabel(f"label {label!r} not declared on subsystem {subsystem.name!r}")
                if label in class_of:
                    raise ValueError(f"label {label!r} appears in two outcome classes")
                class_of[label] = cls
            classes[cls] = members
        if not classes:
            raise ValueError("observable needs at least one outcome class")
        missing = set(subsystem.labels) - set(class_of)
        if missing:
            raise ValueError(f"outcome classes do not cover labels {sorted(missing)!r}")
        if eigenvalues is not None:
            unknown = set(eigenvalues) - set(classes)
            if unknown:
                raise UnknownOutcome(f"eigenvalues given for unknown classes {sorted(unknown)!r}")
        self.subsystem = subsystem
        self.outcome_classes = classes
        self.class_names = tuple(classes)
        self.eigenvalues = dict(eigenvalues) if eigenvalues is not None else None
        self.name = name if name is not None else subsystem.name
        self._class_of = class_of

    def class_of(self, label: str) -> str:
        """Outcome class containing the given label."""
        try:
            return self._class_of[label]
        except KeyError:
            raise UnknownLabel(f"label {label!r} not declared on subsystem {self.subsystem.name!r}") from None

    def eigenvalue(self, outcome: str) -> float | None:
        if outcome not in self.outcome_classes:
            raise UnknownOutcome(f"unknown outcome class {outcome!r} on {self.name!r}")
        return None if self.eigenvalues is None else self.eigenvalues.get(outcome)

    def __repr__(self) -> str:
        return f"Observable({self.name!r} on {self.subsystem.name!r}: {list(self.class_names)})"


def label_observable(subsystem: Subsystem, *, name: str | None = None) -> Observable:
    """The fine-grained observable whose classes are the labels themselves."""
    return Observable(subsystem, {label: (label,) for label in subsystem.labels}, name=name)


class StateVector:
    """Immutable sparse state over an ordered tuple of subsystems."""

    __slots__ = ("subsystems", "_terms", "_index")

    def __init__(self, subsystems: Sequence[Subsystem], terms: Mapping[tuple[str, ...], complex]):
        self.subsystems = tuple(subsystems)
        self._terms = dict(terms)
        self._index = {s.name: i for i, s in enumerate(self.subsystems)}
        if len(self._index) != len(self.subsystems):
            raise SubsystemClash("duplicate subsystem names in one state")

    @property
    def terms(self) -> Mapping[tuple[str, ...], complex]:
        """Read-only view of the stored label-tuple -> amplitude map."""
        return MappingProxyType(self._terms)

    def subsystem_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownLabel(f"no subsystem named {name!r} in this state") from None

    def subsystem(self, name: str) -> Subsystem:
        return self.subsystems[self.subsystem_index(name)]

    def amplitude(self, labels: Sequence[str]) -> complex:
        return self._terms.get(tuple(labels), 0j)

    def norm_squared(self) -> float:
        return math.fsum((a.real * a.real + a.imag * a.imag) for a in self._terms.values())

    def normalized(self) -> "StateVector":
        """Unit-norm copy; raises ZeroNorm if there is nothing to scale."""
        n2 = self.norm_squared()
        if n2 <= 0.0:
            raise ZeroNorm("state has zero norm")
        if abs(n2 - 1.0) <= NORM_TOL:
            return self
        scale = 1.0 / math.sqrt(n2)
        return StateVector(self.subsystems, {k: v * scale for k, v in self._terms.items()})

    def term_count(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.subsystems == other.subsystems and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        subs = ",".join(s.name for s in self.subsystems)
        return f"StateVector([{subs}], {len(self._terms)} terms)"


def _check_finite(amp: complex) -> complex:
    if not (math.isfinite(amp.real) and math.isfinite(amp.imag)):
        raise ValueError(f"non-finite amplitude {amp!r}")
    return amp


def _validate_labels(subsystems: Sequence[Subsystem], labels: Sequence[str]) -> tuple[str, ...]:
    key = tuple(str(l) for l in labels)
    if len(key) != len(subsystems):
        raise UnknownLabel(
            f"label tuple {key!r} has {len(key)} entries for {len(subsystems)} subsystems"
        )
    for sub, label in zip(subsystems, key):
        if label not in sub.labels:
            raise UnknownLabel(f"label {label!r} not declared on subsystem {sub.name!r}")
    return key


def _pruned(terms: dict[tuple[str, ...], complex]) -> dict[tuple[str, ...], complex]:
    return {
        k: v
        for k, v in terms.items()
        if (v.real * v.real + v.imag * v.imag) >= PRUNE_THRESHOLD
    }


def make_state(
    subsystems: Sequence[Subsystem],
    terms: Iterable[tuple[Sequence[str], complex]],
) -> StateVector:
    """Build a normalized state; duplicate label tuples are summed first."""
    subs = tuple(subsystems)
    acc: dict[tuple[str, ...], complex] = {}
    for labels, amp in terms:
        key = _validate_labels(subs, labels)
        acc[key] = acc.get(key, 0j) + _check_finite(complex(amp))
    if not acc:
        raise ZeroNorm("no terms supplied")
    n2 = math.fsum((a.real * a.real + a.imag * a.imag) for a in acc.values())
    if n2 <= 0.0:
        raise ZeroNorm("all amplitudes cancelled")
    scale = 1.0 / math.sqrt(n2)
    scaled = _pruned({k: v * scale for k, v in acc.items()})
    if not scaled:
        raise ZeroNorm("all amplitudes cancelled")
    return StateVector(subs, scaled)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Product state on the disjoint union of subsystems; norms multiply."""
    overlap = {s.name for s in a.subsystems} & {s.name for s in b.subsystems}
    if overlap:
        raise SubsystemClash(f"subsystems {sorted(overlap)!r} present in both factors")
    combined: dict[tuple[str, ...], complex] = {}
    for ka, va in a._terms.items():
        for kb, vb in b._terms.items():
            combined[ka + kb] = va * vb
    return StateVector(a.subsystems + b.subsystems, _pruned(combined))


def outcome_probability(s: StateVector, obs: Observable, outcome: str) -> float:
    """Born weight of one outcome class: sum of |amplitude|^2 over its terms."""
    members = obs.outcome_classes.get(outcome)
    if members is None:
        raise UnknownOutcome(f"unknown outcome class {outcome!r} on {obs.name!r}")
    i = s.subsystem_index(obs.subsystem.name)
    member_set = set(members)
    return math.fsum(
        (a.real * a.real + a.imag * a.imag)
        for labels, a in s._terms.items()
        if labels[i] in member_set
    )


def project(s: StateVector, obs: Observable, outcome: str) -> StateVector:
    """Unnormalized branch: keep exactly the terms inside the outcome class.

    The input state is untouched; the result's squared norm equals the
    outcome probability. This extracts a branch for inspection, it is not a
    collapse of anything.
    """
    members = obs.outcome_classes.get(outcome)
    if members is None:
        raise UnknownOutcome(f"unknown outcome class {outcome!r} on {obs.name!r}")
    i = s.subsystem_index(obs.subsystem.name)
    member_set = set(members)
    kept = {labels: a for labels, a in s._terms.items() if labels[i] in member_set}
    if not kept:
        raise EmptyBranch(f"outcome {outcome!r} has no support in this state")
    return StateVector(s.subsystems, kept)


def premeasure(
    s: StateVector,
    system_obs: Observable,
    pointer: Subsystem,
    correlation: Mapping[str, str],
) -> StateVector:
    """Deterministically entangle a pointer with a system observable.

    Every term's pointer label (which must be uniform across terms, i.e. the
    pointer is still "ready") is rewritten to correlation(outcome class of
    the term's system label). No sampling, no result: this is the
    interaction step that produces an entangled premeasurement state.
    """
    sys_i = s.subsystem_index(system_obs.subsystem.name)
    ptr_i = s.subsystem_index(pointer.name)
    if sys_i == ptr_i:
        raise ValueError("pointer and measured subsystem must differ")
    for cls, label in correlation.items():
        if cls not in system_obs.outcome_classes:
            raise UnknownOutcome(f"correlation maps unknown outcome class {cls!r}")
        if label not in pointer.labels:
            raise UnknownLabel(f"label {label!r} not declared on pointer {pointer.name!r}")
    targets = list(correlation.values())
    if len(set(targets)) != len(targets):
        raise ValueError("correlation must be injective")

    pointer_labels = {labels[ptr_i] for labels in s._terms}
    if len(pointer_labels) != 1:
        raise PointerNotReady(
            f"pointer {pointer.name!r} is in {len(pointer_labels)} labels, expected one"
        )

    rewritten: dict[tuple[str, ...], complex] = {}
    for labels, a in s._terms.items():
        cls = system_obs.class_of(labels[sys_i])
        try:
            new_label = correlation[cls]
        except KeyError:
            raise UnknownOutcome(
                f"correlation does not cover outcome class {cls!r} (it has support)"
            ) from None
        new_labels = labels[:ptr_i] + (new_label,) + labels[ptr_i + 1 :]
        rewritten[new_labels] = rewritten.get(new_labels, 0j) + a
    return StateVector(s.subsystems, rewritten)


def _fmt17(x: float) -> str:
    """17-significant-digit decimal form (round-trips any double)."""
    return format(x, ".17g")


def to_canonical_json(s: StateVector) -> str:
    """Canonical single-line JSON: registration-ordered subsystems, terms
    sorted lexicographically by label tuple, 17-significant-digit amplitudes."""
    subs = ",".join(
        '{"name":%s,"labels":[%s]}'
        % (json.dumps(sub.name), ",".join(json.dumps(l) for l in sub.labels))
        for sub in s.subsystems
    )
    terms = ",".join(
        '{"labels":[%s],"re":%s,"im":%s}'
        % (",".join(json.dumps(l) for l in labels), _fmt17(a.real), _fmt17(a.imag))
        for labels, a in sorted(s._terms.items())
    )
    return '{"subsystems":[%s],"terms":[%s]}' % (subs, terms)


def state_from_canonical_json(text: str) -> StateVector:
    """Inverse of to_canonical_json; amplitudes are restored exactly."""
    doc = json.loads(text)
    subs = tuple(Subsystem(d["name"], tuple(d["labels"])) for d in doc["subsystems"])
    terms: dict[tuple[str, ...], complex] = {}
    for t in doc["terms"]:
        key = _validate_labels(subs, t["labels"])
        terms[key] = complex(float(t["re"]), float(t["im"]))
    return StateVector(subs, terms)
