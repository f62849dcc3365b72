"""Per-observer event ledgers with three-valued temporal truth.

A proposition asserts that a subsystem showed some outcome at a happening
time. It stays Indefinite for an observer until one of her observations
determines it; the determination time may be much later than the happening
time, and may even be the first moment the proposition has any truth value
at all. Once True (or False, for a rival outcome of the same fact slot) it
never reverts.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .errors import OutOfOrderDetermination


class Truth(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    INDEFINITE = "indefinite"


@dataclass(frozen=True)
class Proposition:
    """One fact slot: (subsystem, happening time) asserted to show an outcome."""

    subsystem: str
    outcome: str
    t_happened: int


@dataclass(frozen=True)
class EventRecord:
    proposition: Proposition
    t_determined: int
    observer: str


class EventLedger:
    """Append-only, per-observer; sorted by determination time."""

    __slots__ = ("observer_id", "_records")

    def __init__(self, observer_id: str):
        self.observer_id = observer_id
        self._records: list[EventRecord] = []

    @property
    def records(self) -> tuple[EventRecord, ...]:
        return tuple(self._records)

    def record(self, proposition: Proposition, t_determined: int) -> None:
        """Append one determination; determination times must not decrease."""
        t = int(t_determined)
        if self._records and t < self._records[-1].t_determined:
            raise OutOfOrderDetermination(
                f"t_determined {t} precedes last recorded {self._records[-1].t_determined}"
            )
        self._records.append(EventRecord(proposition, t, self.observer_id))

    def truth_value(self, proposition: Proposition, query_time: int) -> Truth:
        """Truth of the proposition as of query_time.

        True if a record determined by then asserts it; False if a record
        determined by then asserts a different outcome for the same
        (subsystem, t_happened) slot; Indefinite otherwise.
        """
        saw_rival = False
        for rec in self._records:
            if rec.t_determined > query_time:
                break
            p = rec.proposition
            if p.subsystem == proposition.subsystem and p.t_happened == proposition.t_happened:
                if p.outcome == proposition.outcome:
                    return Truth.TRUE
                saw_rival = True
        return Truth.FALSE if saw_rival else Truth.INDEFINITE

    def determination_time(self, proposition: Proposition) -> int | None:
        """Earliest determination time asserting the proposition, else None."""
        for rec in self._records:
            if rec.proposition == proposition:
                return rec.t_determined
        return None

    def to_json_lines(self) -> str:
        """One JSON object per line, in determination order."""
        lines = []
        for rec in self._records:
            lines.append(
                json.dumps(
                    {
                        "observer": rec.observer,
                        "subsystem": rec.proposition.subsystem,
                        "outcome": rec.proposition.outcome,
                        "t_happened": rec.proposition.t_happened,
                        "t_determined": rec.t_determined,
                    },
                    separators=(",", ":"),
                )
            )
        return "\n".join(lines)

    def __len__(self) -> int:
        return len(self._records)
