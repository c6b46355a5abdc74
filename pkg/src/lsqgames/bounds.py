"""Shared record type for evaluated numeric bounds."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BoundEntry:
    name: str
    kind: str            # "lower" | "upper" | "exact"
    value: float
    applies: bool        # whether the result's preconditions hold here
    note: str = ""

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "value": self.value,
            "applies": self.applies,
            "note": self.note,
        }


def applicable(entries: list[BoundEntry], kind: str) -> list[BoundEntry]:
    return [e for e in entries if e.applies and e.kind == kind]


def best_lower(entries: list[BoundEntry]) -> float | None:
    lows = [e.value for e in applicable(entries, "lower")]
    lows += [e.value for e in applicable(entries, "exact")]
    return max(lows) if lows else None


def best_upper(entries: list[BoundEntry]) -> float | None:
    ups = [e.value for e in applicable(entries, "upper")]
    ups += [e.value for e in applicable(entries, "exact")]
    return min(ups) if ups else None
