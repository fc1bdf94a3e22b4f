"""Structured outcomes of individual verification checks."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .hfset import HSet

__all__ = ["Status", "CheckReport"]


class Status(str, enum.Enum):
    HOLDS = "HOLDS"
    PRECONDITION_UNMET = "PRECONDITION_UNMET"
    VIOLATED = "VIOLATED"


@dataclass(frozen=True)
class CheckReport:
    """One verification outcome: what was checked, how it ended, and a witness on failure."""

    axiom: str
    status: Status
    witness: Optional[HSet]
    instances_checked: int
    note: Optional[str] = None

    def to_json_dict(self) -> dict:
        out = {
            "axiom": self.axiom,
            "status": self.status.value,
            "witness": self.witness.to_json() if self.witness is not None else None,
            "instances_checked": self.instances_checked,
        }
        if self.note is not None:
            out["note"] = self.note
        return out

    @property
    def ok(self) -> bool:
        return self.status is not Status.VIOLATED
