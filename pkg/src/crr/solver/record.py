from __future__ import annotations

from dataclasses import dataclass, field

from crr.core import Reconstruction

OUTCOMES = ("sat", "unsat", "indetermined")


@dataclass(frozen=True)
class SolveRecord:
    """Result of one solver run.

    ``wall_time`` is in seconds. ``stats`` holds decisions, propagations and
    conflicts when the backend reports them.
    """

    outcome: str
    model: Reconstruction | None = None
    wall_time: float = 0.0
    solver_id: str = ""
    encoder_id: str = ""
    stats: dict = field(default_factory=dict)
    timeout: float | None = None
    num_vars: int | None = None
    num_constraints: int | None = None

    def __post_init__(self):
        if self.outcome not in OUTCOMES:
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if self.outcome == "sat" and self.model is None:
            raise ValueError("sat record without a model")

    @property
    def short_outcome(self) -> str:
        return "indet" if self.outcome == "indetermined" else self.outcome
