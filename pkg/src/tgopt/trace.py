"""Optimization run records."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class UpdateRecord:
    """One gate (or gate-pair) update attempt."""

    update_index: int
    sites: tuple[int, ...]
    candidate_cost: float
    accepted: bool
    cost_after: float           # tracked cost once the accept/reject decision is made
    tomography_evals: int
    tracking_evals: int


@dataclass
class RunTrace:
    """Per-update history of one optimization run."""

    optimizer: str
    initial_cost: float
    initial_evals: int = 1      # the evaluation that measured initial_cost
    records: list[UpdateRecord] = field(default_factory=list)
    iteration_costs: list[float] = field(default_factory=list)

    @property
    def current_cost(self) -> float:
        return self.records[-1].cost_after if self.records else self.initial_cost

    @property
    def final_cost(self) -> float:
        return self.current_cost

    def record_update(self, sites: tuple[int, ...], candidate_cost: float,
                      accepted: bool, tomography_evals: int,
                      tracking_evals: int = 1) -> UpdateRecord:
        rec = UpdateRecord(
            update_index=len(self.records) + 1,
            sites=sites,
            candidate_cost=candidate_cost,
            accepted=accepted,
            cost_after=candidate_cost if accepted else self.current_cost,
            tomography_evals=tomography_evals,
            tracking_evals=tracking_evals,
        )
        self.records.append(rec)
        return rec

    def close_iteration(self):
        self.iteration_costs.append(self.current_cost)

    def cumulative_evals(self) -> list[int]:
        """Total circuit evaluations after each update (initial eval included)."""
        out = []
        total = self.initial_evals
        for rec in self.records:
            total += rec.tomography_evals + rec.tracking_evals
            out.append(total)
        return out

    @property
    def total_evals(self) -> int:
        return self.cumulative_evals()[-1] if self.records else self.initial_evals
