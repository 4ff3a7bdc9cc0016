"""Run manifest rows and compare against the published values."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .analysis import DEFAULT_PATIENCE, BudgetExceeded, PeakResult, _map, default_max_steps, first_peak
from .manifest import ManifestRow
from .walk import CoinFamily, CoinSpec, GridSpec, MarkedCluster

__all__ = ["RowOutcome", "run_row", "reproduce_rows"]

PASS, FAIL, INFO, SKIPPED = "pass", "fail", "info", "skipped"


@dataclass(frozen=True)
class RowOutcome:
    row: ManifestRow
    peak: Optional[PeakResult]
    status: str

    @property
    def prob_diff(self) -> Optional[float]:
        return None if self.peak is None else abs(self.peak.prob - self.row.prob_published)

    @property
    def steps_diff(self) -> Optional[int]:
        return None if self.peak is None else abs(self.peak.steps - self.row.steps_published)


def judge(row: ManifestRow, peak: PeakResult) -> str:
    if not row.asserted:
        return INFO
    ok = True
    if row.prob_tol is not None:
        ok &= abs(peak.prob - row.prob_published) <= row.prob_tol
    if row.steps_tol is not None:
        ok &= abs(peak.steps - row.steps_published) <= row.steps_tol
    if row.prob_at_most is not None:
        ok &= peak.prob <= row.prob_at_most
    if row.prob_at_least is not None:
        ok &= peak.prob >= row.prob_at_least
    return PASS if ok else FAIL


def run_row(
    row: ManifestRow,
    patience: int = DEFAULT_PATIENCE,
    budget: Optional[float] = None,
    max_steps: Optional[int] = None,
) -> RowOutcome:
    grid = GridSpec(row.grid_side)
    marked = MarkedCluster(row.cluster_side)
    family = CoinFamily(row.coin)
    coin = CoinSpec.lackadaisical(row.weight) if family is CoinFamily.LACKADAISICAL else CoinSpec(family)
    if max_steps is None:
        max_steps = default_max_steps(row.grid_side, row.k)
    deadline = None if budget is None else time.monotonic() + budget
    try:
        peak = first_peak(grid, coin, marked, max_steps, patience=patience, deadline=deadline)
    except BudgetExceeded:
        return RowOutcome(row, None, SKIPPED)
    return RowOutcome(row, peak, judge(row, peak))


def _job(args):
    row, patience, budget = args
    return run_row(row, patience, budget)


def reproduce_rows(
    rows: Sequence[ManifestRow],
    include_slow: bool = False,
    budget: Optional[float] = None,
    patience: int = DEFAULT_PATIENCE,
    jobs: int = 1,
) -> list[RowOutcome]:
    """Outcomes in manifest order; slow rows are skipped unless requested."""
    todo = [r for r in rows if include_slow or not r.slow]
    done = iter(_map(_job, [(r, patience, budget) for r in todo], jobs))
    return [next(done) if (include_slow or not r.slow) else RowOutcome(r, None, SKIPPED) for r in rows]
