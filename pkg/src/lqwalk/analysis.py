"""
Probability traces, first-peak detection, self-loop weight sweeps and
baseline weight formulas.
"""

from __future__ import annotations

import enum
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .walk import (
    CoinFamily,
    CoinSpec,
    GridSpec,
    MarkedCluster,
    ResourceCapError,
    Walker,
    WalkError,
    make_initial_state,
)

__all__ = [
    "DEFAULT_PATIENCE",
    "MAX_AMPLITUDES",
    "BudgetExceeded",
    "Termination",
    "ProbTrace",
    "PeakResult",
    "PeakDetector",
    "WeightScheme",
    "SweepResult",
    "CompareEntry",
    "CompareRow",
    "baseline_weight",
    "proposed_interval",
    "default_max_steps",
    "evolve_trace",
    "detect_first_peak",
    "first_peak",
    "local_peaks",
    "sweep_weights",
    "weight_sweep",
    "compare_coins",
]

# Stop once the running maximum has not been matched for this many steps.
# 1 reproduces the literal strict-decrease rule, which trips on the period-2
# ripple that every trace carries from step 1 on.
DEFAULT_PATIENCE = 5

MAX_AMPLITUDES = 20_000_000


class BudgetExceeded(RuntimeError):
    """Wall-clock budget ran out before the walk terminated."""


class Termination(str, enum.Enum):
    PEAK_FOUND = "peak_found"
    MAX_STEPS_REACHED = "max_steps_reached"


@dataclass(frozen=True)
class ProbTrace:
    grid: GridSpec
    coin: CoinSpec
    marked: MarkedCluster
    probs: np.ndarray

    def __len__(self) -> int:
        return len(self.probs)


@dataclass(frozen=True)
class PeakResult:
    steps: int
    prob: float
    terminated_by: Termination

    def to_dict(self) -> dict:
        return {"steps": self.steps, "prob": self.prob, "terminated_by": self.terminated_by.value}


class PeakDetector:
    """
    Online first-peak detector.

    Feed probabilities for t = 1, 2, ... through :meth:`update`; it returns
    True once the peak is settled.  The stored best is replaced whenever a
    value is at least as large (plateaus advance the step, as in the literal
    rule), and the peak is settled after ``patience`` consecutive values below
    it.
    """

    def __init__(self, patience: int = DEFAULT_PATIENCE):
        if patience < 1:
            raise ValueError("patience must be >= 1")
        self.patience = patience
        self.best = 0.0
        self.best_t = 0
        self.t = 0

    def update(self, prob: float) -> bool:
        self.t += 1
        if prob >= self.best:
            self.best = prob
            self.best_t = self.t
            return False
        return self.t - self.best_t >= self.patience


def _check_size(grid: GridSpec, coin: CoinSpec, max_amplitudes: int) -> None:
    size = coin.coin_dim * grid.vertex_count
    if size > max_amplitudes:
        raise ResourceCapError(f"{size} amplitudes exceeds the bound of {max_amplitudes}")


def evolve_trace(
    grid: GridSpec,
    coin: CoinSpec,
    marked: MarkedCluster,
    max_steps: int,
    max_amplitudes: int = MAX_AMPLITUDES,
) -> ProbTrace:
    """Success probability after 0..max_steps steps from the uniform state."""
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    _check_size(grid, coin, max_amplitudes)
    walker = Walker(make_initial_state(grid, coin), coin, marked)
    probs = np.empty(max_steps + 1)
    probs[0] = walker.success_probability()
    for t in range(1, max_steps + 1):
        walker.step()
        probs[t] = walker.success_probability()
    return ProbTrace(grid, coin, marked, probs)


def detect_first_peak(
    probs: Iterable[float], max_steps: int, patience: int = DEFAULT_PATIENCE
) -> PeakResult:
    """
    First peak of a trace given as ``probs[1], probs[2], ...`` (the value at
    t = 0 is not part of the iterable).
    """
    det = PeakDetector(patience)
    for _, p in zip(range(max_steps), probs):
        if det.update(p):
            return PeakResult(det.best_t, det.best, Termination.PEAK_FOUND)
    return PeakResult(det.best_t, det.best, Termination.MAX_STEPS_REACHED)


def first_peak(
    grid: GridSpec,
    coin: CoinSpec,
    marked: MarkedCluster,
    max_steps: int,
    patience: int = DEFAULT_PATIENCE,
    max_amplitudes: int = MAX_AMPLITUDES,
    deadline: Optional[float] = None,
) -> PeakResult:
    """
    Evolve step by step and stop at the first peak of the success probability.

    ``deadline`` is a ``time.monotonic()`` value; :class:`BudgetExceeded` is
    raised if it passes before termination.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    _check_size(grid, coin, max_amplitudes)
    walker = Walker(make_initial_state(grid, coin), coin, marked)

    def probs():
        while True:
            walker.step()
            if deadline is not None and walker.t % 1024 == 0 and time.monotonic() > deadline:
                raise BudgetExceeded(f"budget exhausted after {walker.t} steps")
            yield walker.success_probability()

    return detect_first_peak(probs(), max_steps, patience)


def _settle(p: np.ndarray, start: int, sign: float, patience: int) -> Optional[int]:
    best, best_t = -math.inf, start
    for t in range(start, len(p)):
        v = sign * p[t]
        if v >= best:
            best, best_t = v, t
        elif t - best_t >= patience:
            return best_t
    return None


def local_peaks(probs: Sequence[float], patience: int = DEFAULT_PATIENCE) -> list[tuple[int, float]]:
    """
    Successive settled peaks of a full trace ``probs[0..T]``, alternating
    peak and trough detection with the same patience window.
    """
    p = np.asarray(probs, dtype=float)
    peaks: list[tuple[int, float]] = []
    t = 1
    while True:
        top = _settle(p, t, 1.0, patience)
        if top is None:
            return peaks
        peaks.append((top, float(p[top])))
        bottom = _settle(p, top + 1, -1.0, patience)
        if bottom is None:
            return peaks
        t = bottom + 1


class WeightScheme(str, enum.Enum):
    PROPOSED_CENTER = "proposed"
    NAHIMOVS = "nahimovs"
    GIRI = "giri"
    WONG_SINGLE = "wong"
    NO_LOOP = "noloop"


def baseline_weight(scheme: WeightScheme | str, N: int, k: int) -> float:
    scheme = WeightScheme(scheme)
    if N < 1 or k < 1:
        raise WalkError("N and k must be >= 1")
    if scheme is WeightScheme.PROPOSED_CENTER:
        return 4.0 / (N * (k + 1))
    if scheme is WeightScheme.NAHIMOVS:
        return 4.0 * (k - math.sqrt(k)) / N
    if scheme is WeightScheme.GIRI:
        return 4.0 * k / N
    if scheme is WeightScheme.WONG_SINGLE:
        return 4.0 / N
    return 0.0


def proposed_interval(N: int, k: int) -> tuple[float, float, float]:
    """``(low, center, high) = (4/(N(k+2)), 4/(N(k+1)), 4/(Nk))``."""
    return 4.0 / (N * (k + 2)), 4.0 / (N * (k + 1)), 4.0 / (N * k)


def default_max_steps(grid_side: int, k: int) -> int:
    return int(math.ceil(100 * grid_side * math.sqrt(k + 1)))


def sweep_weights(N: int, k: int, resolution: float) -> list[float]:
    """
    Sorted sample weights: both interval endpoints, the center, and every
    multiple of ``resolution`` inside the interval.  When ``resolution`` is
    wider than the interval only the center is returned.
    """
    if not resolution > 0:
        raise ValueError("resolution must be > 0")
    low, center, high = proposed_interval(N, k)
    if resolution > high - low:
        return [center]
    pts = {low, center, high}
    j0 = math.ceil(low / resolution)
    j1 = math.floor(high / resolution)
    for j in range(j0, j1 + 1):
        v = j * resolution
        if low <= v <= high:
            pts.add(v)
    return sorted(pts)


@dataclass(frozen=True)
class SweepResult:
    samples: list[tuple[float, PeakResult]]
    best_weight: float
    best_delta: float
    best_peak: PeakResult


def _sweep_job(args):
    side, cluster, l, max_steps, patience = args
    return first_peak(
        GridSpec(side),
        CoinSpec.lackadaisical(l),
        cluster,
        max_steps,
        patience=patience,
    )


def _map(fn: Callable, jobs_args: list, jobs: int) -> list:
    if jobs <= 1 or len(jobs_args) <= 1:
        return [fn(a) for a in jobs_args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, jobs_args))


def weight_sweep(
    grid: GridSpec,
    marked: MarkedCluster,
    resolution: float = 1e-6,
    max_steps: Optional[int] = None,
    patience: int = DEFAULT_PATIENCE,
    jobs: int = 1,
) -> SweepResult:
    """
    First peak at every sample weight of the proposed interval, and the best.

    Ties are broken toward fewer steps, then smaller weight, so the result is
    independent of job scheduling.
    """
    N, k = grid.vertex_count, marked.marked_count
    marked.validate_for(grid)
    if max_steps is None:
        max_steps = default_max_steps(grid.side, k)
    weights = sweep_weights(N, k, resolution)
    peaks = _map(_sweep_job, [(grid.side, marked, l, max_steps, patience) for l in weights], jobs)
    samples = list(zip(weights, peaks))
    best_l, best = min(samples, key=lambda s: (-s[1].prob, s[1].steps, s[0]))
    return SweepResult(samples, best_l, best_l - proposed_interval(N, k)[1], best)


@dataclass(frozen=True)
class CompareEntry:
    """One configuration: a coin family plus a weight scheme or explicit weight."""

    family: CoinFamily
    weight: float | WeightScheme = 0.0
    label: Optional[str] = None

    def resolve(self, N: int, k: int) -> tuple[str, CoinSpec, float]:
        family = CoinFamily(self.family)
        if isinstance(self.weight, WeightScheme):
            l = baseline_weight(self.weight, N, k)
            name = self.weight.value
        else:
            l = float(self.weight)
            name = f"{l:g}"
        if family is CoinFamily.LACKADAISICAL:
            coin = CoinSpec.lackadaisical(l)
            label = self.label or f"lackadaisical:{name}"
        else:
            coin = CoinSpec(family)
            l = 0.0
            label = self.label or family.value
        return label, coin, l


@dataclass(frozen=True)
class CompareRow:
    label: str
    weight: float
    prob: float
    steps: int
    terminated_by: Termination
    max_prob: float
    max_prob_step: int


def _compare_job(args):
    side, marked, coin, max_steps, patience = args
    grid = GridSpec(side)
    trace = evolve_trace(grid, coin, marked, max_steps).probs
    peak = detect_first_peak(iter(trace[1:]), max_steps, patience)
    t_max = int(np.argmax(trace[1:])) + 1
    return peak, float(trace[t_max]), t_max


def compare_coins(
    grid: GridSpec,
    marked: MarkedCluster,
    entries: Sequence[CompareEntry],
    max_steps: int,
    patience: int = DEFAULT_PATIENCE,
    jobs: int = 1,
) -> list[CompareRow]:
    """
    First peak, plus the global maximum over ``max_steps``, for each entry.
    Rows follow input order.
    """
    if not entries:
        raise ValueError("need at least one entry")
    N, k = grid.vertex_count, marked.marked_count
    resolved = [e.resolve(N, k) for e in entries]
    results = _map(_compare_job, [(grid.side, marked, coin, max_steps, patience) for _, coin, _ in resolved], jobs)
    return [
        CompareRow(label, l, peak.prob, peak.steps, peak.terminated_by, mp, mt)
        for (label, _, l), (peak, mp, mt) in zip(resolved, results)
    ]
