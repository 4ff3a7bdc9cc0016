"""
Coined discrete-time quantum walk on an n x n torus.

The state is stored as a real array of shape ``(coin_dim, n, n)`` indexed
``[c, x, y]``.  Coin directions are ordered ``UP, DOWN, LEFT, RIGHT`` and, for
the lackadaisical walk, ``SELF``.  ``x`` is the column index and ``y`` the row
index; ``UP`` decreases ``y``.

One step is ``U = S . (C (x) I)`` where the position-dependent coin ``C`` folds
the marked-vertex query in, and ``S`` is the flip-flop shift.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "UP",
    "DOWN",
    "LEFT",
    "RIGHT",
    "SELF",
    "WalkError",
    "ResourceCapError",
    "GridSpec",
    "CoinFamily",
    "MarkedOp",
    "CoinSpec",
    "MarkedCluster",
    "WalkState",
    "Walker",
    "make_initial_state",
    "coin_row_sum_vector",
    "diffusion_matrix",
    "apply_coin",
    "apply_shift",
    "step",
    "success_probability",
    "dense_step_matrix",
]

UP, DOWN, LEFT, RIGHT, SELF = range(5)

DENSE_CAP = 2000


class WalkError(ValueError):
    """Invalid walk configuration or mismatched operands."""


class ResourceCapError(RuntimeError):
    """A computation would exceed a configured size bound."""


@dataclass(frozen=True)
class GridSpec:
    side: int

    def __post_init__(self) -> None:
        if int(self.side) != self.side or self.side < 2:
            raise WalkError(f"grid side must be an integer >= 2, got {self.side!r}")

    @property
    def vertex_count(self) -> int:
        return self.side * self.side


class CoinFamily(str, enum.Enum):
    AKR = "akr"
    GROVER = "grover"
    LACKADAISICAL = "lackadaisical"


class MarkedOp(str, enum.Enum):
    """Local operator applied at marked vertices."""

    NEG_IDENTITY = "-I"
    NEG_DIFFUSION = "-D"


@dataclass(frozen=True)
class CoinSpec:
    """
    Coin family plus its parameters.

    ``grover_literal`` selects the (marked D, unmarked -D) sign assignment for
    the Grover family instead of the default (marked -D, unmarked D); the two
    differ by a global sign per step.
    """

    family: CoinFamily
    self_loop_weight: float = 0.0
    marked_op: Optional[MarkedOp] = None
    grover_literal: bool = False

    def __post_init__(self) -> None:
        family = CoinFamily(self.family)
        object.__setattr__(self, "family", family)
        l = float(self.self_loop_weight)
        if not np.isfinite(l) or l < 0:
            raise WalkError(f"self-loop weight must be >= 0, got {self.self_loop_weight!r}")
        object.__setattr__(self, "self_loop_weight", l)
        if family is not CoinFamily.LACKADAISICAL and l != 0.0:
            raise WalkError(f"{family.value} coin takes no self-loop weight")
        if self.grover_literal and family is not CoinFamily.GROVER:
            raise WalkError("grover_literal only applies to the Grover family")

        defaults = {
            CoinFamily.AKR: MarkedOp.NEG_IDENTITY,
            CoinFamily.GROVER: MarkedOp.NEG_DIFFUSION,
            CoinFamily.LACKADAISICAL: MarkedOp.NEG_DIFFUSION,
        }
        op = defaults[family] if self.marked_op is None else MarkedOp(self.marked_op)
        if family is not CoinFamily.LACKADAISICAL and op is not defaults[family]:
            raise WalkError(f"{family.value} coin fixes its marked operator to {defaults[family].value}")
        object.__setattr__(self, "marked_op", op)

    @classmethod
    def akr(cls) -> "CoinSpec":
        return cls(CoinFamily.AKR)

    @classmethod
    def grover(cls, literal: bool = False) -> "CoinSpec":
        return cls(CoinFamily.GROVER, grover_literal=literal)

    @classmethod
    def lackadaisical(cls, weight: float, marked_op: MarkedOp | str = MarkedOp.NEG_DIFFUSION) -> "CoinSpec":
        return cls(CoinFamily.LACKADAISICAL, weight, MarkedOp(marked_op))

    @property
    def coin_dim(self) -> int:
        return 5 if self.family is CoinFamily.LACKADAISICAL else 4


@dataclass(frozen=True)
class MarkedCluster:
    """
    A ``cluster_side x cluster_side`` block of marked vertices starting at
    ``origin``; coordinates wrap on the torus.  ``cluster_side == 0`` is the
    empty set, which library code accepts for testing.
    """

    cluster_side: int
    origin: tuple[int, int] = (0, 0)

    def __post_init__(self) -> None:
        if int(self.cluster_side) != self.cluster_side or self.cluster_side < 0:
            raise WalkError(f"cluster side must be a non-negative integer, got {self.cluster_side!r}")
        if self.cluster_side and self.cluster_side % 2 == 0:
            raise WalkError("cluster_side must be odd")
        x0, y0 = self.origin
        object.__setattr__(self, "origin", (int(x0), int(y0)))

    @classmethod
    def empty(cls) -> "MarkedCluster":
        return cls(0)

    @property
    def marked_count(self) -> int:
        return self.cluster_side * self.cluster_side

    def validate_for(self, grid: GridSpec) -> None:
        if self.cluster_side > grid.side:
            raise WalkError(f"cluster side {self.cluster_side} exceeds grid side {grid.side}")
        x0, y0 = self.origin
        if not (0 <= x0 < grid.side and 0 <= y0 < grid.side):
            raise WalkError(f"cluster origin {self.origin} outside the {grid.side}x{grid.side} grid")

    def vertices(self, grid: GridSpec) -> tuple[NDArray[np.intp], NDArray[np.intp]]:
        """Return ``(xs, ys)`` index arrays of the marked vertices."""
        self.validate_for(grid)
        n, s = grid.side, self.cluster_side
        x0, y0 = self.origin
        i, j = np.meshgrid(np.arange(s), np.arange(s), indexing="ij")
        return ((x0 + i.ravel()) % n, (y0 + j.ravel()) % n)

    def mask(self, grid: GridSpec) -> NDArray[np.bool_]:
        m = np.zeros((grid.side, grid.side), dtype=bool)
        m[self.vertices(grid)] = True
        return m


@dataclass
class WalkState:
    grid: GridSpec
    amplitudes: NDArray[np.float64] = field(repr=False)

    def __post_init__(self) -> None:
        a = np.asarray(self.amplitudes, dtype=np.float64)
        n = self.grid.side
        if a.ndim != 3 or a.shape[1:] != (n, n) or a.shape[0] not in (4, 5):
            raise WalkError(f"amplitudes must have shape (4|5, {n}, {n}), got {a.shape}")
        self.amplitudes = a

    @property
    def coin_dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm_squared(self) -> float:
        return float(np.sum(self.amplitudes * self.amplitudes))

    def amplitude(self, x: int, y: int, c: int) -> float:
        return float(self.amplitudes[c, x, y])

    def copy(self) -> "WalkState":
        return WalkState(self.grid, self.amplitudes.copy())


def coin_row_sum_vector(coin: CoinSpec) -> NDArray[np.float64]:
    """
    Unit vector ``w`` with ``D = 2 w w^T - I``.

    ``(1, 1, 1, 1) / 2`` for the 4-dim coins and
    ``(1, 1, 1, 1, sqrt(l)) / sqrt(4 + l)`` for the lackadaisical coin.
    """
    if coin.coin_dim == 4:
        return np.full(4, 0.5)
    l = coin.self_loop_weight
    w = np.array([1.0, 1.0, 1.0, 1.0, np.sqrt(l)])
    return w / np.sqrt(4.0 + l)


def diffusion_matrix(coin: CoinSpec) -> NDArray[np.float64]:
    w = coin_row_sum_vector(coin)
    return 2.0 * np.outer(w, w) - np.eye(coin.coin_dim)


def make_initial_state(grid: GridSpec, coin: CoinSpec) -> WalkState:
    """Uniform superposition ``w / sqrt(N)`` at every vertex."""
    w = coin_row_sum_vector(coin)
    n = grid.side
    amps = np.empty((coin.coin_dim, n, n))
    amps[...] = (w / np.sqrt(grid.vertex_count))[:, None, None]
    return WalkState(grid, amps)


def _check_dims(state: WalkState, coin: CoinSpec) -> None:
    if state.coin_dim != coin.coin_dim:
        raise WalkError(f"state has coin_dim {state.coin_dim} but {coin.family.value} coin needs {coin.coin_dim}")


class Walker:
    """
    In-place evolution engine for one walk.

    Holds two preallocated buffers and alternates between them, so a step
    allocates nothing beyond numpy temporaries.  The coin is applied
    vertex-locally through the rank-one form ``2 (w . v) w - v``; the dot product
    is summed in a fixed coin order so results do not depend on BLAS threading.
    """

    def __init__(self, state: WalkState, coin: CoinSpec, marked: MarkedCluster):
        _check_dims(state, coin)
        self.grid = state.grid
        self.coin = coin
        self.marked = marked
        self._w = coin_row_sum_vector(coin)
        self._xs, self._ys = marked.vertices(self.grid)
        self._cur = state.amplitudes.copy()
        self._buf = np.empty_like(self._cur)
        self._dot = np.empty(self._cur.shape[1:])
        self.t = 0

    @property
    def amplitudes(self) -> NDArray[np.float64]:
        return self._cur

    def state(self) -> WalkState:
        return WalkState(self.grid, self._cur.copy())

    def _coin(self, src: NDArray[np.float64], dst: NDArray[np.float64]) -> None:
        w = self._w
        dot = self._dot
        np.multiply(src[0], w[0], out=dot)
        for c in range(1, src.shape[0]):
            dot += src[c] * w[c]
        for c in range(src.shape[0]):
            np.multiply(dot, 2.0 * w[c], out=dst[c])
            dst[c] -= src[c]
        xs, ys = self._xs, self._ys
        if self.coin.marked_op is MarkedOp.NEG_IDENTITY:
            dst[:, xs, ys] = -src[:, xs, ys]
        elif self.coin.grover_literal:
            # marked D, unmarked -D
            marked_vals = dst[:, xs, ys].copy()
            np.negative(dst, out=dst)
            dst[:, xs, ys] = marked_vals
        else:
            dst[:, xs, ys] = -dst[:, xs, ys]

    @staticmethod
    def _shift(src: NDArray[np.float64], dst: NDArray[np.float64]) -> None:
        # (x, y, UP) -> (x, y-1, DOWN)
        dst[DOWN, :, :-1] = src[UP, :, 1:]
        dst[DOWN, :, -1] = src[UP, :, 0]
        # (x, y, DOWN) -> (x, y+1, UP)
        dst[UP, :, 1:] = src[DOWN, :, :-1]
        dst[UP, :, 0] = src[DOWN, :, -1]
        # (x, y, LEFT) -> (x-1, y, RIGHT)
        dst[RIGHT, :-1, :] = src[LEFT, 1:, :]
        dst[RIGHT, -1, :] = src[LEFT, 0, :]
        # (x, y, RIGHT) -> (x+1, y, LEFT)
        dst[LEFT, 1:, :] = src[RIGHT, :-1, :]
        dst[LEFT, 0, :] = src[RIGHT, -1, :]
        if src.shape[0] == 5:
            dst[SELF] = src[SELF]

    def step(self) -> None:
        self._coin(self._cur, self._buf)
        self._shift(self._buf, self._cur)
        self.t += 1

    def success_probability(self) -> float:
        v = self._cur[:, self._xs, self._ys]
        return float(np.sum(v * v))


def apply_coin(state: WalkState, coin: CoinSpec, marked: MarkedCluster) -> WalkState:
    _check_dims(state, coin)
    walker = Walker(state, coin, marked)
    out = np.empty_like(state.amplitudes)
    walker._coin(state.amplitudes, out)
    return WalkState(state.grid, out)


def apply_shift(state: WalkState) -> WalkState:
    """Flip-flop shift; an involution that leaves self-loop amplitudes in place."""
    out = np.empty_like(state.amplitudes)
    Walker._shift(state.amplitudes, out)
    return WalkState(state.grid, out)


def step(state: WalkState, coin: CoinSpec, marked: MarkedCluster) -> WalkState:
    walker = Walker(state, coin, marked)
    walker.step()
    return walker.state()


def success_probability(state: WalkState, marked: MarkedCluster) -> float:
    """Squared amplitude on the marked vertices, summed over all coin components."""
    xs, ys = marked.vertices(state.grid)
    v = state.amplitudes[:, xs, ys]
    return float(np.sum(v * v))


def dense_step_matrix(
    grid: GridSpec, coin: CoinSpec, marked: MarkedCluster, cap: int = DENSE_CAP
) -> NDArray[np.float64]:
    """
    Explicit ``coin_dim * N`` square matrix of one walk step.

    Built from a permutation matrix for the shift and per-vertex coin blocks,
    without going through :class:`Walker`, so it can serve as an independent
    oracle.  The basis index of ``(c, x, y)`` is ``c * N + x * n + y``, matching
    ``WalkState.amplitudes.ravel()``.
    """
    d = coin.coin_dim
    n = grid.side
    N = grid.vertex_count
    size = d * N
    if size > cap:
        raise ResourceCapError(f"dense matrix of size {size} exceeds cap {cap}")

    def idx(c: int, x: int, y: int) -> int:
        return c * N + (x % n) * n + (y % n)

    D = diffusion_matrix(coin)
    I = np.eye(d)
    is_marked = marked.mask(grid)
    if coin.family is CoinFamily.GROVER and coin.grover_literal:
        marked_block, unmarked_block = D, -D
    elif coin.marked_op is MarkedOp.NEG_IDENTITY:
        marked_block, unmarked_block = -I, D
    else:
        marked_block, unmarked_block = -D, D

    C = np.zeros((size, size))
    for x in range(n):
        for y in range(n):
            block = marked_block if is_marked[x, y] else unmarked_block
            rows = [idx(c, x, y) for c in range(d)]
            C[np.ix_(rows, rows)] = block

    S = np.zeros((size, size))
    moves = {UP: (0, -1, DOWN), DOWN: (0, 1, UP), LEFT: (-1, 0, RIGHT), RIGHT: (1, 0, LEFT)}
    for x in range(n):
        for y in range(n):
            for c, (dx, dy, c2) in moves.items():
                S[idx(c2, x + dx, y + dy), idx(c, x, y)] = 1.0
            if d == 5:
                S[idx(SELF, x, y), idx(SELF, x, y)] = 1.0
    return S @ C
