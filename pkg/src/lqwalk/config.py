from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional, Union

from .analysis import DEFAULT_PATIENCE, WeightScheme, baseline_weight, default_max_steps
from .walk import CoinFamily, CoinSpec, GridSpec, MarkedCluster, MarkedOp

__all__ = ["ConfigError", "RunConfig"]


class ConfigError(ValueError):
    """Invalid user-facing configuration; the message names the field."""


def _parse_weight(value: Union[str, float, None]) -> Union[float, WeightScheme]:
    if value is None:
        return WeightScheme.PROPOSED_CENTER
    if isinstance(value, (int, float)):
        return float(value)
    try:
        return WeightScheme(value.strip().lower())
    except ValueError:
        pass
    try:
        return float(value)
    except ValueError:
        names = ", ".join(s.value for s in WeightScheme)
        raise ConfigError(f"weight must be a non-negative number or one of {names}, got {value!r}") from None


@dataclass
class RunConfig:
    grid_side: int
    cluster_side: int = 3
    cluster_origin: tuple[int, int] = (0, 0)
    coin_family: str = "lackadaisical"
    weight: Union[float, str, None] = "proposed"
    max_steps: Optional[int] = None
    marked_op: Optional[str] = None
    patience: int = DEFAULT_PATIENCE
    output_format: str = "csv"
    output_path: Optional[str] = None
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if not isinstance(self.grid_side, int) or self.grid_side < 2:
            raise ConfigError(f"grid_side must be an integer >= 2, got {self.grid_side!r}")
        if not isinstance(self.cluster_side, int) or self.cluster_side < 1:
            raise ConfigError(f"cluster_side must be an integer >= 1, got {self.cluster_side!r}")
        if self.cluster_side % 2 == 0:
            raise ConfigError("cluster_side must be odd")
        if self.cluster_side > self.grid_side:
            raise ConfigError(f"cluster_side {self.cluster_side} exceeds grid_side {self.grid_side}")
        x0, y0 = self.cluster_origin
        if not (0 <= x0 < self.grid_side and 0 <= y0 < self.grid_side):
            raise ConfigError(f"cluster_origin {tuple(self.cluster_origin)} lies outside the grid")
        try:
            family = CoinFamily(str(self.coin_family).lower())
        except ValueError:
            raise ConfigError(f"coin_family must be akr, grover or lackadaisical, got {self.coin_family!r}") from None
        w = _parse_weight(self.weight)
        if isinstance(w, float) and not w >= 0:
            raise ConfigError(f"weight must be >= 0, got {self.weight!r}")
        if family is not CoinFamily.LACKADAISICAL and isinstance(w, float) and w != 0:
            raise ConfigError(f"weight must be 0 for the {family.value} coin")
        if self.marked_op is not None:
            if family is not CoinFamily.LACKADAISICAL:
                raise ConfigError("marked_op only applies to the lackadaisical coin")
            try:
                MarkedOp(self.marked_op)
            except ValueError:
                raise ConfigError(f"marked_op must be -I or -D, got {self.marked_op!r}") from None
        if self.max_steps is not None and (not isinstance(self.max_steps, int) or self.max_steps < 1):
            raise ConfigError(f"max_steps must be a positive integer, got {self.max_steps!r}")
        if not isinstance(self.patience, int) or self.patience < 1:
            raise ConfigError(f"patience must be a positive integer, got {self.patience!r}")
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"output_format must be csv or json, got {self.output_format!r}")

    @property
    def grid(self) -> GridSpec:
        return GridSpec(self.grid_side)

    @property
    def marked(self) -> MarkedCluster:
        return MarkedCluster(self.cluster_side, tuple(self.cluster_origin))

    def resolved_weight(self) -> float:
        family = CoinFamily(str(self.coin_family).lower())
        if family is not CoinFamily.LACKADAISICAL:
            return 0.0
        w = _parse_weight(self.weight)
        if isinstance(w, WeightScheme):
            return baseline_weight(w, self.grid_side**2, self.cluster_side**2)
        return w

    @property
    def coin(self) -> CoinSpec:
        family = CoinFamily(str(self.coin_family).lower())
        if family is CoinFamily.LACKADAISICAL:
            op = MarkedOp(self.marked_op) if self.marked_op else MarkedOp.NEG_DIFFUSION
            return CoinSpec.lackadaisical(self.resolved_weight(), op)
        return CoinSpec(family)

    def resolved_max_steps(self) -> int:
        if self.max_steps is not None:
            return self.max_steps
        return default_max_steps(self.grid_side, self.cluster_side**2)

    def to_dict(self) -> dict:
        """Fully resolved form; re-running it reproduces the same numbers."""
        d = asdict(self)
        d["cluster_origin"] = list(self.cluster_origin)
        d["coin_family"] = str(self.coin_family).lower()
        d["weight"] = self.resolved_weight()
        d["max_steps"] = self.resolved_max_steps()
        d.pop("output_path")
        d.pop("extra")
        d.update(self.extra)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = {f for f in cls.__dataclass_fields__}
        kwargs = {k: v for k, v in d.items() if k in known}
        extra = {k: v for k, v in d.items() if k not in known}
        if "cluster_origin" in kwargs:
            kwargs["cluster_origin"] = tuple(kwargs["cluster_origin"])
        return cls(**kwargs, extra=extra)
