"""
Basis configuration: triangulation, Lipschitz schedule and the two-way truncation.
"""

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any, Dict, Optional, Union

from ..errors import BasisConfigError
from ..geometry import PolyhedralPair
from ..triangulation import BasisOrdering, TriangulationConfig
from .schedule import LipschitzSchedule, default_schedule, parse_schedule


class BasisKind(str, Enum):
    PLAIN = "plain"
    STACKED = "stacked"


@dataclass(frozen=True)
class BasisConfig:
    """Truncated CFK basis: layers 0..max_layer, vertices with |x|_inf <= rafter_radius."""
    triangulation: TriangulationConfig
    schedule: LipschitzSchedule
    max_layer: int = 4
    rafter_radius: int = 4
    kind: BasisKind = BasisKind.PLAIN

    def __post_init__(self):
        if self.max_layer < 0:
            raise BasisConfigError(f"max_layer must be nonnegative, got {self.max_layer}")
        if self.rafter_radius < 1:
            raise BasisConfigError(f"rafter radius must be at least 1, got {self.rafter_radius}")
        if not isinstance(self.kind, BasisKind):
            try:
                object.__setattr__(self, "kind", BasisKind(str(self.kind).strip().lower()))
            except ValueError:
                raise BasisConfigError(f"basis kind must be plain or stacked, got {self.kind!r}") from None
        if self.kind is BasisKind.STACKED and not self.schedule.is_unit_geometric(self.z):
            raise BasisConfigError(
                f"stacked basis requires L_n = {self.z}^-n, got schedule {self.schedule.spec_string()}"
            )

    @classmethod
    def build(
        cls,
        pair: PolyhedralPair,
        z: int = 2,
        schedule: Union[str, LipschitzSchedule, None] = None,
        max_layer: int = 4,
        rafter_radius: int = 4,
        kind: Union[str, BasisKind] = BasisKind.PLAIN,
    ) -> "BasisConfig":
        tri = TriangulationConfig(pair, z)
        if schedule is None:
            sched = default_schedule(z)
        elif isinstance(schedule, str):
            sched = parse_schedule(schedule, z)
        else:
            sched = schedule
        return cls(tri, sched, int(max_layer), int(rafter_radius), kind)  # type: ignore[arg-type]

    @property
    def pair(self) -> PolyhedralPair:
        return self.triangulation.pair

    @property
    def z(self) -> int:
        return self.triangulation.z

    @property
    def dimension(self) -> int:
        return self.triangulation.dimension

    @property
    def total_lipschitz(self) -> float:
        """L = sum of all L_n."""
        return self.schedule.total

    @property
    def llf_constant(self) -> float:
        """M = (d + 1) L."""
        return (self.dimension + 1) * self.schedule.total

    @property
    def cfk_constant(self) -> float:
        """sqrt(2d) L, the CFK stability constant."""
        return math.sqrt(2 * self.dimension) * self.schedule.total

    @property
    def tail_coefficient(self) -> float:
        """sqrt(2d) times the schedule tail beyond max_layer."""
        return math.sqrt(2 * self.dimension) * self.schedule.tail(self.max_layer)

    @cached_property
    def ordering(self) -> BasisOrdering:
        return BasisOrdering(self.triangulation, self.max_layer, self.rafter_radius)

    @property
    def size(self) -> int:
        return self.ordering.size

    def with_layers(self, max_layer: int, rafter_radius: Optional[int] = None) -> "BasisConfig":
        return BasisConfig(
            self.triangulation,
            self.schedule,
            int(max_layer),
            int(self.rafter_radius if rafter_radius is None else rafter_radius),
            self.kind,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pair": self.pair.to_dict(),
            "z": int(self.z),
            "schedule": self.schedule.spec_string(),
            "max_layer": self.max_layer,
            "rafter_radius": self.rafter_radius,
            "kind": self.kind.value,
        }
