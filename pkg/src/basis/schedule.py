"""
Lipschitz schedules L_n for the per-layer kernel functionals.

Schedules are configured by string, e.g. "geometric:1,1/2" or
"split:0.999,0.001,1/2".
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from ..errors import BasisConfigError


class LipschitzSchedule(ABC):
    """Summable sequence of positive Lipschitz constants L_0, L_1, ..."""

    @abstractmethod
    def value(self, n: int) -> float:
        """L_n."""

    @property
    @abstractmethod
    def total(self) -> float:
        """L = sum over all n of L_n."""

    @abstractmethod
    def tail(self, n: int) -> float:
        """Sum of L_k over k > n."""

    @abstractmethod
    def spec_string(self) -> str:
        """Round-trippable configuration string."""

    def partial(self, n: int) -> float:
        """Sum of L_k over k <= n."""
        return sum(self.value(k) for k in range(n + 1))

    def values(self, n: int) -> List[float]:
        return [self.value(k) for k in range(n + 1)]

    def is_unit_geometric(self, z: int) -> bool:
        """True when L_n = z^-n, the schedule the stacked basis requires."""
        return False

    def to_dict(self) -> Dict[str, object]:
        return {"schedule": self.spec_string(), "total": self.total}


@dataclass(frozen=True)
class GeometricSchedule(LipschitzSchedule):
    """L_n = L0 * rho^n with 0 < rho < 1."""
    l0: float = 1.0
    rho: float = 0.5

    def __post_init__(self):
        if not self.l0 > 0:
            raise BasisConfigError(f"L0 must be positive, got {self.l0}")
        if not 0 < self.rho < 1:
            raise BasisConfigError(f"rho must lie in (0, 1), got {self.rho}")

    def value(self, n: int) -> float:
        return self.l0 * self.rho ** n

    @property
    def total(self) -> float:
        return self.l0 / (1.0 - self.rho)

    def tail(self, n: int) -> float:
        return self.l0 * self.rho ** (n + 1) / (1.0 - self.rho)

    def partial(self, n: int) -> float:
        return self.total - self.tail(n)

    def spec_string(self) -> str:
        return f"geometric:{self.l0!r},{self.rho!r}"

    def is_unit_geometric(self, z: int) -> bool:
        return abs(self.l0 - 1.0) <= 1e-15 and abs(self.rho - 1.0 / z) <= 1e-15


@dataclass(frozen=True)
class SplitSchedule(LipschitzSchedule):
    """L_0 = L0 and L_n = eps * rho^n for n >= 1.

    With eps summing to L - L0 this puts almost the whole budget on layer 0.
    """
    l0: float
    eps: float
    rho: float = 0.5

    def __post_init__(self):
        if not self.l0 > 0 or not self.eps > 0:
            raise BasisConfigError(f"L0 and eps must be positive, got {self.l0}, {self.eps}")
        if not 0 < self.rho < 1:
            raise BasisConfigError(f"rho must lie in (0, 1), got {self.rho}")

    def value(self, n: int) -> float:
        return self.l0 if n == 0 else self.eps * self.rho ** n

    @property
    def total(self) -> float:
        return self.l0 + self.eps * self.rho / (1.0 - self.rho)

    def tail(self, n: int) -> float:
        return self.eps * self.rho ** (n + 1) / (1.0 - self.rho)

    def partial(self, n: int) -> float:
        return self.total - self.tail(n)

    def spec_string(self) -> str:
        return f"split:{self.l0!r},{self.eps!r},{self.rho!r}"


def _number(text: str) -> float:
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise BasisConfigError(f"cannot parse schedule parameter {text!r}") from exc


def default_schedule(z: int) -> GeometricSchedule:
    return GeometricSchedule(1.0, 1.0 / z)


def parse_schedule(text: Optional[str], z: int = 2) -> LipschitzSchedule:
    """Parse "geometric:<L0>,<rho>" or "split:<L0>,<eps>,<rho>"; None gives L_n = z^-n."""
    if text is None or not text.strip():
        return default_schedule(z)
    kind, _, params = text.strip().partition(":")
    args = [_number(p) for p in params.split(",")] if params else []
    kind = kind.lower()
    if kind == "geometric":
        if len(args) != 2:
            raise BasisConfigError(f"geometric schedule takes <L0>,<rho>, got {text!r}")
        return GeometricSchedule(*args)
    if kind == "split":
        if len(args) not in (2, 3):
            raise BasisConfigError(f"split schedule takes <L0>,<eps>[,<rho>], got {text!r}")
        return SplitSchedule(*args)
    raise BasisConfigError(f"unknown schedule kind {kind!r} (expected geometric or split)")
