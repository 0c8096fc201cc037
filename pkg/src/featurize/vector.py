"""
Sparse feature vectors F_B(alpha) indexed by truncated basis vertices.
"""

import json
from functools import cached_property
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from ..basis import BasisConfig
from ..errors import EmbeddingError, PairMismatchError
from ..triangulation import LatticeVertex


class FeatureVector:
    """Sparse vector over basis vertices; `norm` is the l_p norm for the embedding exponent p (default 1)."""

    def __init__(
        self,
        config: BasisConfig,
        values: Dict[LatticeVertex, float],
        window_exits: int = 0,
        window_exit_mass: float = 0.0,
        p: float = 1.0,
    ):
        self.config = config
        self._values = {v: float(a) for v, a in values.items() if a != 0.0}
        self.window_exits = int(window_exits)
        self.window_exit_mass = float(window_exit_mass)
        self.p = float(p)

    # -- access ---------------------------------------------------------------

    def __len__(self) -> int:
        return len(self._values)

    def __iter__(self) -> Iterator[Tuple[LatticeVertex, float]]:
        return iter(self._values.items())

    def value(self, vertex: LatticeVertex) -> float:
        return self._values.get(vertex, 0.0)

    @property
    def values(self) -> Dict[LatticeVertex, float]:
        return dict(self._values)

    @cached_property
    def entries(self) -> Dict[int, float]:
        """Basis index -> value, in index order."""
        ordering = self.config.ordering
        return dict(sorted((ordering.basis_index(v), a) for v, a in self._values.items()))

    @cached_property
    def l1_norm(self) -> float:
        return float(sum(abs(a) for a in self._values.values()))

    @property
    def norm(self) -> float:
        if self.p == 1.0:
            return self.l1_norm
        arr = np.fromiter(self._values.values(), dtype=float, count=len(self._values))
        return float(np.linalg.norm(arr, ord=self.p)) if len(arr) else 0.0

    # -- algebra --------------------------------------------------------------

    def _check(self, other: "FeatureVector") -> None:
        if self.config != other.config:
            raise PairMismatchError("feature vectors come from different basis configurations")

    def _combine(self, other: "FeatureVector", sign: float) -> "FeatureVector":
        self._check(other)
        out = dict(self._values)
        for v, a in other._values.items():
            out[v] = out.get(v, 0.0) + sign * a
        return FeatureVector(
            self.config,
            out,
            self.window_exits + other.window_exits,
            self.window_exit_mass + other.window_exit_mass,
            self.p,
        )

    def __add__(self, other: "FeatureVector") -> "FeatureVector":
        return self._combine(other, 1.0)

    def __sub__(self, other: "FeatureVector") -> "FeatureVector":
        return self._combine(other, -1.0)

    def __neg__(self) -> "FeatureVector":
        return self * -1.0

    def __mul__(self, scalar: float) -> "FeatureVector":
        s = float(scalar)
        return FeatureVector(
            self.config, {v: s * a for v, a in self._values.items()}, self.window_exits, self.window_exit_mass, self.p
        )

    __rmul__ = __mul__

    def l1_distance(self, other: "FeatureVector") -> float:
        return (self - other).l1_norm

    def restrict(self, layers: Iterable[int]) -> "FeatureVector":
        keep = set(layers)
        return FeatureVector(
            self.config,
            {v: a for v, a in self._values.items() if v.layer in keep},
            self.window_exits,
            self.window_exit_mass,
            self.p,
        )

    def with_norm(self, p: float) -> "FeatureVector":
        if p < 1:
            raise EmbeddingError(f"l_p embedding needs p >= 1, got {p}")
        return FeatureVector(self.config, self._values, self.window_exits, self.window_exit_mass, p)

    # -- export ---------------------------------------------------------------

    def to_dense(self, size: Optional[int] = None) -> np.ndarray:
        out = np.zeros(self.config.size if size is None else size)
        for i, a in self.entries.items():
            out[i] = a
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {
            "config": self.config.to_dict(),
            "entries": {str(i): a for i, a in self.entries.items()},
            "l1": self.l1_norm,
            "window_exits": self.window_exits,
            "window_exit_mass": self.window_exit_mass,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def segments(self) -> List[Tuple[int, LatticeVertex, float]]:
        """(index, vertex, |value|) in index order."""
        ordering = self.config.ordering
        rows = [(ordering.basis_index(v), v, abs(a)) for v, a in self._values.items()]
        return sorted(rows, key=lambda r: r[0])

    def __repr__(self) -> str:
        return f"FeatureVector(nnz={len(self)}, l1={self.l1_norm:.6g})"
