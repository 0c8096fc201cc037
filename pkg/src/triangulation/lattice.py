"""
Exact lattice vertices of the nested CFK family and the triangulation config.

A vertex of layer n is stored as integer coordinates k denoting k * z^-n.
"""

from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from ..errors import BasisConfigError, VertexError
from ..geometry import PolyhedralPair
from ..geometry.pair import SQRT2

DEFAULT_LAYER_CAP = 48


@dataclass(frozen=True)
class TriangulationConfig:
    """The pair plus the refinement ratio z of the family {T^n} at scales z^-n."""
    pair: PolyhedralPair
    z: int = 2
    layer_cap: int = DEFAULT_LAYER_CAP

    def __post_init__(self):
        if not isinstance(self.z, (int, np.integer)) or self.z < 2:
            raise BasisConfigError(f"refinement ratio z must be an integer >= 2, got {self.z!r}")
        if self.layer_cap < 0:
            raise BasisConfigError(f"layer cap must be nonnegative, got {self.layer_cap}")

    @property
    def dimension(self) -> int:
        return self.pair.dimension

    def scale(self, n: int) -> int:
        """z^n as an exact integer."""
        return int(self.z) ** int(n)


@dataclass(frozen=True, order=True)
class LatticeVertex:
    """A vertex k * z^-layer. Instances built through `canonical` are in reduced form."""
    layer: int
    coords: Tuple[int, ...]

    @classmethod
    def canonical(cls, layer: int, coords: Sequence[int], z: int) -> "LatticeVertex":
        """Reduce k * z^-layer to the earliest layer that contains the point."""
        k = [int(c) for c in coords]
        n = int(layer)
        while n > 0 and all(c % z == 0 for c in k):
            k = [c // z for c in k]
            n -= 1
        return cls(n, tuple(k))

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def is_canonical(self, z: int) -> bool:
        return self.layer == 0 or not all(c % z == 0 for c in self.coords)

    def scaled(self, z: int, m: int) -> Tuple[int, ...]:
        """Integer coordinates of the same point at layer m >= layer."""
        if m < self.layer:
            raise VertexError(f"cannot express a layer-{self.layer} vertex at layer {m}")
        f = int(z) ** (m - self.layer)
        return tuple(c * f for c in self.coords)

    def point(self, z: int) -> np.ndarray:
        return np.asarray(self.coords, dtype=float) / float(int(z) ** self.layer)

    def rafter(self, z: int) -> int:
        """Shell index N = max(1, ceil(|k|_inf / z^layer))."""
        s = int(z) ** self.layer
        m = max((abs(c) for c in self.coords), default=0)
        return max(1, -(-m // s))

    def distance_to_A(self, pair: PolyhedralPair, z: int) -> float:
        gap = min(self.coords[j] - self.coords[i] for i, j in pair.essential_indices)
        return gap / (SQRT2 * float(int(z) ** self.layer))

    def to_json(self) -> Dict[str, Any]:
        return {"layer": int(self.layer), "coords": [int(c) for c in self.coords]}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "LatticeVertex":
        try:
            return cls(int(data["layer"]), tuple(int(c) for c in data["coords"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise VertexError(f"malformed vertex document {data!r}") from exc

    def __str__(self) -> str:
        return f"V{self.layer}{list(self.coords)}"


def check_basis_vertex(config: TriangulationConfig, vertex: LatticeVertex) -> None:
    """Raise VertexError unless the vertex is a canonical vertex of X \\ A."""
    pair = config.pair
    if vertex.dimension != pair.dimension:
        raise VertexError(f"vertex {vertex} has {vertex.dimension} coordinates, pair has {pair.dimension}")
    if vertex.layer < 0:
        raise VertexError(f"vertex {vertex} has a negative layer")
    if not vertex.is_canonical(config.z):
        raise VertexError(f"vertex {vertex} is not canonical; it belongs to an earlier layer")
    if not pair.lattice_in_X(vertex.coords):
        raise VertexError(f"vertex {vertex} lies outside X")
    if pair.lattice_in_A(vertex.coords):
        raise VertexError(f"vertex {vertex} lies in A")
