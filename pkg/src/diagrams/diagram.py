"""
Signed (and real-weighted) persistence diagrams on a polyhedral pair.

A diagram is a finite formal sum of points of X, taken modulo A: points at
distance 0 from A and zero weights are dropped on construction.
"""

from typing import Callable, Iterator, Optional, Sequence, Tuple

import numpy as np

from ..errors import DimensionMismatchError, OutsideDomainError, PairMismatchError, WassersteinError
from ..geometry import PolyhedralPair

INTEGER_TOL = 1e-9


class SignedDiagram:
    """Immutable weighted point sum. Weights are +-1 multiplicities for barcodes, any real for witnesses."""

    __slots__ = ("pair", "_points", "_weights")

    def __init__(
        self,
        pair: PolyhedralPair,
        points: Optional[Sequence[Sequence[float]]] = None,
        weights: Optional[Sequence[float]] = None,
    ):
        d = pair.dimension
        pts = np.asarray(points if points is not None else np.zeros((0, d)), dtype=float)
        if pts.size == 0:
            pts = pts.reshape(0, d)
        if pts.ndim != 2 or pts.shape[1] != d:
            raise DimensionMismatchError(f"diagram points must have {d} coordinates, got shape {pts.shape}")
        w = np.ones(len(pts)) if weights is None else np.asarray(weights, dtype=float).reshape(-1)
        if len(w) != len(pts):
            raise DimensionMismatchError(f"{len(pts)} points but {len(w)} weights")
        if not (np.all(np.isfinite(pts)) and np.all(np.isfinite(w))):
            raise OutsideDomainError("diagram points and weights must be finite")
        inside = pair.contains_rows(pts)
        if not np.all(inside):
            bad = pts[~inside][0].tolist()
            raise OutsideDomainError(f"diagram point {bad} is outside X")

        keep = (w != 0.0) & ~pair.in_A_rows(pts)
        pts = pts[keep].copy()
        w = w[keep].copy()
        pts.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "pair", pair)
        object.__setattr__(self, "_points", pts)
        object.__setattr__(self, "_weights", w)

    def __setattr__(self, name, value):
        raise AttributeError("SignedDiagram is immutable")

    def __reduce__(self):
        return (SignedDiagram, (self.pair, self._points, self._weights))

    # -- constructors -------------------------------------------------------

    @classmethod
    def empty(cls, pair: PolyhedralPair) -> "SignedDiagram":
        return cls(pair)

    @classmethod
    def dirac(cls, pair: PolyhedralPair, point: Sequence[float], weight: float = 1.0) -> "SignedDiagram":
        return cls(pair, [list(point)], [weight])

    # -- access ---------------------------------------------------------------

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def dimension(self) -> int:
        return self.pair.dimension

    def __len__(self) -> int:
        return len(self._weights)

    def __iter__(self) -> Iterator[Tuple[np.ndarray, float]]:
        for p, w in zip(self._points, self._weights):
            yield p, float(w)

    def is_empty(self) -> bool:
        return len(self) == 0

    def is_integral(self) -> bool:
        return bool(np.all(np.abs(self._weights - np.round(self._weights)) <= INTEGER_TOL))

    def distances_to_A(self) -> np.ndarray:
        return self.pair.distances_to_A(self._points)

    def mass(self) -> float:
        """Sum of |w| d(x, A)."""
        if not len(self):
            return 0.0
        return float(np.sum(np.abs(self._weights) * self.distances_to_A()))

    def total_weight(self) -> float:
        return float(np.sum(np.abs(self._weights)))

    # -- algebra --------------------------------------------------------------

    def _check_pair(self, other: "SignedDiagram") -> None:
        if self.pair != other.pair:
            raise PairMismatchError(
                f"diagrams live on different pairs: {self.pair.describe()} vs {other.pair.describe()}"
            )

    def __add__(self, other: "SignedDiagram") -> "SignedDiagram":
        self._check_pair(other)
        return SignedDiagram(
            self.pair,
            np.vstack([self._points, other._points]),
            np.concatenate([self._weights, other._weights]),
        )

    def __neg__(self) -> "SignedDiagram":
        return SignedDiagram(self.pair, self._points, -self._weights)

    def __sub__(self, other: "SignedDiagram") -> "SignedDiagram":
        return self + (-other)

    def __mul__(self, scalar: float) -> "SignedDiagram":
        return SignedDiagram(self.pair, self._points, float(scalar) * self._weights)

    __rmul__ = __mul__

    def positive_part(self) -> "SignedDiagram":
        mask = self._weights > 0
        return SignedDiagram(self.pair, self._points[mask], self._weights[mask])

    def negative_part(self) -> "SignedDiagram":
        """The negative points with their weights made positive."""
        mask = self._weights < 0
        return SignedDiagram(self.pair, self._points[mask], -self._weights[mask])

    def expanded(self) -> np.ndarray:
        """Points repeated |w| times; requires integer weights."""
        if not self.is_integral():
            raise WassersteinError("expansion needs integer weights")
        reps = np.abs(np.round(self._weights)).astype(int)
        if not len(reps):
            return np.zeros((0, self.dimension))
        return np.repeat(self._points, reps, axis=0)

    def to_rows(self) -> list:
        return [[float(w)] + [float(c) for c in p] for p, w in self]

    def __repr__(self) -> str:
        return f"SignedDiagram(d={self.dimension}, points={len(self)}, mass={self.mass():.6g})"


WeightedDiagram = SignedDiagram


def evaluate(diagram: SignedDiagram, functional: Callable[[np.ndarray], float]) -> float:
    """alpha(f) = sum of w f(x) over the diagram's points."""
    return float(sum(w * functional(p) for p, w in diagram))
