"""
Polyhedral pairs (X, A) cut out by coordinate-order relations.

X = {x | x_i <= x_j for (i, j) in relations} and A is the union of the
hyperplanes x_i = x_j over the essential relations. Relation indices are
1-based, as in the pair JSON documents.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ValidationError

from ..errors import DimensionMismatchError, OutsideDomainError, PairValidationError

Relation = Tuple[int, int]

SQRT2 = math.sqrt(2.0)

log = logger.bind(module="geometry")


class PairSpec(BaseModel):
    """Pair JSON document: {"dimension": d, "relations": [[i,j],...], "essential": [[i,j],...]}."""
    dimension: int
    relations: List[Tuple[int, int]]
    essential: List[Tuple[int, int]]


@dataclass(frozen=True)
class PolyhedralPair:
    """A validated polyhedral pair (X, A) in R^d."""
    dimension: int
    relations: FrozenSet[Relation]
    essential: FrozenSet[Relation]
    _lo: np.ndarray = field(init=False, repr=False, compare=False)
    _hi: np.ndarray = field(init=False, repr=False, compare=False)
    _elo: np.ndarray = field(init=False, repr=False, compare=False)
    _ehi: np.ndarray = field(init=False, repr=False, compare=False)
    _rel0: Tuple[Tuple[int, int], ...] = field(init=False, repr=False, compare=False)
    _ess0: Tuple[Tuple[int, int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        d = self.dimension
        if not isinstance(d, (int, np.integer)) or d < 1:
            raise PairValidationError(f"dimension must be a positive integer, got {d!r}")
        for i, j in self.relations:
            if not (1 <= i < j <= d):
                raise PairValidationError(f"relation ({i}, {j}) must satisfy 1 <= i < j <= {d}")
        if not self.essential:
            raise PairValidationError("essential relations must be nonempty (A must be nonempty)")
        extra = set(self.essential) - set(self.relations)
        if extra:
            raise PairValidationError(f"essential relations {sorted(extra)} are not among the relations")

        rel = sorted(self.relations)
        ess = sorted(self.essential)
        object.__setattr__(self, "_lo", np.array([i - 1 for i, _ in rel], dtype=int))
        object.__setattr__(self, "_hi", np.array([j - 1 for _, j in rel], dtype=int))
        object.__setattr__(self, "_elo", np.array([i - 1 for i, _ in ess], dtype=int))
        object.__setattr__(self, "_ehi", np.array([j - 1 for _, j in ess], dtype=int))
        object.__setattr__(self, "_rel0", tuple((i - 1, j - 1) for i, j in rel))
        object.__setattr__(self, "_ess0", tuple((i - 1, j - 1) for i, j in ess))

    @property
    def relation_indices(self) -> Tuple[Tuple[int, int], ...]:
        """0-based (i, j) pairs of all relations, sorted."""
        return self._rel0

    @property
    def essential_indices(self) -> Tuple[Tuple[int, int], ...]:
        """0-based (i, j) pairs of the essential relations, sorted."""
        return self._ess0

    def lattice_in_X(self, coords: Sequence[int]) -> bool:
        return all(coords[i] <= coords[j] for i, j in self._rel0)

    def lattice_in_A(self, coords: Sequence[int]) -> bool:
        return any(coords[i] == coords[j] for i, j in self._ess0)

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def _as_point(self, point: Sequence[float]) -> np.ndarray:
        x = np.asarray(point, dtype=float)
        if x.shape != (self.dimension,):
            raise DimensionMismatchError(f"expected a point with {self.dimension} coordinates, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise OutsideDomainError(f"point {x.tolist()} has non-finite coordinates")
        return x

    def contains(self, point: Sequence[float]) -> bool:
        x = self._as_point(point)
        return bool(np.all(x[self._lo] <= x[self._hi]))

    def in_A(self, point: Sequence[float]) -> bool:
        x = self._as_point(point)
        return self.contains(x) and bool(np.any(x[self._elo] == x[self._ehi]))

    def distance_to_A(self, point: Sequence[float]) -> float:
        x = self._as_point(point)
        if not bool(np.all(x[self._lo] <= x[self._hi])):
            raise OutsideDomainError(f"point {x.tolist()} is outside X")
        return float(np.min(x[self._ehi] - x[self._elo]) / SQRT2)

    def distances_to_A(self, points: np.ndarray) -> np.ndarray:
        """Row-wise distance to A for an (m, d) array of points of X."""
        pts = np.asarray(points, dtype=float).reshape(-1, self.dimension)
        if pts.shape[0] == 0:
            return np.zeros(0)
        return np.min(pts[:, self._ehi] - pts[:, self._elo], axis=1) / SQRT2

    def contains_rows(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points).reshape(-1, self.dimension)
        if len(self._lo) == 0:
            return np.ones(pts.shape[0], dtype=bool)
        return np.all(pts[:, self._lo] <= pts[:, self._hi], axis=1)

    def in_A_rows(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points).reshape(-1, self.dimension)
        return np.any(pts[:, self._elo] == pts[:, self._ehi], axis=1)

    def project_to_A(self, point: Sequence[float]) -> np.ndarray:
        """Nearest point of the closest essential hyperplane (both coordinates set to their mean)."""
        x = self._as_point(point)
        gaps = x[self._ehi] - x[self._elo]
        k = int(np.argmin(gaps))
        i, j = self._elo[k], self._ehi[k]
        y = x.copy()
        y[i] = y[j] = 0.5 * (x[i] + x[j])
        return y

    # ------------------------------------------------------------------
    # Serialization
    # ------------------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dimension": int(self.dimension),
            "relations": [list(r) for r in sorted(self.relations)],
            "essential": [list(r) for r in sorted(self.essential)],
        }

    def describe(self) -> str:
        rel = ",".join(f"x{i}<=x{j}" for i, j in sorted(self.relations))
        ess = ",".join(f"x{i}=x{j}" for i, j in sorted(self.essential))
        return f"R^{self.dimension}[{rel}] / A[{ess}]"


def validate_pair(dimension: int, relations: Iterable[Relation], essential: Iterable[Relation]) -> PolyhedralPair:
    """Build a PolyhedralPair, rejecting malformed relation sets."""
    try:
        rel = frozenset((int(i), int(j)) for i, j in relations)
        ess = frozenset((int(i), int(j)) for i, j in essential)
    except (TypeError, ValueError) as exc:
        raise PairValidationError(f"relations must be integer pairs: {exc}") from exc
    pair = PolyhedralPair(int(dimension), rel, ess)

    for i, j in ess:
        risky = [(a, b) for a, b in rel if (a == i and b != j) or (b == j and a != i)]
        if risky:
            log.warning(
                f"essential relation ({i},{j}) shares an index with {sorted(risky)}; "
                "closed-form A-distance may underestimate for some points"
            )
    return pair


def contains(pair: PolyhedralPair, point: Sequence[float]) -> bool:
    return pair.contains(point)


def distance_to_A(pair: PolyhedralPair, point: Sequence[float]) -> float:
    return pair.distance_to_A(point)


# ----------------------------------------------------------------------
# Standard pairs
# ----------------------------------------------------------------------

def persistence_plane() -> PolyhedralPair:
    """(R^2_<=, Delta): 1-parameter persistence diagrams."""
    return validate_pair(2, [(1, 2)], [(1, 2)])


def mixup_pair() -> PolyhedralPair:
    """(R^3_{<=,<=}, Delta^M): mixup triples (b, d', d); ephemerals on d' = d."""
    return validate_pair(3, [(1, 2), (2, 3)], [(2, 3)])


def signed_barcode_pair(d: int) -> PolyhedralPair:
    """(R^{2d}_<=, Delta^d): rectangles (a, b) with a <= b coordinatewise; flat when some a_i = b_i."""
    if d < 1:
        raise PairValidationError(f"parameter count must be positive, got {d}")
    rel = [(i, i + d) for i in range(1, d + 1)]
    return validate_pair(2 * d, rel, rel)


# ----------------------------------------------------------------------
# JSON + sampling
# ----------------------------------------------------------------------

def pair_from_dict(data: Dict[str, Any]) -> PolyhedralPair:
    try:
        spec = PairSpec.model_validate(data)
    except ValidationError as exc:
        raise PairValidationError(f"invalid pair document: {exc.errors()[0]['msg']}") from exc
    return validate_pair(spec.dimension, spec.relations, spec.essential)


def load_pair(path) -> PolyhedralPair:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise PairValidationError(f"pair file {path} is not valid JSON: {exc}") from exc
    return pair_from_dict(data)


def sample_points(
    pair: PolyhedralPair,
    rng: np.random.Generator,
    low: float,
    high: float,
    count: int,
    min_distance_to_A: float = 0.0,
) -> np.ndarray:
    """Rejection-sample `count` points of X inside the box [low, high]^d."""
    out: List[np.ndarray] = []
    need = count
    while need > 0:
        batch = rng.uniform(low, high, size=(max(4 * need, 16), pair.dimension))
        keep = pair.contains_rows(batch)
        if min_distance_to_A > 0:
            keep &= pair.distances_to_A(np.where(keep[:, None], batch, 0.0)) >= min_distance_to_A
        got = batch[keep][:need]
        out.append(got)
        need -= len(got)
    if not out:
        return np.zeros((0, pair.dimension))
    return np.vstack(out)
