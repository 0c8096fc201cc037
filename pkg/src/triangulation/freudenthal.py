"""
Freudenthal (CFK) point location in the triangulation T^n of scale z^-n.

A d-simplex of T^n is given by a base lattice point v0 and a permutation pi;
its vertices are v_k = v0 + e_pi(1) + ... + e_pi(k). A point's minimal face
keeps v0 and the chain vertices whose barycentric weight is positive.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple, Union

import numpy as np

from ..errors import OutsideDomainError, OutsideSimplexError
from .lattice import LatticeVertex, TriangulationConfig

SNAP_TOL = 1e-12
BARY_TOL = 1e-12
RATIONAL_DENOMINATOR_LIMIT = 10 ** 9


class VertexStatus(Enum):
    IN_A = "InA"
    NOT_A_VERTEX = "NotAVertex"


@dataclass(frozen=True)
class SimplexRef:
    """Minimal face of T^n containing a point.

    `permutation` is the full 0-based Freudenthal chain; `steps` lists the
    chain positions k (1..d) whose vertex v_k belongs to the face.
    """
    scale_index: int
    base: Tuple[int, ...]
    permutation: Tuple[int, ...]
    steps: Tuple[int, ...]

    @property
    def active_dims(self) -> int:
        return len(self.steps)

    def chain(self) -> List[Tuple[int, ...]]:
        """All d+1 vertices v_0..v_d of the full simplex, as layer-n integer coordinates."""
        cur = list(self.base)
        out = [tuple(cur)]
        for axis in self.permutation:
            cur[axis] += 1
            out.append(tuple(cur))
        return out

    def vertices(self) -> List[Tuple[int, ...]]:
        """Layer-n integer coordinates of the face vertices, v0 first."""
        chain = self.chain()
        return [chain[0]] + [chain[k] for k in self.steps]

    def lattice_vertices(self, z: int) -> List[LatticeVertex]:
        return [LatticeVertex.canonical(self.scale_index, v, z) for v in self.vertices()]

    def points(self, z: int) -> np.ndarray:
        return np.asarray(self.vertices(), dtype=float) / float(int(z) ** self.scale_index)


def _scaled(config: TriangulationConfig, n: int, point: Sequence[float]) -> np.ndarray:
    pair = config.pair
    x = pair._as_point(point)
    if not pair.contains(x):
        raise OutsideDomainError(f"point {x.tolist()} is outside X")
    return x * float(config.scale(n))


def _chain_weights(fs: Sequence[float]) -> List[float]:
    """Weights (1 - f1, f1 - f2, ..., fd) for fractional parts sorted along the chain."""
    d = len(fs)
    lam = [1.0 - fs[0]] if d else [1.0]
    for k in range(1, d):
        lam.append(fs[k - 1] - fs[k])
    if d:
        lam.append(fs[d - 1])
    return lam


def _locate(config: TriangulationConfig, n: int, point: Sequence[float]):
    y = _scaled(config, n, point)
    tol = SNAP_TOL * max(1.0, float(np.max(np.abs(y))) if y.size else 1.0)
    base = np.floor(y)
    f = y - base
    up = f > 1.0 - tol
    base[up] += 1.0
    f[up] = 0.0
    f[f < tol] = 0.0
    d = len(f)
    order = sorted(range(d), key=lambda i: (-f[i], i))
    fs = [float(f[i]) for i in order]
    lam = _chain_weights(fs)
    steps = tuple(k for k in range(1, d + 1) if lam[k] > tol)
    ref = SimplexRef(int(n), tuple(int(b) for b in base), tuple(order), steps)
    weights = [lam[0]] + [lam[k] for k in steps]
    return ref, weights


def locate_simplex(config: TriangulationConfig, n: int, point: Sequence[float]) -> SimplexRef:
    """Minimal-dimension simplex of T^n containing the point.

    Fractional-part ties go to the lower coordinate index; points within
    1e-12 (scaled units) of a lattice hyperplane are snapped onto it.
    """
    ref, _ = _locate(config, n, point)
    return ref


def barycentric(config: TriangulationConfig, ref: SimplexRef, point: Sequence[float]) -> List[float]:
    """Barycentric weights of the point on the face vertices, ordered as `ref.vertices()`."""
    y = _scaled(config, ref.scale_index, point) - np.asarray(ref.base, dtype=float)
    fs = [float(y[i]) for i in ref.permutation]
    lam = _chain_weights(fs)
    tol = BARY_TOL * max(1.0, float(np.max(np.abs(y))) if y.size else 1.0)
    if any(w < -tol for w in lam):
        raise OutsideSimplexError(f"point {list(point)} is not in simplex with base {ref.base}")
    kept = {0, *ref.steps}
    dropped = [w for k, w in enumerate(lam) if k not in kept]
    if any(abs(w) > tol for w in dropped):
        raise OutsideSimplexError(f"point {list(point)} is not on the {ref.active_dims}-face with base {ref.base}")
    return [lam[0]] + [lam[k] for k in ref.steps]


def star_weights(config: TriangulationConfig, n: int, point: Sequence[float]) -> List[Tuple[LatticeVertex, float]]:
    """(vertex, weight) over the minimal T^n face at the point, for face vertices off A."""
    ref, weights = _locate(config, n, point)
    pair = config.pair
    out = []
    for coords, w in zip(ref.vertices(), weights):
        if w <= 0.0 or pair.lattice_in_A(coords):
            continue
        out.append((LatticeVertex.canonical(n, coords, config.z), w))
    return out


def _coordinate_layer(value: float, z: int, cap: int) -> Union[int, None]:
    q = Fraction(value)
    for candidate in (q, q.limit_denominator(RATIONAL_DENOMINATOR_LIMIT)):
        if abs(float(candidate) - value) > 1e-9 * max(1.0, abs(value)):
            continue
        den = candidate.denominator
        scale = 1
        for n in range(cap + 1):
            if scale % den == 0:
                return n
            scale *= z
    return None


def vertex_layer(config: TriangulationConfig, point: Sequence[float]) -> Union[int, VertexStatus]:
    """Minimal n with point in z^-n Z^d, or IN_A / NOT_A_VERTEX."""
    pair = config.pair
    x = pair._as_point(point)
    if pair.in_A(x):
        return VertexStatus.IN_A
    layer = 0
    for value in x:
        n = _coordinate_layer(float(value), int(config.z), int(config.layer_cap))
        if n is None:
            return VertexStatus.NOT_A_VERTEX
        layer = max(layer, n)
    return layer


def _lattice_coords(
    config: TriangulationConfig, lows: Sequence[int], highs: Sequence[int]
) -> Iterator[Tuple[int, ...]]:
    """Integer points of X in the box prod [lows_i, highs_i], in lexicographic order."""
    d = config.dimension
    preds: List[List[int]] = [[] for _ in range(d)]
    for i, j in config.pair.relation_indices:
        preds[j].append(i)
    k = [0] * d

    def walk(t: int) -> Iterator[Tuple[int, ...]]:
        if t == d:
            yield tuple(k)
            return
        lo = max([lows[t]] + [k[i] for i in preds[t]])
        for v in range(lo, highs[t] + 1):
            k[t] = v
            yield from walk(t + 1)

    yield from walk(0)


def _layer_vertices(config: TriangulationConfig, n: int, lows, highs) -> List[LatticeVertex]:
    pair = config.pair
    z = config.z
    out = []
    for coords in _lattice_coords(config, lows, highs):
        if pair.lattice_in_A(coords):
            continue
        if n > 0 and all(c % z == 0 for c in coords):
            continue
        out.append(LatticeVertex(int(n), coords))
    return out


def enumerate_vertices(config: TriangulationConfig, n: int, window: int) -> List[LatticeVertex]:
    """Canonical layer-n vertices of X \\ A with |x|_inf <= window, lexicographically ordered."""
    if n < 0 or window < 0:
        return []
    bound = int(window) * config.scale(n)
    d = config.dimension
    return _layer_vertices(config, n, [-bound] * d, [bound] * d)


def enumerate_box(
    config: TriangulationConfig, n: int, low: Sequence[float], high: Sequence[float]
) -> List[LatticeVertex]:
    """Canonical layer-n vertices of X \\ A inside the closed box [low, high]."""
    s = float(config.scale(n))
    lows = [int(math.ceil(a * s - 1e-9)) for a in low]
    highs = [int(math.floor(b * s + 1e-9)) for b in high]
    return _layer_vertices(config, n, lows, highs)


def mesh_diameter(config: TriangulationConfig, n: int) -> float:
    """Diameter sqrt(d) * z^-n of the scaled standard simplex."""
    return math.sqrt(config.dimension) / float(config.scale(n))
