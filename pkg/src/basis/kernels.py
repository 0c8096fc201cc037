"""
Kernel functionals K_v^n and the stacked functionals built from them.

K_v^n is the hat function of T^n at v: its barycentric weight times the
peak L_n * z^-n / sqrt(2). All evaluation goes through `star_weights`, so
at most d + 1 vertices per layer are touched at any point.
"""

import itertools
import math
from typing import Dict, List, Sequence, Set

import numpy as np

from ..errors import LayerError
from ..geometry.pair import SQRT2
from ..triangulation import LatticeVertex, check_basis_vertex, star_weights
from .config import BasisConfig, BasisKind


def kernel_peak(config: BasisConfig, n: int) -> float:
    """K_v^n(v) = L_n * z^-n / sqrt(2)."""
    if n < 0:
        raise LayerError(f"layer must be nonnegative, got {n}")
    return config.schedule.value(n) / (float(config.triangulation.scale(n)) * SQRT2)


def unit_peak(config: BasisConfig, n: int) -> float:
    """Peak of K^n under L_n = z^-n, i.e. z^-2n / sqrt(2)."""
    return 1.0 / (float(config.triangulation.scale(2 * n)) * SQRT2)


def eval_kernel(config: BasisConfig, vertex: LatticeVertex, n: int, point: Sequence[float]) -> float:
    check_basis_vertex(config.triangulation, vertex)
    if n < vertex.layer:
        raise LayerError(f"K^{n} is not defined for a layer-{vertex.layer} vertex")
    for w, lam in star_weights(config.triangulation, n, point):
        if w == vertex:
            return lam * kernel_peak(config, n)
    return 0.0


# ----------------------------------------------------------------------
# Stacked functionals
# ----------------------------------------------------------------------

def stacked_scale(config: BasisConfig, vertex: LatticeVertex) -> float:
    """sqrt(2) d(v, A) (z^2 - 1) / z^2."""
    z2 = float(config.z) ** 2
    return SQRT2 * vertex.distance_to_A(config.pair, config.z) * (z2 - 1.0) / z2


def stacked_peak(config: BasisConfig, vertex: LatticeVertex) -> float:
    """Truncated peak d(v,A) z^-2N (1 - z^-2(N_max - N + 1)) for N = layer(v)."""
    n = vertex.layer
    if n > config.max_layer:
        return 0.0
    z2 = float(config.z) ** 2
    d_a = vertex.distance_to_A(config.pair, config.z)
    return d_a * z2 ** (-n) * (1.0 - z2 ** (-(config.max_layer - n + 1)))


def stacked_lipschitz(config: BasisConfig, vertex: LatticeVertex) -> float:
    """Lipschitz constant of the truncated stacked functional: scale * sum z^-n over its layers."""
    return stacked_scale(config, vertex) * sum(
        1.0 / float(config.triangulation.scale(n)) for n in range(vertex.layer, config.max_layer + 1)
    )


def eval_stacked(config: BasisConfig, vertex: LatticeVertex, point: Sequence[float]) -> float:
    check_basis_vertex(config.triangulation, vertex)
    total = 0.0
    for n in range(vertex.layer, config.max_layer + 1):
        for w, lam in star_weights(config.triangulation, n, point):
            if w == vertex:
                total += lam * unit_peak(config, n)
                break
    return stacked_scale(config, vertex) * total if total else 0.0


def partition_tail(config: BasisConfig, point: Sequence[float]) -> float:
    """d(x, A) z^-2(N_max + 1): the defect of the truncated sum of stacked functionals at x."""
    z2 = float(config.z) ** 2
    return config.pair.distance_to_A(point) * z2 ** (-(config.max_layer + 1))


# ----------------------------------------------------------------------
# Locality / budget
# ----------------------------------------------------------------------

def support_counts(config: BasisConfig, point: Sequence[float]) -> List[int]:
    """Per layer n <= N_max, the number of layer-n functionals nonzero at the point."""
    counts = []
    for n in range(config.max_layer + 1):
        counts.append(sum(1 for w, lam in star_weights(config.triangulation, n, point) if w.layer == n and lam > 0))
    return counts


def lipschitz_budget(config: BasisConfig, point: Sequence[float]) -> float:
    """Sum of the Lipschitz constants of every truncated basis functional nonzero at the point."""
    if config.kind is BasisKind.STACKED:
        seen: Set[LatticeVertex] = set()
        for n in range(config.max_layer + 1):
            for w, lam in star_weights(config.triangulation, n, point):
                if lam > 0:
                    seen.add(w)
        return sum(stacked_lipschitz(config, w) for w in seen)
    counts = support_counts(config, point)
    return sum(config.schedule.value(n) * c for n, c in enumerate(counts))


def incident_simplex_peak_oracle(d: int) -> float:
    """Minimum distance from an interior vertex to the opposite facet over all incident unit CFK simplices.

    Enumerates every Freudenthal simplex with the origin as its k-th chain vertex.
    """
    best = math.inf
    origin = np.zeros(d)
    for perm in itertools.permutations(range(d)):
        for k in range(d + 1):
            base = np.zeros(d)
            for axis in perm[:k]:
                base[axis] -= 1.0
            chain = [base.copy()]
            cur = base.copy()
            for axis in perm:
                cur[axis] += 1.0
                chain.append(cur.copy())
            facet = np.array([v for i, v in enumerate(chain) if i != k])
            if d == 1:
                dist = float(np.linalg.norm(facet[0] - origin))
            else:
                diffs = facet[1:] - facet[0]
                _, _, vt = np.linalg.svd(diffs)
                normal = vt[-1]
                dist = abs(float(np.dot(normal, origin - facet[0]))) / float(np.linalg.norm(normal))
            best = min(best, dist)
    return best


def kernel_table(config: BasisConfig) -> Dict[int, float]:
    """kernel_peak per layer, for summaries."""
    return {n: kernel_peak(config, n) for n in range(config.max_layer + 1)}
