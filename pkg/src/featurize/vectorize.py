"""
The vectorization F_B(alpha) = (alpha(f))_{f in B} and its truncation bounds.

Each diagram point is located once per layer; its weight is spread over the
at most d + 1 vertices of the containing face. Summation order is fixed
(point, then layer, then face vertex) so every path gives identical floats.
"""

import math
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np
from loguru import logger

from ..basis import BasisConfig, BasisKind, kernel_peak, stacked_scale, unit_peak
from ..diagrams import SignedDiagram, diagram_norm
from ..errors import BasisConfigError, PairMismatchError
from ..triangulation import LatticeVertex, locate_simplex, star_weights
from .vector import FeatureVector

log = logger.bind(module="featurize")


def vectorize(config: BasisConfig, diagram: SignedDiagram) -> FeatureVector:
    """Entry at v is sum of w K_v(x) (plain) or sum of w 𝔎_v(x) (stacked) over the points (x, w)."""
    if diagram.pair != config.pair:
        raise PairMismatchError(
            f"diagram on {diagram.pair.describe()} does not match basis pair {config.pair.describe()}"
        )
    tri = config.triangulation
    ordering = config.ordering
    stacked = config.kind is BasisKind.STACKED
    peaks = [unit_peak(config, n) if stacked else kernel_peak(config, n) for n in range(config.max_layer + 1)]
    scales: Dict[LatticeVertex, float] = {}
    values: Dict[LatticeVertex, float] = {}
    exits = 0
    exit_mass = 0.0

    for x, weight in diagram:
        left_window = False
        for n in range(config.max_layer + 1):
            for v, lam in star_weights(tri, n, x):
                if stacked:
                    scale = scales.get(v)
                    if scale is None:
                        scale = scales[v] = stacked_scale(config, v)
                    contrib = weight * scale * lam * peaks[n]
                elif v.layer == n:
                    contrib = weight * lam * peaks[n]
                else:
                    continue
                if not ordering.contains(v):
                    left_window = True
                    continue
                values[v] = values.get(v, 0.0) + contrib
        if left_window:
            exits += 1
            exit_mass += abs(weight) * config.pair.distance_to_A(x)

    if exits:
        log.warning(f"{exits} diagram points reach past the rafter window (mass {exit_mass:.4g})")
    return FeatureVector(config, values, exits, exit_mass)


def tail_bound(config: BasisConfig, diagram: SignedDiagram, generic: bool = False) -> float:
    """Bound on the l1 mass lost by truncating at max_layer (window effects are reported separately).

    Plain: sqrt(2d) * tail_L(N_max) * W1(alpha, 0), or (d + 1) * ... when `generic`.
    Stacked: sum |w| d_A(x) z^-2(N_max + 1), the exact truncation defect.
    """
    if diagram.is_empty():
        return 0.0
    if config.kind is BasisKind.STACKED:
        return diagram.mass() * float(config.z) ** (-2 * (config.max_layer + 1))
    tail = config.schedule.tail(config.max_layer)
    if tail == 0.0:
        return 0.0
    factor = (config.dimension + 1) if generic else math.sqrt(2 * config.dimension)
    return factor * tail * diagram_norm(config.pair, diagram)


def embed_lp(vector: FeatureVector, p: float) -> FeatureVector:
    """Same entries, measured in l_p (l1 sits inside every l_p, p >= 1)."""
    return vector.with_norm(p)


@dataclass(frozen=True)
class TightnessPair:
    """Two points inside one layer-0 simplex, displaced along N_odd."""
    x: np.ndarray
    y: np.ndarray
    distance: float
    predicted_ratio: float


def tightness_pair(config: BasisConfig, t: Optional[float] = None) -> TightnessPair:
    """Points x, y with |F(x) - F(y)| restricted to layer 0 equal to sqrt(2d) L_0 |x - y|.

    x is the barycenter of the simplex with base (0, 2, 4, ...) and identity
    permutation; y = x + t * sum over odd p < d of (e_p - e_{p+1}). Needs even d.
    """
    d = config.dimension
    if d % 2:
        raise BasisConfigError(f"the N_odd construction needs an even dimension, got {d}")
    limit = 1.0 / (2 * (d + 1))
    t = limit / 2 if t is None else float(t)
    if not 0 < t < limit:
        raise BasisConfigError(f"displacement must lie in (0, {limit:.6g}), got {t}")
    base = np.arange(d, dtype=float) * 2.0
    frac = np.array([(d + 1 - p) / (d + 1) for p in range(1, d + 1)])
    x = base + frac
    direction = np.zeros(d)
    for p in range(0, d - 1, 2):
        direction[p] += 1.0
        direction[p + 1] -= 1.0
    y = x + t * direction

    ref = locate_simplex(config.triangulation, 0, x)
    for coords in ref.vertices():
        v = LatticeVertex(0, tuple(coords))
        if config.pair.lattice_in_A(coords) or not config.ordering.contains(v):
            raise BasisConfigError(f"tightness simplex vertex {coords} is in A or outside the window")
    return TightnessPair(x, y, float(np.linalg.norm(x - y)), math.sqrt(2 * d) * config.schedule.value(0))
