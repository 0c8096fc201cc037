"""
Schauder coefficients of Lipschitz functionals against the truncated basis.

Coefficients are built layer by layer: a_v = (f(v) - S(v)) / peak(v), where
S is the running partial sum of the layers already processed. Running sums
are evaluated from the stored coefficients through the local star structure.
"""

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..errors import BasisConfigError, FunctionalError
from ..geometry import sample_points
from ..triangulation import LatticeVertex, enumerate_box, star_weights
from .config import BasisConfig, BasisKind
from .kernels import kernel_peak, stacked_peak, stacked_scale, unit_peak

A_TOLERANCE = 1e-9
A_SAMPLES = 64

log = logger.bind(module="coefficients")

Box = Tuple[Sequence[float], Sequence[float]]


@dataclass(frozen=True)
class LipschitzFunctional:
    """A functional f: X -> R given by callback, with a declared Lipschitz constant and optional support box."""
    func: Callable[[np.ndarray], float]
    lipschitz: float
    support: Optional[Box] = None
    name: str = "f"

    def __call__(self, point: Sequence[float]) -> float:
        return float(self.func(np.asarray(point, dtype=float)))


def hat_functional(
    center: Sequence[float], radius: float, height: float = 1.0, name: str = "hat"
) -> LipschitzFunctional:
    """height * max(0, radius - |x - center|); callers keep the support off A."""
    c = np.asarray(center, dtype=float)

    def func(x: np.ndarray) -> float:
        return height * max(0.0, radius - float(np.linalg.norm(x - c)))

    return LipschitzFunctional(func, abs(height), (c - radius, c + radius), name)


def distance_functional(config: BasisConfig) -> LipschitzFunctional:
    """d(., A), which is 1-Lipschitz."""
    pair = config.pair
    return LipschitzFunctional(lambda x: pair.distance_to_A(x), 1.0, None, "distance_to_A")


def sum_functional(parts: Sequence[LipschitzFunctional], name: str = "sum") -> LipschitzFunctional:
    supports = [p.support for p in parts]
    support: Optional[Box] = None
    if all(s is not None for s in supports) and supports:
        lows = np.min([np.asarray(s[0], dtype=float) for s in supports], axis=0)
        highs = np.max([np.asarray(s[1], dtype=float) for s in supports], axis=0)
        support = (lows, highs)
    return LipschitzFunctional(
        lambda x: sum(p(x) for p in parts), sum(p.lipschitz for p in parts), support, name
    )


# ----------------------------------------------------------------------
# Running sums
# ----------------------------------------------------------------------

def _layer_contributions(
    config: BasisConfig,
    values: Dict[LatticeVertex, float],
    point: Sequence[float],
    layers: range,
) -> np.ndarray:
    """Contribution to the expansion at the point, bucketed by the layer of the basis vertex."""
    out = np.zeros(config.max_layer + 1)
    tri = config.triangulation
    stacked = config.kind is BasisKind.STACKED
    for n in layers:
        peak = unit_peak(config, n) if stacked else kernel_peak(config, n)
        for w, lam in star_weights(tri, n, point):
            a = values.get(w)
            if a is None:
                continue
            if stacked:
                out[w.layer] += a * stacked_scale(config, w) * lam * peak
            elif w.layer == n:
                out[n] += a * lam * peak
    return out


class CoefficientMap:
    """Finite coefficient expansion sum a_v K_v (plain) or sum a_v 𝔎_v (stacked)."""

    def __init__(self, config: BasisConfig, values: Dict[LatticeVertex, float], name: str = "f"):
        self.config = config
        self._values = dict(values)
        self.name = name

    def __len__(self) -> int:
        return len(self._values)

    def __iter__(self) -> Iterator[Tuple[LatticeVertex, float]]:
        return iter(self._values.items())

    def coefficient(self, vertex: LatticeVertex) -> float:
        return self._values.get(vertex, 0.0)

    @cached_property
    def entries(self) -> Dict[int, float]:
        """Basis index -> coefficient, in index order."""
        ordering = self.config.ordering
        return dict(sorted((ordering.basis_index(v), a) for v, a in self._values.items()))

    def partial_sums(self, point: Sequence[float]) -> np.ndarray:
        """Value of the partial sum over basis vertices of layer <= N, for N = 0..max_layer."""
        contrib = _layer_contributions(self.config, self._values, point, range(self.config.max_layer + 1))
        return np.cumsum(contrib)

    def evaluate(self, point: Sequence[float], up_to_layer: Optional[int] = None) -> float:
        sums = self.partial_sums(point)
        n = self.config.max_layer if up_to_layer is None else min(up_to_layer, self.config.max_layer)
        return float(sums[n])

    def max_abs(self) -> float:
        return max((abs(a) for a in self._values.values()), default=0.0)

    def to_dict(self) -> Dict[str, object]:
        return {
            "config": self.config.to_dict(),
            "functional": self.name,
            "entries": {str(i): a for i, a in self.entries.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


# ----------------------------------------------------------------------
# Coefficient computation
# ----------------------------------------------------------------------

def _check_vanishes_on_A(config: BasisConfig, f: LipschitzFunctional) -> None:
    pair = config.pair
    rng = np.random.default_rng(0)
    if f.support is not None:
        low = float(np.min(f.support[0]))
        high = float(np.max(f.support[1]))
    else:
        low, high = -float(config.rafter_radius), float(config.rafter_radius)
    for x in sample_points(pair, rng, low, high, A_SAMPLES):
        y = pair.project_to_A(x)
        if not pair.contains(y):
            continue
        value = f(y)
        if abs(value) > A_TOLERANCE:
            raise FunctionalError(f"{f.name} is {value:.3g} at A point {y.tolist()}; functionals must vanish on A")


def _support_dilation(config: BasisConfig, m: int) -> float:
    """How far layer-m coefficients can reach beyond supp f.

    Plain: one mesh diameter of T^(m-1), since the partial sum interpolates f.
    Stacked: the sum of mesh diameters below m.
    """
    if m == 0:
        return 0.0
    z = float(config.z)
    if config.kind is BasisKind.PLAIN:
        return math.sqrt(config.dimension) * z ** (-(m - 1))
    return math.sqrt(config.dimension) * sum(z ** (-n) for n in range(m))


def _candidates(config: BasisConfig, f: LipschitzFunctional, m: int) -> List[LatticeVertex]:
    r = float(config.rafter_radius)
    d = config.dimension
    if f.support is None:
        low, high = [-r] * d, [r] * d
    else:
        dil = _support_dilation(config, m)
        low = [max(-r, float(a) - dil) for a in f.support[0]]
        high = [min(r, float(b) + dil) for b in f.support[1]]
    return enumerate_box(config.triangulation, m, low, high)


def _expand(config: BasisConfig, f: LipschitzFunctional) -> CoefficientMap:
    _check_vanishes_on_A(config, f)
    stacked = config.kind is BasisKind.STACKED
    z = config.z
    values: Dict[LatticeVertex, float] = {}
    for m in range(config.max_layer + 1):
        layer_values: Dict[LatticeVertex, float] = {}
        for v in _candidates(config, f, m):
            x = v.point(z)
            running = float(_layer_contributions(config, values, x, range(m)).sum()) if m else 0.0
            peak = stacked_peak(config, v) if stacked else kernel_peak(config, m)
            a = (f(x) - running) / peak
            if a != 0.0:
                layer_values[v] = a
        values.update(layer_values)
        log.debug(f"{f.name}: layer {m} has {len(layer_values)} nonzero coefficients")
    return CoefficientMap(config, values, f.name)


def schauder_coefficients(config: BasisConfig, f: LipschitzFunctional) -> CoefficientMap:
    """Expansion of f in the plain basis; the layer-N partial sum is the T^N interpolant of f."""
    if config.kind is not BasisKind.PLAIN:
        raise BasisConfigError("schauder_coefficients needs a plain basis")
    return _expand(config, f)


def stacked_coefficients(config: BasisConfig, f: LipschitzFunctional) -> CoefficientMap:
    """Expansion of f in the stacked basis; partial sums match f on every truncated vertex up to layer N."""
    if config.kind is not BasisKind.STACKED:
        raise BasisConfigError("stacked_coefficients needs a stacked basis")
    return _expand(config, f)


def stacked_error_bound(config: BasisConfig, f: LipschitzFunctional, n: int, sup_f: float) -> float:
    """(sum_{k<=N} z^k / z^2N) Lip(f) + z^-(2N+2) sup|f|."""
    z = float(config.z)
    return sum(z ** k for k in range(n + 1)) / z ** (2 * n) * f.lipschitz + sup_f / z ** (2 * n + 2)


def reconstruction_bound(config: BasisConfig, f: LipschitzFunctional, n: int) -> float:
    """Lip(f) M_N with M_N = sqrt(d) z^-N."""
    return f.lipschitz * math.sqrt(config.dimension) / float(config.z) ** n

