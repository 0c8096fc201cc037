"""
Minimality witnesses: a weighted diagram that every plain basis functional
except K_v evaluates exactly like the Dirac mass at v.
"""

from typing import Dict

from loguru import logger

from ..diagrams import WeightedDiagram
from ..errors import BasisConfigError, LayerError
from ..triangulation import LatticeVertex, check_basis_vertex, star_weights
from .config import BasisConfig, BasisKind
from .kernels import eval_kernel, kernel_peak

log = logger.bind(module="witness")


def minimality_witness(config: BasisConfig, vertex: LatticeVertex) -> WeightedDiagram:
    """Descend from layer(v) - 1 to 0, correcting each layer's functionals with Dirac masses at its vertices.

    Adding c * delta_w for a layer-m vertex w only moves K_w: other layer-m
    kernels and all finer kernels vanish at w. Coarser kernels are fixed by
    the later stages.
    """
    if config.kind is not BasisKind.PLAIN:
        raise BasisConfigError("minimality witnesses are built for the plain basis")
    check_basis_vertex(config.triangulation, vertex)
    if vertex.layer > config.max_layer:
        raise LayerError(f"vertex {vertex} is finer than the truncation layer {config.max_layer}")
    tri = config.triangulation
    z = config.z
    target = vertex.point(z)
    beta: Dict[LatticeVertex, float] = {}

    for m in range(vertex.layer - 1, -1, -1):
        candidates = set()
        for q in [vertex, *beta.keys()]:
            for w, _ in star_weights(tri, m, q.point(z)):
                if w.layer == m:
                    candidates.add(w)
        peak = kernel_peak(config, m)
        residuals = {}
        for w in sorted(candidates):
            want = eval_kernel(config, w, m, target)
            have = sum(c * eval_kernel(config, w, m, p.point(z)) for p, c in beta.items())
            residuals[w] = want - have
        for w, r in residuals.items():
            if r != 0.0:
                beta[w] = beta.get(w, 0.0) + r / peak
        log.debug(f"witness for {vertex}: stage {m} touched {len(residuals)} vertices")

    ordered = sorted(beta.items())
    return WeightedDiagram(
        config.pair,
        [p.point(z) for p, _ in ordered] if ordered else None,
        [c for _, c in ordered] if ordered else None,
    )

