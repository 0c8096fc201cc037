"""
Polyhedral pairs (X, A) and distance-to-A queries.
"""

from .pair import (
    PairSpec,
    PolyhedralPair,
    contains,
    distance_to_A,
    load_pair,
    mixup_pair,
    pair_from_dict,
    persistence_plane,
    sample_points,
    signed_barcode_pair,
    validate_pair,
)

__all__ = [
    "PairSpec",
    "PolyhedralPair",
    "contains",
    "distance_to_A",
    "load_pair",
    "mixup_pair",
    "pair_from_dict",
    "persistence_plane",
    "sample_points",
    "signed_barcode_pair",
    "validate_pair",
]
