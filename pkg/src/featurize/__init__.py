"""
Vectorization of signed diagrams against a truncated basis.
"""

from .batch import batch_vectorize
from .vector import FeatureVector
from .vectorize import TightnessPair, embed_lp, tail_bound, tightness_pair, vectorize

__all__ = [
    "FeatureVector",
    "TightnessPair",
    "batch_vectorize",
    "embed_lp",
    "tail_bound",
    "tightness_pair",
    "vectorize",
]
