"""
Signed persistence diagrams, barcode encodings and the 1-Wasserstein distance.
"""

from .diagram import SignedDiagram, WeightedDiagram, evaluate
from .io import (
    FORMATS,
    RectangleBar,
    RectangleDocument,
    diagram_to_string,
    from_mixup,
    from_rectangles,
    parse_diagram,
    parse_mixup,
    parse_rectangles,
    read_diagram,
    write_diagram,
)
from .wasserstein import Matching, diagram_norm, optimal_matching, wasserstein1, wasserstein1_bruteforce

__all__ = [
    "FORMATS",
    "Matching",
    "RectangleBar",
    "RectangleDocument",
    "SignedDiagram",
    "WeightedDiagram",
    "diagram_norm",
    "diagram_to_string",
    "evaluate",
    "from_mixup",
    "from_rectangles",
    "optimal_matching",
    "parse_diagram",
    "parse_mixup",
    "parse_rectangles",
    "read_diagram",
    "wasserstein1",
    "wasserstein1_bruteforce",
    "write_diagram",
]
