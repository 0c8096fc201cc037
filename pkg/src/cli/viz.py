"""
Plot data for per-point feature decompositions.

Each diagram point gets the absolute entries of F(delta_x) in basis-index
order: the segments of a mountain-range plot (1-parameter input) or the
tower stacked on the bar's segment from a to b (2-parameter input), drawn
above the segment for positive bars and below it for negative ones.
"""

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from ..basis import BasisConfig
from ..diagrams import RectangleDocument, SignedDiagram
from ..featurize import vectorize


@dataclass
class Segment:
    index: int
    layer: int
    coords: List[int]
    length: float


@dataclass
class VizRecord:
    point: List[float]
    weight: float
    orientation: str
    segments: List[Segment]
    total: float
    window_exits: int = 0
    a: Optional[List[float]] = None
    b: Optional[List[float]] = None
    kind: Optional[str] = None


@dataclass
class VizBundle:
    config: Dict[str, Any]
    records: List[VizRecord] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {"config": self.config, "records": [asdict(r) for r in self.records]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _record(config: BasisConfig, point, weight: float) -> VizRecord:
    fv = vectorize(config, SignedDiagram.dirac(config.pair, point))
    segments = [Segment(i, v.layer, list(v.coords), length) for i, v, length in fv.segments()]
    return VizRecord(
        point=[float(c) for c in point],
        weight=float(weight),
        orientation="up" if weight > 0 else "down",
        segments=segments,
        total=fv.l1_norm,
        window_exits=fv.window_exits,
    )


def build_bundle(
    config: BasisConfig, diagram: SignedDiagram, rectangles: Optional[RectangleDocument] = None
) -> VizBundle:
    """One record per diagram point; with a rectangle document, one per non-flat bar carrying its endpoints."""
    bundle = VizBundle(config.to_dict())
    if rectangles is None:
        for point, weight in diagram:
            bundle.records.append(_record(config, point, weight))
        return bundle
    pair = config.pair
    for bar in rectangles.bars:
        point = list(bar.a) + list(bar.b)
        if pair.in_A(point):
            continue
        record = _record(config, point, float(bar.sign))
        record.a, record.b, record.kind = list(bar.a), list(bar.b), bar.kind
        bundle.records.append(record)
    return bundle
