"""
Diagram readers and writers.

  csv    weight,c1,...,cd per row
  jsonl  {"w": weight, "x": [c1, ..., cd]} per line
  rects  {"d": d, "bars": [{"a": [...], "b": [...], "sign": +-1, "kind": "rectangle"|"hook"}]}
  mixup  b,dprime,d per row
"""

import csv
import io
import json
import math
from pathlib import Path
from typing import Iterable, List, Literal, Optional, Sequence, TextIO, Tuple, Union

from loguru import logger
from pydantic import BaseModel, ValidationError, field_validator

from ..errors import DiagramParseError, PairMismatchError
from ..geometry import PolyhedralPair, mixup_pair, signed_barcode_pair
from .diagram import SignedDiagram

FORMATS = ("csv", "jsonl", "rects", "mixup")

log = logger.bind(module="diagrams.io")


class DiagramRow(BaseModel):
    w: float
    x: List[float]


class RectangleBar(BaseModel):
    a: List[float]
    b: List[float]
    sign: int = 1
    kind: Literal["rectangle", "hook"] = "rectangle"

    @field_validator("sign")
    @classmethod
    def _unit_sign(cls, v: int) -> int:
        if v not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        return v


class RectangleDocument(BaseModel):
    d: int
    bars: List[RectangleBar]


def _rows(stream: TextIO) -> Iterable[Tuple[int, List[str]]]:
    for number, row in enumerate(csv.reader(stream), start=1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        yield number, row


def _floats(row: Sequence[str], number: int) -> List[float]:
    try:
        values = [float(c) for c in row]
    except ValueError:
        raise DiagramParseError(f"non-numeric field in {','.join(row)!r}", row=number) from None
    if not all(math.isfinite(v) for v in values):
        raise DiagramParseError("non-finite value", row=number)
    return values


def _check_point(pair: PolyhedralPair, coords: List[float], number: int) -> None:
    if len(coords) != pair.dimension:
        raise DiagramParseError(f"expected {pair.dimension} coordinates, got {len(coords)}", row=number)
    if not pair.contains(coords):
        raise DiagramParseError(f"point {coords} is outside X ({pair.describe()})", row=number)


def parse_diagram(stream: TextIO, fmt: str, pair: PolyhedralPair) -> SignedDiagram:
    """Read a csv or jsonl diagram on the given pair."""
    points: List[List[float]] = []
    weights: List[float] = []
    if fmt == "csv":
        for number, row in _rows(stream):
            values = _floats(row, number)
            if len(values) < 2:
                raise DiagramParseError("row needs a weight and at least one coordinate", row=number)
            _check_point(pair, values[1:], number)
            weights.append(values[0])
            points.append(values[1:])
    elif fmt == "jsonl":
        for number, line in enumerate(stream, start=1):
            if not line.strip():
                continue
            try:
                rec = DiagramRow.model_validate_json(line)
            except ValidationError as exc:
                raise DiagramParseError(exc.errors()[0]["msg"], row=number) from None
            if not all(math.isfinite(v) for v in [rec.w, *rec.x]):
                raise DiagramParseError("non-finite value", row=number)
            _check_point(pair, rec.x, number)
            weights.append(rec.w)
            points.append(rec.x)
    else:
        raise DiagramParseError(f"unsupported diagram format {fmt!r} (expected csv or jsonl)")
    return SignedDiagram(pair, points, weights)


def from_rectangles(
    bars: Iterable[Union[RectangleBar, Tuple[Sequence[float], Sequence[float], int]]],
    d: Optional[int] = None,
) -> SignedDiagram:
    """Map each rectangle or hook (a, b, sign) to the signed point (a_1..a_d, b_1..b_d)."""
    items: List[RectangleBar] = []
    for number, bar in enumerate(bars, start=1):
        if isinstance(bar, RectangleBar):
            items.append(bar)
            continue
        try:
            items.append(RectangleBar(a=list(bar[0]), b=list(bar[1]), sign=int(bar[2])))
        except (ValidationError, IndexError, TypeError, ValueError) as exc:
            raise DiagramParseError(f"malformed bar {bar!r}: {exc}", row=number) from None
    if d is None:
        if not items:
            raise DiagramParseError("cannot infer the parameter count of an empty bar list")
        d = len(items[0].a)
    pair = signed_barcode_pair(d)
    points, weights = [], []
    for number, bar in enumerate(items, start=1):
        if len(bar.a) != d or len(bar.b) != d:
            raise DiagramParseError(f"bar endpoints must have {d} coordinates", row=number)
        if any(x > y for x, y in zip(bar.a, bar.b)):
            raise DiagramParseError(f"bar a={bar.a} is not below b={bar.b}", row=number)
        points.append(list(bar.a) + list(bar.b))
        weights.append(float(bar.sign))
    diagram = SignedDiagram(pair, points, weights)
    dropped = len(items) - len(diagram)
    if dropped:
        log.debug(f"dropped {dropped} flat bars")
    return diagram


def from_mixup(triples: Iterable[Sequence[float]]) -> SignedDiagram:
    """Mixup triples (b, d', d) with b <= d' <= d; zero-mixup triples (d' = d) are dropped."""
    pair = mixup_pair()
    points = []
    for number, triple in enumerate(triples, start=1):
        if len(triple) != 3:
            raise DiagramParseError("mixup rows need exactly b,dprime,d", row=number)
        b, dp, dd = (float(v) for v in triple)
        if not (b <= dp <= dd):
            raise DiagramParseError(f"mixup triple ({b}, {dp}, {dd}) violates b <= dprime <= d", row=number)
        points.append([b, dp, dd])
    return SignedDiagram(pair, points)


def parse_rectangles(stream: TextIO) -> Tuple[SignedDiagram, RectangleDocument]:
    try:
        doc = RectangleDocument.model_validate_json(stream.read())
    except ValidationError as exc:
        err = exc.errors()[0]
        where = ".".join(str(p) for p in err["loc"])
        raise DiagramParseError(f"invalid rectangle document at {where}: {err['msg']}") from None
    return from_rectangles(doc.bars, doc.d), doc


def parse_mixup(stream: TextIO) -> SignedDiagram:
    triples = []
    for number, row in _rows(stream):
        values = _floats(row, number)
        if len(values) != 3:
            raise DiagramParseError("mixup rows need exactly b,dprime,d", row=number)
        triples.append(values)
    return from_mixup(triples)


def read_diagram(path: Union[str, Path], fmt: str, pair: Optional[PolyhedralPair] = None) -> SignedDiagram:
    """Read any supported format; rects and mixup carry their own pair, which must match `pair` if given."""
    if fmt not in FORMATS:
        raise DiagramParseError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    with open(path, "r", encoding="utf-8", newline="") as fh:
        if fmt == "rects":
            diagram, _ = parse_rectangles(fh)
        elif fmt == "mixup":
            diagram = parse_mixup(fh)
        else:
            if pair is None:
                raise DiagramParseError(f"format {fmt} needs a pair")
            return parse_diagram(fh, fmt, pair)
    if pair is not None and diagram.pair != pair:
        raise PairMismatchError(f"{fmt} input lives on {diagram.pair.describe()}, basis uses {pair.describe()}")
    return diagram


def write_diagram(diagram: SignedDiagram, stream: TextIO, fmt: str = "csv") -> None:
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        for row in diagram.to_rows():
            writer.writerow([repr(v) for v in row])
    elif fmt == "jsonl":
        for p, w in diagram:
            stream.write(json.dumps({"w": w, "x": [float(c) for c in p]}) + "\n")
    else:
        raise DiagramParseError(f"cannot write format {fmt!r}")


def diagram_to_string(diagram: SignedDiagram, fmt: str = "csv") -> str:
    buf = io.StringIO()
    write_diagram(diagram, buf, fmt)
    return buf.getvalue()
