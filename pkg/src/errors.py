"""
Typed exception hierarchy for pd-schauder.
"""

from typing import Optional


class SchauderError(Exception):
    """Base exception for all pd-schauder errors."""


class PairValidationError(SchauderError):
    """Polyhedral pair specification is malformed."""


class DimensionMismatchError(SchauderError):
    """A point or diagram has the wrong number of coordinates."""


class OutsideDomainError(SchauderError):
    """A point lies outside the polyhedron X."""


class OutsideSimplexError(SchauderError):
    """A point does not lie in the referenced simplex."""


class VertexError(SchauderError):
    """Vertex is non-canonical, lies in A, or falls outside the truncation."""


class LayerError(SchauderError):
    """A layer index is invalid for the requested operation."""


class BasisConfigError(SchauderError):
    """Basis configuration is inconsistent."""


class FunctionalError(SchauderError):
    """A supplied functional violates its contract (e.g. nonzero on A)."""


class PairMismatchError(SchauderError):
    """Diagram and basis (or two diagrams) live on different pairs."""


class WassersteinError(SchauderError):
    """W1 cannot be computed for the given inputs."""


class DiagramParseError(SchauderError):
    """Input diagram file is malformed."""

    def __init__(self, message: str, row: Optional[int] = None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class EmbeddingError(SchauderError):
    """Requested feature embedding is invalid (e.g. p < 1)."""
