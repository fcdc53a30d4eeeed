"""Exception types shared across the package."""

from __future__ import annotations


class GeospannerError(Exception):
    """Base class for all library errors."""


class InvalidPolygonError(GeospannerError):
    """Input boundary is not a valid simple polygon / polygonal domain."""


class OutsidePolygonError(GeospannerError):
    """A query point lies outside the region it was supposed to be in."""


class DegenerateInputError(GeospannerError):
    """Instance too small or too degenerate for the requested operation."""


class ParseError(GeospannerError):
    """A structured text file could not be parsed."""


class VerificationError(GeospannerError):
    """A spanner file failed verification against its instance."""


class InvalidOrderError(GeospannerError):
    """A traversal order is not a permutation of the expected sites."""


class InvalidChordError(GeospannerError):
    """A chord does not lie inside the polygon it should split."""


class InvalidParamsError(GeospannerError):
    """Generator parameters out of range."""


class InvalidEpsilonError(GeospannerError):
    """Relaxation parameter out of its valid range."""
