"""
Exception hierarchy for alcove-adlv

Domain failures also derive from the matching built-in (ValueError or
RuntimeError) so callers catching built-ins keep working.
"""

from typing import Any, Iterable, Optional


class AdlvError(Exception):
    """Base class for every error raised by alcove_adlv."""


class ConfigError(AdlvError, ValueError):
    """Invalid run configuration (bad group, radius, window or mode)."""


class VertexInBaseAlcove(AdlvError, ValueError):
    """A superpiece was requested for a vertex of the base alcove."""

    def __init__(self, point: Any):
        self.point = point
        super().__init__(f"vertex {point} lies in the closure of the base alcove")


class NoSuchIsometry(AdlvError, ValueError):
    """No apartment isometry fixing the vertex maps the first alcove to the second."""


class OmegaSelfIntersects(AdlvError, RuntimeError):
    """The assembled model gallery visits some alcove twice."""

    def __init__(self, point: Any, m: int, repeated: Any):
        self.point = point
        self.m = m
        self.repeated = repeated
        super().__init__(f"model gallery for v1={point}, m={m} repeats alcove {repeated}")


class NotInShrunkenRegion(AdlvError, ValueError):
    """The closed formula was evaluated outside the shrunken Weyl chambers."""


class OddNumerator(AdlvError, RuntimeError):
    """l(w) + l(c) was odd for a non-empty shrunken alcove."""


class RadiusTooSmall(AdlvError, RuntimeError):
    """The dimension map changed on the certified window between R-1 and R."""

    def __init__(self, radius: int, window: int, changed: Optional[Iterable[Any]] = None):
        self.radius = radius
        self.window = window
        self.changed = list(changed or [])
        super().__init__(
            f"dimension map on window {window} is not stable at radius {radius} "
            f"({len(self.changed)} alcoves changed)"
        )


class WindowTooSmall(AdlvError, ValueError):
    """A double coset reaches past the certified window of a dimension map."""


class MapFileError(AdlvError, ValueError):
    """Malformed MapFile JSON or golden CSV input."""
