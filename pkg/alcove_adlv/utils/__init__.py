"""
Utility modules for alcove-adlv
"""

from .diagrams import AlcoveMapRenderer, ChoiceTreeDiagram, SuperpieceDiagram, ascii_grid, chart_embedding
from .path_utils import default_output_name, resolve_input_path, resolve_output_path

__all__ = [
    "AlcoveMapRenderer",
    "ChoiceTreeDiagram",
    "SuperpieceDiagram",
    "ascii_grid",
    "chart_embedding",
    "default_output_name",
    "resolve_input_path",
    "resolve_output_path",
]
