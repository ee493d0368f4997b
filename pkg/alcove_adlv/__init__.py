"""
alcove-adlv: dimensions of affine Deligne-Lusztig varieties by gallery folding

Covers the affine Weyl groups of SL2, SL3 and Sp4 (types A1, A2, C2).
"""

from .adlv import DimensionMap, DimensionMapBuilder, dimension_map, formula_eval, k_level_dimension, mu_spec
from .affine_weyl import AffineWeylGroup, Alcove
from .config import Config, get_config
from .galleries import GalleryBuilder, Vertex
from .root_data import RootSystemKind, build_root_system

__version__ = "0.1.0"
__all__ = [
    "AffineWeylGroup",
    "Alcove",
    "Config",
    "DimensionMap",
    "DimensionMapBuilder",
    "GalleryBuilder",
    "RootSystemKind",
    "Vertex",
    "build_root_system",
    "dimension_map",
    "formula_eval",
    "get_config",
    "k_level_dimension",
    "mu_spec",
]
