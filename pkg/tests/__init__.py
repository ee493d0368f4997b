"""
Test suite for alcove-adlv

Organized by module:

- test_root_data.py: root systems, finite Weyl groups, dominant coroots
- test_affine_weyl.py: alcove arithmetic, reflections, chambers, symmetries of C_M
- test_galleries.py: vertices, stars, minimal galleries, model galleries
- test_folding.py: choice edges, choice trees, cf-dimensions, superpieces
- test_adlv.py: base case, dimension maps, closed formula, K-level dimensions, audits
- test_mapfile.py: MapFile JSON, golden CSVs, CSV export
- test_diagrams.py: SVG, ASCII and choice-tree output
- test_config.py: configuration and environment overrides
- test_cli.py: command-line surface and exit codes

Full-window runs (radius 14, window 18) are marked ``slow``.
Test fixtures and shared utilities are in conftest.py.
"""

__version__ = "0.1.0"
