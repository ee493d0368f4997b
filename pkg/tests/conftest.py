"""Shared fixtures: groups, gallery builders and small cached dimension maps."""

import pytest

from alcove_adlv.adlv import DimensionMapBuilder
from alcove_adlv.affine_weyl import AffineWeylGroup
from alcove_adlv.config import get_config, reload_config
from alcove_adlv.galleries import GalleryBuilder

# window and radius of the maps shared across test modules
SMALL_WINDOW = 6
SMALL_RADIUS = 10


@pytest.fixture(scope="session")
def a1():
    return AffineWeylGroup.for_kind("a1")


@pytest.fixture(scope="session")
def a2():
    return AffineWeylGroup.for_kind("a2")


@pytest.fixture(scope="session")
def c2():
    return AffineWeylGroup.for_kind("c2")


@pytest.fixture(scope="session")
def a1_builder(a1):
    return GalleryBuilder(a1)


@pytest.fixture(scope="session")
def a2_builder(a2):
    return GalleryBuilder(a2)


@pytest.fixture(scope="session")
def c2_builder(c2):
    return GalleryBuilder(c2)


@pytest.fixture(scope="session")
def a1_map(a1):
    return DimensionMapBuilder(a1).build(radius=13, window=9)


@pytest.fixture(scope="session")
def a2_map(a2):
    return DimensionMapBuilder(a2).build(radius=SMALL_RADIUS, window=SMALL_WINDOW)


@pytest.fixture(scope="session")
def c2_map(c2):
    return DimensionMapBuilder(c2).build(radius=SMALL_RADIUS, window=SMALL_WINDOW)


@pytest.fixture
def workspace(tmp_path, monkeypatch):
    """Point the configuration at a temporary workspace without log files."""
    monkeypatch.setenv("ALCOVE_ADLV_WORKSPACE", str(tmp_path / "workspace"))
    monkeypatch.setenv("ALCOVE_ADLV_LOG_TO_FILE", "0")
    monkeypatch.delenv("ALCOVE_ADLV_WORKERS", raising=False)
    monkeypatch.delenv("ALCOVE_ADLV_LOG_LEVEL", raising=False)
    config = reload_config()
    yield config
    if hasattr(get_config, "_config"):
        delattr(get_config, "_config")
