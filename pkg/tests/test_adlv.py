from fractions import Fraction as F

import pytest

from alcove_adlv.adlv import (
    FUNDAMENTAL_DOMAIN,
    DimensionMapBuilder,
    audit_nonspecial,
    audit_single_dimension,
    base_case_entries,
    check_symmetry,
    conjecture_region,
    dimension_map,
    formula_eval,
    k_level_dimension,
    mu_spec,
)
from alcove_adlv.affine_weyl import AffineWeylGroup
from alcove_adlv.errors import ConfigError, NotInShrunkenRegion, WindowTooSmall
from alcove_adlv.mapfile import MapFile, compare_golden, golden_path, read_golden
from alcove_adlv.root_data import dominant_coroots

from .conftest import SMALL_RADIUS, SMALL_WINDOW


@pytest.mark.parametrize("kind_fixture, size, top", [("a2", 13, 3), ("c2", 15, 4)])
def test_base_case(request, kind_fixture, size, top):
    group = request.getfixturevalue(kind_fixture)
    entries = base_case_entries(group)
    assert len(entries) == size
    assert entries[group.base_alcove()] == 0
    assert max(entries.values()) == top
    assert all(group.length(a) == d for a, d in entries.items())


def test_formula_on_shrunken_chambers(a1, a2):
    assert formula_eval(a1, a1.alcove_at((F(7, 2),))) == 2
    assert formula_eval(a1, a1.alcove_at((F(-5, 2),))) == 2
    assert formula_eval(a1, a1.alcove_at((F(5, 2),))) is None
    assert formula_eval(a2, a2.alcove((2, 2), "s1s2s1")) == 4
    assert formula_eval(a2, a2.alcove((3, 3), "e")) is None
    with pytest.raises(NotInShrunkenRegion):
        formula_eval(a2, a2.base_alcove())


def test_a1_map(a1, a1_map):
    assert len(a1_map) == 19
    assert a1_map.stability
    assert a1_map[a1.base_alcove()] == 0
    for alcove, value in a1_map.entries.items():
        if a1.in_shrunken(alcove):
            assert value == formula_eval(a1, alcove)


@pytest.mark.parametrize("map_fixture", ["a2_map", "c2_map"])
def test_small_map_matches_formula_and_golden(request, map_fixture):
    dm = request.getfixturevalue(map_fixture)
    group = request.getfixturevalue(map_fixture.split("_")[0])
    assert dm.stability
    assert dm.window == SMALL_WINDOW and dm.radius == SMALL_RADIUS
    assert all(group.length(a) <= SMALL_WINDOW for a in dm.entries)
    for alcove, value in dm.entries.items():
        if group.in_shrunken(alcove):
            assert value == formula_eval(group, alcove), alcove
    golden = read_golden(golden_path(group.kind))
    assert compare_golden(MapFile.from_dimension_map(dm), golden) == []


def test_map_metadata(a2_map):
    metadata = a2_map.metadata
    assert metadata["mode"] == "all-vertices"
    assert metadata["stability"] is True
    assert metadata["pieces"] > 0
    assert metadata["collisions"] == 0
    assert "certification" in metadata


def test_symmetry_and_audits(a2, c2, a2_map, c2_map):
    assert check_symmetry(a2, a2_map) == []
    assert check_symmetry(c2, c2_map) == []
    assert audit_single_dimension(a2_map) == {}
    assert audit_nonspecial(c2_map) == {}


@pytest.mark.parametrize("map_fixture", ["a2_map", "c2_map"])
def test_fundamental_domain_mode_agrees(request, map_fixture):
    dm = request.getfixturevalue(map_fixture)
    group = request.getfixturevalue(map_fixture.split("_")[0])
    reduced = DimensionMapBuilder(group, mode=FUNDAMENTAL_DOMAIN).build(SMALL_RADIUS, SMALL_WINDOW)
    assert reduced.entries == dm.entries
    assert reduced.metadata["vertices"] < dm.metadata["vertices"]


def test_builder_rejects_bad_settings(a2):
    with pytest.raises(ConfigError):
        DimensionMapBuilder(a2, mode="everything")
    with pytest.raises(ConfigError):
        DimensionMapBuilder(a2, workers=0)
    with pytest.raises(ConfigError):
        DimensionMapBuilder(a2).build(radius=2, window=6)


def test_mu_spec(a2, c2):
    spec = mu_spec(a2, (1, 1))
    assert spec.pairing == 2
    assert len(spec.coset) == 36
    assert len(mu_spec(a2, (0, 0)).coset) == 6
    assert len(mu_spec(c2, (0, 0)).coset) == 8
    with pytest.raises(ValueError):
        mu_spec(a2, (-1, 2))


def test_k_level_dimension(a1, a2, a1_map, a2_map):
    assert k_level_dimension(mu_spec(a2, (0, 0)), a2_map) == 0
    for mu in dominant_coroots(a1.rs, 3):
        assert k_level_dimension(mu_spec(a1, mu), a1_map) == mu[0]
    with pytest.raises(WindowTooSmall):
        k_level_dimension(mu_spec(a2, (1, 1)), a2_map)
    wider = DimensionMapBuilder(a2).build(radius=SMALL_RADIUS, window=7)
    assert k_level_dimension(mu_spec(a2, (1, 1)), wider) == 2


def test_conjecture_region(a2):
    verdict = conjecture_region(a2, (0, 0), a2.alcove((2, 2), "s1s2s1"))
    assert verdict.in_region and verdict.predicted
    assert str(verdict) == "InRegion(non-empty)"
    outside = conjecture_region(a2, (1, 1), a2.alcove((1, 1), "s1s2s1"))
    assert not outside.in_region
    assert str(outside) == "OutOfRegion"
    with pytest.raises(ValueError):
        conjecture_region(a2, (-1, 0), a2.base_alcove())


@pytest.mark.slow
def test_parallel_build_matches_serial(a2_map):
    parallel = dimension_map("a2", SMALL_RADIUS, SMALL_WINDOW, workers=2)
    assert parallel.entries == a2_map.entries


@pytest.mark.slow
@pytest.mark.parametrize("kind", ["a2", "c2"])
def test_window_eighteen_matches_formula_and_golden(kind):
    group = AffineWeylGroup.for_kind(kind)
    dm = dimension_map(kind, radius=14, window=18)
    assert dm.stability
    shrunken = [a for a in dm.entries if group.in_shrunken(a)]
    assert shrunken
    for alcove in shrunken:
        assert dm.entries[alcove] == formula_eval(group, alcove), alcove
    golden = read_golden(golden_path(kind))
    assert compare_golden(MapFile.from_dimension_map(dm), golden) == []


@pytest.mark.slow
@pytest.mark.parametrize("kind", ["a1", "a2", "c2"])
def test_k_level_equals_pairing_with_rho(kind):
    group = AffineWeylGroup.for_kind(kind)
    window = 2 * 5 + group.rs.delta
    dm = dimension_map(kind, radius=window, window=window)
    for mu in dominant_coroots(group.rs, 5):
        spec = mu_spec(group, mu)
        assert k_level_dimension(spec, dm) == spec.pairing
