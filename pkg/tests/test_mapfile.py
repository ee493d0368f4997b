import json

import pandas as pd
import pytest

from alcove_adlv.errors import MapFileError
from alcove_adlv.mapfile import (
    GOLDEN_COLUMNS,
    MapFile,
    compare_golden,
    dumps,
    export_csv,
    golden_path,
    loads,
    read_golden,
    read_mapfile,
    to_frame,
    write_mapfile,
)


@pytest.fixture(scope="module")
def a1_mapfile(a1_map):
    return MapFile.from_dimension_map(a1_map)


def test_entries_are_in_canonical_order(a1_mapfile):
    lengths = [e.length for e in a1_mapfile.entries]
    assert lengths == sorted(lengths)
    assert a1_mapfile.entries[0].lam == (0,)
    assert a1_mapfile.entries[0].word == "e"
    assert a1_mapfile.entries[0].dim == 0


def test_document_layout(a1_mapfile):
    document = json.loads(dumps(a1_mapfile))
    assert document["group"] == "a1"
    assert document["window"] == 9
    assert document["stability"] is True
    assert len(document["entries"]) == 19
    assert set(document["entries"][0]) == {"lambda", "word", "length", "dim"}
    assert dumps(a1_mapfile).endswith("}\n")


def test_write_and_read_back(tmp_path, a1_map, a1_mapfile):
    path = write_mapfile(a1_mapfile, tmp_path / "maps" / "a1.json")
    restored = read_mapfile(path)
    assert restored.to_dimension_map().entries == a1_map.entries
    assert dumps(restored) == path.read_text(encoding="utf-8")


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[1, 2]",
        '{"group": "a2", "radius": 4}',
        '{"group": "g2", "radius": 4, "window": 2, "stability": true, "entries": []}',
        '{"group": "a2", "radius": 4, "window": 2, "stability": true,'
        ' "entries": [{"lambda": [0], "word": "e", "length": 0, "dim": 0}]}',
        '{"group": "a2", "radius": 4, "window": 2, "stability": true,'
        ' "entries": [{"lambda": [0, 0], "word": "s7", "length": 0, "dim": 0}]}',
    ],
)
def test_malformed_mapfiles(text):
    with pytest.raises(MapFileError):
        loads(text).alcove_values()


def test_missing_mapfile(tmp_path):
    with pytest.raises(MapFileError):
        read_mapfile(tmp_path / "absent.json")


def test_golden_files_have_expected_columns():
    for kind in ("a2", "c2"):
        frame = read_golden(golden_path(kind))
        assert list(frame.columns) == GOLDEN_COLUMNS
        assert (frame["group"] == kind).all()
        assert frame.iloc[0]["dim"] == "0"


def test_compare_golden_reports_mismatch(a2_map):
    mapfile = MapFile.from_dimension_map(a2_map)
    golden = read_golden(golden_path("a2"))
    corrupted = golden.copy()
    row = corrupted.index[corrupted["dim"] == "0"][0]
    corrupted.loc[row, "dim"] = "5"
    mismatches = compare_golden(mapfile, corrupted)
    assert len(mismatches) == 1
    assert mismatches[0]["expected"] == 5
    assert mismatches[0]["actual"] == 0


def test_read_golden_rejects_missing_columns(tmp_path):
    path = tmp_path / "broken.csv"
    pd.DataFrame({"group": ["a2"], "word": ["e"]}).to_csv(path, index=False)
    with pytest.raises(MapFileError):
        read_golden(path)


def test_export_csv(tmp_path, a1_mapfile):
    frame = to_frame(a1_mapfile)
    assert list(frame.columns) == GOLDEN_COLUMNS
    assert frame["lambda2"].isna().all()
    path = export_csv(a1_mapfile, tmp_path / "a1.csv")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == ",".join(GOLDEN_COLUMNS)
    assert lines[1] == "a1,0,,e,0,0"
    assert len(lines) == 20
