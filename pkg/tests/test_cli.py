import json

import pytest

from alcove_adlv.cli import EXIT_FAILED, EXIT_INVALID, EXIT_OK, build_parser, main
from alcove_adlv.mapfile import MapFile, golden_path, read_golden, read_mapfile, write_mapfile


@pytest.fixture
def a1_file(workspace, tmp_path):
    path = tmp_path / "a1.json"
    assert main(["compute", "--group", "a1", "--window", "9", "--radius", "13", "-o", str(path)]) == EXIT_OK
    return path


@pytest.fixture
def a2_file(workspace, tmp_path, a2_map):
    return write_mapfile(MapFile.from_dimension_map(a2_map), tmp_path / "a2.json")


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_compute_writes_mapfile(a1_file):
    mapfile = read_mapfile(a1_file)
    assert mapfile.group.value == "a1"
    assert len(mapfile.entries) == 19
    assert mapfile.stability


def test_compute_is_byte_identical(a1_file, tmp_path):
    again = tmp_path / "again.json"
    assert main(["compute", "-g", "a1", "--window", "9", "--radius", "13", "--out", str(again)]) == EXIT_OK
    assert again.read_bytes() == a1_file.read_bytes()


def test_compute_to_stdout(workspace, capsys):
    assert main(["compute", "-g", "a1", "--window", "3", "--radius", "6", "-o", "-"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert len(document["entries"]) == 7


def test_compute_csv(workspace, tmp_path):
    path = tmp_path / "a1.csv"
    args = ["compute", "-g", "a1", "--window", "3", "--radius", "6", "--format", "csv", "-o", str(path)]
    assert main(args) == EXIT_OK
    assert path.read_text(encoding="utf-8").splitlines()[0] == "group,lambda1,lambda2,word,length,dim"


def test_compute_rejects_small_radius(workspace):
    assert main(["compute", "-g", "a2", "--window", "6", "--radius", "2"]) == EXIT_INVALID


def test_render_svg_and_ascii(a1_file, tmp_path, capsys):
    svg = tmp_path / "a1.svg"
    assert main(["render", str(a1_file), "-o", str(svg)]) == EXIT_OK
    assert svg.read_bytes().startswith(b"<?xml")
    assert main(["render", str(a1_file), "--format", "ascii"]) == EXIT_OK
    assert capsys.readouterr().out.count("[") == 19


def test_render_rejects_malformed_mapfile(workspace, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"group": "a2"}', encoding="utf-8")
    assert main(["render", str(broken)]) == EXIT_INVALID
    assert main(["render", str(tmp_path / "absent.json")]) == EXIT_INVALID


def test_export(a1_file, tmp_path):
    target = tmp_path / "a1.csv"
    assert main(["export", str(a1_file), "-o", str(target)]) == EXIT_OK
    assert len(target.read_text(encoding="utf-8").splitlines()) == 20


def test_check_formula(workspace, capsys):
    assert main(["check", "formula", "-g", "a1", "--window", "9", "--radius", "13"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] and report["suite"] == "formula"


@pytest.mark.slow
@pytest.mark.parametrize("group", ["a2", "c2"])
def test_check_formula_full_window(workspace, capsys, group):
    assert main(["check", "formula", "-g", group, "--window", "18", "--radius", "14"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] and report["failures"] == []

def test_check_mu_rho(workspace, capsys):
    assert main(["check", "mu-rho", "-g", "a1", "--max-pairing", "3"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["passed"]


def test_check_golden(a2_file, tmp_path, capsys):
    assert main(["check", "golden", "--map", str(a2_file)]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["passed"]

    golden = read_golden(golden_path("a2"))
    golden.loc[0, "dim"] = "3"
    corrupted = tmp_path / "corrupted.csv"
    golden.to_csv(corrupted, index=False)
    assert main(["check", "golden", "--map", str(a2_file), "--golden", str(corrupted)]) == EXIT_FAILED
    report = json.loads(capsys.readouterr().out)
    assert not report["passed"]
    assert report["failures"][0]["expected"] == 3


@pytest.mark.slow
def test_check_properties(workspace, capsys):
    assert main(["check", "properties", "-g", "a2", "--window", "4", "--radius", "8"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["passed"]


def test_superpiece_json(workspace, capsys):
    assert main(["superpiece", "-g", "a2", "--vertex", "-2", "-2", "--m", "3"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["m"] == 3
    assert document["radius"] == 8
    assert document["omega"]
    assert all(o["cf"] <= 11 for o in document["outcomes"])


def test_superpiece_dot(workspace, tmp_path):
    target = tmp_path / "tree.dot"
    args = ["superpiece", "-g", "a2", "--vertex", "-2", "-2", "--format", "dot", "-o", str(target)]
    assert main(args) == EXIT_OK
    assert target.read_text(encoding="utf-8").startswith("// choice tree")


def test_superpiece_rejects_bad_vertex(workspace):
    assert main(["superpiece", "-g", "a2", "--vertex", "1/2", "1/2"]) == EXIT_INVALID
    assert main(["superpiece", "-g", "a2", "--vertex", "0", "0"]) == EXIT_INVALID
    assert main(["superpiece", "-g", "a2", "--vertex", "1"]) == EXIT_INVALID
