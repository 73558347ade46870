"""End-to-end command-line behaviour: reports, formats, and exit codes."""

import json

import pytest

from clusterseeds import cli
from clusterseeds.fileio import dump_seed, surface_to_dict
from conftest import a2_seed, amalgam_seed, double_arrow_seed
from clusterseeds import make_surface


@pytest.fixture
def a2_file(tmp_path):
    path = tmp_path / "a2.json"
    dump_seed(a2_seed(), str(path))
    return str(path)


@pytest.fixture
def square_file(tmp_path):
    surf = make_surface(4, [(0, 2)], laminations=[[(1, 3)]])
    path = tmp_path / "square.json"
    path.write_text(json.dumps(surface_to_dict(surf)))
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------- validate


def test_validate_human(capsys, a2_file):
    code, out, _ = run(capsys, "validate", a2_file)
    assert code == 0
    assert "valid" in out


def test_validate_machine_schema(capsys, a2_file):
    code, out, _ = run(capsys, "--format", "machine", "validate", a2_file)
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["command"] == "validate"
    assert doc["ok"] is True
    assert doc["symmetrizer"] == [1, 1]


def test_validate_reports_violations(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps({"exchangeable": ["a", "b"], "frozen": [], "matrix": [[0, 1], [1, 0]]})
    )
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 0  # validation reports are a success, the seed is just invalid
    assert "invalid" in out


def test_out_writes_to_file(capsys, a2_file, tmp_path):
    dest = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "--format", "machine", "--out", str(dest), "validate", a2_file
    )
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["ok"] is True


# -------------------------------------------------------------- exit codes


def test_exit_2_on_malformed_input(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{oops")
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2
    assert "input error" in err


def test_exit_2_on_missing_file(capsys):
    code, _, err = run(capsys, "validate", "/no/such/file.json")
    assert code == 2


def test_exit_2_on_bad_mutation_index(capsys, a2_file):
    code, _, err = run(capsys, "mutate", a2_file, "7")
    assert code == 2


def test_exit_3_on_cap(capsys, tmp_path):
    path = tmp_path / "amalgam.json"
    dump_seed(amalgam_seed(), str(path))
    code, _, err = run(capsys, "endpar", str(path), "--cap", "20")
    assert code == 3
    assert "partial count 20" in err


def test_exit_4_on_cross_check_failure(capsys, square_file, monkeypatch):
    # force the comparison to fail to exercise the failure path honestly
    monkeypatch.setattr(cli, "check_theorem_sur", lambda *a, **k: False)
    code, out, _ = run(capsys, "check-sur", square_file, "--i1", "d0_2")
    assert code == 4
    assert "MISMATCH" in out or "mismatch" in out


# ------------------------------------------------------------- computation


def test_mutate_sequence(capsys, a2_file):
    code, out, _ = run(capsys, "--format", "machine", "mutate", a2_file, "0", "1")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["steps"]) == 3
    assert doc["steps"][1]["matrix"] == [[0, -1], [1, 0]]
    assert doc["steps"][1]["cluster"][0] == "(x2 + 1)/x1"


def test_clusters_closed(capsys, a2_file):
    code, out, _ = run(capsys, "--format", "machine", "clusters", a2_file)
    doc = json.loads(out)
    assert (doc["count"], doc["status"]) == (5, "closed")


def test_clusters_depth_truncation(capsys, a2_file):
    code, out, _ = run(
        capsys, "--format", "machine", "clusters", a2_file, "--depth", "1"
    )
    assert json.loads(out)["status"] == "truncated"


def test_hom_check_and_compose(capsys, tmp_path):
    seed_path = tmp_path / "da.json"
    dump_seed(double_arrow_seed(), str(seed_path))
    f = tmp_path / "f.json"
    f.write_text(
        json.dumps({"I0": [], "I1": ["x3"], "map": {"x1": "x3", "x2": "x2"}})
    )
    code, out, _ = run(capsys, "--format", "machine", "hom-check", str(seed_path), str(f))
    assert code == 0 and json.loads(out)["ok"] is True

    g = tmp_path / "g.json"
    g.write_text(
        json.dumps({"I0": [], "I1": ["x1"], "map": {"x2": "x2", "x3": "x1"}})
    )
    code, out, _ = run(capsys, "--format", "machine", "hom-check", str(seed_path), str(g))
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is False and "magnitude" in doc["violation"]

    code, out, _ = run(
        capsys, "--format", "machine", "compose", str(seed_path), str(f), str(f)
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["I1"] == ["x1", "x3"]  # x1 maps outside Dom(f) and drops out
    assert doc["map"] == {"x2": "x2"}


def test_endpar_report(capsys, a2_file):
    code, out, _ = run(capsys, "--format", "machine", "endpar", a2_file)
    doc = json.loads(out)
    assert doc["size"] == 19
    assert len(doc["elements"]) == 19


def test_green_egg_box(capsys, a2_file):
    code, out, _ = run(capsys, "--format", "machine", "green", a2_file)
    doc = json.loads(out)
    assert doc["regular_d_count"] == 6
    assert len(doc["idempotents"]) == 11
    sizes = sum(c["size"] for c in doc["d_classes"])
    assert sizes == 19
    # human rendering marks idempotents with a star
    code, out, _ = run(capsys, "green", a2_file)
    assert "*" in out and "regular D-classes" in out


def test_classify_report(capsys, a2_file):
    code, out, _ = run(capsys, "--format", "machine", "classify", a2_file)
    doc = json.loads(out)
    assert doc["iso_class_count"] == 6
    assert doc["regular_d_count"] == 6
    assert doc["bijection_verified"] is True


# ----------------------------------------------------------------- surface


def test_surface_seed_command(capsys, square_file):
    code, out, _ = run(capsys, "--format", "machine", "surface-seed", square_file)
    doc = json.loads(out)
    assert doc["exchangeable"] == ["d0_2"]
    assert doc["frozen"] == ["L0"]
    assert doc["matrix"] in ([[0, 1]], [[0, -1]])


def test_cut_and_paunch_commands(capsys, square_file):
    code, out, _ = run(
        capsys, "--format", "machine", "cut", square_file, "d0_2", "--mode", "freeze"
    )
    assert code == 0
    doc = json.loads(out)
    assert sorted(doc["components"]) == [3, 3]
    assert "d0_2" in doc["laminations"]

    code, out, _ = run(
        capsys, "--format", "machine", "paunch", square_file, "--i1", "d0_2,L0"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["laminations"] == {}


def test_check_sur_sweep(capsys, square_file):
    code, out, _ = run(
        capsys, "--format", "machine", "check-sur", square_file, "--all", "--max-cut", "2"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["all_ok"] is True
    assert doc["checked"] > 1


def test_surface_iso_command(capsys, tmp_path, square_file):
    other = tmp_path / "other.json"
    other.write_text(
        json.dumps(surface_to_dict(make_surface(4, [(1, 3)], laminations=[[(0, 2)]])))
    )
    code, out, _ = run(capsys, "surface-iso", square_file, str(other))
    assert code == 0 and "isomorphic" in out
