import json
import math

import pandas as pd
import pytest
import trimesh

from common.errors import InputError, OriginNotInterior, UnsupportedDimension
from core.certify import certify_surface, certify_volume, check_distance_hypothesis
from core.file_reader import FileReader, read_polytope
from core.file_writer import (certificate_to_dict, format_certificate, format_hypothesis, polytope_to_dict,
                              subdivision_mesh, subdivision_to_list, write_curve_csv, write_off)
from core import file_writer
from core.measures import curve_frame
from core.polytope import cube, scaled
from core.subdivision import build_simplices
from analytics.lemmas import sin_ratio_monotonicity_check


# --- Reading ---

def test_read_halfspace_file(write_json, cube_document):
    """The H-representation format yields the cube."""
    P = read_polytope(write_json("cube.json", cube_document(3)))
    assert P.dim == 3
    assert len(P.vertices) == 8


def test_read_section_file(write_json):
    """The {N, basis} format yields the hexagon section."""
    P = FileReader(write_json("hex.json", {"N": 3, "basis": [[1, -1, 0], [0, 1, -1]]})).read()
    assert P.dim == 2
    assert len(P.vertices) == 6


@pytest.mark.parametrize("document", [
    [1, 2, 3],
    {"something": "else"},
    {"dim": 2, "halfspaces": []},
    {"dim": 2, "halfspaces": [{"normal": [1, 0]}]},
    {"dim": 3, "halfspaces": [{"normal": [1, 0], "offset": 1}]},
    {"halfspaces": [{"normal": [1, 0], "offset": 1}, {"normal": [1, 0, 0], "offset": 1}]},
    {"N": 2, "basis": [[1, 0], [0, 1], [1, 1]]},
    {"N": 9, "basis": [[1] * 9]},
])
def test_malformed_inputs(write_json, document):
    """Shape and schema problems are InputError."""
    with pytest.raises(InputError):
        FileReader(write_json("bad.json", document)).read()


def test_missing_and_broken_files(tmp_path):
    """No file or invalid JSON is an InputError too."""
    with pytest.raises(InputError):
        read_polytope(tmp_path / "absent.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError):
        read_polytope(broken)


def test_geometric_errors_propagate(write_json, cube_document):
    """A valid file describing an invalid polytope raises the polytope error."""
    with pytest.raises(OriginNotInterior):
        read_polytope(write_json("shifted.json", cube_document(2, offset=0.0)))


def test_read_arrays(write_json):
    """Named numeric matrices for the lemma commands."""
    path = write_json("vectors.json", {"vectors": [[1, 0], [0, 1], [-1, 0]]})
    arrays = FileReader(path).read_arrays("vectors")
    assert arrays["vectors"].shape == (3, 2)
    with pytest.raises(InputError):
        FileReader(path).read_arrays("B")
    with pytest.raises(InputError):
        FileReader(write_json("flat.json", {"vectors": [1, 0]})).read_arrays("vectors")


# --- Writing ---

def test_polytope_document_round_trips_through_the_reader(tmp_path, hexagon):
    """Emitted halfspaces load back as the same polytope."""
    path = tmp_path / "hex.json"
    file_writer.write_json(polytope_to_dict(hexagon), str(path))
    again = read_polytope(path)
    assert again.vertices.shape == hexagon.vertices.shape
    assert json.loads(path.read_text())["volume"] == pytest.approx(3 * math.sqrt(3))


def test_certificate_document_layout(cube3):
    """Top-level keys and one row per flag."""
    document = certificate_to_dict(certify_surface(cube3))
    assert document["kind"] == "surface"
    assert document["pass"] is True
    assert document["claimed_bound"] == 24.0
    assert len(document["simplices"]) == 48
    assert set(document["simplices"][0]) >= {"flag", "vol", "omega", "facet_area", "margin"}
    assert document["hypothesis"]["mode"] == "vaaler"
    json.dumps(document)


def test_degenerate_rows_are_marked(lopsided_pentagon):
    """Collapsed simplices carry a degenerate flag in the ledger."""
    document = certificate_to_dict(certify_volume(scaled(lopsided_pentagon, 3.0)))
    assert sum(row.get("degenerate", False) for row in document["simplices"]) == 2


def test_subdivision_list(hexagon):
    """Each triple lists its flag and both anchor simplices."""
    rows = subdivision_to_list(build_simplices(hexagon))
    assert len(rows) == 12
    assert len(rows[0]["flag"]) == 3
    assert len(rows[0]["a"]) == 3 and len(rows[0]["b"]) == 3


def test_text_reports(cube2):
    """PASS and FAIL verdicts with the failing faces listed."""
    assert "PASS" in format_certificate(certify_volume(cube2))
    text = format_hypothesis(check_distance_hypothesis(scaled(cube2, 0.5)))
    assert text.startswith("Hypothesis (vaaler): FAIL")
    assert "codim 1" in text


def test_experimental_certificate_text():
    """No verdict for n >= 4 surfaces."""
    assert "EXPERIMENTAL" in format_certificate(certify_surface(cube(4), experimental=True))


def test_off_mesh(tmp_path, cube3, hexagon):
    """Four triangles per tetrahedron in R^3, one per triangle in the plane."""
    assert len(subdivision_mesh(build_simplices(cube3)).faces) == 4 * 48
    assert len(subdivision_mesh(build_simplices(hexagon)).faces) == 12
    path = tmp_path / "hex.off"
    write_off(build_simplices(hexagon), str(path))
    mesh = trimesh.load(str(path), file_type="off", process=False)
    assert len(mesh.faces) == 12


def test_off_mesh_needs_low_dimension():
    """R^4 has no triangle mesh."""
    with pytest.raises(UnsupportedDimension):
        subdivision_mesh(build_simplices(cube(4)))


def test_curve_csv(tmp_path):
    """Header, one row per t and a trailing verdict line."""
    grid = [0.2, 0.5, 0.9]
    path = tmp_path / "curve.csv"
    write_curve_csv(curve_frame(0.4, grid), sin_ratio_monotonicity_check(0.4, grid), str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == "t,area_integral,area_girard,ratio"
    assert len(lines) == 5
    assert lines[-1].startswith("# monotone ratio: pass")
    frame = pd.read_csv(path, comment="#")
    assert frame["t"].tolist() == pytest.approx(grid)
