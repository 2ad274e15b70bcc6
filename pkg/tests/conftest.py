import json

import pytest

from common.parameters import HEXAGON_BASIS
from core.polytope import cube, cube_section, from_halfspaces


@pytest.fixture(scope="session")
def cube2():
    """The square [-1, 1]^2."""
    return cube(2)


@pytest.fixture(scope="session")
def cube3():
    """The cube [-1, 1]^3."""
    return cube(3)


@pytest.fixture(scope="session")
def hexagon():
    """Section of [-1, 1]^3 by the plane x + y + z = 0."""
    return cube_section(3, HEXAGON_BASIS)


@pytest.fixture(scope="session")
def lopsided_pentagon():
    """
    Vertices (-0.5,-1), (1,0.5), (1,3), (-1,3), (-1,-1), area 6.875. The feet of the origin
    on the lines x = 1 and y = -1 fall outside their edges, so two flag simplices are degenerate.
    """
    return from_halfspaces([
        ([1.0, 0.0], 1.0),
        ([0.0, 1.0], 3.0),
        ([-1.0, 0.0], 1.0),
        ([0.0, -1.0], 1.0),
        ([1.0, -1.0], 0.5),
    ])


@pytest.fixture
def write_json(tmp_path):
    """Writes a document to a temporary JSON file and returns its path."""
    def _write(name, document):
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture
def cube_document():
    """Builds the H-representation JSON of the cube [-offset, offset]^n."""
    def _document(n, offset=1.0):
        halfspaces = []
        for i in range(n):
            e = [0.0] * n
            e[i] = 1.0
            halfspaces.append({"normal": e, "offset": offset})
            halfspaces.append({"normal": [-x for x in e], "offset": offset})
        return {"dim": n, "halfspaces": halfspaces}
    return _document
