import pytest
from fastapi.testclient import TestClient

from complexes.builders import build_complex, cycle_graph, graph_hasse, hasse
from flows.models import OrientationPrescription


@pytest.fixture
def square():
    """Boundary of a square: faces 0..3 are vertices, 4..7 the edges 01, 03, 12, 23."""
    return hasse(build_complex([[0, 1], [1, 2], [2, 3], [0, 3]]))


@pytest.fixture
def square_acyclic_flow():
    # [0,1]→1, [1,2]→2, [2,3]→3 reversed
    return OrientationPrescription((1, -1, 1, 1, 1, -1, 1, -1))


@pytest.fixture
def square_non_flow():
    # vertex 0 paired with both [0,1] and [0,3]
    return OrientationPrescription((-1, 1, -1, 1, 1, 1, 1, 1))


@pytest.fixture
def triangle():
    return graph_hasse(cycle_graph(3))


@pytest.fixture
def triangle_cycle_flow():
    """A flow on C_3 whose reversed edges chase each other around the triangle."""
    return OrientationPrescription((-1, 1, 1, -1, -1, 1))


@pytest.fixture
def write_file(tmp_path):
    def write(name: str, text: str):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return write


@pytest.fixture
def client():
    from main import app

    with TestClient(app) as c:
        yield c
