from fractions import Fraction

import pytest

from complexes.builders import build_complex, complete_graph, cycle_graph, path_graph, star_graph
from complexes.models import Graph
from errors import InputError, SizeLimitError
from oracle.census import brute_force_census, brute_force_complex
from poly.engine import prob


@pytest.mark.parametrize("g, flows", [
    (path_graph(1), 3),
    (star_graph(3), 20),
    (cycle_graph(3), 18),
    (cycle_graph(4), 47),
    (complete_graph(4), 163),
])
def test_flow_counts(g, flows):
    census = brute_force_census(g)
    assert census.total == 4 ** g.n_edges
    assert census.flows == flows


def test_edgeless_graph():
    census = brute_force_census(Graph(3))
    assert (census.total, census.flows) == (1, 1)
    assert census.probability == 1


def test_tree_flows_are_all_acyclic():
    census = brute_force_census(star_graph(4))
    assert census.acyclic == census.flows


def test_cycle_has_cyclic_flows():
    census = brute_force_census(cycle_graph(3))
    # two chase-around flows, one per direction
    assert census.acyclic == census.flows - 2


def test_size_limit():
    with pytest.raises(SizeLimitError) as info:
        brute_force_census(complete_graph(5), limit=4 ** 9)
    assert "Monte Carlo" in info.value.message
    assert SizeLimitError.exit_code == 3


def test_subset_out_of_range():
    with pytest.raises(InputError):
        brute_force_census(path_graph(1), subset=[2])


def test_profiles_add_up():
    census = brute_force_census(cycle_graph(4), subset=[0, 2], count_acyclic=False)
    assert sum(census.profiles.values()) == census.flows
    assert census.acyclic == 0


def test_parallel_matches_serial():
    g = cycle_graph(5)
    serial = brute_force_census(g, subset=[0, 1])
    parallel = brute_force_census(g, subset=[0, 1], jobs=2)
    assert parallel == serial
    assert serial.probability == Fraction(123, 1024) == prob(g)


def test_complex_census():
    census = brute_force_complex(build_complex([[0, 1, 2]]))
    assert census.total == 2 ** 9
    assert 0 < census.acyclic <= census.flows < census.total


def test_filled_triangle_has_fewer_flows_than_its_boundary():
    triangle = build_complex([[0, 1, 2]])
    filled = brute_force_complex(triangle).probability
    boundary = brute_force_complex(triangle.skeleton(1)).probability
    assert boundary == prob(cycle_graph(3)) == Fraction(9, 32)
    assert filled == Fraction(42, 512)
    assert filled <= boundary


def test_to_json_uses_strings():
    data = brute_force_census(path_graph(1), subset=[0]).to_json()
    assert data["flows"] == "3"
    assert data["profiles"] == [{"profile": [0], "count": "2"}, {"profile": [1], "count": "1"}]
