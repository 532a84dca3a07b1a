import networkx as nx
import pytest

from complexes.builders import build_complex, cycle_graph, graph_hasse, hasse, path_graph, star_graph
from errors import InputError, PreconditionError
from flows.engine import (all_prescriptions, anomaly, critical_faces, deform_to_acyclic, flow_from_morse,
                          is_acyclic, is_flow, is_matching, morse_from_flow, oriented_hasse)
from flows.models import OrientationPrescription
from flows.schemas import PrescriptionIn
from verification import check_flow_diagram, small_graphs


class TestAnomaly:

    def test_trivial_prescription(self):
        diagram = graph_hasse(path_graph(1))
        profile = anomaly(OrientationPrescription((1, 1)), diagram)
        assert profile.total == (0, 0, 0)

    def test_both_incidences_reversed(self):
        diagram = graph_hasse(path_graph(1))
        profile = anomaly(OrientationPrescription((-1, -1)), diagram)
        assert profile[(0,)] == 1
        assert profile[(1,)] == 1
        assert profile[(0, 1)] == 2
        assert profile.up == (1, 1, 0)
        assert profile.down == (0, 0, 2)
        assert not is_flow(OrientationPrescription((-1, -1)), diagram)

    def test_three_of_four_prescriptions_on_an_edge_are_flows(self):
        diagram = graph_hasse(path_graph(1))
        assert sum(is_flow(omega, diagram) for omega in all_prescriptions(diagram)) == 3

    def test_length_mismatch(self):
        with pytest.raises(InputError):
            anomaly(OrientationPrescription((1,)), graph_hasse(path_graph(1)))

    def test_signs_must_be_units(self):
        with pytest.raises(InputError):
            OrientationPrescription((1, 0))


class TestSquare:

    def test_acyclic_flow(self, square, square_acyclic_flow):
        assert is_flow(square_acyclic_flow, square)
        assert is_acyclic(square_acyclic_flow, square)
        assert critical_faces(square_acyclic_flow, square) == [(0,), (0, 3)]

    def test_non_flow(self, square, square_non_flow):
        assert not is_flow(square_non_flow, square)
        assert not is_matching(square_non_flow, square)
        assert anomaly(square_non_flow, square)[(0,)] == 2

    def test_deform_rejects_non_flow(self, square, square_non_flow):
        with pytest.raises(PreconditionError):
            deform_to_acyclic(square_non_flow, square)

    def test_morse_round_trip(self, square, square_acyclic_flow):
        f = morse_from_flow(square_acyclic_flow, square)
        assert sorted(f.values) == list(range(1, square.n_nodes + 1))
        for u, v in oriented_hasse(square_acyclic_flow, square).edges:
            assert f.values[u] > f.values[v]
        induced = flow_from_morse(f, square.complex)
        assert induced.is_morse
        assert induced.prescription == square_acyclic_flow

    def test_sign_count(self, square_acyclic_flow):
        assert square_acyclic_flow.sign_count == 3
        assert square_acyclic_flow.negative_mask == 0b10100010


class TestDeformation:

    def test_triangle_cycle(self, triangle, triangle_cycle_flow):
        assert is_flow(triangle_cycle_flow, triangle)
        assert not is_acyclic(triangle_cycle_flow, triangle)
        deformation = deform_to_acyclic(triangle_cycle_flow, triangle)
        assert deformation.iterations == 1
        assert deformation.flips[0].edge == 0
        assert sorted(deformation.flips[0].cycle) == list(range(6))
        assert deformation.result.signs == (1, 1, 1, -1, -1, 1)
        assert is_acyclic(deformation.result, triangle)
        assert is_flow(deformation.result, triangle)

    def test_random_policy(self, triangle, triangle_cycle_flow):
        first = deform_to_acyclic(triangle_cycle_flow, triangle, policy="random", seed=7)
        again = deform_to_acyclic(triangle_cycle_flow, triangle, policy="random", seed=7)
        assert first == again
        assert first.iterations == 1
        assert first.flips[0].edge in (0, 3, 4)
        assert is_acyclic(first.result, triangle)

    def test_acyclic_flow_is_untouched(self, square, square_acyclic_flow):
        deformation = deform_to_acyclic(square_acyclic_flow, square)
        assert deformation.iterations == 0
        assert deformation.result == square_acyclic_flow

    def test_unknown_policy(self, triangle, triangle_cycle_flow):
        with pytest.raises(InputError):
            deform_to_acyclic(triangle_cycle_flow, triangle, policy="last")

    def test_morse_requires_acyclic(self, triangle, triangle_cycle_flow, square, square_non_flow):
        with pytest.raises(PreconditionError):
            morse_from_flow(triangle_cycle_flow, triangle)
        with pytest.raises(PreconditionError):
            morse_from_flow(square_non_flow, square)


class TestMorseFunctions:

    def test_increasing_function_induces_trivial_flow(self):
        c = path_graph(1).to_complex()
        induced = flow_from_morse([0, 1, 2], c)
        assert induced.prescription.signs == (1, 1)
        assert induced.is_morse

    def test_one_violation_is_morse(self):
        c = path_graph(1).to_complex()
        induced = flow_from_morse({(0,): 3, (1,): 0, (0, 1): 2}, c)
        assert induced.prescription.signs == (-1, 1)
        assert induced.is_morse

    def test_two_violations_is_not_morse(self):
        c = path_graph(1).to_complex()
        induced = flow_from_morse({(0,): 3, (1,): 3, (0, 1): 0}, c)
        assert not induced.is_morse

    def test_missing_values(self):
        with pytest.raises(InputError):
            flow_from_morse({(0,): 1}, path_graph(1).to_complex())
        with pytest.raises(InputError):
            flow_from_morse([1, 2], path_graph(1).to_complex())


@pytest.mark.parametrize("diagram", [
    graph_hasse(path_graph(3)),
    graph_hasse(star_graph(3)),
    graph_hasse(cycle_graph(4)),
    hasse(build_complex([[0, 1, 2]])),
    hasse(build_complex([[0, 1], [1, 2], [2, 3], [0, 3]])),
], ids=["L3", "S3", "C4", "triangle", "square"])
def test_flow_engine_on_every_prescription(diagram):
    check_flow_diagram(diagram)


@pytest.mark.parametrize("g", [path_graph(3), star_graph(3), star_graph(4)], ids=["L3", "S3", "S4"])
def test_flows_on_trees_are_acyclic(g):
    diagram = graph_hasse(g)
    for omega in all_prescriptions(diagram):
        if is_flow(omega, diagram):
            assert is_acyclic(omega, diagram)


@pytest.mark.slow
def test_flow_engine_on_all_small_graphs():
    graphs = list(small_graphs(5))
    assert len(graphs) > 20
    for g in graphs:
        check_flow_diagram(graph_hasse(g))


def test_oriented_hasse_keeps_underlying_graph(triangle, triangle_cycle_flow):
    directed = oriented_hasse(triangle_cycle_flow, triangle)
    undirected = {frozenset(edge) for edge in triangle.edges}
    assert {frozenset(edge) for edge in directed.edges} == undirected
    assert not nx.is_directed_acyclic_graph(directed)


class TestPrescriptionIn:

    def test_edge_signs(self, triangle_cycle_flow):
        request = PrescriptionIn(family="cycle:3", edge_signs=[[-1, 1], [1, -1], [-1, 1]])
        diagram, omega = request.resolve()
        assert omega == triangle_cycle_flow
        assert omega.to_edge_signs() == [[-1, 1], [1, -1], [-1, 1]]

    def test_complex_with_signs(self, square_acyclic_flow):
        request = PrescriptionIn(complex={"facets": [[0, 1], [1, 2], [2, 3], [0, 3]]},
                                 signs=list(square_acyclic_flow.signs))
        diagram, omega = request.resolve()
        assert diagram.n_edges == 8

    def test_needs_one_source(self):
        with pytest.raises(ValueError):
            PrescriptionIn(family="cycle:3", graph={"n_vertices": 2, "edges": [[0, 1]]}, signs=[1, 1])
        with pytest.raises(ValueError):
            PrescriptionIn(family="cycle:3", signs=[1] * 6, edge_signs=[[1, 1]] * 3)

    def test_wrong_length(self):
        with pytest.raises(InputError):
            PrescriptionIn(family="cycle:3", signs=[1, 1]).resolve()

    def test_edge_signs_need_canonical_edge_order(self):
        with pytest.raises(ValueError):
            PrescriptionIn(graph={"n_vertices": 3, "edges": [[1, 2], [0, 1]]}, edge_signs=[[1, -1], [1, 1]])
