from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError, model_validator

from complexes.builders import family_from_spec, graph_hasse, hasse as build_hasse
from complexes.models import HasseDiagram
from complexes.schemas import ComplexIn, GraphIn, as_input_error
from errors import InputError
from .engine import (POLICIES, anomaly, critical_faces, deform_to_acyclic, flow_from_morse, is_acyclic,
                     is_flow, is_matching, morse_from_flow)
from .models import Deformation, OrientationPrescription


class PrescriptionIn(BaseModel):
    """
    A prescription together with the complex it lives on. The complex is a graph,
    a family spec or a facet list; signs follow the canonical Hasse edge order, or,
    for graphs, `edge_signs` gives [s_low, s_high] per edge.
    """
    graph: Optional[GraphIn] = None
    family: Optional[str] = None
    complex: Optional[ComplexIn] = None
    signs: Optional[List[int]] = None
    edge_signs: Optional[List[List[int]]] = None

    @model_validator(mode='after')
    def one_source(self):
        sources = [s for s in (self.graph, self.family, self.complex) if s is not None]
        if len(sources) != 1:
            raise ValueError('give exactly one of graph, family or complex')
        if (self.signs is None) == (self.edge_signs is None):
            raise ValueError('give exactly one of signs or edge_signs')
        if self.edge_signs is not None and self.complex is not None:
            raise ValueError('edge_signs is only defined for graphs')
        return self

    def resolve(self) -> Tuple[HasseDiagram, OrientationPrescription]:
        if self.complex is not None:
            diagram = build_hasse(self.complex.to_complex())
            omega = OrientationPrescription(tuple(self.signs))
        else:
            g = family_from_spec(self.family) if self.family is not None else self.graph.to_graph()
            diagram = graph_hasse(g)
            if self.edge_signs is not None:
                omega = OrientationPrescription.from_edge_signs(g, self.edge_signs)
            else:
                omega = OrientationPrescription(tuple(self.signs))
        omega.check(diagram)
        return diagram, omega


class DeformIn(PrescriptionIn):
    policy: str = Field('first', pattern='^(' + '|'.join(POLICIES) + ')$')
    seed: Optional[int] = None


def parse_prescription_json(text: str, source: str = "<json>", model=PrescriptionIn) -> PrescriptionIn:
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        raise as_input_error(e, source) from e


class AnomalyOut(BaseModel):
    face: List[int]
    up: int
    down: int


class CheckResponse(BaseModel):
    is_flow: bool
    is_matching: bool
    is_acyclic: Optional[bool] = None
    sign_count: int
    anomaly: List[AnomalyOut]
    critical: List[List[int]]

    @classmethod
    def of(cls, diagram: HasseDiagram, omega: OrientationPrescription) -> "CheckResponse":
        flow = is_flow(omega, diagram)
        return cls(
            is_flow=flow,
            is_matching=is_matching(omega, diagram),
            # acyclicity is only asked of flows
            is_acyclic=is_acyclic(omega, diagram) if flow else None,
            sign_count=omega.sign_count,
            anomaly=anomaly(omega, diagram).to_json(),
            critical=[list(face) for face in critical_faces(omega, diagram)],
        )


class FlipOut(BaseModel):
    edge: int
    upper: List[int]
    lower: List[int]
    cycle: List[int]


class DeformResponse(BaseModel):
    signs: List[int]
    sign_count: int
    iterations: int
    is_acyclic: bool
    flips: List[FlipOut]

    @classmethod
    def of(cls, diagram: HasseDiagram, deformation: Deformation) -> "DeformResponse":
        faces = diagram.nodes
        flips = []
        for flip in deformation.flips:
            upper, lower = diagram.edges[flip.edge]
            flips.append(FlipOut(edge=flip.edge, upper=list(faces[upper]), lower=list(faces[lower]),
                                 cycle=list(flip.cycle)))
        return cls(
            signs=list(deformation.result.signs),
            sign_count=deformation.result.sign_count,
            iterations=deformation.iterations,
            is_acyclic=is_acyclic(deformation.result, diagram),
            flips=flips,
        )


class FaceValueOut(BaseModel):
    face: List[int]
    f: int


class MorseResponse(BaseModel):
    values: List[FaceValueOut]
    round_trip: bool

    @classmethod
    def of(cls, diagram: HasseDiagram, omega: OrientationPrescription) -> "MorseResponse":
        f = morse_from_flow(omega, diagram)
        induced = flow_from_morse(f, diagram.complex, diagram)
        return cls(
            values=f.to_json()["values"],
            round_trip=induced.is_morse and induced.prescription == omega,
        )


def run_flow(action: str, request: PrescriptionIn) -> BaseModel:
    diagram, omega = request.resolve()
    if action == "check":
        return CheckResponse.of(diagram, omega)
    if action == "deform":
        policy = getattr(request, "policy", "first")
        seed = getattr(request, "seed", None)
        return DeformResponse.of(diagram, deform_to_acyclic(omega, diagram, policy, seed))
    if action == "morse":
        return MorseResponse.of(diagram, omega)
    raise InputError(f"unknown flow action '{action}'", known=["check", "deform", "morse"])
