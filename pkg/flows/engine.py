import logging
from typing import Iterator, List, Mapping, Optional, Sequence, Union

import networkx as nx
import numpy as np

from complexes.builders import hasse as build_hasse
from complexes.models import Face, HasseDiagram, SimplicialComplex
from errors import InputError, PreconditionError
from .models import AnomalyProfile, Deformation, Flip, InducedFlow, MorseFunction, OrientationPrescription


logger = logging.getLogger(__name__)

POLICIES = ("first", "random")


def anomaly(omega: OrientationPrescription, hasse: HasseDiagram) -> AnomalyProfile:
    omega.check(hasse)
    up = [0] * hasse.n_nodes
    down = [0] * hasse.n_nodes
    for (upper, lower), sign in zip(hasse.edges, omega.signs):
        if sign == -1:
            down[upper] += 1
            up[lower] += 1
    return AnomalyProfile(hasse.nodes, tuple(up), tuple(down))


def is_flow(omega: OrientationPrescription, hasse: HasseDiagram) -> bool:
    """Every face has anomaly at most 1."""
    return all(a <= 1 for a in anomaly(omega, hasse).total)


def is_matching(omega: OrientationPrescription, hasse: HasseDiagram) -> bool:
    """The -1 edges, read as undirected pairs of faces, touch every face at most once."""
    omega.check(hasse)
    matched = set()
    for (upper, lower), sign in zip(hasse.edges, omega.signs):
        if sign == 1:
            continue
        if upper in matched or lower in matched:
            return False
        matched.update((upper, lower))
    return True


def critical_faces(omega: OrientationPrescription, hasse: HasseDiagram) -> List[Face]:
    profile = anomaly(omega, hasse)
    return [face for face, a in zip(profile.faces, profile.total) if a == 0]


def oriented_hasse(omega: OrientationPrescription, hasse: HasseDiagram) -> nx.DiGraph:
    """H(F, ω): edges with ω = +1 kept, ω = -1 reversed; edge attr `index` is the Hasse edge."""
    omega.check(hasse)
    g = nx.DiGraph()
    g.add_nodes_from(range(hasse.n_nodes))
    for index, ((upper, lower), sign) in enumerate(zip(hasse.edges, omega.signs)):
        if sign == 1:
            g.add_edge(upper, lower, index=index)
        else:
            g.add_edge(lower, upper, index=index)
    return g


def is_acyclic(omega: OrientationPrescription, hasse: HasseDiagram) -> bool:
    return nx.is_directed_acyclic_graph(oriented_hasse(omega, hasse))


def _find_cycle(omega: OrientationPrescription, hasse: HasseDiagram,
                rng: Optional[np.random.Generator]) -> Optional[List[int]]:
    g = oriented_hasse(omega, hasse)
    source = None if rng is None else [int(v) for v in rng.permutation(hasse.n_nodes)]
    try:
        cycle = nx.find_cycle(g, source=source)
    except nx.NetworkXNoCycle:
        return None
    return [g.edges[u, v]["index"] for u, v in cycle]


def deform_to_acyclic(omega: OrientationPrescription, hasse: HasseDiagram,
                      policy: str = "first", seed: Optional[int] = None) -> Deformation:
    """
    Break directed cycles of H(F, ω) one at a time by switching a -1 edge on the cycle
    back to +1. Each flip lowers the sign by one, so at most sign(ω) iterations run.

    policy "first": DFS from the lowest-indexed face, flip the lowest-indexed -1 edge
    on the cycle found. policy "random": seeded random DFS start and random -1 edge.
    """
    if policy not in POLICIES:
        raise InputError(f"unknown deformation policy '{policy}'", known=list(POLICIES))
    if not is_flow(omega, hasse):
        raise PreconditionError("deformation requires a combinatorial flow")
    rng = np.random.default_rng(seed) if policy == "random" else None

    flips = []
    while True:
        cycle = _find_cycle(omega, hasse, rng)
        if cycle is None:
            break
        # +1 edges only descend in dimension, so a cycle always climbs through a -1 edge
        negative = [i for i in cycle if omega.signs[i] == -1]
        edge = min(negative) if rng is None else int(rng.choice(negative))
        omega = omega.flipped(edge)
        flips.append(Flip(edge, tuple(cycle)))
        logger.debug("flipped hasse edge %d on a cycle of length %d", edge, len(cycle))
    return Deformation(omega, tuple(flips))


def morse_from_flow(omega: OrientationPrescription, hasse: HasseDiagram) -> MorseFunction:
    """Injective integer values, strictly decreasing along every edge of H(F, ω)."""
    if not is_flow(omega, hasse):
        raise PreconditionError("Morse synthesis requires a combinatorial flow")
    g = oriented_hasse(omega, hasse)
    if not nx.is_directed_acyclic_graph(g):
        raise PreconditionError("Morse synthesis requires an acyclic flow")
    order = list(nx.lexicographical_topological_sort(g))
    values = [0] * hasse.n_nodes
    for position, node in enumerate(order):
        values[node] = len(order) - position
    return MorseFunction(hasse.nodes, tuple(values))


FaceValues = Union[MorseFunction, Mapping[Face, float], Sequence[float]]


def _values_by_index(f: FaceValues, complex: SimplicialComplex) -> List[float]:
    if isinstance(f, MorseFunction):
        if f.faces != complex.faces:
            raise InputError("Morse function faces do not match the complex")
        return list(f.values)
    if isinstance(f, Mapping):
        missing = [list(face) for face in complex.faces if tuple(face) not in f]
        if missing:
            raise InputError("function is missing faces", missing=missing[:5])
        return [f[face] for face in complex.faces]
    if len(f) != len(complex.faces):
        raise InputError("one value per face is required", expected=len(complex.faces), got=len(f))
    return list(f)


def flow_from_morse(f: FaceValues, complex: SimplicialComplex,
                    hasse: Optional[HasseDiagram] = None) -> InducedFlow:
    """ω_f(στ) = -1 iff f(τ) >= f(σ); f is Morse iff every |A_σ(f)| <= 1."""
    hasse = hasse or build_hasse(complex)
    values = _values_by_index(f, complex)
    signs = tuple(-1 if values[lower] >= values[upper] else 1 for upper, lower in hasse.edges)
    omega = OrientationPrescription(signs)
    # A_σ(ω_f) = A_σ(f) face by face, so the Morse test is the flow test on ω_f
    return InducedFlow(omega, is_flow(omega, hasse))


def all_prescriptions(hasse: HasseDiagram) -> Iterator[OrientationPrescription]:
    for mask in range(1 << hasse.n_edges):
        yield OrientationPrescription.from_negative_mask(mask, hasse.n_edges)
