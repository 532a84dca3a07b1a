from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, List, Tuple

import networkx as nx

from errors import InputError


Face = Tuple[int, ...]
Edge = Tuple[int, int]


def face_key(face: Face) -> Tuple[int, Face]:
    """Canonical face order: by dimension, then lexicographic."""
    return len(face) - 1, face


@dataclass(frozen=True)
class SimplicialComplex:
    """Finite abstract simplicial complex stored as its canonical face list."""
    faces: Tuple[Face, ...]

    def __post_init__(self):
        face_set = set(self.faces)
        if len(face_set) != len(self.faces):
            raise InputError("duplicate faces in complex")
        for face in self.faces:
            if not face or tuple(sorted(set(face))) != face:
                raise InputError("faces must be nonempty and sorted", face=list(face))
            if len(face) > 1:
                for boundary in combinations(face, len(face) - 1):
                    if boundary not in face_set:
                        raise InputError("complex is not closed under subsets", face=list(face))
        if tuple(sorted(self.faces, key=face_key)) != self.faces:
            raise InputError("faces are not in canonical order")

    @cached_property
    def index(self) -> Dict[Face, int]:
        return {face: i for i, face in enumerate(self.faces)}

    @property
    def dimension(self) -> int:
        return max((len(face) - 1 for face in self.faces), default=-1)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(face[0] for face in self.faces if len(face) == 1)

    def dim(self, face: Face) -> int:
        return len(face) - 1

    def facets(self) -> List[Face]:
        """Maximal faces, in canonical order."""
        maximal = set(self.faces)
        for face in self.faces:
            if len(face) > 1:
                maximal.difference_update(combinations(face, len(face) - 1))
        return [face for face in self.faces if face in maximal]

    def skeleton(self, k: int) -> "SimplicialComplex":
        return SimplicialComplex(tuple(face for face in self.faces if len(face) - 1 <= k))

    def to_json(self) -> dict:
        return {"facets": [list(face) for face in self.facets()]}


@dataclass(frozen=True)
class Graph:
    """Simple graph on dense vertex ids 0..n_vertices-1 with canonical edge order."""
    n_vertices: int
    edges: Tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        if self.n_vertices < 0:
            raise InputError("n_vertices must be non-negative")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise InputError("loops are not allowed", edge=[u, v])
            if u > v:
                raise InputError("edges must be stored with the smaller endpoint first", edge=[u, v])
            if v >= self.n_vertices or u < 0:
                raise InputError("edge endpoint out of range", edge=[u, v])
            if (u, v) in seen:
                raise InputError("multiple edges are not allowed", edge=[u, v])
            seen.add((u, v))
        if tuple(sorted(self.edges)) != self.edges:
            raise InputError("edges are not in canonical order")

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[Iterable[int]]) -> "Graph":
        canonical = []
        for edge in edges:
            u, v = edge
            if u == v:
                raise InputError("loops are not allowed", edge=[u, v])
            canonical.append((min(u, v), max(u, v)))
        return cls(n_vertices, tuple(sorted(canonical)))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def n_components(self) -> int:
        return nx.number_connected_components(self.to_networkx())

    @cached_property
    def incidences(self) -> Tuple["IncidencePair", ...]:
        """I_Γ in canonical order: for each edge, its lower then its higher endpoint."""
        return tuple(IncidencePair(v, e) for e, edge in enumerate(self.edges) for v in edge)

    def incident_edges(self, v: int) -> List[int]:
        return [e for e, edge in enumerate(self.edges) if v in edge]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n_vertices))
        g.add_edges_from(self.edges)
        return g

    def to_complex(self) -> SimplicialComplex:
        faces = [(v,) for v in range(self.n_vertices)] + list(self.edges)
        return SimplicialComplex(tuple(faces))

    def to_json(self) -> dict:
        return {"n_vertices": self.n_vertices, "edges": [list(edge) for edge in self.edges]}


@dataclass(frozen=True)
class IncidencePair:
    vertex: int
    edge: int


@dataclass(frozen=True)
class HasseDiagram:
    """
    Hasse diagram of a complex: one directed edge (upper, lower) per codimension-1
    containment, as indices into complex.faces, ordered by (upper, lower).
    """
    complex: SimplicialComplex
    edges: Tuple[Tuple[int, int], ...]

    @property
    def nodes(self) -> Tuple[Face, ...]:
        return self.complex.faces

    @property
    def n_nodes(self) -> int:
        return len(self.complex.faces)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def node_edges(self) -> Tuple[Tuple[int, ...], ...]:
        """Hasse edge indices touching each node."""
        touching: List[List[int]] = [[] for _ in range(self.n_nodes)]
        for i, (upper, lower) in enumerate(self.edges):
            touching[upper].append(i)
            touching[lower].append(i)
        return tuple(tuple(t) for t in touching)

    def to_json(self) -> dict:
        faces = self.complex.faces
        return {
            "faces": [list(face) for face in faces],
            "edges": [[list(faces[upper]), list(faces[lower])] for upper, lower in self.edges],
        }
