import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Sequence, Tuple

from errors import InputError
from .models import Graph, HasseDiagram, SimplicialComplex, face_key


logger = logging.getLogger(__name__)


def build_complex(facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Downward closure of the facets, in canonical face order."""
    faces = set()
    for facet in facets:
        vertices = tuple(sorted(set(facet)))
        if not vertices:
            raise InputError("empty facet")
        if any(not isinstance(v, int) or v < 0 for v in vertices):
            raise InputError("vertex ids must be non-negative integers", facet=list(vertices))
        for size in range(1, len(vertices) + 1):
            faces.update(combinations(vertices, size))
    return SimplicialComplex(tuple(sorted(faces, key=face_key)))


def hasse(complex: SimplicialComplex) -> HasseDiagram:
    index = complex.index
    edges = []
    for upper, face in enumerate(complex.faces):
        if len(face) == 1:
            continue
        lowers = sorted(index[boundary] for boundary in combinations(face, len(face) - 1))
        edges.extend((upper, lower) for lower in lowers)
    return HasseDiagram(complex, tuple(edges))


def graph_hasse(g: Graph) -> HasseDiagram:
    """Hasse diagram of a graph; Hasse edge 2e+i runs from b_e to the i-th endpoint of e."""
    return hasse(g.to_complex())


# Named families

def path_graph(n: int) -> Graph:
    if n < 1:
        raise InputError("L_n requires n >= 1", n=n)
    return Graph(n + 1, tuple((i, i + 1) for i in range(n)))


def star_graph(n: int) -> Graph:
    if n < 1:
        raise InputError("S_n requires n >= 1", n=n)
    return Graph(n + 1, tuple((0, i) for i in range(1, n + 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("C_n requires n >= 3", n=n)
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    if n < 2:
        raise InputError("K_n requires n >= 2", n=n)
    return Graph(n, tuple(combinations(range(n), 2)))


def _glued_paths(arms: Sequence[int]) -> Graph:
    # glue vertex 0, then each arm's vertices laid out in argument order
    edges = []
    next_vertex = 1
    for length in arms:
        previous = 0
        for _ in range(length):
            edges.append((previous, next_vertex))
            previous = next_vertex
            next_vertex += 1
    return Graph.from_edges(next_vertex, edges)


def octopus_graph(arms: Sequence[int]) -> Graph:
    if len(arms) < 3:
        raise InputError("an octopus needs at least 3 arms", arms=list(arms))
    if any(length < 1 for length in arms):
        raise InputError("octopus arms must have length >= 1", arms=list(arms))
    return _glued_paths(arms)


def dandelion_graph(n: int, m: int) -> Graph:
    """D_{n,m} = O(n, 1, ..., 1) with m unit arms."""
    if n < 1 or m < 1:
        raise InputError("D_{n,m} requires n >= 1 and m >= 1", n=n, m=m)
    return _glued_paths([n] + [1] * m)


FAMILIES = {
    "path": path_graph,
    "star": star_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "octopus": octopus_graph,
    "dandelion": dandelion_graph,
}

ALIASES = {"L": "path", "S": "star", "C": "cycle", "K": "complete", "O": "octopus", "D": "dandelion"}


def family(kind: str, *params: int) -> Graph:
    name = ALIASES.get(kind, kind)
    if name not in FAMILIES:
        raise InputError(f"unknown family '{kind}'", known=sorted(FAMILIES))
    if name == "octopus":
        return octopus_graph(list(params))
    expected = 2 if name == "dandelion" else 1
    if len(params) != expected:
        raise InputError(f"family '{name}' takes {expected} parameter(s)", params=list(params))
    return FAMILIES[name](*params)


def parse_family_spec(spec: str) -> Tuple[str, List[int]]:
    """`name:params` with comma-separated integers, e.g. `octopus:2,1,1`."""
    name, _, raw = spec.partition(":")
    if not raw:
        raise InputError("family spec must look like name:params", spec=spec)
    try:
        params = [int(p) for p in raw.split(",")]
    except ValueError as e:
        raise InputError("family parameters must be integers", spec=spec) from e
    return ALIASES.get(name, name), params


def family_from_spec(spec: str) -> Graph:
    name, params = parse_family_spec(spec)
    return family(name, *params)


# Surgery

def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n_vertices
    shifted = tuple((u + shift, v + shift) for u, v in g2.edges)
    return Graph(g1.n_vertices + g2.n_vertices, g1.edges + shifted)


@dataclass(frozen=True)
class Quotient:
    graph: Graph
    projection: Tuple[int, ...]
    # old edge index -> edge index in the quotient's canonical order
    edge_map: Tuple[int, ...]


def projection_from_partition(n_vertices: int, classes: Sequence[Iterable[int]]) -> Tuple[int, ...]:
    """Vertex -> class id, classes numbered by their smallest member."""
    blocks = [sorted(set(block)) for block in classes]
    if any(not block for block in blocks):
        raise InputError("empty class in partition")
    members = [v for block in blocks for v in block]
    if len(members) != len(set(members)):
        raise InputError("partition classes overlap")
    if sorted(members) != list(range(n_vertices)):
        raise InputError("partition must cover exactly the vertices 0..n-1", n_vertices=n_vertices)
    blocks.sort(key=lambda block: block[0])
    projection = [0] * n_vertices
    for class_id, block in enumerate(blocks):
        for v in block:
            projection[v] = class_id
    return tuple(projection)


def quotient(g: Graph, classes: Sequence[Iterable[int]]) -> Quotient:
    projection = projection_from_partition(g.n_vertices, classes)
    projected = []
    for u, v in g.edges:
        pu, pv = projection[u], projection[v]
        if pu == pv:
            raise InputError("identification creates a loop", edge=[u, v])
        projected.append((min(pu, pv), max(pu, pv)))
    if len(set(projected)) != len(projected):
        raise InputError("identification creates parallel edges")
    order = sorted(range(len(projected)), key=lambda i: projected[i])
    edge_map = [0] * len(projected)
    for new_index, old_index in enumerate(order):
        edge_map[old_index] = new_index
    graph = Graph(max(projection, default=-1) + 1, tuple(projected[i] for i in order))
    logger.debug("quotient: %d -> %d vertices", g.n_vertices, graph.n_vertices)
    return Quotient(graph, projection, tuple(edge_map))
