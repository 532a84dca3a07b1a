from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from errors import InputError
from .builders import build_complex, family_from_spec
from .models import Graph, SimplicialComplex


class GraphIn(BaseModel):
    n_vertices: int = Field(..., ge=0)
    edges: List[List[int]] = []

    @field_validator('edges')
    def validate_edges(cls, v):
        for i, edge in enumerate(v):
            if len(edge) != 2:
                raise ValueError(f'edge {i} must have exactly two endpoints')
            if not edge[0] < edge[1]:
                raise ValueError(f'edge {i} must be written [u, v] with u < v')
            if i and not v[i - 1] < edge:
                raise ValueError(f'edge {i} is out of order; edges must be sorted and distinct')
        return v

    def to_graph(self) -> Graph:
        return Graph.from_edges(self.n_vertices, self.edges)


class ComplexIn(BaseModel):
    facets: List[List[int]] = Field(..., min_length=1)

    def to_complex(self) -> SimplicialComplex:
        return build_complex(self.facets)


class GraphSource(BaseModel):
    """A graph given inline or as a family spec such as `cycle:4`."""
    graph: Optional[GraphIn] = None
    family: Optional[str] = None

    @model_validator(mode='after')
    def exactly_one(self):
        if (self.graph is None) == (self.family is None):
            raise ValueError('give exactly one of graph or family')
        return self

    def resolve(self) -> Graph:
        if self.family is not None:
            return family_from_spec(self.family)
        return self.graph.to_graph()


class HasseResponse(BaseModel):
    faces: List[List[int]]
    edges: List[List[List[int]]]


def as_input_error(e: ValidationError, source: str) -> InputError:
    first = e.errors()[0]
    location = ".".join(str(part) for part in first["loc"])
    return InputError(f"{source}: {first['msg']}", location=location)


def parse_graph_json(text: str, source: str = "<json>") -> Graph:
    try:
        return GraphIn.model_validate_json(text).to_graph()
    except ValidationError as e:
        raise as_input_error(e, source) from e


def parse_complex_json(text: str, source: str = "<json>") -> SimplicialComplex:
    try:
        return ComplexIn.model_validate_json(text).to_complex()
    except ValidationError as e:
        raise as_input_error(e, source) from e


def parse_edge_list(text: str, source: str = "<edge-list>") -> Graph:
    """One `u v` pair per line; `#` starts a comment; vertex count inferred."""
    edges = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"{source}: expected 'u v'", line=line_no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as e:
            raise InputError(f"{source}: vertex ids must be integers", line=line_no) from e
        if u < 0 or v < 0:
            raise InputError(f"{source}: vertex ids must be non-negative", line=line_no)
        if u == v:
            raise InputError(f"{source}: loops are not allowed", line=line_no)
        edges.append((u, v))
    n_vertices = max((max(edge) for edge in edges), default=-1) + 1
    if len({(min(e), max(e)) for e in edges}) != len(edges):
        raise InputError(f"{source}: multiple edges are not allowed")
    return Graph.from_edges(n_vertices, edges)


def dump_edge_list(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges)


def load_graph(path: Union[str, Path]) -> Graph:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e
    if text.lstrip().startswith("{"):
        if '"facets"' in text:
            raise InputError(f"{path}: expected a graph, got a complex")
        return parse_graph_json(text, str(path))
    return parse_edge_list(text, str(path))


def load_complex(path: Union[str, Path]) -> SimplicialComplex:
    """Complex JSON, or any graph file read as a 1-dimensional complex."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e
    if text.lstrip().startswith("{") and '"facets"' in text:
        return parse_complex_json(text, str(path))
    return load_graph(path).to_complex()


class ProbRequest(GraphSource):
    engine: str = 'auto'
    seed: Optional[int] = None
    samples: Optional[int] = Field(None, ge=1)
    limit: Optional[int] = Field(None, ge=1)
