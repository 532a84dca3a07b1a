from fastapi import APIRouter, status

from engines import ProbReport, compute_prob
from errors import MorseFlowError, http_error
from .builders import family_from_spec, hasse
from .schemas import ComplexIn, GraphIn, HasseResponse, ProbRequest


graph_router = APIRouter(prefix="/graphs", tags=["Graphs"])
complex_router = APIRouter(prefix="/complexes", tags=["Complexes"])


# FAMILY
@graph_router.get("/family/{spec}", response_model=GraphIn)
def get_family(spec: str):
    try:
        return family_from_spec(spec).to_json()
    except MorseFlowError as e:
        raise http_error(e)


# PROBABILITY
@graph_router.post("/prob", response_model=ProbReport, status_code=status.HTTP_200_OK)
def post_prob(request: ProbRequest):
    try:
        g = request.resolve()
        return compute_prob(g, request.engine, seed=request.seed, samples=request.samples,
                            limit=request.limit).report()
    except MorseFlowError as e:
        raise http_error(e)


# HASSE DIAGRAM
@complex_router.post("/hasse", response_model=HasseResponse)
def post_hasse(complex_in: ComplexIn):
    try:
        return hasse(complex_in.to_complex()).to_json()
    except MorseFlowError as e:
        raise http_error(e)
