from fastapi import APIRouter

from errors import MorseFlowError, http_error
from .sampling import mc_prob
from .schemas import McRequest, McResponse


experiment_router = APIRouter(prefix="/experiments", tags=["Experiments"])


@experiment_router.post("/mc", response_model=McResponse)
def post_mc(request: McRequest):
    try:
        g = request.resolve()
        estimate = mc_prob(g, request.samples, request.seed, jobs=request.jobs)
    except MorseFlowError as e:
        raise http_error(e)
    h = estimate.h(g.n_edges)
    return {**estimate.to_json(), "h": h.point, "h_upper": h.upper}
