from fastapi import APIRouter

from complexes.routers import complex_router, graph_router
from families.routers import family_router
from flows.routers import flow_router
from randlab.routers import experiment_router

api_router = APIRouter()

api_router.include_router(graph_router, prefix='', tags=['Graphs'])
api_router.include_router(complex_router, prefix='', tags=['Complexes'])
api_router.include_router(flow_router, prefix='', tags=['Flows'])
api_router.include_router(family_router, prefix='', tags=['Families'])
api_router.include_router(experiment_router, prefix='', tags=['Experiments'])
