from fastapi import APIRouter

from errors import MorseFlowError, http_error
from .schemas import CheckResponse, DeformIn, DeformResponse, MorseResponse, PrescriptionIn, run_flow


flow_router = APIRouter(prefix="/flows", tags=["Flows"])


@flow_router.post("/check", response_model=CheckResponse)
def check_flow(request: PrescriptionIn):
    try:
        return run_flow("check", request)
    except MorseFlowError as e:
        raise http_error(e)


@flow_router.post("/deform", response_model=DeformResponse)
def deform_flow(request: DeformIn):
    try:
        return run_flow("deform", request)
    except MorseFlowError as e:
        raise http_error(e)


@flow_router.post("/morse", response_model=MorseResponse)
def morse_function(request: PrescriptionIn):
    try:
        return run_flow("morse", request)
    except MorseFlowError as e:
        raise http_error(e)
