from typing import List

from fastapi import APIRouter, Query
from pydantic import BaseModel

from .table import family_table


family_router = APIRouter(prefix="/families", tags=["Families"])


class FamilyRowResponse(BaseModel):
    family: str
    params: str
    N: int
    P_num: str
    P_den: str
    P_float: float
    h: float


@family_router.get("/table", response_model=List[FamilyRowResponse])
def get_table(n_max: int = Query(8, ge=1, le=64)):
    return [row.to_dict() for row in family_table(n_max)]
