from typing import Optional

from pydantic import BaseModel, Field

from complexes.schemas import GraphSource


class McRequest(GraphSource):
    samples: int = Field(10_000, ge=1, le=10_000_000)
    seed: int
    jobs: int = Field(1, ge=1)


class McResponse(BaseModel):
    samples: int
    hits: int
    estimate: float
    ci: float
    ci_low: float
    ci_high: float
    method: str
    seed: int
    h: Optional[float] = None
    h_upper: float
