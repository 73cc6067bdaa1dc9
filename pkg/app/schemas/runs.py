from typing import List, Optional

from pydantic import BaseModel, ConfigDict


class SampleStatsPayload(BaseModel):
    estimate: float
    std_error: float
    samples: int


class EstimatePayload(BaseModel):
    estimate: Optional[float] = None
    std_error: Optional[float] = None


class SimulationResponse(BaseModel):
    """One size: estimate against the exact value. Several sizes: limit and 1/N correction."""

    ensemble: str
    n: int
    seed: Optional[int] = None
    N: Optional[int] = None
    M: Optional[int] = None
    estimate: Optional[float] = None
    std_error: Optional[float] = None
    samples: Optional[int] = None
    exact: Optional[str] = None
    exact_float: Optional[float] = None
    z_score: Optional[float] = None
    limit: Optional[EstimatePayload] = None
    infinitesimal: Optional[EstimatePayload] = None
    sizes: Optional[List[int]] = None
    per_size: Optional[List[SampleStatsPayload]] = None


class VerificationResponse(BaseModel):
    # each suite reports its own evidence next to these two fields
    model_config = ConfigDict(extra="allow")

    suite: str
    passed: bool
