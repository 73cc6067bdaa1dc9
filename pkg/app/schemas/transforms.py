from typing import List, Optional

from pydantic import BaseModel


class SeriesPayload(BaseModel):
    regime: str
    order: int
    values: List[str]
    derivatives: List[str]


class TransformResponse(BaseModel):
    direction: str
    ensemble: str
    order: int
    series: SeriesPayload
    matches_expected: bool


class AtomPayload(BaseModel):
    location: float
    mass: float


class DensityAtoms(BaseModel):
    mu: List[AtomPayload]
    mu_prime: List[AtomPayload]


class DensityResponse(BaseModel):
    ensemble: str
    support: List[float]
    columns: List[str]
    rows: List[List[float]]
    atoms: DensityAtoms
    c: Optional[float] = None
    c_prime: Optional[float] = None
