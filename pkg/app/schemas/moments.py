from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class MomentPolyResponse(BaseModel):
    word: str
    variables: List[str]
    coefficients: Dict[str, str] = Field(..., description="monomial -> exact coefficient as p/q")
    text: str
    limit: Optional[str] = None
    infinitesimal: Optional[str] = None


class EnumerationResponse(BaseModel):
    kind: str
    n: int
    count: int
    items: List[dict] = Field(default_factory=list)
