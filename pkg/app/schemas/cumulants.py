from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field

Value = Union[str, int, float]


class CumulantRequest(BaseModel):
    n_max: Optional[int] = Field(default=None, ge=1)
    values: Dict[str, List[Value]] = Field(
        ..., description='word -> [φ, φ′]; words like "x x y", exact values as "p/q" strings'
    )
    groups: Optional[List[List[str]]] = Field(default=None, description="letter groups for the freeness check")


class CumulantResponse(BaseModel):
    n_max: int
    exact: bool
    values: Dict[str, Union[List[Value], Value]] = Field(..., description="word -> [κ, κ′], or κ alone")
    freeness: Optional[dict] = None
