from __future__ import annotations

from fastapi import APIRouter

from app.api.deps import run_engine
from app.core.json_response import to_jsonable
from app.models.functional import InfFunctional
from app.schemas.cumulants import CumulantRequest, CumulantResponse
from app.services.cumulants import check_inf_freeness, moments_to_cumulants

router = APIRouter()


@router.post(
    "/cumulants",
    response_model=CumulantResponse,
    summary="Infinitesimal cumulants",
    description="(κ, κ′) on every stored word of an infinitesimal functional; optional freeness check over letter groups.",
)
def cumulants(payload: CumulantRequest) -> CumulantResponse:
    functional = run_engine("functional parsing", lambda: InfFunctional.from_dict(payload.model_dump()))
    result = run_engine("cumulants", lambda: moments_to_cumulants(functional))
    freeness = None
    if payload.groups:
        groups = payload.groups
        freeness = run_engine("freeness", lambda: check_inf_freeness(functional, groups)).to_dict()
    data = result.to_dict()
    return CumulantResponse(
        n_max=data["n_max"], exact=data["exact"], values=to_jsonable(data["values"]), freeness=to_jsonable(freeness)
    )
