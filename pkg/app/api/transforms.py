from __future__ import annotations

from fastapi import APIRouter, Query

from app.api.deps import parse_rational, run_engine
from app.core.cache_utils import cached
from app.schemas.transforms import DensityResponse, TransformResponse
from app.services.measures import density_rows
from app.services.transforms import ensemble_transform

router = APIRouter()


@router.get(
    "/transform/{direction}",
    response_model=TransformResponse,
    summary="Infinitesimal transform",
    description="g-from-r or r-from-g on the GOE or Wishart series, compared with the known answer.",
)
def transform(
    direction: str,
    ensemble: str = Query("goe"),
    order: int = Query(12, ge=2),
    c: str = Query("1"),
    cprime: str = Query("1"),
) -> TransformResponse:
    c_value, c_prime = parse_rational("c", c), parse_rational("cprime", cprime)
    payload = run_engine(
        "transform",
        lambda: cached(
            "transform",
            direction,
            ensemble,
            order,
            c_value,
            c_prime,
            factory=lambda: ensemble_transform(direction, ensemble, order, c_value, c_prime),
        ),
    )
    return TransformResponse(**payload)


@router.get(
    "/density",
    response_model=DensityResponse,
    summary="Limit densities",
    description="(x, μ, μ′) rows on a midpoint grid of the support, with the atoms of both measures.",
)
def density(
    ensemble: str = Query("wishart"),
    c: float = Query(1.0, gt=0),
    cprime: float = Query(1.0),
    grid: int = Query(200, ge=1, le=10000),
) -> DensityResponse:
    payload = run_engine("density", lambda: density_rows(ensemble, grid, c, cprime))
    return DensityResponse(**payload, c=c if ensemble == "wishart" else None, c_prime=cprime if ensemble == "wishart" else None)
