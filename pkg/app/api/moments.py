from __future__ import annotations

import logging
from typing import Optional

from fastapi import APIRouter, Query

from app.api.deps import parse_rational, run_engine
from app.core.cache_utils import cached
from app.core.json_response import fraction_text
from app.models.words import ColorWord
from app.schemas.moments import EnumerationResponse, MomentPolyResponse
from app.services.genus import goe_moment_poly, wishart_limit_extraction, wishart_moment_poly
from app.services.noncrossing import count_diagrams, enumerate_diagrams

router = APIRouter()
logger = logging.getLogger(__name__)


@router.get(
    "/moments/goe",
    response_model=MomentPolyResponse,
    summary="GOE moment polynomial",
    description="E(tr Xⁿ) for the N×N GOE as an exact polynomial in 1/N.",
)
def goe_moments(n: int = Query(..., ge=1)) -> MomentPolyResponse:
    poly = run_engine("goe moments", lambda: cached("goe-moments", n, factory=lambda: goe_moment_poly(n)))
    return MomentPolyResponse(
        word=f"x^{n}",
        variables=list(poly.variables),
        coefficients=poly.to_dict(),
        text=str(poly),
        limit=fraction_text(poly.coefficient(0)),
        infinitesimal=fraction_text(poly.coefficient(-1)),
    )


@router.get(
    "/moments/wishart",
    response_model=MomentPolyResponse,
    summary="Complex Wishart moment polynomial",
    description="μ_N of a word in independent Wisharts as a polynomial in M and N; with c (and c′) the limits too.",
)
def wishart_moments(
    word: str = Query(..., description='colors like "1,1,2" or letters like "XXY"'),
    c: Optional[str] = Query(None),
    cprime: str = Query("0"),
) -> MomentPolyResponse:
    parsed = run_engine("word parsing", lambda: ColorWord.parse(word))
    poly = run_engine(
        "wishart moments", lambda: cached("wishart-moments", str(parsed), factory=lambda: wishart_moment_poly(parsed))
    )
    limit = infinitesimal = None
    if c is not None:
        c_value, c_prime = parse_rational("c", c), parse_rational("cprime", cprime)
        pair = run_engine("wishart limits", lambda: wishart_limit_extraction(parsed, c_value, c_prime))
        limit, infinitesimal = fraction_text(pair[0]), fraction_text(pair[1])
    return MomentPolyResponse(
        word=str(parsed),
        variables=list(poly.variables),
        coefficients=poly.to_dict(),
        text=str(poly),
        limit=limit,
        infinitesimal=infinitesimal,
    )


@router.get(
    "/enumerate/{kind}",
    response_model=EnumerationResponse,
    summary="Enumerate diagram classes",
    description="pairings, nc, ncc2 (half-pairings) or nc2delta (symmetric annular pairings).",
)
def enumerate_kind(kind: str, n: int = Query(..., ge=0), count: bool = Query(False)) -> EnumerationResponse:
    if count:
        total = run_engine("count", lambda: cached("count", kind, n, factory=lambda: count_diagrams(kind, n)))
        return EnumerationResponse(kind=kind, n=n, count=total)
    items = run_engine("enumerate", lambda: enumerate_diagrams(kind, n))
    logger.info("enumerated %d %s diagrams for n=%d", len(items), kind, n)
    return EnumerationResponse(kind=kind, n=n, count=len(items), items=[item.to_dict() for item in items])
