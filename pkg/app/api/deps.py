from __future__ import annotations

import logging
from fractions import Fraction
from typing import Callable, TypeVar

from fastapi import HTTPException

from app.core.errors import InfProbError

logger = logging.getLogger(__name__)

T = TypeVar("T")


def run_engine(operation: str, call: Callable[[], T]) -> T:
    """Run an engine call, mapping domain errors onto their HTTP status."""
    try:
        return call()
    except InfProbError as exc:
        raise HTTPException(status_code=exc.http_status, detail=str(exc)) from exc
    except HTTPException:
        raise
    except Exception as exc:  # noqa: BLE001
        logger.exception("%s failed", operation)
        raise HTTPException(status_code=500, detail=f"{operation} failed") from exc


def parse_rational(name: str, raw: str) -> Fraction:
    try:
        return Fraction(raw.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise HTTPException(status_code=422, detail=f"{name} must be a rational number like 3, 0.5 or 1/2") from exc
