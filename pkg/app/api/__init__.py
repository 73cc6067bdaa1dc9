# FastAPI routers grouped under app.api.*
from . import cumulants, moments, transforms

__all__ = ["cumulants", "moments", "transforms"]
