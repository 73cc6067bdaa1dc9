import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.api import cumulants, moments, transforms
from app.core.config import settings
from app.core.json_response import ExactJSONResponse

logger = logging.getLogger(__name__)

default_origins = ["http://localhost:3000"]
origins = list({*default_origins, *settings.cors_origin_list})

app = FastAPI(title="infprob API", version="0.1.0", default_response_class=ExactJSONResponse)

app.add_middleware(
    CORSMiddleware,
    allow_origins=origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(moments.router, prefix="/api", tags=["moments"])
app.include_router(cumulants.router, prefix="/api", tags=["cumulants"])
app.include_router(transforms.router, prefix="/api", tags=["transforms"])


@app.get("/health")
async def health() -> dict[str, str]:
    return {"status": "ok"}
