import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from errors import MorseFlowError
from routers import api_router
from settings import settings


logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    logging.basicConfig(level=settings.LOG_LEVEL)
    logger.info("Morse Flow API starting (oracle limit %d)", settings.ORACLE_LIMIT)
    try:

        yield
    finally:

        logger.info("Morse Flow API stopped")

app = FastAPI(
    title="Morse Flow API",
    version="1.0",
    openapi_url="/api/openapi.json",
    default_response_class=JSONResponse,
    lifespan=lifespan,
    debug=settings.DEBUG,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(MorseFlowError)
async def morse_flow_error_handler(request: Request, exc: MorseFlowError):
    return JSONResponse(status_code=exc.http_status, content={"detail": exc.to_dict()})


app.include_router(
    api_router,
    prefix="/api"
)

if __name__ == "__main__":
    import uvicorn

    uvicorn.run("main:app", host=settings.HOST, port=settings.PORT, reload=settings.DEBUG)
