"""
Aplicación principal FastAPI
"""
import logging

from fastapi import FastAPI, Request
from fastapi.encoders import jsonable_encoder
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .api import asymptotics, entropy, routes, volumes
from .config import settings
from .exceptions import LorentzVolError

logger = logging.getLogger(__name__)

app = FastAPI(
    title="LorentzVol",
    description="API para volúmenes de bolas unidad de Lorentz y números de entropía",
    version=settings.APP_VERSION,
)

# Configurar CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.cors_origins_list,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(LorentzVolError)
async def lorentzvol_error_handler(request: Request, exc: LorentzVolError):
    """Convierte los errores de dominio en respuestas HTTP con el registro parcial si existe"""
    logger.warning("%s en %s: %s", exc.code, request.url.path, exc.detail)
    contenido = {"detail": exc.detail, "code": exc.code, "context": jsonable_encoder(exc.context)}
    if exc.record is not None:
        contenido["partial"] = exc.record.model_dump(mode="json")
    return JSONResponse(status_code=exc.status_code, content=contenido)


# Incluir routers
app.include_router(routes.router)
app.include_router(volumes.router)
app.include_router(asymptotics.router)
app.include_router(entropy.router)


@app.on_event("startup")
async def startup_event():
    """Evento que se ejecuta al iniciar la aplicación"""
    logger.info("Iniciando %s v%s (%s)", settings.APP_NAME, settings.APP_VERSION, settings.ENVIRONMENT)
    logger.info("Precisión por defecto: %d bits", settings.LORENTZVOL_BITS)


@app.on_event("shutdown")
async def shutdown_event():
    """Evento que se ejecuta al cerrar la aplicación"""
    logger.info("Cerrando aplicación...")
