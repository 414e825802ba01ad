"""
Endpoints de números de entropía: curvas de cotas y construcciones
"""
import logging

from fastapi import APIRouter, Depends, Query

from ..api.dependencies import get_precision
from ..schemas.entropy import CodeRequest, PackingRequest
from ..schemas.output import OutputRecord
from ..schemas.volume import PrecisionContext
from ..services import report_service

router = APIRouter(prefix="/api/v1/entropy", tags=["entropy"])
logger = logging.getLogger(__name__)


@router.get("/curve", response_model=OutputRecord)
def get_curve(
    n: int = Query(..., ge=1),
    k_max: int = Query(..., ge=1),
    ctx: PrecisionContext = Depends(get_precision),
):
    """Cotas inferior y superior de e_k(id: ℓ^n_{1,∞} → ℓ^n_1)"""
    return report_service.entropy_curve_report(n, k_max, ctx)


@router.post("/code", response_model=OutputRecord)
def post_code(data: CodeRequest):
    """Familia aleatoria de k-subconjuntos con intersecciones < k/2"""
    logger.info("Construyendo familia de código n=%d, k=%d, semilla=%d", data.n, data.k, data.seed)
    return report_service.code_report(data.n, data.k, data.seed)


@router.post("/packing", response_model=OutputRecord)
def post_packing(data: PackingRequest):
    """Vectores de empaquetamiento por niveles μ..ν"""
    logger.info("Construyendo empaquetamiento n=%d, μ=%d, ν=%d", data.n, data.mu, data.nu)
    return report_service.packing_report(data.n, data.mu, data.nu, data.seed)
