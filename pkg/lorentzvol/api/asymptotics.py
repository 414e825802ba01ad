"""
Endpoints de comportamiento asintótico
"""
from fastapi import APIRouter, Depends, Query

from ..api.dependencies import get_mc_config, get_precision
from ..schemas.output import OutputRecord
from ..schemas.volume import McConfig, PrecisionContext
from ..services import report_service

router = APIRouter(prefix="/api/v1/asymptotics", tags=["asymptotics"])


@router.get("/root-volume", response_model=OutputRecord)
def get_root_volume(
    p: str = Query(...),
    q: str = Query(...),
    n_max: int = Query(..., ge=1),
    ctx: PrecisionContext = Depends(get_precision),
    mc_config: McConfig = Depends(get_mc_config),
):
    """Sucesión vol^{1/n} y su versión normalizada"""
    params = report_service.build_params(p, q)
    return report_service.asymptotics_report(params, n_max, ctx, mc_config)


@router.get("/ratio", response_model=OutputRecord)
def get_ratio(
    p: str = Query(...),
    n_max: int = Query(..., ge=1),
    ctx: PrecisionContext = Depends(get_precision),
):
    """R_{p,n} con su cota inferior explícita para n par"""
    return report_service.ratio_report(report_service.build_exponent(p), n_max, ctx)
