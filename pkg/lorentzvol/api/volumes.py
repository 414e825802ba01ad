"""
Endpoints de volúmenes de bolas unidad
"""
from typing import List

from fastapi import APIRouter, Depends, Query

from ..api.dependencies import get_mc_config, get_precision
from ..schemas.output import OutputRecord
from ..schemas.volume import McConfig, PrecisionContext
from ..services import report_service

router = APIRouter(prefix="/api/v1/volumes", tags=["volumes"])


@router.get("", response_model=OutputRecord)
def get_volume(
    n: List[int] = Query(..., description="Dimensiones"),
    p: str = Query(..., description="p en (0, inf]"),
    q: str = Query(..., description="q en (0, inf]"),
    method: str = Query("auto"),
    ctx: PrecisionContext = Depends(get_precision),
    mc_config: McConfig = Depends(get_mc_config),
):
    """vol(B^n_{p,q}) para cada n pedido"""
    params = report_service.build_params(p, q)
    method = "monte-carlo" if method == "mc" else method
    return report_service.volume_report(n, params, method, ctx, mc_config)


@router.get("/table", response_model=OutputRecord)
def get_volume_table(
    p_list: str = Query("0.5,1,2,100", description="Columnas p separadas por comas"),
    n_max: int = Query(15, ge=1),
    q: str = Query("inf"),
    ctx: PrecisionContext = Depends(get_precision),
):
    """Rejilla de volúmenes con filas n y columnas p"""
    columnas = [p for p in p_list.split(",") if p.strip()]
    return report_service.table_report(columnas, n_max, q, ctx)
