"""
Dependencias comunes: contexto de precisión y configuración Monte Carlo desde la query.
"""
from typing import Optional

from fastapi import Query

from ..schemas.volume import McConfig, PrecisionContext
from ..services import report_service


def get_precision(
    bits: Optional[int] = Query(None, description="Bits de mantisa (por defecto LORENTZVOL_BITS)"),
    strict: bool = Query(False, description="Tratar la pérdida de precisión como error"),
) -> PrecisionContext:
    return report_service.build_precision(bits, strict)


def get_mc_config(
    samples: Optional[int] = Query(None),
    seed: Optional[int] = Query(None),
) -> McConfig:
    return report_service.build_mc_config(samples=samples, seed=seed)
