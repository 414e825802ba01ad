"""
Schemas Pydantic para sucesiones asintóticas y razones de volumen
"""
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class SequencePoint(BaseModel):
    n: int = Field(..., ge=1)
    raw: float = Field(..., gt=0)
    normalized: float = Field(..., gt=0)
    method: str
    log_volume: float
    rel_error_bound: float = Field(0.0, ge=0)

    model_config = ConfigDict(frozen=True)


class RatioPoint(BaseModel):
    n: int = Field(..., ge=1)
    ratio: float = Field(..., ge=1)
    lower_bound: Optional[float] = None
    growth: Optional[float] = None
    rel_error_bound: float = Field(0.0, ge=0)
    precision_flagged: bool = False

    model_config = ConfigDict(frozen=True)


class SandwichPoint(BaseModel):
    """n^{-1/p} / vol^{1/n} y vol^{1/n} / ((1+log n)/n)^{1/p} para la bola débil."""

    n: int = Field(..., ge=1)
    lower_ratio: float
    upper_ratio: float

    model_config = ConfigDict(frozen=True)


class LogWindow(BaseModel):
    """Horquilla 1/log(n+1) <= (∏ 1/log(k+1))^{1/n} <= (1/n)(1/log 2 + li(n+1) - li(2))."""

    n: int = Field(..., ge=1)
    lower: float
    value: float
    upper: float

    model_config = ConfigDict(frozen=True)
