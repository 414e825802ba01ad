"""
Schemas Pydantic para parámetros y vectores de Lorentz
"""
import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


def parse_extended_real(value) -> float:
    """Acepta números o los literales 'inf' / 'infinity' / '∞'."""
    if isinstance(value, str):
        texto = value.strip().lower()
        if texto in ("inf", "+inf", "infinity", "∞"):
            return math.inf
        if "/" in texto:
            num, den = texto.split("/", 1)
            return float(num) / float(den)
        return float(texto)
    return float(value)


class Params(BaseModel):
    """Par (p, q) de un espacio de Lorentz; ambos en (0, ∞]."""

    p: float = Field(..., gt=0)
    q: float = Field(..., gt=0)

    model_config = ConfigDict(frozen=True)

    @field_validator("p", "q", mode="before")
    @classmethod
    def _parse(cls, value):
        value = parse_extended_real(value)
        if math.isnan(value):
            raise ValueError("NaN no es un parámetro válido")
        return value

    @property
    def p_inf(self) -> bool:
        return math.isinf(self.p)

    @property
    def q_inf(self) -> bool:
        return math.isinf(self.q)

    @property
    def inv_p(self) -> float:
        return 0.0 if self.p_inf else 1.0 / self.p

    def label(self) -> str:
        return f"p={format_extended(self.p)},q={format_extended(self.q)}"


def format_extended(value: float) -> str:
    return "inf" if math.isinf(value) else repr(float(value))


class Vector(BaseModel):
    entries: Tuple[float, ...] = Field(..., min_length=1)

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    @property
    def n(self) -> int:
        return len(self.entries)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=np.float64)


class RearrangedVector(BaseModel):
    """Reordenamiento no creciente x* de (|x_1|, …, |x_n|)."""

    entries: Tuple[float, ...] = Field(..., min_length=1)

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    @model_validator(mode="after")
    def _non_increasing(self):
        entradas = self.entries
        if entradas[-1] < 0:
            raise ValueError("el reordenamiento debe ser no negativo")
        for actual, siguiente in zip(entradas, entradas[1:]):
            if actual < siguiente:
                raise ValueError("el reordenamiento debe ser no creciente")
        return self
