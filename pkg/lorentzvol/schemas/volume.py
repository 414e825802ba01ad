"""
Schemas Pydantic para volúmenes exactos y Monte Carlo
"""
import math
from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from ..config import settings
from .lorentz import Params


VolumeMethod = Literal["recursion", "explicit", "integral", "product-q1", "dirichlet", "monte-carlo"]


class PrecisionContext(BaseModel):
    """Bits de mantisa para toda la aritmética de las fórmulas exactas."""

    mantissa_bits: int = Field(default_factory=lambda: settings.LORENTZVOL_BITS, ge=53)
    strict: bool = False

    model_config = ConfigDict(frozen=True)

    @property
    def mp(self):
        from ..utils.precision import mp_context

        return mp_context(self.mantissa_bits)

    @property
    def flag_threshold(self) -> float:
        """Umbral de condición M/r a partir del cual se marca pérdida de precisión."""
        return 2.0 ** (self.mantissa_bits - 20)


class VolumeResult(BaseModel):
    # 0.0 o inf cuando no cabe en 64 bits; log_value sigue siendo exacto
    value: float = Field(..., ge=0)
    log_value: float
    method: VolumeMethod
    n: int = Field(..., ge=0)
    params: Params
    error_bound: float = Field(..., ge=0)
    mantissa_bits: Optional[int] = None
    precision_flagged: bool = False
    condition: Optional[float] = None
    out_of_range: bool = False
    hits: Optional[int] = None
    samples: Optional[int] = None

    model_config = ConfigDict(frozen=True)


class Composition(BaseModel):
    """Elemento de K_n; partial_sums es su imagen en M_n."""

    parts: Tuple[int, ...] = Field(..., min_length=1)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _positive_parts(self):
        if any(part < 1 for part in self.parts):
            raise ValueError("todas las partes deben ser >= 1")
        return self

    @computed_field
    @property
    def n(self) -> int:
        return sum(self.parts)

    @computed_field
    @property
    def length(self) -> int:
        return len(self.parts)

    @computed_field
    @property
    def partial_sums(self) -> Tuple[int, ...]:
        sumas = [0]
        for part in self.parts:
            sumas.append(sumas[-1] + part)
        return tuple(sumas)


class WeightVector(BaseModel):
    """Vector estrictamente decreciente a_1 > … > a_n > 0.

    Si ``exponent_p`` está definido, las entradas son a_j = j^{-1/p} y los motores
    exactos las recalculan a la precisión del contexto.
    """

    entries: Tuple[float, ...] = Field(..., min_length=1)
    exponent_p: Optional[float] = None

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    @model_validator(mode="after")
    def _strictly_decreasing(self):
        if self.entries[-1] <= 0:
            raise ValueError("las entradas deben ser positivas")
        for actual, siguiente in zip(self.entries, self.entries[1:]):
            if not actual > siguiente:
                raise ValueError("las entradas deben ser estrictamente decrecientes")
        return self

    @classmethod
    def power(cls, n: int, p: float) -> "WeightVector":
        """a^(p) con a_j = j^{-1/p}, 1 <= j <= n."""
        if n < 1:
            raise ValueError("n debe ser >= 1")
        if not 0 < p < math.inf:
            raise ValueError("a^(p) requiere 0 < p < inf")
        return cls(entries=tuple(j ** (-1.0 / p) for j in range(1, n + 1)), exponent_p=p)

    @property
    def n(self) -> int:
        return len(self.entries)


class McConfig(BaseModel):
    samples: int = Field(default_factory=lambda: settings.MC_SAMPLES, ge=1_000)
    seed: int = Field(default_factory=lambda: settings.MC_SEED, ge=0, lt=2**64)
    confidence: float = Field(default_factory=lambda: settings.MC_CONFIDENCE, gt=0, lt=1)
    chunk_size: int = Field(default_factory=lambda: settings.MC_CHUNK_SIZE, ge=1)
    workers: int = Field(default_factory=lambda: settings.MC_WORKERS, ge=1)

    model_config = ConfigDict(frozen=True)


class McEstimate(BaseModel):
    volume: float = Field(..., ge=0)
    ci_half_width: float = Field(..., ge=0)
    hits: int = Field(..., ge=0)
    samples: int = Field(..., ge=1)
    n: int
    params: Params
    confidence: float
    orthant: bool = False

    model_config = ConfigDict(frozen=True)
