"""
Schemas Pydantic para familias de códigos, empaquetamientos y curvas de entropía
"""
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .lorentz import Vector


class IndexSetFamily(BaseModel):
    """Subconjuntos T_1, …, T_M de {1..n} de tamaño k con intersecciones < k/2."""

    n: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    sets: List[Tuple[int, ...]]
    target: int = Field(..., ge=1)
    lemma_bound: float
    max_intersection: int = 0
    seed: int = 0
    certified: bool = False

    @property
    def count(self) -> int:
        return len(self.sets)

    @property
    def complete(self) -> bool:
        return self.count >= self.target

    @model_validator(mode="after")
    def _certificado_consistente(self):
        if self.certified:
            if self.count < self.lemma_bound:
                raise ValueError("una familia certificada debe alcanzar la cota (n/4k)^{k/2}")
            if 2 * self.max_intersection >= self.k:
                raise ValueError("una familia certificada debe tener intersecciones < k/2")
        return self


class PackingFamily(BaseModel):
    n: int
    mu: int = Field(..., ge=1)
    nu: int = Field(..., ge=1)
    vectors: List[Vector]
    weak_norm_bound: float
    min_pairwise_l1: float
    weak_norm_exact: str
    min_pairwise_l1_exact: str
    level_sizes_ok: bool = True

    @property
    def count(self) -> int:
        return len(self.vectors)

    @model_validator(mode="after")
    def _cotas(self):
        if self.weak_norm_bound > 4.0 / 3.0 + 1e-12:
            raise ValueError("‖x^j‖_{1,∞} supera 4/3")
        if self.min_pairwise_l1 < (self.nu - self.mu + 1) / 8.0 - 1e-12:
            raise ValueError("la separación ℓ_1 es menor que (ν-μ+1)/8")
        return self


class EntropyBoundPoint(BaseModel):
    k: int = Field(..., ge=1)
    lower: float = Field(..., ge=0)
    upper: float = Field(..., ge=0)
    volume_lower: float
    packing_lower: Optional[float] = None
    packing_mu: Optional[int] = None
    packing_nu: Optional[int] = None
    step3_l: Optional[int] = None
    step3_tail: Optional[float] = None

    model_config = ConfigDict(frozen=True)


class EntropyBoundCurve(BaseModel):
    n: int = Field(..., ge=1)
    points: List[EntropyBoundPoint]
    c1: float
    c2: float
    packing_constant: float = 3.0 / 64.0
    volume_ratio_root: float
    step2_gamma: int
    mantissa_bits: int

    @model_validator(mode="after")
    def _forma(self):
        for punto in self.points:
            if punto.lower > punto.upper:
                raise ValueError(f"cota inferior > superior en k={punto.k}")
        for previo, actual in zip(self.points, self.points[1:]):
            if actual.lower > previo.lower or actual.upper > previo.upper:
                raise ValueError(f"las cotas deben ser no crecientes (k={actual.k})")
        return self


class EntropyCalibration(BaseModel):
    """Constantes C1, C2 ajustadas con coberturas voraces sobre nubes muestreadas."""

    c1: float
    c2: float
    n_values: List[int]
    samples: int
    seed: int


class CodeRequest(BaseModel):
    """Petición de construcción de una familia de códigos con intersección acotada"""
    n: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    seed: int = Field(0, ge=0)


class PackingRequest(BaseModel):
    """Petición de construcción de vectores de empaquetamiento"""
    n: int = Field(..., ge=1)
    mu: int = Field(..., ge=1)
    nu: int = Field(..., ge=1)
    seed: int = Field(0, ge=0)
