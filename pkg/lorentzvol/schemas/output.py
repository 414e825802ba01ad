"""
Schemas Pydantic para los registros de salida de la CLI y la API
"""
from enum import Enum
from typing import Any, Dict, List

from pydantic import BaseModel, Field

from ..config import settings


class OutputFormat(str, Enum):
    """Formatos de salida disponibles"""
    TABLE = "table"
    CSV = "csv"
    JSON = "json"


class OutputRecord(BaseModel):
    """Resultado de un comando: entradas, filas tipadas y avisos.

    Cada fila numérica lleva su columna ``method`` y su cota de error; ``artifacts``
    guarda objetos que no caben en una fila (familias de conjuntos, vectores, constantes).
    """

    schema_version: str = Field(default_factory=lambda: settings.SCHEMA_VERSION)
    command: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    results: List[Dict[str, Any]] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)
    artifacts: Dict[str, Any] = Field(default_factory=dict)
