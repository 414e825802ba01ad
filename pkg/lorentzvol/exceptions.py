"""
Errores de dominio con su código de salida (CLI) y su estado HTTP (API).
"""
from typing import Any, Optional


class LorentzVolError(Exception):
    """Error base; los routers lo convierten en respuesta HTTP y la CLI en código de salida."""

    code = "error"
    exit_code = 1
    status_code = 500

    def __init__(self, detail: str, **context: Any):
        super().__init__(detail)
        self.detail = detail
        self.context = context
        # OutputRecord parcial que la CLI y la API emiten junto al error
        self.record: Optional[Any] = None


class InvalidParametersError(LorentzVolError):
    code = "invalid_parameters"
    exit_code = 2
    status_code = 422


class MethodNotApplicableError(LorentzVolError):
    code = "method_not_applicable"
    exit_code = 2
    status_code = 422


class CompositionCapExceededError(LorentzVolError):
    code = "composition_cap_exceeded"
    exit_code = 2
    status_code = 422


class DimensionGuardError(LorentzVolError):
    code = "dimension_guard"
    exit_code = 2
    status_code = 422


class PrecisionLossError(LorentzVolError):
    code = "precision_loss"
    exit_code = 3
    status_code = 409


class ConstructionExhaustedError(LorentzVolError):
    """La búsqueda aleatoria agotó su presupuesto antes de llegar al objetivo M."""

    code = "construction_exhausted"
    exit_code = 4
    status_code = 409

    def __init__(self, detail: str, achieved: int, target: int, partial: Optional[Any] = None):
        super().__init__(detail, achieved=achieved, target=target)
        self.achieved = achieved
        self.target = target
        self.partial = partial


class InsufficientHitsError(LorentzVolError):
    """El estimador Monte Carlo no registró aciertos; no hay volumen positivo que reportar."""

    code = "insufficient_hits"
    exit_code = 3
    status_code = 409
