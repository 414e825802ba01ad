"""
Schemas Pydantic del dominio
"""
from .asymptotics import LogWindow, RatioPoint, SandwichPoint, SequencePoint
from .entropy import (
    CodeRequest,
    EntropyBoundCurve,
    EntropyBoundPoint,
    EntropyCalibration,
    IndexSetFamily,
    PackingFamily,
    PackingRequest,
)
from .lorentz import Params, RearrangedVector, Vector
from .output import OutputFormat, OutputRecord
from .volume import Composition, McConfig, McEstimate, PrecisionContext, VolumeResult, WeightVector

__all__ = [
    "CodeRequest",
    "Composition",
    "EntropyBoundCurve",
    "EntropyBoundPoint",
    "EntropyCalibration",
    "IndexSetFamily",
    "LogWindow",
    "McConfig",
    "McEstimate",
    "OutputFormat",
    "OutputRecord",
    "PackingFamily",
    "PackingRequest",
    "Params",
    "PrecisionContext",
    "RatioPoint",
    "RearrangedVector",
    "SandwichPoint",
    "SequencePoint",
    "Vector",
    "VolumeResult",
    "WeightVector",
]
