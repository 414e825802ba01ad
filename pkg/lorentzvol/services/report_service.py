"""
Construcción de OutputRecord para la CLI y la API.

Aquí sólo se reúnen resultados de los servicios de cálculo en filas; la
aritmética vive en los servicios.
"""
import logging
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from ..config import settings
from ..exceptions import ConstructionExhaustedError, InvalidParametersError
from ..schemas.entropy import IndexSetFamily
from ..schemas.lorentz import Params, format_extended
from ..schemas.output import OutputRecord
from ..schemas.volume import McConfig, PrecisionContext, VolumeResult
from . import asymptotics_service, entropy_service
from .volume_exact_service import vol_ball

logger = logging.getLogger(__name__)


def build_params(p: Any, q: Any) -> Params:
    """Params validados; los errores de pydantic se convierten en InvalidParametersError."""
    try:
        return Params(p=p, q=q)
    except ValidationError as e:
        raise InvalidParametersError(f"parámetros (p, q) inválidos: {e.errors()[0]['msg']}", p=str(p), q=str(q))


def build_exponent(value: Any) -> float:
    """Un exponente p en (0, inf], aceptando los literales de parse_extended_real."""
    return build_params(value, value).p


def build_mc_config(**overrides: Any) -> McConfig:
    valores = {clave: valor for clave, valor in overrides.items() if valor is not None}
    try:
        return McConfig(**valores)
    except ValidationError as e:
        raise InvalidParametersError(f"configuración Monte Carlo inválida: {e.errors()[0]['msg']}")


def build_precision(bits: Optional[int] = None, strict: bool = False) -> PrecisionContext:
    try:
        if bits is None:
            return PrecisionContext(strict=strict)
        return PrecisionContext(mantissa_bits=bits, strict=strict)
    except ValidationError:
        raise InvalidParametersError("bits de mantisa inválidos (mínimo 53)", bits=bits)


def _volume_row(resultado: VolumeResult) -> Dict[str, Any]:
    return {
        "n": resultado.n,
        "p": format_extended(resultado.params.p),
        "q": format_extended(resultado.params.q),
        "value": resultado.value,
        "log_value": resultado.log_value,
        "method": resultado.method,
        "error_bound": resultado.error_bound,
        "precision_flagged": resultado.precision_flagged,
        "out_of_range": resultado.out_of_range,
        "hits": resultado.hits,
        "samples": resultado.samples,
    }


def _volume_warnings(resultados: Sequence[VolumeResult]) -> List[str]:
    avisos = []
    for r in resultados:
        if r.precision_flagged:
            avisos.append(
                f"pérdida de precisión: n={r.n}, {r.params.label()}, método {r.method}, "
                f"condición {r.condition:.3e} con {r.mantissa_bits} bits"
            )
        if r.out_of_range:
            avisos.append(
                f"vol fuera del rango de 64 bits: n={r.n}, {r.params.label()}; log_value={r.log_value:.17g}"
            )
        if r.hits is not None and r.hits < settings.MC_MIN_HITS:
            avisos.append(f"sólo {r.hits} aciertos Monte Carlo: n={r.n}, {r.params.label()}")
    return avisos


# ======================
# Volúmenes
# ======================

def volume_report(
    n_values: Sequence[int],
    params: Params,
    method: str = "auto",
    ctx: Optional[PrecisionContext] = None,
    mc_config: Optional[McConfig] = None,
) -> OutputRecord:
    ctx = ctx if ctx is not None else PrecisionContext()
    resultados = [vol_ball(n, params, method, ctx, mc_config) for n in n_values]
    entradas: Dict[str, Any] = {
        "n": list(n_values),
        "p": format_extended(params.p),
        "q": format_extended(params.q),
        "method": method,
        "bits": ctx.mantissa_bits,
        "strict": ctx.strict,
    }
    if any(r.method == "monte-carlo" for r in resultados):
        config = mc_config or McConfig()
        entradas.update(samples=config.samples, seed=config.seed, confidence=config.confidence)
    return OutputRecord(
        command="volume",
        inputs=entradas,
        results=[_volume_row(r) for r in resultados],
        warnings=_volume_warnings(resultados),
    )


def table_report(
    p_list: Sequence[Any],
    n_max: int,
    q: Any = "inf",
    ctx: Optional[PrecisionContext] = None,
    method: str = "auto",
    mc_config: Optional[McConfig] = None,
) -> OutputRecord:
    """Rejilla vol(B^n_{p,q}) con filas n = 1..n_max y columnas p."""
    ctx = ctx if ctx is not None else PrecisionContext()
    if n_max < 1:
        raise InvalidParametersError("n_max debe ser >= 1", n_max=n_max)
    columnas = [build_params(p, q) for p in p_list]
    resultados = [vol_ball(n, params, method, ctx, mc_config) for n in range(1, n_max + 1) for params in columnas]
    return OutputRecord(
        command="table",
        inputs={
            "p_list": [format_extended(params.p) for params in columnas],
            "q": format_extended(columnas[0].q) if columnas else str(q),
            "n_max": n_max,
            "method": method,
            "bits": ctx.mantissa_bits,
        },
        results=[_volume_row(r) for r in resultados],
        warnings=_volume_warnings(resultados),
    )


# ======================
# Asintótica
# ======================

def ratio_report(p: float, n_max: int, ctx: Optional[PrecisionContext] = None) -> OutputRecord:
    ctx = ctx if ctx is not None else PrecisionContext()
    puntos = asymptotics_service.ratio_sequence(p, n_max, ctx)
    filas = [
        {
            "n": punto.n,
            "p": format_extended(p),
            "ratio": punto.ratio,
            "lower_bound": punto.lower_bound,
            "growth": punto.growth,
            "method": "recursion/dirichlet",
            "rel_error_bound": punto.rel_error_bound,
            "precision_flagged": punto.precision_flagged,
        }
        for punto in puntos
    ]
    artefactos: Dict[str, Any] = {}
    if 0 < p <= 2:
        artefactos["growth_base"] = asymptotics_service.ratio_growth_base(p)
        artefactos["growth_floor"] = asymptotics_service.ratio_growth_floor()
    return OutputRecord(
        command="ratio",
        inputs={"p": format_extended(p), "n_max": n_max, "bits": ctx.mantissa_bits},
        results=filas,
        warnings=[f"pérdida de precisión en la razón n={punto.n}" for punto in puntos if punto.precision_flagged],
        artifacts=artefactos,
    )


def asymptotics_report(
    params: Params,
    n_max: int,
    ctx: Optional[PrecisionContext] = None,
    mc_config: Optional[McConfig] = None,
) -> OutputRecord:
    """Sucesión vol^{1/n} normalizada, con la horquilla que corresponda a (p, q)."""
    ctx = ctx if ctx is not None else PrecisionContext()
    puntos = asymptotics_service.root_volume_sequence(params, n_max, ctx, mc_config)
    filas = [
        {
            "n": punto.n,
            "raw": punto.raw,
            "normalized": punto.normalized,
            "method": punto.method,
            "rel_error_bound": punto.rel_error_bound,
        }
        for punto in puntos
    ]
    if params.p_inf and params.q == 1:
        for fila in filas:
            ventana = asymptotics_service.log_integral_window(fila["n"], ctx)
            fila.update(window_lower=ventana.lower, window_value=ventana.value, window_upper=ventana.upper)
    elif params.q_inf and not params.p_inf:
        horquilla = asymptotics_service.sandwich_ratios(params.p, n_max, ctx)
        for fila, punto in zip(filas, horquilla):
            fila.update(sandwich_lower=punto.lower_ratio, sandwich_upper=punto.upper_ratio)

    normalizados = [punto.normalized for punto in puntos]
    return OutputRecord(
        command="asymptotics",
        inputs={
            "p": format_extended(params.p),
            "q": format_extended(params.q),
            "n_max": n_max,
            "bits": ctx.mantissa_bits,
        },
        results=filas,
        artifacts={"window_ratio": max(normalizados) / min(normalizados)},
    )


# ======================
# Entropía
# ======================

def entropy_curve_report(
    n: int,
    k_max: int,
    ctx: Optional[PrecisionContext] = None,
    c1: Optional[float] = None,
    c2: Optional[float] = None,
) -> OutputRecord:
    curva = entropy_service.entropy_bound_curve(n, k_max, ctx, c1, c2)
    filas = [
        {
            "k": punto.k,
            "lower": punto.lower,
            "upper": punto.upper,
            "volume_lower": punto.volume_lower,
            "packing_lower": punto.packing_lower,
            "packing_mu": punto.packing_mu,
            "packing_nu": punto.packing_nu,
            "step3_l": punto.step3_l,
            "method": "bounds",
            "rel_error_bound": entropy_service.CURVE_REL_ERROR,
        }
        for punto in curva.points
    ]
    return OutputRecord(
        command="entropy",
        inputs={"n": n, "k_max": k_max, "mode": "curve"},
        results=filas,
        artifacts={
            "c1": curva.c1,
            "c2": curva.c2,
            "packing_constant": "3/64",
            "volume_ratio_root": curva.volume_ratio_root,
            "step2_gamma": curva.step2_gamma,
            "mantissa_bits": curva.mantissa_bits,
        },
    )


def _code_record(familia: IndexSetFamily, avisos: List[str]) -> OutputRecord:
    return OutputRecord(
        command="entropy",
        inputs={"n": familia.n, "k": familia.k, "seed": familia.seed, "mode": "code"},
        results=[
            {
                "n": familia.n,
                "k": familia.k,
                "count": familia.count,
                "target": familia.target,
                "lemma_bound": familia.lemma_bound,
                "max_intersection": familia.max_intersection,
                "certified": familia.certified,
                "complete": familia.complete,
                "method": "greedy-code",
                "error_bound": 0.0,
            }
        ],
        warnings=avisos,
        artifacts={"sets": [list(t) for t in familia.sets]},
    )


def code_report(n: int, k: int, seed: int = 0) -> OutputRecord:
    """Familia de códigos con intersección acotada; si se agota el presupuesto el registro parcial viaja en la excepción."""
    try:
        familia = entropy_service.construct_code(n, k, seed=seed)
    except ConstructionExhaustedError as e:
        e.record = _code_record(e.partial, [e.detail])
        raise
    return _code_record(familia, [])


def packing_report(n: int, mu: int, nu: int, seed: int = 0) -> OutputRecord:
    entradas = {"n": n, "mu": mu, "nu": nu, "seed": seed, "mode": "packing"}
    try:
        familia = entropy_service.build_packing(n, mu, nu, seed=seed)
    except ConstructionExhaustedError as e:
        e.record = OutputRecord(command="entropy", inputs=entradas, warnings=[e.detail])
        if e.partial is not None:
            e.record = _code_record(e.partial, [e.detail])
            e.record.inputs.update(entradas)
        raise
    return OutputRecord(
        command="entropy",
        inputs=entradas,
        results=[
            {
                "n": familia.n,
                "mu": familia.mu,
                "nu": familia.nu,
                "count": familia.count,
                "weak_norm_bound": familia.weak_norm_bound,
                "weak_norm_exact": familia.weak_norm_exact,
                "min_pairwise_l1": familia.min_pairwise_l1,
                "min_pairwise_l1_exact": familia.min_pairwise_l1_exact,
                "level_sizes_ok": familia.level_sizes_ok,
                "method": "packing",
                "error_bound": 0.0,
            }
        ],
        warnings=[] if familia.level_sizes_ok else ["algún nivel disjunto quedó por debajo de (2/3)·4^l"],
        artifacts={"vectors": [list(v.entries) for v in familia.vectors]},
    )


def calibration_report(n_values: Sequence[int], samples: int, seed: int = 0,
                       ctx: Optional[PrecisionContext] = None) -> OutputRecord:
    calibracion = entropy_service.calibrate_entropy_constants(n_values, samples, seed, ctx)
    return OutputRecord(
        command="entropy",
        inputs={"n_values": list(n_values), "samples": samples, "seed": seed, "mode": "calibrate"},
        results=[
            {
                "c1": calibracion.c1,
                "c2": calibracion.c2,
                "method": "greedy-net",
                "error_bound": None,
            }
        ],
    )
