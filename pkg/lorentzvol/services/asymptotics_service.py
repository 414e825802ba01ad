"""
Verificación numérica del comportamiento asintótico: raíz n-ésima del volumen,
ley logarítmica para p = inf, q = 1, y razón R_{p,n} con su cota inferior explícita.
"""
import logging
import math
from typing import List, Optional

from ..exceptions import InsufficientHitsError, InvalidParametersError, MethodNotApplicableError
from ..schemas.asymptotics import LogWindow, RatioPoint, SandwichPoint, SequencePoint
from ..schemas.lorentz import Params
from ..schemas.volume import McConfig, PrecisionContext
from ..utils.precision import rounding_bound
from .volume_exact_service import (
    check_condition,
    log_vol_lebesgue,
    log_vol_q1,
    weak_positive_table,
)
from .volume_mc_service import mc_volume

logger = logging.getLogger(__name__)

MC_SEQUENCE_MAX_N = 10


def _resolve(ctx: Optional[PrecisionContext]) -> PrecisionContext:
    return ctx if ctx is not None else PrecisionContext()


def _sequence_method(params: Params) -> str:
    if params.q == 1:
        return "product-q1"
    if params.p == params.q:
        return "dirichlet"
    if params.q_inf and not params.p_inf:
        return "recursion"
    return "monte-carlo"


def _log_volumes(params: Params, n_max: int, ctx: PrecisionContext, mc_config: Optional[McConfig]):
    """(método, [log vol], [error relativo de vol]) para n = 1..n_max."""
    metodo = _sequence_method(params)
    mp = ctx.mp
    if metodo == "product-q1":
        logs = [log_vol_q1(n, params.p, ctx) for n in range(1, n_max + 1)]
        return metodo, logs, [rounding_bound(mp, 1, 1.0, 4 * n) for n in range(1, n_max + 1)]
    if metodo == "dirichlet":
        logs = [log_vol_lebesgue(n, params.p, ctx) for n in range(1, n_max + 1)]
        return metodo, logs, [rounding_bound(mp, 1, 1.0, 4)] * n_max
    if metodo == "recursion":
        tabla = weak_positive_table(params.p, n_max, ctx)
        logs = []
        errores = []
        for n in range(1, n_max + 1):
            valor, condicion = tabla[n]
            check_condition(condicion, ctx, f"recursión n={n}, {params.label()}")
            logs.append(n * mp.log(2) + mp.log(valor))
            errores.append(rounding_bound(mp, 1, condicion, n))
        return metodo, logs, errores
    if n_max > MC_SEQUENCE_MAX_N:
        raise MethodNotApplicableError(
            f"{params.label()} sólo tiene estimación Monte Carlo; n_max debe ser <= {MC_SEQUENCE_MAX_N}",
            n_max=n_max,
        )
    logger.info("Sucesión de raíces por Monte Carlo: %s, n_max=%d", params.label(), n_max)
    logs = []
    errores = []
    for n in range(1, n_max + 1):
        estimacion = mc_volume(n, params, mc_config)
        if estimacion.hits == 0:
            raise InsufficientHitsError(f"ningún acierto para n={n}, {params.label()}", n=n)
        logs.append(mp.log(estimacion.volume))
        errores.append(estimacion.ci_half_width / estimacion.volume)
    return metodo, logs, errores


def root_volume_sequence(
    params: Params,
    n_max: int,
    ctx: Optional[PrecisionContext] = None,
    mc_config: Optional[McConfig] = None,
) -> List[SequencePoint]:
    """vol^{1/n} y su versión normalizada por el crecimiento previsto (n^{1/p} o log(n+1))."""
    ctx = _resolve(ctx)
    if n_max < 1:
        raise InvalidParametersError("n_max debe ser >= 1", n_max=n_max)
    mp = ctx.mp
    metodo, logs, errores = _log_volumes(params, n_max, ctx, mc_config)
    puntos = []
    for n, (log_vol, error) in enumerate(zip(logs, errores), start=1):
        log_raiz = log_vol / n
        if not params.p_inf:
            log_norm = log_raiz + mp.log(n) / params.p
        elif params.q == 1:
            log_norm = log_raiz + mp.log(mp.log(n + 1))
        else:
            log_norm = log_raiz
        puntos.append(
            SequencePoint(
                n=n,
                raw=float(mp.exp(log_raiz)),
                normalized=float(mp.exp(log_norm)),
                method=metodo,
                log_volume=float(log_vol),
                rel_error_bound=error / n + rounding_bound(mp, 1, 1.0, 2),
            )
        )
    return puntos


def sandwich_ratios(p: float, n_max: int, ctx: Optional[PrecisionContext] = None) -> List[SandwichPoint]:
    """Cocientes de la horquilla n^{-1/p} ≲ vol(B_{p,∞})^{1/n} ≲ ((1+log n)/n)^{1/p}."""
    ctx = _resolve(ctx)
    puntos = root_volume_sequence(Params(p=p, q=math.inf), n_max, ctx)
    return [
        SandwichPoint(
            n=punto.n,
            lower_ratio=punto.n ** (-1.0 / p) / punto.raw,
            upper_ratio=punto.raw / ((1.0 + math.log(punto.n)) / punto.n) ** (1.0 / p),
        )
        for punto in puntos
    ]


def log_integral_window(n: int, ctx: Optional[PrecisionContext] = None) -> LogWindow:
    ctx = _resolve(ctx)
    if n < 1:
        raise InvalidParametersError("n debe ser >= 1", n=n)
    mp = ctx.mp
    media = mp.exp(-mp.fsum(mp.log(mp.log(k + 1)) for k in range(1, n + 1)) / n)
    superior = (1 / mp.log(2) + mp.li(n + 1) - mp.li(2)) / n
    return LogWindow(n=n, lower=float(1 / mp.log(n + 1)), value=float(media), upper=float(superior))


def ratio_lower_bound(p: float, n: int, ctx: Optional[PrecisionContext] = None) -> float:
    """vol(𝓑^n_p)/vol(B^n_p) para la familia combinatoria de cajas 𝓑^n_p ⊂ B^n_{p,∞}."""
    ctx = _resolve(ctx)
    if n < 2 or n % 2 != 0:
        raise InvalidParametersError("la cota explícita sólo está demostrada para n par", n=n)
    if not 0 < p <= 2:
        raise InvalidParametersError("la cota explícita requiere 0 < p <= 2", p=p)
    mp = ctx.mp
    inv_p = mp.one / mp.mpf(p)
    mitad = n // 2
    log_cota = mp.loggamma(1 + n * inv_p) - n * mp.loggamma(1 + inv_p)
    log_cota += mp.log(math.comb(n, mitad)) + mp.log(mp.factorial(mitad))
    for i in range(1, mitad + 1):
        a = mp.power(i, inv_p)
        b = mp.power(i + 1, inv_p)
        log_cota += mp.log((b - a) / (a * b))
    log_cota -= mitad * inv_p * mp.log(n)
    return float(mp.exp(log_cota))


def ratio_sequence(p: float, n_max: int, ctx: Optional[PrecisionContext] = None) -> List[RatioPoint]:
    """R_{p,n} = vol(B^n_{p,∞})/vol(B^n_p) para n = 1..n_max."""
    ctx = _resolve(ctx)
    if not 0 < p < math.inf:
        raise InvalidParametersError("R_{p,n} requiere 0 < p < inf", p=p)
    if n_max < 1:
        raise InvalidParametersError("n_max debe ser >= 1", n_max=n_max)
    mp = ctx.mp
    tabla = weak_positive_table(p, n_max, ctx)
    puntos: List[RatioPoint] = []
    anterior = None
    for n in range(1, n_max + 1):
        valor, condicion = tabla[n]
        flagged = check_condition(condicion, ctx, f"razón n={n}, p={p}")
        log_r = n * mp.log(2) + mp.log(valor) - log_vol_lebesgue(n, p, ctx)
        razon = mp.exp(log_r)
        cota = ratio_lower_bound(p, n, ctx) if n % 2 == 0 and p <= 2 else None
        puntos.append(
            RatioPoint(
                n=n,
                ratio=float(razon),
                lower_bound=cota,
                growth=float(razon / anterior) if anterior is not None else None,
                rel_error_bound=rounding_bound(mp, 1, condicion, n + 4),
                precision_flagged=flagged,
            )
        )
        anterior = razon
    return puntos


def ratio_growth_base(p: float) -> float:
    """Base exponencial √(2/π)·(2e)^{1/(2p)}/e^{p/12} de la cota inferior de R_{p,n}, 0 < p <= 2."""
    if not 0 < p <= 2:
        raise InvalidParametersError("la base explícita requiere 0 < p <= 2", p=p)
    return math.sqrt(2.0 / math.pi) * (2.0 * math.e) ** (1.0 / (2.0 * p)) / math.exp(p / 12.0)


def ratio_growth_floor() -> float:
    """Mínimo uniforme de la base en 0 < p <= 2: √(2/π)(2e)^{1/4}/e^{1/6} > 1."""
    return math.sqrt(2.0 / math.pi) * (2.0 * math.e) ** 0.25 / math.exp(1.0 / 6.0)
