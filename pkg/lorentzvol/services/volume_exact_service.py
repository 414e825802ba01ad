"""
Motores exactos de volumen: recursión de inclusión–exclusión, suma sobre composiciones,
recursión integral, producto para q=1 y fórmula de Dirichlet.

Toda la aritmética se hace con mpmath a la precisión del PrecisionContext; los
valores se redondean a 64 bits sólo al construir el VolumeResult.
"""
import logging
import math
import threading
from typing import Dict, Iterator, List, Optional, Tuple

from ..config import settings
from ..exceptions import (
    CompositionCapExceededError,
    InsufficientHitsError,
    InvalidParametersError,
    MethodNotApplicableError,
    PrecisionLossError,
)
from ..schemas.lorentz import Params
from ..schemas.volume import Composition, McConfig, PrecisionContext, VolumeResult, WeightVector
from ..utils.precision import inv_exponent, mp_context, rounding_bound

logger = logging.getLogger(__name__)

AUTO = "auto"


def _resolve(ctx: Optional[PrecisionContext]) -> PrecisionContext:
    return ctx if ctx is not None else PrecisionContext()


def _require_finite_p(p: float) -> None:
    if not 0 < p < math.inf:
        raise MethodNotApplicableError(
            "las fórmulas de la bola débil requieren 0 < p < inf (p = inf es el cubo, use dirichlet)", p=p
        )


def _condition(pico, total) -> float:
    if total <= 0:
        return math.inf
    return float(pico / total)


def check_condition(condition: float, ctx: PrecisionContext, what: str) -> bool:
    """Marca pérdida de precisión si M/r supera 2^(bits-20); en modo estricto la eleva."""
    flagged = not condition <= ctx.flag_threshold
    if flagged:
        logger.warning(
            "Pérdida de precisión en %s: condición %.3e con %d bits", what, condition, ctx.mantissa_bits
        )
        if ctx.strict:
            raise PrecisionLossError(
                f"pérdida de precisión en {what}", condition=condition, mantissa_bits=ctx.mantissa_bits
            )
    return flagged


# ======================
# Recursión de inclusión–exclusión
# ======================

_TABLAS: Dict[Tuple[float, int], List[Tuple[object, float]]] = {}
_TABLAS_LOCK = threading.Lock()


def _weak_positive_table(p: float, n: int, bits: int) -> Tuple[Tuple[object, float], ...]:
    """(vol(B^{m,+}_{p,∞}), condición) para m = 0..n; la tabla de (p, bits) sólo crece."""
    mp = mp_context(bits)
    with _TABLAS_LOCK:
        tabla = _TABLAS.setdefault((p, bits), [(mp.one, 1.0), (mp.one, 1.0)])
        if len(tabla) <= n:
            inv_p = inv_exponent(mp, p)
            for m in range(len(tabla), n + 1):
                log_m = mp.log(m)
                total = mp.zero
                pico = mp.zero
                for j in range(1, m + 1):
                    termino = math.comb(m, j) * mp.exp(-j * inv_p * log_m) * tabla[m - j][0]
                    total = total + termino if j % 2 == 1 else total - termino
                    pico = max(pico, abs(termino), abs(total))
                tabla.append((total, _condition(pico, total)))
        return tuple(tabla[: n + 1])


def weak_positive_table(p: float, n_max: int, ctx: Optional[PrecisionContext] = None) -> List[Tuple[object, float]]:
    """Tabla completa de la recursión hasta n_max; reutilizada por tablas y razones."""
    ctx = _resolve(ctx)
    _require_finite_p(p)
    if n_max < 0:
        raise InvalidParametersError("n debe ser >= 0", n=n_max)
    return list(_weak_positive_table(float(p), n_max, ctx.mantissa_bits))


def vol_weak_positive_recursive(n: int, p: float, ctx: Optional[PrecisionContext] = None):
    ctx = _resolve(ctx)
    valor, condicion = weak_positive_table(p, n, ctx)[n]
    check_condition(condicion, ctx, f"recursión n={n}, p={p}")
    return valor


# ======================
# Suma explícita sobre composiciones
# ======================

def _iter_parts(n: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for primera in range(1, n + 1):
        for resto in _iter_parts(n - primera):
            yield (primera,) + resto


def _check_cap(n: int, cap: Optional[int]) -> None:
    if n < 1:
        raise InvalidParametersError("n debe ser >= 1", n=n)
    limite = settings.COMPOSITION_CAP if cap is None else cap
    if n > limite:
        raise CompositionCapExceededError(
            f"n={n} supera el límite {limite}: |K_n| = 2^{n - 1} = {2 ** (n - 1):,} composiciones",
            n=n,
            cap=limite,
        )


def enumerate_compositions(n: int, cap: Optional[int] = None) -> Iterator[Composition]:
    """Las 2^(n-1) composiciones de n en orden lexicográfico, una a una."""
    _check_cap(n, cap)
    return (Composition(parts=parts) for parts in _iter_parts(n))


def _explicit_sum(n: int, p: float, ctx: PrecisionContext):
    _require_finite_p(p)
    _check_cap(n, None)
    mp = ctx.mp
    inv_p = inv_exponent(mp, p)
    logs = [mp.zero] + [mp.log(m) for m in range(1, n + 1)]
    fact_n = math.factorial(n)
    total = mp.zero
    pico = mp.zero
    terminos = 0
    for parts in _iter_parts(n):
        multinomial = fact_n
        for part in parts:
            multinomial //= math.factorial(part)
        exponente = mp.zero
        restante = n
        for part in parts:
            exponente += part * logs[restante]
            restante -= part
        termino = multinomial * mp.exp(-inv_p * exponente)
        total = total + termino if (n + len(parts)) % 2 == 0 else total - termino
        pico = max(pico, abs(termino), abs(total))
        terminos += 1
    return total, _condition(pico, total), terminos


def vol_weak_positive_explicit(n: int, p: float, ctx: Optional[PrecisionContext] = None):
    ctx = _resolve(ctx)
    valor, condicion, _ = _explicit_sum(n, p, ctx)
    check_condition(condicion, ctx, f"suma explícita n={n}, p={p}")
    return valor


def vol_weak_positive_explicit_partial_sums(n: int, p: float, ctx: Optional[PrecisionContext] = None):
    """La misma suma reescrita sobre M_n: n!·Σ (-1)^{n+ℓ} ∏ (n-m_l)^{-Δ/p}/Δ!."""
    ctx = _resolve(ctx)
    _require_finite_p(p)
    mp = ctx.mp
    inv_p = inv_exponent(mp, p)
    total = mp.zero
    for composicion in enumerate_compositions(n):
        sumas = composicion.partial_sums
        producto = mp.one
        for actual, siguiente in zip(sumas, sumas[1:]):
            delta = siguiente - actual
            producto *= mp.exp(-delta * inv_p * mp.log(n - actual)) / mp.factorial(delta)
        total = total + producto if (n + composicion.length) % 2 == 0 else total - producto
    return mp.factorial(n) * total


# ======================
# Recursión integral V^(m)(n, a)
# ======================

def _weights_mp(a: WeightVector, mp) -> list:
    if a.exponent_p is not None:
        inv_p = inv_exponent(mp, a.exponent_p)
        return [mp.exp(-inv_p * mp.log(j)) for j in range(1, a.n + 1)]
    return [mp.mpf(v) for v in a.entries]


def _v_integral(m: int, a: WeightVector, ctx: PrecisionContext):
    if m < 0:
        raise InvalidParametersError("m debe ser >= 0", m=m)
    mp = ctx.mp
    pesos = _weights_mp(a, mp)
    largo = len(pesos)
    # v0[s] = V^(0) del sufijo (a_{s+1}, …, a_n); v0[n] = V^(0)(0, ∅) = 1
    v0 = [mp.zero] * largo + [mp.one]
    pico_global = 1.0
    for s in range(largo - 1, -1, -1):
        total = mp.zero
        pico = mp.zero
        for i in range(1, largo - s + 1):
            termino = pesos[s + i - 1] ** i / mp.factorial(i) * v0[s + i]
            total = total + termino if i % 2 == 1 else total - termino
            pico = max(pico, abs(termino), abs(total))
        v0[s] = total
        pico_global = max(pico_global, _condition(pico, total))
    if m == 0:
        return v0[0], pico_global
    fact_m = mp.factorial(m)
    total = mp.zero
    pico = mp.zero
    for i in range(1, largo + 1):
        termino = pesos[i - 1] ** (m + i) * fact_m / mp.factorial(m + i) * v0[i]
        total = total + termino if i % 2 == 1 else total - termino
        pico = max(pico, abs(termino), abs(total))
    return total, max(pico_global, _condition(pico, total))


def v_integral(m: int, a: WeightVector, ctx: Optional[PrecisionContext] = None):
    ctx = _resolve(ctx)
    valor, condicion = _v_integral(m, a, ctx)
    check_condition(condicion, ctx, f"V^({m}) con n={a.n}")
    return valor


def _integral_positive(n: int, p: float, ctx: PrecisionContext):
    _require_finite_p(p)
    mp = ctx.mp
    if n == 0:
        return mp.one, 1.0
    valor, condicion = _v_integral(0, WeightVector.power(n, p), ctx)
    return mp.factorial(n) * valor, condicion


def vol_weak_positive_integral(n: int, p: float, ctx: Optional[PrecisionContext] = None):
    """n!·V^(0)(n, a^(p))."""
    ctx = _resolve(ctx)
    valor, condicion = _integral_positive(n, p, ctx)
    check_condition(condicion, ctx, f"vía integral n={n}, p={p}")
    return valor


# ======================
# q = 1 y Dirichlet
# ======================

def _kappa_partials(p: float, k_max: int, mp) -> Iterator[object]:
    """κ_p(1), …, κ_p(k_max) acumulados término a término."""
    exponente = inv_exponent(mp, p) - 1
    kappa_k = mp.zero
    for k in range(1, k_max + 1):
        kappa_k += mp.power(k, exponente)
        yield kappa_k


def kappa_mp(p: float, k: int, ctx: Optional[PrecisionContext] = None):
    """κ_p(k) a la precisión del contexto."""
    ctx = _resolve(ctx)
    if k < 1:
        raise InvalidParametersError("k debe ser >= 1", k=k)
    *_, ultimo = _kappa_partials(p, k, ctx.mp)
    return ultimo


def log_vol_q1(n: int, p: float, ctx: PrecisionContext):
    """log vol(B^n_{p,1}) = n log 2 - Σ log κ_p(k), acumulado como suma de logaritmos."""
    mp = ctx.mp
    return n * mp.log(2) - mp.fsum(mp.log(kappa_k) for kappa_k in _kappa_partials(p, n, mp))


def log_vol_lebesgue(n: int, p: float, ctx: PrecisionContext):
    mp = ctx.mp
    if math.isinf(p):
        return n * mp.log(2)
    inv_p = inv_exponent(mp, p)
    return n * mp.log(2) + n * mp.loggamma(1 + inv_p) - mp.loggamma(1 + n * inv_p)


def _result(log_value, method: str, n: int, params: Params, ctx: PrecisionContext,
            condition: float = 1.0, terms: int = 1, flagged: bool = False) -> VolumeResult:
    mp = ctx.mp
    valor = mp.exp(log_value)
    valor_64 = float(valor)
    fuera_de_rango = valor_64 == 0.0 or math.isinf(valor_64)
    if fuera_de_rango:
        logger.warning(
            "vol fuera del rango de 64 bits (n=%d, %s): log_value=%.17g", n, params.label(), float(log_value)
        )
    return VolumeResult(
        value=valor_64,
        log_value=float(log_value),
        method=method,
        n=n,
        params=params,
        error_bound=rounding_bound(mp, valor, condition, terms),
        mantissa_bits=ctx.mantissa_bits,
        precision_flagged=flagged,
        condition=condition,
        out_of_range=fuera_de_rango,
    )


def vol_q1(n: int, p: float, ctx: Optional[PrecisionContext] = None) -> VolumeResult:
    ctx = _resolve(ctx)
    if n < 1:
        raise InvalidParametersError("n debe ser >= 1", n=n)
    params = Params(p=p, q=1)
    return _result(log_vol_q1(n, params.p, ctx), "product-q1", n, params, ctx, terms=4 * n)


def vol_lebesgue(n: int, p: float, ctx: Optional[PrecisionContext] = None) -> VolumeResult:
    """vol(B_p^n) = 2^n Γ(1+1/p)^n / Γ(1+n/p), en forma log-Gamma."""
    ctx = _resolve(ctx)
    if n < 1:
        raise InvalidParametersError("n debe ser >= 1", n=n)
    params = Params(p=p, q=p)
    return _result(log_vol_lebesgue(n, params.p, ctx), "dirichlet", n, params, ctx, terms=4)


# ======================
# Despachador
# ======================

def applicable_methods(params: Params) -> List[str]:
    metodos = []
    if params.q == 1:
        metodos.append("product-q1")
    if params.p == params.q:
        metodos.append("dirichlet")
    if params.q_inf and not params.p_inf:
        metodos.extend(["recursion", "explicit", "integral"])
    metodos.append("monte-carlo")
    return metodos


def _weak_result(n: int, params: Params, method: str, ctx: PrecisionContext) -> VolumeResult:
    mp = ctx.mp
    if method == "recursion":
        positivo, condicion = weak_positive_table(params.p, n, ctx)[n]
        terminos = n
    elif method == "explicit":
        positivo, condicion, terminos = _explicit_sum(n, params.p, ctx)
    else:
        positivo, condicion = _integral_positive(n, params.p, ctx)
        terminos = n * n
    flagged = check_condition(condicion, ctx, f"{method} n={n}, {params.label()}")
    if positivo <= 0:
        raise PrecisionLossError(
            f"{method} devolvió un valor no positivo; aumente los bits", n=n, mantissa_bits=ctx.mantissa_bits
        )
    log_value = n * mp.log(2) + mp.log(positivo)
    return _result(log_value, method, n, params, ctx, condicion, terminos, flagged)


def vol_ball(
    n: int,
    params: Params,
    method: str = AUTO,
    ctx: Optional[PrecisionContext] = None,
    mc_config: Optional[McConfig] = None,
) -> VolumeResult:
    """vol(B^n_{p,q}) por el método pedido o, con ``auto``, por el exacto más barato."""
    ctx = _resolve(ctx)
    if n < 1:
        raise InvalidParametersError("n debe ser >= 1", n=n)
    aplicables = applicable_methods(params)
    if method == AUTO:
        method = aplicables[0]
    elif method not in aplicables:
        raise MethodNotApplicableError(
            f"el método '{method}' no se aplica a {params.label()}; disponibles: {', '.join(aplicables)}",
            method=method,
        )

    if method == "product-q1":
        return _result(log_vol_q1(n, params.p, ctx), method, n, params, ctx, terms=4 * n)
    if method == "dirichlet":
        return _result(log_vol_lebesgue(n, params.p, ctx), method, n, params, ctx, terms=4)
    if method in ("recursion", "explicit", "integral"):
        return _weak_result(n, params, method, ctx)

    from .volume_mc_service import mc_volume

    estimacion = mc_volume(n, params, mc_config)
    if estimacion.hits == 0:
        raise InsufficientHitsError(
            f"ningún acierto en {estimacion.samples} muestras; aumente --samples", n=n
        )
    return VolumeResult(
        value=estimacion.volume,
        log_value=math.log(estimacion.volume),
        method="monte-carlo",
        n=n,
        params=params,
        error_bound=estimacion.ci_half_width,
        hits=estimacion.hits,
        samples=estimacion.samples,
    )
