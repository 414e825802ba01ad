"""
Estimador Monte Carlo por rechazo para vol(B^n_{p,q}).

Las muestras vienen de subflujos Philox indexados por (semilla, bloque): el
resultado no depende del número de hilos ni del orden de ejecución.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from scipy import stats

from ..config import settings
from ..exceptions import DimensionGuardError, InsufficientHitsError, InvalidParametersError
from ..schemas.lorentz import Params
from ..schemas.volume import McConfig, McEstimate
from .lorentz_service import in_ball_rows

logger = logging.getLogger(__name__)


def stream_generator(seed: int, stream: int) -> np.random.Generator:
    """Generador del subflujo ``stream``: clave Philox de 128 bits = (stream, seed)."""
    return np.random.Generator(np.random.Philox(key=(stream << 64) | seed))


def _chunks(samples: int, chunk_size: int):
    inicio = 0
    indice = 0
    while inicio < samples:
        tamano = min(chunk_size, samples - inicio)
        yield indice, tamano
        inicio += tamano
        indice += 1


def _draw(gen: np.random.Generator, size: int, n: int, orthant: bool) -> np.ndarray:
    puntos = gen.random((size, n))
    if not orthant:
        puntos = 2.0 * puntos - 1.0
    return puntos


def _count_hits(n: int, params: Params, seed: int, stream: int, size: int, orthant: bool) -> int:
    puntos = _draw(stream_generator(seed, stream), size, n, orthant)
    return int(np.count_nonzero(in_ball_rows(puntos, params)))


def _guard(n: int) -> None:
    if n < 1:
        raise InvalidParametersError("n debe ser >= 1", n=n)
    if n > settings.MC_MAX_DIMENSION:
        raise DimensionGuardError(
            f"n={n} supera la guarda Monte Carlo ({settings.MC_MAX_DIMENSION}): la tasa de aceptación es despreciable",
            n=n,
        )


def _estimate(n: int, params: Params, config: Optional[McConfig], orthant: bool) -> McEstimate:
    _guard(n)
    config = config or McConfig()
    bloques = list(_chunks(config.samples, config.chunk_size))
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        aciertos = sum(
            pool.map(lambda bloque: _count_hits(n, params, config.seed, bloque[0], bloque[1], orthant), bloques)
        )

    if aciertos < settings.MC_MIN_HITS:
        logger.warning(
            "Sólo %d aciertos en %d muestras (n=%d, %s): el intervalo de confianza no es fiable",
            aciertos, config.samples, n, params.label(),
        )

    escala = 1.0 if orthant else 2.0 ** n
    p_hat = aciertos / config.samples
    z = float(stats.norm.ppf(0.5 + config.confidence / 2.0))
    return McEstimate(
        volume=escala * p_hat,
        ci_half_width=z * escala * math.sqrt(p_hat * (1.0 - p_hat) / config.samples),
        hits=aciertos,
        samples=config.samples,
        n=n,
        params=params,
        confidence=config.confidence,
        orthant=orthant,
    )


def mc_volume(n: int, params: Params, config: Optional[McConfig] = None) -> McEstimate:
    """Muestreo uniforme en [-1,1]^n; B^n_{p,q} ⊆ [-1,1]^n porque x*_1 <= ‖x‖_{p,q}."""
    return _estimate(n, params, config, orthant=False)


def mc_positive_orthant(n: int, params: Params, config: Optional[McConfig] = None) -> McEstimate:
    return _estimate(n, params, config, orthant=True)


def sample_ball(
    n: int,
    params: Params,
    count: int,
    seed: int = 0,
    chunk_size: Optional[int] = None,
    max_draws: int = 50_000_000,
) -> np.ndarray:
    """``count`` puntos uniformes de B^n_{p,q} por rechazo, en orden de subflujo."""
    _guard(n)
    if count < 1:
        raise InvalidParametersError("count debe ser >= 1", count=count)
    tamano = chunk_size or settings.MC_CHUNK_SIZE
    aceptados = []
    total = 0
    extraidos = 0
    stream = 0
    while total < count:
        if extraidos >= max_draws:
            raise InsufficientHitsError(
                f"sólo {total} de {count} puntos aceptados tras {extraidos} extracciones", n=n
            )
        puntos = _draw(stream_generator(seed, stream), tamano, n, orthant=False)
        dentro = puntos[in_ball_rows(puntos, params)]
        aceptados.append(dentro)
        total += dentro.shape[0]
        extraidos += tamano
        stream += 1
    return np.concatenate(aceptados, axis=0)[:count]
