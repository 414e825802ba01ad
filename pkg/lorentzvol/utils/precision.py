"""
Contextos mpmath de precisión fija, uno por número de bits.
"""
from functools import lru_cache

from mpmath.ctx_mp import MPContext

DOUBLE_EPS = 2.0 ** -52


@lru_cache(maxsize=16)
def mp_context(bits: int) -> MPContext:
    """Contexto mpmath independiente del global ``mpmath.mp``.

    Cada contexto se crea una sola vez y nunca se le cambia la precisión,
    así que puede compartirse entre hilos.
    """
    ctx = MPContext()
    ctx.prec = bits
    return ctx


def inv_exponent(ctx: MPContext, p: float):
    """1/p a la precisión del contexto; 0 para p = inf."""
    if p == float("inf"):
        return ctx.zero
    return ctx.one / ctx.mpf(p)


def rounding_bound(ctx: MPContext, value, condition: float, terms: int) -> float:
    """Cota del error al reportar ``value`` en 64 bits.

    Suma el redondeo final a doble precisión y el error acumulado en la suma
    alternante, proporcional a la condición M/r y al número de términos.
    """
    magnitude = abs(float(value))
    internal = condition * max(terms, 1) * 2.0 ** (1 - ctx.prec)
    return magnitude * (DOUBLE_EPS + internal)
