"""
Normas de Lorentz, reordenamientos, pertenencia a la bola, κ_p y constantes de inmersión.
"""
import math
from typing import Sequence, Union

import numpy as np

from ..exceptions import InvalidParametersError
from ..schemas.lorentz import Params, RearrangedVector, Vector

VectorLike = Union[Vector, Sequence[float], np.ndarray]


def _as_array(x: VectorLike) -> np.ndarray:
    if isinstance(x, Vector):
        return x.as_array()
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidParametersError("se esperaba un vector no vacío")
    if not np.all(np.isfinite(arr)):
        raise InvalidParametersError("el vector contiene entradas no finitas")
    return arr


def rearrange_rows(batch: np.ndarray) -> np.ndarray:
    """x* fila a fila: valores absolutos en orden no creciente (ordenamiento estable)."""
    magnitudes = np.abs(np.asarray(batch, dtype=np.float64))
    return -np.sort(-magnitudes, axis=-1, kind="stable")


def rearrange(x: VectorLike) -> RearrangedVector:
    arr = _as_array(x)
    return RearrangedVector(entries=tuple(float(v) for v in rearrange_rows(arr)))


def lorentz_norms(batch: np.ndarray, params: Params) -> np.ndarray:
    """‖x‖_{p,q} para cada fila de ``batch``."""
    xs = rearrange_rows(np.atleast_2d(batch))
    k = np.arange(1, xs.shape[-1] + 1, dtype=np.float64)
    if params.q_inf:
        if params.p_inf:
            return xs[:, 0].copy()
        return np.max(k ** params.inv_p * xs, axis=1)
    q = params.q
    weights = k ** (q * params.inv_p - 1.0)
    return np.sum(weights * xs ** q, axis=1) ** (1.0 / q)


def lorentz_norm(x: VectorLike, params: Params) -> float:
    return float(lorentz_norms(_as_array(x)[np.newaxis, :], params)[0])


def in_ball_rows(batch: np.ndarray, params: Params) -> np.ndarray:
    # la frontera cuenta como interior: sin holgura
    return lorentz_norms(batch, params) <= 1.0


def in_ball(x: VectorLike, params: Params) -> bool:
    return lorentz_norm(x, params) <= 1.0


def kappa(p: float, k: int) -> float:
    """κ_p(k) = Σ_{j≤k} j^{1/p-1} en doble precisión."""
    if k < 1:
        raise InvalidParametersError("k debe ser >= 1", k=k)
    if not p > 0:
        raise InvalidParametersError("p debe ser positivo", p=p)
    exponente = (0.0 if math.isinf(p) else 1.0 / p) - 1.0
    return math.fsum(j ** exponente for j in range(1, k + 1))


def embedding_constant(p: float, q: float, r: float) -> float:
    """c_{p,q,r} con B_{p,q} ⊂ c_{p,q,r}·B_{p,r}."""
    if not 0 < p < math.inf:
        raise InvalidParametersError("la inmersión requiere 0 < p < inf", p=p)
    if not (q > 0 and r > 0):
        raise InvalidParametersError("q y r deben ser positivos", q=q, r=r)
    if q > r:
        raise InvalidParametersError("la inmersión requiere q <= r", q=q, r=r)
    if q <= p or q == r:
        return 1.0
    c_inf = (q / p) ** (1.0 / q)
    if math.isinf(r):
        return c_inf
    return c_inf ** ((r - q) / r)


def embedding_sup_constant(p: float, q: float, l_max: int) -> float:
    """sup_{l≤l_max} l^{1/p}·(Σ_{k≤l} k^{q/p-1})^{-1/q}: constante exacta de B_{p,q} ⊂ c·B_{p,∞} en dimensión l_max."""
    if not 0 < p < math.inf or not q > 0:
        raise InvalidParametersError("se requiere 0 < p < inf y q > 0", p=p, q=q)
    if l_max < 1:
        raise InvalidParametersError("l_max debe ser >= 1", l_max=l_max)
    if math.isinf(q):
        return 1.0
    l = np.arange(1, l_max + 1, dtype=np.float64)
    sumas = np.cumsum(l ** (q / p - 1.0))
    return float(np.max(l ** (1.0 / p) * sumas ** (-1.0 / q)))


def lebesgue_containment_factor(n: int, p: float) -> float:
    """(Σ_{k≤n} 1/k)^{1/p}: B_{p,∞}^n ⊂ factor·B_p^n."""
    if n < 1 or not 0 < p < math.inf:
        raise InvalidParametersError("se requiere n >= 1 y 0 < p < inf", n=n, p=p)
    return kappa(math.inf, n) ** (1.0 / p)
