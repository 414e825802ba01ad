"""
Maquinaria constructiva para e_k(id: ℓ^n_{1,∞} → ℓ^n_1): familias de códigos,
vectores de empaquetamiento, curvas de cotas y conjuntos separados voraces.
"""
import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import settings
from ..exceptions import ConstructionExhaustedError, InvalidParametersError
from ..schemas.entropy import (
    EntropyBoundCurve,
    EntropyBoundPoint,
    EntropyCalibration,
    IndexSetFamily,
    PackingFamily,
)
from ..schemas.lorentz import Params, Vector
from ..schemas.volume import PrecisionContext
from ..utils.precision import DOUBLE_EPS
from .volume_exact_service import log_vol_lebesgue, weak_positive_table
from .volume_mc_service import sample_ball

logger = logging.getLogger(__name__)

PACKING_CONSTANT = Fraction(3, 64)
CURVE_REL_ERROR = 8 * DOUBLE_EPS
VERIFY_BLOCK = 512

PointCloud = Union[np.ndarray, Sequence[Vector]]


# ======================
# Familias de códigos
# ======================

def lemma_bound(n: int, k: int) -> float:
    """(n/(4k))^{k/2}."""
    return (n / (4.0 * k)) ** (k / 2.0)


def lemma_target(n: int, k: int) -> int:
    """⌈(n/(4k))^{k/2}⌉, exacto cuando k es par; al menos 1."""
    if k % 2 == 0:
        cota = Fraction(n, 4 * k) ** (k // 2)
        return max(1, math.ceil(cota))
    return max(1, math.ceil(lemma_bound(n, k)))


def _membership(sets: Sequence[Tuple[int, ...]], n: int) -> np.ndarray:
    matriz = np.zeros((len(sets), n), dtype=np.float64)
    for fila, conjunto in enumerate(sets):
        matriz[fila, np.asarray(conjunto, dtype=np.int64) - 1] = 1.0
    return matriz


def max_pairwise_intersection(sets: Sequence[Tuple[int, ...]], n: int) -> int:
    """Máximo |T_i ∩ T_j| para i != j, por bloques de productos de matrices."""
    if len(sets) < 2:
        return 0
    matriz = _membership(sets, n)
    maximo = 0
    for inicio in range(0, len(sets), VERIFY_BLOCK):
        bloque = matriz[inicio:inicio + VERIFY_BLOCK] @ matriz.T
        filas = np.arange(bloque.shape[0])
        bloque[filas, inicio + filas] = -1.0
        maximo = max(maximo, int(bloque.max()))
    return maximo


def verify_code_family(family: IndexSetFamily) -> bool:
    """Comprueba (i)–(iii) directamente sobre la familia."""
    tamanos = all(len(set(t)) == family.k and min(t) >= 1 and max(t) <= family.n for t in family.sets)
    interseccion = max_pairwise_intersection(family.sets, family.n)
    return tamanos and 2 * interseccion < family.k and family.count >= family.lemma_bound


def construct_code(
    n: int,
    k: int,
    seed: int = 0,
    target: Optional[int] = None,
    retry_budget: Optional[int] = None,
) -> IndexSetFamily:
    """Construcción voraz aleatoria: acepta k-subconjuntos que cortan a todos los previos en < k/2."""
    if not 1 <= k <= n:
        raise InvalidParametersError("se requiere 1 <= k <= n", n=n, k=k)
    objetivo = target if target is not None else lemma_target(n, k)
    presupuesto = retry_budget if retry_budget is not None else settings.CODE_RETRY_BUDGET
    gen = np.random.default_rng([seed, n, k])

    miembros = np.zeros((objetivo, n), dtype=np.int32)
    conjuntos: List[Tuple[int, ...]] = []
    intentos = 0
    while len(conjuntos) < objetivo and intentos < presupuesto:
        intentos += 1
        candidato = gen.choice(n, size=k, replace=False)
        if conjuntos:
            cortes = miembros[: len(conjuntos), candidato].sum(axis=1)
            if 2 * int(cortes.max()) >= k:
                continue
        miembros[len(conjuntos), candidato] = 1
        conjuntos.append(tuple(sorted(int(i) + 1 for i in candidato)))

    cota = lemma_bound(n, k)
    familia = IndexSetFamily(
        n=n,
        k=k,
        sets=conjuntos,
        target=objetivo,
        lemma_bound=cota,
        max_intersection=max_pairwise_intersection(conjuntos, n),
        seed=seed,
    )
    if len(conjuntos) < objetivo:
        logger.warning("Construcción agotada: %d de %d conjuntos (n=%d, k=%d)", len(conjuntos), objetivo, n, k)
        raise ConstructionExhaustedError(
            f"presupuesto de {presupuesto} intentos agotado con {len(conjuntos)} de {objetivo} conjuntos",
            achieved=len(conjuntos),
            target=objetivo,
            partial=familia,
        )
    familia.certified = verify_code_family(familia)
    logger.info("Familia de código n=%d, k=%d: %d conjuntos en %d intentos", n, k, len(conjuntos), intentos)
    return IndexSetFamily.model_validate(familia.model_dump())


# ======================
# Vectores de empaquetamiento
# ======================

def packing_count(n: int, mu: int) -> int:
    """M = ⌈(n/4^{μ+1})^{4^μ/2}⌉."""
    return math.ceil(Fraction(n, 4 ** (mu + 1)) ** (4 ** mu // 2))


def _weak_norm_scaled(fila: np.ndarray) -> int:
    """max_m m·X*_m para un vector entero no negativo."""
    ordenado = np.sort(fila)[::-1]
    return int(np.max(np.arange(1, fila.size + 1, dtype=np.int64) * ordenado))


def _min_pairwise_l1_scaled(matriz: np.ndarray) -> int:
    minimo = None
    for i in range(matriz.shape[0] - 1):
        distancias = np.abs(matriz[i + 1:] - matriz[i]).sum(axis=1)
        candidato = int(distancias.min())
        minimo = candidato if minimo is None else min(minimo, candidato)
    return minimo


def build_packing(n: int, mu: int, nu: int, seed: int = 0) -> PackingFamily:
    """x^j = Σ_{l=μ}^{ν} 4^{-l}·χ(T̃^l_j), con aritmética entera escalada por 4^ν."""
    if not 1 <= mu <= nu:
        raise InvalidParametersError("se requiere 1 <= mu <= nu", mu=mu, nu=nu)
    if 12 * 4 ** nu > n:
        raise InvalidParametersError("se requiere 12·4^nu <= n", n=n, nu=nu)
    total = packing_count(n, mu)
    niveles = {l: construct_code(n, 4 ** l, seed=seed, target=total).sets for l in range(mu, nu + 1)}

    escala = 4 ** nu
    matriz = np.zeros((total, n), dtype=np.int64)
    tamanos_ok = True
    for j in range(total):
        usados: set = set()
        for l in range(mu, nu + 1):
            disjunto = set(niveles[l][j]) - usados
            usados |= set(niveles[l][j])
            if l == mu:
                tamanos_ok &= len(disjunto) == 4 ** mu
            else:
                tamanos_ok &= 3 * len(disjunto) >= 2 * 4 ** l
            indices = np.fromiter(disjunto, dtype=np.int64, count=len(disjunto)) - 1
            matriz[j, indices] = 4 ** (nu - l)
    if not tamanos_ok:
        logger.warning("Algún nivel T̃ quedó por debajo de (2/3)·4^l (n=%d, μ=%d, ν=%d)", n, mu, nu)

    norma = max(Fraction(_weak_norm_scaled(fila), escala) for fila in matriz)
    separacion = Fraction(_min_pairwise_l1_scaled(matriz), escala)
    return PackingFamily(
        n=n,
        mu=mu,
        nu=nu,
        vectors=[Vector(entries=tuple(float(v) / escala for v in fila)) for fila in matriz],
        weak_norm_bound=float(norma),
        min_pairwise_l1=float(separacion),
        weak_norm_exact=str(norma),
        min_pairwise_l1_exact=str(separacion),
        level_sizes_ok=tamanos_ok,
    )


# ======================
# Curva de cotas
# ======================

def _volume_ratio_root(n: int, ctx: PrecisionContext) -> Tuple[float, int]:
    """R_{1,n}^{1/n}; la precisión sube con n para absorber la cancelación de la recursión."""
    bits = max(ctx.mantissa_bits, 3 * n + 64)
    contexto = PrecisionContext(mantissa_bits=bits, strict=ctx.strict)
    mp = contexto.mp
    valor, _ = weak_positive_table(1.0, n, contexto)[n]
    log_r = n * mp.log(2) + mp.log(valor) - log_vol_lebesgue(n, 1.0, contexto)
    return float(mp.exp(log_r / n)), bits


def _dyadic_decay(n: int, k: int) -> float:
    """2^{-(k-1)/n} como ldexp(2^{-r/n}, -q), exacto por potencias de 2 entre k y k+n."""
    q, r = divmod(k - 1, n)
    return math.ldexp(2.0 ** (-r / n), -q)


def step2_epsilon(n: int, k: int, ctx: Optional[PrecisionContext] = None) -> float:
    """Radio de cobertura volumétrico 8·R_{1,n}^{1/n}·2^{-(k-1)/n}."""
    ctx = ctx if ctx is not None else PrecisionContext()
    rho, _ = _volume_ratio_root(n, ctx)
    return 8.0 * rho * _dyadic_decay(n, k)


def _step2_gamma(n: int, rho: float) -> int:
    gamma = 1
    while 8.0 * rho * _dyadic_decay(n, gamma * n) >= 1.0:
        gamma += 1
    return gamma


def step3_block_size(n: int, k: int, gamma: Optional[int] = None) -> Optional[int]:
    """l = max{l >= 1 : γ·l·(1 + log(e·n/l)) <= k-1}, con l <= n/2."""
    gamma = gamma if gamma is not None else settings.ENTROPY_STEP3_GAMMA
    mejor = None
    for l in range(1, n // 2 + 1):
        if gamma * l * (1.0 + math.log(math.e * n / l)) <= k - 1:
            mejor = l
    return mejor


def _packing_levels(n: int, k: int) -> Optional[Tuple[int, int]]:
    """(μ, ν) con ν máximo tal que 12·4^ν <= n y μ mínimo con M >= 2^{k-1}."""
    if k > n or 12 * 4 > n:
        return None
    nu = 1
    while 12 * 4 ** (nu + 1) <= n:
        nu += 1
    for mu in range(1, nu + 1):
        if Fraction(n, 4 ** (mu + 1)) ** (4 ** mu // 2) >= 2 ** (k - 1):
            return mu, nu
    return None


def entropy_bound_curve(
    n: int,
    k_max: int,
    ctx: Optional[PrecisionContext] = None,
    c1: Optional[float] = None,
    c2: Optional[float] = None,
) -> EntropyBoundCurve:
    """Cotas inferior y superior de e_k(id: ℓ^n_{1,∞} → ℓ^n_1) para k = 1..k_max."""
    ctx = ctx if ctx is not None else PrecisionContext()
    if n < 1 or k_max < 1:
        raise InvalidParametersError("se requiere n >= 1 y k_max >= 1", n=n, k_max=k_max)
    c1 = settings.ENTROPY_C1 if c1 is None else c1
    c2 = settings.ENTROPY_C2 if c2 is None else c2
    if c1 <= 0 or c2 < 1:
        raise InvalidParametersError("se requiere C1 > 0 y C2 >= 1", c1=c1, c2=c2)

    rho, bits = _volume_ratio_root(n, ctx)
    norma_id = 1.0 + math.log(n)
    puntos = []
    for k in range(1, k_max + 1):
        volumen = rho * _dyadic_decay(n, k)
        niveles = _packing_levels(n, k)
        empaque = float(PACKING_CONSTANT * (niveles[1] - niveles[0] + 1)) if niveles else None
        forma_exp = c2 * volumen
        if k <= n:
            superior = min(norma_id, max(c1 * math.log(1.0 + n / k), forma_exp))
        else:
            superior = min(norma_id, forma_exp)
        l = step3_block_size(n, k)
        puntos.append(
            EntropyBoundPoint(
                k=k,
                lower=max(volumen, empaque or 0.0),
                upper=superior,
                volume_lower=volumen,
                packing_lower=empaque,
                packing_mu=niveles[0] if niveles else None,
                packing_nu=niveles[1] if niveles else None,
                step3_l=l,
                step3_tail=math.log(n / l) if l else None,
            )
        )
    return EntropyBoundCurve(
        n=n,
        points=puntos,
        c1=c1,
        c2=c2,
        volume_ratio_root=rho,
        step2_gamma=_step2_gamma(n, rho),
        mantissa_bits=bits,
    )


# ======================
# Conjuntos separados y coberturas voraces
# ======================

def _cloud(points: PointCloud) -> np.ndarray:
    if isinstance(points, np.ndarray):
        return np.atleast_2d(np.asarray(points, dtype=np.float64))
    return np.asarray([v.entries if isinstance(v, Vector) else v for v in points], dtype=np.float64)


def greedy_separated_indices(points: PointCloud, eps: float) -> List[int]:
    nube = _cloud(points)
    if nube.size == 0:
        return []
    aceptados = np.empty_like(nube)
    indices: List[int] = []
    for i, punto in enumerate(nube):
        if indices:
            distancias = np.abs(aceptados[: len(indices)] - punto).sum(axis=1)
            if distancias.min() <= eps:
                continue
        aceptados[len(indices)] = punto
        indices.append(i)
    return indices


def greedy_separated_set(points: PointCloud, eps: float, metric: str = "l1") -> List[Vector]:
    """Recorrido voraz: acepta un punto si dista más de eps (en ℓ_1) de todos los aceptados."""
    if metric != "l1":
        raise InvalidParametersError("sólo se admite la métrica ℓ_1", metric=metric)
    if eps < 0:
        raise InvalidParametersError("eps debe ser >= 0", eps=eps)
    nube = _cloud(points)
    return [Vector(entries=tuple(float(v) for v in nube[i])) for i in greedy_separated_indices(nube, eps)]


def greedy_net_size(points: PointCloud, eps: float) -> int:
    """Tamaño de un conjunto eps-separado maximal, que es también una eps-red de la nube."""
    return len(greedy_separated_indices(points, eps))


def empirical_entropy(points: PointCloud, k: int, iterations: int = 30) -> float:
    """Menor eps (por bisección) con una red voraz de a lo sumo 2^{k-1} puntos."""
    nube = _cloud(points)
    limite = 2 ** (k - 1)
    bajo, alto = 0.0, float(np.abs(nube - nube[0]).sum(axis=1).max()) * 2.0
    if greedy_net_size(nube, bajo) <= limite:
        return 0.0
    for _ in range(iterations):
        medio = 0.5 * (bajo + alto)
        if greedy_net_size(nube, medio) <= limite:
            alto = medio
        else:
            bajo = medio
    return alto


def calibrate_entropy_constants(
    n_values: Sequence[int] = (2, 3, 4),
    samples: int = 400,
    seed: int = 0,
    ctx: Optional[PrecisionContext] = None,
) -> EntropyCalibration:
    """Ajusta C1 y C2 comparando las formas de la curva con coberturas empíricas."""
    ctx = ctx if ctx is not None else PrecisionContext()
    c1 = 0.0
    c2 = 1.0
    bola = Params(p=1, q=math.inf)
    for n in n_values:
        nube = sample_ball(n, bola, samples, seed=seed)
        rho, _ = _volume_ratio_root(n, ctx)
        for k in range(1, 2 * n + 1):
            estimado = empirical_entropy(nube, k)
            if k <= n:
                c1 = max(c1, estimado / math.log(1.0 + n / k))
            else:
                c2 = max(c2, estimado / (rho * _dyadic_decay(n, k)))
        logger.info("Calibración n=%d: C1=%.3f, C2=%.3f", n, c1, c2)
    return EntropyCalibration(c1=c1, c2=c2, n_values=list(n_values), samples=samples, seed=seed)
