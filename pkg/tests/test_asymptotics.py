import math

import pytest

from lorentzvol.exceptions import InvalidParametersError, MethodNotApplicableError
from lorentzvol.schemas.lorentz import Params
from lorentzvol.schemas.volume import McConfig
from lorentzvol.services.asymptotics_service import (
    log_integral_window,
    ratio_growth_base,
    ratio_growth_floor,
    ratio_lower_bound,
    ratio_sequence,
    root_volume_sequence,
    sandwich_ratios,
)


def test_cross_polytope_sequence(ctx):
    puntos = root_volume_sequence(Params(p=1, q=1), 10, ctx)
    assert puntos[0].normalized == pytest.approx(2.0)
    for punto in puntos:
        esperado = (2 ** punto.n / math.factorial(punto.n)) ** (1 / punto.n) * punto.n
        assert punto.normalized == pytest.approx(esperado, rel=1e-12)
        assert punto.method == "product-q1"


def test_log_law_first_point(ctx):
    puntos = root_volume_sequence(Params(p="inf", q=1), 1, ctx)
    assert puntos[0].normalized == pytest.approx(2 * math.log(2))


@pytest.mark.parametrize("p, q", [(1, 1), (2, 1), (2, 2)])
def test_root_volume_window(p, q, ctx):
    normalizados = [punto.normalized for punto in root_volume_sequence(Params(p=p, q=q), 30, ctx)]
    assert max(normalizados) / min(normalizados) < 4


def test_log_law_window(ctx):
    puntos = root_volume_sequence(Params(p="inf", q=1), 200, ctx)[1:]
    normalizados = [punto.normalized for punto in puntos]
    assert max(normalizados) / min(normalizados) < 4


@pytest.mark.parametrize("p", [1, 2])
def test_weak_ball_sandwich(p, ctx):
    puntos = sandwich_ratios(p, 30, ctx)
    superiores = [punto.upper_ratio for punto in puntos]
    assert max(superiores) / min(superiores) < 4
    assert all(punto.lower_ratio <= 1 for punto in puntos)


def test_log_integral_window_brackets_value(ctx):
    for n in (1, 2, 10, 100):
        ventana = log_integral_window(n, ctx)
        assert ventana.lower <= ventana.value <= ventana.upper


def test_monte_carlo_sequence_limited():
    with pytest.raises(MethodNotApplicableError):
        root_volume_sequence(Params(p=1, q=2), 11)


def test_ratio_values(ctx):
    puntos = ratio_sequence(1, 15, ctx)
    assert puntos[0].ratio == pytest.approx(1.0)
    assert puntos[1].ratio == pytest.approx(1.5, rel=1e-15)
    assert puntos[2].ratio == pytest.approx(49 / 18, rel=1e-15)
    assert all(punto.ratio >= 1 for punto in puntos)


def test_ratio_grows_exponentially(ctx):
    puntos = {punto.n: punto for punto in ratio_sequence(1, 15, ctx)}
    for n in range(5, 15):
        assert puntos[n + 1].ratio / puntos[n].ratio >= 1.1
        assert puntos[n + 1].growth == pytest.approx(puntos[n + 1].ratio / puntos[n].ratio)


def test_ratio_lower_bound_below_ratio(ctx):
    puntos = {punto.n: punto for punto in ratio_sequence(1, 14, ctx)}
    assert ratio_lower_bound(1, 2, ctx) == pytest.approx(1.0)
    for n in range(2, 15, 2):
        assert puntos[n].lower_bound is not None
        assert puntos[n].lower_bound <= puntos[n].ratio * (1 + 1e-12)
    assert puntos[3].lower_bound is None


def test_ratio_lower_bound_domain(ctx):
    with pytest.raises(InvalidParametersError):
        ratio_lower_bound(1, 3, ctx)
    with pytest.raises(InvalidParametersError):
        ratio_lower_bound(3, 4, ctx)


def test_ratio_requires_finite_p(ctx):
    with pytest.raises(InvalidParametersError):
        ratio_sequence(math.inf, 5, ctx)


def test_growth_base():
    assert ratio_growth_floor() > 1
    assert ratio_growth_base(2) == pytest.approx(ratio_growth_floor())
    assert ratio_growth_base(1) > ratio_growth_base(2)


@pytest.mark.slow
def test_root_volume_window_from_monte_carlo():
    puntos = root_volume_sequence(Params(p=1, q=2), 10, mc_config=McConfig(samples=2_000_000, seed=3))
    assert all(punto.method == "monte-carlo" for punto in puntos)
    normalizados = [punto.normalized for punto in puntos]
    assert max(normalizados) / min(normalizados) < 4
