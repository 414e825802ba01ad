import math

import pytest
from pydantic import ValidationError

from lorentzvol.exceptions import (
    CompositionCapExceededError,
    InvalidParametersError,
    MethodNotApplicableError,
    PrecisionLossError,
)
from lorentzvol.schemas.lorentz import Params
from lorentzvol.schemas.volume import Composition, PrecisionContext, WeightVector
from lorentzvol.services import volume_exact_service
from lorentzvol.services.volume_exact_service import (
    applicable_methods,
    check_condition,
    enumerate_compositions,
    kappa_mp,
    v_integral,
    vol_ball,
    vol_lebesgue,
    vol_q1,
    vol_weak_positive_explicit,
    vol_weak_positive_explicit_partial_sums,
    vol_weak_positive_integral,
    vol_weak_positive_recursive,
)


def test_hand_derived_positive_orthant_volumes(ctx):
    assert float(vol_weak_positive_recursive(2, 1, ctx)) == pytest.approx(3 / 4, rel=1e-15)
    assert float(vol_weak_positive_recursive(3, 1, ctx)) == pytest.approx(49 / 108, rel=1e-15)
    assert float(vol_weak_positive_recursive(4, 1, ctx)) == pytest.approx(0.23104745, rel=1e-7)


@pytest.mark.parametrize("p", [0.5, 1, 2, 100])
def test_cross_method_agreement(p, ctx):
    for n in range(1, 13):
        recursion = vol_weak_positive_recursive(n, p, ctx)
        explicita = vol_weak_positive_explicit(n, p, ctx)
        integral = vol_weak_positive_integral(n, p, ctx)
        assert abs(explicita - recursion) <= 1e-20 * abs(recursion)
        assert abs(integral - recursion) <= 1e-20 * abs(recursion)


@pytest.mark.parametrize("p", [0.5, 1.5, 2])
@pytest.mark.parametrize("n", range(1, 11))
def test_partial_sums_rewriting_matches_composition_sum(n, p, ctx):
    directa = vol_weak_positive_explicit(n, p, ctx)
    parciales = vol_weak_positive_explicit_partial_sums(n, p, ctx)
    assert abs(directa - parciales) <= 1e-30 * abs(directa)


def test_enumerate_compositions_lexicographic():
    composiciones = [c.parts for c in enumerate_compositions(4)]
    assert len(composiciones) == 8
    assert composiciones[0] == (1, 1, 1, 1)
    assert composiciones[-1] == (4,)
    assert composiciones == sorted(composiciones)


def test_composition_partial_sums():
    composicion = Composition(parts=(2, 1, 3))
    assert composicion.n == 6
    assert composicion.length == 3
    assert composicion.partial_sums == (0, 2, 3, 6)


def test_composition_cap_enforced_eagerly():
    with pytest.raises(CompositionCapExceededError):
        enumerate_compositions(25)
    assert len(list(enumerate_compositions(5, cap=5))) == 16


def test_v_integral_explicit_weights(ctx):
    a = WeightVector(entries=(1.0, 0.5))
    assert float(v_integral(0, a, ctx)) == pytest.approx(3 / 8, rel=1e-15)
    assert float(v_integral(1, a, ctx)) == pytest.approx(11 / 48, rel=1e-15)


@pytest.mark.parametrize("m", [0, 1, 2, 5])
def test_v_integral_single_weight(m, ctx):
    a = WeightVector(entries=(0.75,))
    assert float(v_integral(m, a, ctx)) == pytest.approx(0.75 ** (m + 1) / (m + 1), rel=1e-15)


def test_weight_vector_strictly_decreasing():
    with pytest.raises(ValidationError):
        WeightVector(entries=(1.0, 1.0))
    with pytest.raises(ValidationError):
        WeightVector(entries=(1.0, -0.5))
    assert WeightVector.power(3, 1).entries == pytest.approx((1.0, 0.5, 1 / 3))


@pytest.mark.parametrize("n", range(1, 21))
def test_cross_polytope_anchor(n, ctx):
    resultado = vol_ball(n, Params(p=1, q=1), ctx=ctx)
    assert resultado.method == "product-q1"
    assert resultado.value == pytest.approx(2 ** n / math.factorial(n), rel=1e-12)


def test_closed_form_anchors(ctx):
    disco = vol_ball(2, Params(p=2, q=2), ctx=ctx)
    assert disco.method == "dirichlet"
    assert disco.value == pytest.approx(math.pi, rel=1e-12)
    assert vol_ball(3, Params(p=1, q=1), ctx=ctx).value == pytest.approx(4 / 3, rel=1e-12)
    assert vol_lebesgue(3, 2, ctx).value == pytest.approx(4 * math.pi / 3, rel=1e-12)
    assert vol_q1(2, math.inf, ctx).value == pytest.approx(4 / 1.5, rel=1e-12)


def test_weak_ball_value_and_error_bound(ctx):
    resultado = vol_ball(3, Params(p=1, q="inf"), ctx=ctx)
    assert resultado.method == "recursion"
    assert resultado.value == pytest.approx(98 / 27, rel=1e-15)
    assert resultado.error_bound < 1e-12 * resultado.value
    assert not resultado.precision_flagged


@pytest.mark.parametrize("method", ["recursion", "explicit", "integral"])
def test_explicit_method_selection(method, ctx):
    resultado = vol_ball(5, Params(p=2, q="inf"), method=method, ctx=ctx)
    assert resultado.method == method
    referencia = vol_ball(5, Params(p=2, q="inf"), ctx=ctx)
    assert resultado.value == pytest.approx(referencia.value, rel=1e-14)


def test_argmax_of_table_columns(ctx):
    columna_1 = [vol_ball(n, Params(p=1, q="inf"), ctx=ctx).value for n in range(1, 11)]
    assert columna_1.index(max(columna_1)) + 1 == 4
    columna_2 = [vol_ball(n, Params(p=2, q="inf"), ctx=ctx).value for n in range(1, 31)]
    assert columna_2.index(max(columna_2)) + 1 == 17


@pytest.mark.parametrize("method", ["recursion", "integral"])
def test_weak_disc_column_peaks_at_17(method, ctx):
    params = Params(p=2, q="inf")
    v16, v17, v18 = (vol_ball(n, params, method=method, ctx=ctx).value for n in (16, 17, 18))
    assert v17 > v18 > v16
    assert v17 == pytest.approx(114.792, rel=1e-4)
    assert v18 == pytest.approx(114.4416, rel=1e-4)


@pytest.mark.parametrize("p", [0.5, 1, 2, 4, 100])
def test_weak_ball_between_lebesgue_ball_and_its_dilation(p, ctx):
    for n in range(2, 11):
        debil = vol_ball(n, Params(p=p, q="inf"), ctx=ctx).value
        lebesgue = vol_lebesgue(n, p, ctx).value
        assert lebesgue < debil <= (1 + math.log(n)) ** (n / p) * lebesgue


def test_weak_ball_volume_increases_with_p(ctx):
    exponentes = [0.5, 1, 2, 4, 100]
    for n in range(2, 11):
        columna = [vol_ball(n, Params(p=p, q="inf"), ctx=ctx).value for p in exponentes]
        assert all(a < b for a, b in zip(columna, columna[1:]))
    assert all(vol_ball(1, Params(p=p, q="inf"), ctx=ctx).value == pytest.approx(2.0) for p in exponentes)


def test_underflowing_volume_keeps_log_value(ctx):
    resultado = vol_ball(400, Params(p=1, q=1), ctx=ctx)
    assert resultado.value == 0.0
    assert resultado.out_of_range
    assert resultado.log_value == pytest.approx(400 * math.log(2) - math.lgamma(401), rel=1e-12)
    assert not vol_ball(20, Params(p=1, q=1), ctx=ctx).out_of_range


def test_applicable_methods():
    assert applicable_methods(Params(p=1, q="inf")) == ["recursion", "explicit", "integral", "monte-carlo"]
    assert applicable_methods(Params(p=1, q=1)) == ["product-q1", "dirichlet", "monte-carlo"]
    assert applicable_methods(Params(p=1, q=2)) == ["monte-carlo"]


def test_method_not_applicable(ctx):
    with pytest.raises(MethodNotApplicableError):
        vol_ball(3, Params(p=1, q=2), method="recursion", ctx=ctx)
    with pytest.raises(MethodNotApplicableError):
        vol_weak_positive_recursive(3, math.inf, ctx)


def test_invalid_dimension(ctx):
    with pytest.raises(InvalidParametersError):
        vol_ball(0, Params(p=1, q=1), ctx=ctx)


def test_kappa_mp(ctx):
    assert float(kappa_mp(1, 5, ctx)) == 5.0
    assert float(kappa_mp(math.inf, 4, ctx)) == pytest.approx(25 / 12, rel=1e-15)
    assert vol_q1(4, 2, ctx).log_value == pytest.approx(
        4 * math.log(2) - sum(math.log(float(kappa_mp(2, k, ctx))) for k in range(1, 5)), rel=1e-14
    )


def test_check_condition_flags_and_strict_mode():
    laxo = PrecisionContext(mantissa_bits=64)
    assert check_condition(1e300, laxo, "prueba")
    assert not check_condition(10.0, laxo, "prueba")
    with pytest.raises(PrecisionLossError):
        check_condition(1e300, PrecisionContext(mantissa_bits=64, strict=True), "prueba")


def test_precision_context_minimum_bits():
    with pytest.raises(ValidationError):
        PrecisionContext(mantissa_bits=32)


def test_recursion_table_extends_in_place(ctx):
    p = 1.25
    corta = volume_exact_service.weak_positive_table(p, 5, ctx)
    tabla = volume_exact_service._TABLAS[(p, ctx.mantissa_bits)]
    assert len(tabla) == 6
    larga = volume_exact_service.weak_positive_table(p, 9, ctx)
    assert volume_exact_service._TABLAS[(p, ctx.mantissa_bits)] is tabla
    assert len(tabla) == 10
    assert larga[:6] == corta
