import math

import numpy as np
import pytest
from pydantic import ValidationError

from lorentzvol.exceptions import InvalidParametersError
from lorentzvol.schemas.lorentz import Params, RearrangedVector, Vector, parse_extended_real
from lorentzvol.services.lorentz_service import (
    embedding_constant,
    embedding_sup_constant,
    in_ball,
    kappa,
    lebesgue_containment_factor,
    lorentz_norm,
    lorentz_norms,
    rearrange,
)


@pytest.mark.parametrize("texto, esperado", [("inf", math.inf), ("∞", math.inf), ("1/2", 0.5), ("3", 3.0)])
def test_parse_extended_real(texto, esperado):
    assert parse_extended_real(texto) == esperado


def test_params_rejects_non_positive_and_nan():
    with pytest.raises(ValidationError):
        Params(p=0, q=1)
    with pytest.raises(ValidationError):
        Params(p=1, q=float("nan"))
    assert Params(p="inf", q=1).p_inf


def test_rearrange_sorts_absolute_values():
    assert rearrange([3.0, -5.0, 1.0]).entries == (5.0, 3.0, 1.0)
    assert rearrange(Vector(entries=(0.0, -2.0))).entries == (2.0, 0.0)


def test_rearranged_vector_must_be_non_increasing():
    with pytest.raises(ValidationError):
        RearrangedVector(entries=(1.0, 2.0))


def test_weak_norm():
    assert lorentz_norm([1.0, 1.0], Params(p=1, q="inf")) == pytest.approx(2.0)
    assert lorentz_norm([1.0, 0.0], Params(p=1, q="inf")) == pytest.approx(1.0)
    assert lorentz_norm([0.5, -3.0], Params(p="inf", q="inf")) == pytest.approx(3.0)


def test_diagonal_cases_match_lebesgue_norms():
    x = np.array([0.3, -1.2, 0.7, 2.0])
    assert lorentz_norm(x, Params(p=2, q=2)) == pytest.approx(np.linalg.norm(x))
    assert lorentz_norm(x, Params(p=1, q=1)) == pytest.approx(np.abs(x).sum())


def test_norms_batch_matches_single():
    rng = np.random.default_rng(11)
    batch = rng.normal(size=(50, 6))
    params = Params(p=1.5, q=3)
    filas = lorentz_norms(batch, params)
    for fila, valor in zip(batch, filas):
        assert lorentz_norm(fila, params) == valor


def test_in_ball_boundary_counts():
    assert in_ball([1.0, 0.0], Params(p=1, q=1))
    assert not in_ball([1.0, 0.5], Params(p=1, q=1))


def test_rejects_non_finite_vector():
    with pytest.raises(InvalidParametersError):
        lorentz_norm([1.0, math.inf], Params(p=1, q=1))


def test_kappa():
    assert kappa(1, 5) == pytest.approx(5.0)
    assert kappa(math.inf, 3) == pytest.approx(1 + 1 / 2 + 1 / 3)
    assert kappa(2, 1) == 1.0


@pytest.mark.parametrize("p, q, r", [(1, 1, math.inf), (1, 2, math.inf), (2, 1, 2), (2, 3, math.inf)])
def test_embedding_inequality_on_random_vectors(p, q, r):
    rng = np.random.default_rng(2024)
    batch = rng.standard_cauchy(size=(20_000, 5)) * rng.random((20_000, 1))
    c = embedding_constant(p, q, r)
    izquierda = lorentz_norms(batch, Params(p=p, q=r))
    derecha = lorentz_norms(batch, Params(p=p, q=q))
    assert np.all(izquierda <= c * derecha * (1 + 1e-10) + 1e-10)


def test_embedding_constant_values():
    assert embedding_constant(1, 1, math.inf) == 1.0
    assert embedding_constant(1, 2, math.inf) == pytest.approx(math.sqrt(2))
    with pytest.raises(InvalidParametersError):
        embedding_constant(1, 3, 2)


def test_embedding_sup_constant_below_limit():
    assert embedding_sup_constant(1, 2, 50) <= embedding_constant(1, 2, math.inf)
    assert embedding_sup_constant(2, 1, 50) == pytest.approx(1.0)


def test_lebesgue_containment_factor_is_harmonic_number():
    assert lebesgue_containment_factor(4, 1) == pytest.approx(1 + 1 / 2 + 1 / 3 + 1 / 4)
    assert lebesgue_containment_factor(4, 2) == pytest.approx(math.sqrt(25 / 12))


NORM_PARAMS = [(1, 1), (1, "inf"), (2, 1), (1.5, 3), (0.5, 2), ("inf", 1), ("inf", "inf")]


@pytest.mark.parametrize("p, q", NORM_PARAMS)
def test_norm_is_absolutely_homogeneous(p, q):
    rng = np.random.default_rng(5)
    params = Params(p=p, q=q)
    batch = rng.normal(size=(10_000, 6))
    lam = rng.uniform(-10, 10, size=10_000)
    escaladas = lorentz_norms(lam[:, np.newaxis] * batch, params)
    np.testing.assert_allclose(escaladas, np.abs(lam) * lorentz_norms(batch, params), rtol=1e-12)


@pytest.mark.parametrize("p, q", NORM_PARAMS)
def test_norm_ignores_order_and_signs(p, q):
    rng = np.random.default_rng(6)
    params = Params(p=p, q=q)
    batch = rng.normal(size=(2_000, 7))
    permutadas = batch[:, rng.permutation(7)] * rng.choice([-1.0, 1.0], size=batch.shape)
    np.testing.assert_allclose(lorentz_norms(permutadas, params), lorentz_norms(batch, params), rtol=1e-15)


@pytest.mark.parametrize("p, q", [(1, 1), (2, 1), (2, 2), (4, 1), (1, 0.5), (3, 2)])
def test_kappa_dominates_power_when_q_below_p(p, q):
    # κ_{p/q}(l) = Σ_{k≤l} k^{q/p-1}
    for l in range(1, 1001):
        assert kappa(p / q, l) >= l ** (q / p) * (1 - 1e-15)
