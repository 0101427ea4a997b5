import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ldcu.euler import (AdmissibilityError, GasModel, conserved_from_primitive, flux_x_1d,
                        flux_x_2d, flux_y_2d, pressure1d, pressure2d,
                        primitive_from_conserved, sound_speed, swap_xy)
from conftest import random_states


@pytest.mark.parametrize("U, p", [
    ((1.0, 0.0, 2.5), 1.0),
    ((1.0, 1.0, 3.0), 1.0),
    ((0.125, 0.0, 0.25), 0.1),
])
def test_pressure1d(U, p):
    assert pressure1d(np.array(U), 1.4) == pytest.approx(p, rel=1e-15)


@pytest.mark.parametrize("U, p", [
    ((1.0, 0.0, 0.0, 2.5), 1.0),
    ((1.0, 1.0, 1.0, 3.5), 1.0),
    ((1.5, 0.0, 0.0, 3.75), 1.5),
])
def test_pressure2d(U, p):
    assert pressure2d(np.array(U), GasModel(1.4)) == pytest.approx(p, rel=1e-15)


def test_pressure_rejects_nonpositive_density():
    with pytest.raises(AdmissibilityError):
        pressure1d(np.array([0.0, 0.0, 1.0]))
    with pytest.raises(AdmissibilityError):
        pressure2d(np.array([[1.0, -1.0], [0, 0], [0, 0], [1, 1]]))


def test_gas_model_validates_gamma():
    with pytest.raises(ValueError):
        GasModel(1.0)


def test_flux_1d_values():
    np.testing.assert_allclose(flux_x_1d(np.array([1.0, 0.0, 2.5])), [0, 1, 0], atol=1e-15)
    np.testing.assert_allclose(flux_x_1d(np.array([1.0, 1.0, 3.0])), [1, 2, 4], rtol=1e-15)


def test_flux_1d_random_finite_and_momentum_flux_above_pressure(rng):
    U = random_states(rng, 1000)
    F = flux_x_1d(U)
    assert np.all(np.isfinite(F))
    assert np.all(F[1] >= pressure1d(U))


def test_flux_2d_values():
    rest = np.array([1.0, 0.0, 0.0, 2.5])
    np.testing.assert_allclose(flux_x_2d(rest), [0, 1, 0, 0], atol=1e-15)
    np.testing.assert_allclose(flux_y_2d(rest), [0, 0, 1, 0], atol=1e-15)
    np.testing.assert_allclose(flux_x_2d(np.array([1.0, 1.0, 2.0, 5.0])), [1, 2, 2, 6],
                               rtol=1e-15)


def test_flux_y_is_swapped_flux_x_exactly(rng):
    U = random_states(rng, 100, ndim=2)
    assert np.array_equal(flux_y_2d(U), swap_xy(flux_x_2d(swap_xy(U))))


def test_sound_speed():
    assert sound_speed(1.0, 1.0, 1.4) == pytest.approx(math.sqrt(1.4), rel=1e-15)
    assert float(sound_speed(1.0, 1.0, 1.4)) == pytest.approx(1.1832159566199232, abs=1e-15)
    assert sound_speed(4.0, 1.4, 1.4) == pytest.approx(0.7, rel=1e-15)
    with pytest.raises(AdmissibilityError):
        sound_speed(1.0, 0.0)
    with pytest.raises(AdmissibilityError):
        sound_speed(-1.0, 1.0)


def test_pressure2d_embeds_pressure1d_exactly(rng):
    U1 = random_states(rng, 500)
    U2 = np.stack([U1[0], U1[1], np.zeros_like(U1[0]), U1[2]])
    assert np.array_equal(pressure2d(U2), pressure1d(U1))


@given(rho=st.floats(1e-3, 1e3), u=st.floats(-50, 50), v=st.floats(-50, 50),
       p=st.floats(1e-3, 1e3))
def test_primitive_round_trip(rho, u, v, p):
    W = np.array([rho, u, v, p])
    back = primitive_from_conserved(conserved_from_primitive(W))
    scale = np.array([rho, max(abs(u), 1.0), max(abs(v), 1.0), p])
    # Pressure recovery loses digits when kinetic energy dominates.
    ratio = 1.0 + rho * (u * u + v * v) / p
    np.testing.assert_array_less(np.abs(back - W), 1e-14 * scale * np.array([1, 1, 1, ratio]))


def test_primitive_round_trip_moderate_states(rng):
    from conftest import random_primitive
    W = random_primitive(rng, 1000, ndim=2)
    back = primitive_from_conserved(conserved_from_primitive(W))
    np.testing.assert_allclose(back, W, rtol=1e-14, atol=1e-14)
