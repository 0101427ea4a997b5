import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ldcu.euler import conserved_from_primitive, flux_x_1d, flux_x_2d, flux_y_2d, swap_xy
from ldcu.flux import (
    Flavor,
    anti_diffusion,
    local_speeds,
    numerical_flux,
    numerical_flux_2d_y,
    star_state,
    star_state_2d_x,
)
from conftest import random_primitive
import oracles

FLAVORS = list(Flavor)


def state1(rho, u, p):
    return conserved_from_primitive(np.array([rho, u, p], dtype=float))


def pairs(rng, size, ndim):
    Wm = random_primitive(rng, size, ndim)
    Wp = random_primitive(rng, size, ndim)
    return conserved_from_primitive(Wm), conserved_from_primitive(Wp)


def test_speeds_rest_state():
    U = state1(1.0, 0.0, 1.0)
    ap, am = local_speeds(U, U)
    assert ap == pytest.approx(math.sqrt(1.4), rel=1e-15)
    assert am == pytest.approx(-math.sqrt(1.4), rel=1e-15)


def test_speeds_supersonic():
    U = state1(1.0, 3.0, 1.0)
    ap, am = local_speeds(U, U)
    assert am == 0.0
    assert ap == pytest.approx(4.1832159566199232, rel=1e-15)


def test_speeds_bracket_zero(rng):
    Um, Up = pairs(rng, 500, 1)
    ap, am = local_speeds(Um, Up)
    assert np.all(am <= 0) and np.all(ap >= 0)


def test_star_of_equal_states_is_the_state(rng):
    Um, _ = pairs(rng, 50, 1)
    s = star_state(Um, Um, local_speeds(Um, Um))
    np.testing.assert_allclose(s.rho, Um[0], rtol=1e-13)
    np.testing.assert_allclose(s.mom, Um[1], rtol=1e-12, atol=1e-13)


def test_star_density_sod_pair():
    Um, Up = state1(1.0, 0.0, 1.0), state1(0.125, 0.0, 1.0)
    sp = local_speeds(Um, Up)
    s = star_state(Um, Up, sp)
    ap, am = float(sp[0]), float(sp[1])
    assert s.rho == pytest.approx((ap * 0.125 - am * 1.0) / (ap - am), rel=1e-15)
    assert s.mom == pytest.approx(0.0, abs=1e-15)


def test_star_mirror_negates_u(rng):
    Um, Up = pairs(rng, 200, 1)
    mirror = np.array([1.0, -1.0, 1.0])[:, None]
    a = star_state(Um, Up, local_speeds(Um, Up))
    Mm, Mp = mirror * Up, mirror * Um
    b = star_state(Mm, Mp, local_speeds(Mm, Mp))
    np.testing.assert_allclose(b.u, -a.u, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(b.rho, a.rho, rtol=1e-12)


def test_star_2d_matches_1d_when_v_is_zero(rng):
    Wm, Wp = random_primitive(rng, 100, 2), random_primitive(rng, 100, 2)
    Wm[2] = Wp[2] = 0.0
    Um, Up = conserved_from_primitive(Wm), conserved_from_primitive(Wp)
    sp = local_speeds(Um, Up)
    Ustar, us = star_state_2d_x(Um, Up, sp)
    one = star_state(Um[[0, 1, 3]], Up[[0, 1, 3]], local_speeds(Um[[0, 1, 3]], Up[[0, 1, 3]]))
    assert np.array_equal(Ustar[0], one.rho)
    assert np.array_equal(Ustar[1], one.mom)
    assert np.array_equal(us, one.u)
    assert np.all(Ustar[2] == 0.0)


def test_star_2d_density_vs_oracle(rng):
    Um, Up = pairs(rng, 100, 2)
    Ustar, _ = star_state_2d_x(Um, Up, local_speeds(Um, Up))
    for k in range(100):
        m, p = list(Um[:, k]), list(Up[:, k])
        rm, um, _, pm = oracles.prim2(m)
        rp, up, _, pp = oracles.prim2(p)
        ap, am = oracles.speeds(um, math.sqrt(1.4 * pm / rm), up, math.sqrt(1.4 * pp / rp))
        Fm, Fp = oracles.fluxx2(m), oracles.fluxx2(p)
        rs = (ap * p[0] - am * m[0] - (Fp[0] - Fm[0])) / (ap - am)
        assert Ustar[0, k] == pytest.approx(rs, rel=1e-14)


@pytest.mark.parametrize("flavor", FLAVORS)
def test_equal_states_no_antidiffusion(rng, flavor):
    Um, _ = pairs(rng, 100, 2)
    sp = local_speeds(Um, Um)
    star = star_state(Um, Um, sp)
    ad = anti_diffusion(Um, Um, star, sp, flavor)
    assert np.all(ad.q == 0.0)


def test_star_density_outside_range_gives_zero_qrho():
    # strong expansion: rho* falls below both sides
    Um, Up = state1(1.0, -2.0, 1.0), state1(1.0, 2.0, 1.0)
    sp = local_speeds(Um, Up)
    star = star_state(Um, Up, sp)
    assert star.rho < 1.0
    assert anti_diffusion(Um, Up, star, sp, "new").q_rho == 0.0


def test_alpha_and_qrho_bounds(rng):
    Um, Up = pairs(rng, 3000, 1)
    sp = local_speeds(Um, Up)
    star = star_state(Um, Up, sp)
    ad = anti_diffusion(Um, Up, star, sp, "new")
    ap, am = sp
    inside = (am < star.u) & (star.u < ap)
    assert inside.sum() > 2500
    assert np.all((ad.alpha[inside] >= 0) & (ad.alpha[inside] <= 1))
    a1 = (star.u - am) * (star.rho - Um[0])
    a2 = (ap - star.u) * (Up[0] - star.rho)
    q = ad.q_rho
    assert np.all(np.abs(q) <= np.minimum(np.abs(a1), np.abs(a2)))
    assert np.all(q * a1 >= 0) and np.all(q * a2 >= 0)


def test_alpha_tie_branch():
    # u* = 0 exactly: symmetric rest states give u* = 0 and alpha = a-/a- = 1
    Um, Up = state1(1.0, 0.0, 1.0), state1(0.5, 0.0, 1.0)
    sp = local_speeds(Um, Up)
    star = star_state(Um, Up, sp)
    assert star.u == 0.0
    assert anti_diffusion(Um, Up, star, sp, "new").alpha == 1.0


@pytest.mark.parametrize("ndim", [1, 2])
@pytest.mark.parametrize("flavor", FLAVORS)
def test_consistency(rng, ndim, flavor):
    U, _ = pairs(rng, 1200, ndim)
    F = numerical_flux(U, U, flavor=flavor)
    exact = flux_x_1d(U) if ndim == 1 else flux_x_2d(U)
    assert np.all(np.abs(F - exact) <= 1e-12 * (1 + np.abs(exact)))


@pytest.mark.parametrize("flavor", FLAVORS)
def test_flux_matches_scalar_oracle_1d(rng, flavor):
    Um, Up = pairs(rng, 300, 1)
    F = numerical_flux(Um, Up, flavor=flavor)
    for k in range(300):
        ref = oracles.ldcu_flux_1d(list(Um[:, k]), list(Up[:, k]), flavor.value)
        np.testing.assert_allclose(F[:, k], ref, rtol=1e-12, atol=1e-12)


def test_rest_states_equal_pressure():
    Um, Up = state1(1.0, 0.0, 1.0), state1(0.125, 0.0, 1.0)
    F = numerical_flux(Um, Up, flavor="new")
    ref = oracles.ldcu_flux_1d(list(Um), list(Up), "new")
    np.testing.assert_allclose(F, ref, rtol=1e-14, atol=1e-15)
    assert F[1] == pytest.approx(1.0, rel=1e-14)


def test_flavors_coincide_when_qrho_vanishes(rng):
    Wm = random_primitive(rng, 200, 2)
    Wp = Wm.copy()
    Wp[3] *= 1.0 + rng.uniform(0, 0.5, 200)  # pressure jump only, same rho and v
    Um, Up = conserved_from_primitive(Wm), conserved_from_primitive(Wp)
    sp = local_speeds(Um, Up)
    star = star_state(Um, Up, sp)
    zero = np.zeros(200, dtype=bool)
    for fl in ("new", "old"):
        ad = anti_diffusion(Um, Up, star, sp, fl)
        zero |= (ad.q_rho != 0) | (ad.q_mt != 0)
    keep = ~zero
    assert keep.any()
    F = {fl: numerical_flux(Um[:, keep], Up[:, keep], flavor=fl) for fl in FLAVORS}
    assert np.array_equal(F[Flavor.NEW], F[Flavor.CU])
    assert np.array_equal(F[Flavor.OLD], F[Flavor.CU])


@pytest.mark.parametrize("flavor", FLAVORS)
def test_2d_reduces_to_1d(rng, flavor):
    Wm, Wp = random_primitive(rng, 500, 2), random_primitive(rng, 500, 2)
    Wm[2] = Wp[2] = 0.0
    Um, Up = conserved_from_primitive(Wm), conserved_from_primitive(Wp)
    F2 = numerical_flux(Um, Up, flavor=flavor)
    F1 = numerical_flux(Um[[0, 1, 3]], Up[[0, 1, 3]], flavor=flavor)
    assert np.max(np.abs(F2[[0, 1, 3]] - F1)) <= 1e-14 * max(1.0, np.abs(F1).max())
    assert np.all(F2[2] == 0.0)


@pytest.mark.parametrize("flavor", FLAVORS)
def test_y_flux_swap_symmetry(rng, flavor):
    Um, Up = pairs(rng, 200, 2)
    G = numerical_flux_2d_y(Um, Up, flavor=flavor)
    ref = swap_xy(numerical_flux(swap_xy(Um), swap_xy(Up), flavor=flavor))
    assert np.array_equal(G, ref)
    U = Um
    np.testing.assert_allclose(numerical_flux_2d_y(U, U, flavor=flavor), flux_y_2d(U),
                               rtol=1e-12, atol=1e-12)


def test_y_flux_reduction():
    Um = conserved_from_primitive(np.array([1.0, 0.0, 0.3, 1.0]))
    Up = conserved_from_primitive(np.array([0.4, 0.0, -0.2, 0.5]))
    G = numerical_flux_2d_y(Um, Up)
    F1 = numerical_flux(Um[[0, 2, 3]], Up[[0, 2, 3]])
    np.testing.assert_allclose(G[[0, 2, 3]], F1, rtol=1e-14, atol=1e-15)
    assert G[1] == 0.0


def test_desingularized_branch():
    # vacuum-like states with nearly zero sound speed and velocity
    Um = conserved_from_primitive(np.array([1.0, 0.0, 1e-30]))
    Up = conserved_from_primitive(np.array([2.0, 0.0, 2e-30]))
    F, info = numerical_flux(Um, Up, return_info=True)
    assert info["desingularized"]
    np.testing.assert_array_equal(F, 0.5 * (flux_x_1d(Um) + flux_x_1d(Up)))
    Um2 = conserved_from_primitive(np.array([1.0, 0.0, 0.0, 1e-30]))
    Up2 = conserved_from_primitive(np.array([2.0, 0.0, 0.0, 2e-30]))
    np.testing.assert_array_equal(numerical_flux(Um2, Up2),
                                  0.5 * (flux_x_2d(Um2) + flux_x_2d(Up2)))


@pytest.mark.parametrize("flavor", ["new", "old"])
def test_qE_vs_oracle(rng, flavor):
    Um, Up = pairs(rng, 400, 2)
    sp = local_speeds(Um, Up)
    Ustar, us = star_state_2d_x(Um, Up, sp)
    star = star_state(Um, Up, sp)
    ad = anti_diffusion(Um, Up, star, sp, flavor)
    checked = 0
    for k in range(400):
        if ad.fallback[k]:
            continue
        qr, qv, qE, alpha, u = oracles.anti_diffusion_2d_x(list(Um[:, k]), list(Up[:, k]),
                                                           flavor)
        assert math.isfinite(ad.q_E[k])
        assert ad.q_E[k] == pytest.approx(qE, rel=1e-13, abs=1e-13)
        assert ad.q_rho[k] == pytest.approx(qr, rel=1e-13, abs=1e-14)
        assert ad.q_mt[k] == pytest.approx(qv, rel=1e-13, abs=1e-14)
        assert ad.alpha[k] == pytest.approx(alpha, rel=1e-13)
        checked += 1
    assert checked > 300


@settings(max_examples=200, deadline=None)
@given(st.floats(0.1, 5), st.floats(-3, 3), st.floats(0.05, 10),
       st.floats(0.1, 5), st.floats(-3, 3), st.floats(0.05, 10),
       st.sampled_from(FLAVORS))
def test_flux_is_finite(r1, u1, p1, r2, u2, p2, flavor):
    F = numerical_flux(state1(r1, u1, p1), state1(r2, u2, p2), flavor=flavor)
    assert np.all(np.isfinite(F))


@pytest.mark.parametrize("rho, p, vm, vp", [(1.0, 1.0, -0.5, 0.7), (0.3, 2.0, 1.2, 0.1),
                                            (2.0, 0.4, 0.0, -1.0)])
def test_stationary_shear_is_exact(rho, p, vm, vp):
    # u = 0, equal rho and p, tangential velocity jump: NEW must return the
    # physical flux, i.e. the anti-diffusion cancels the central diffusion
    Um = conserved_from_primitive(np.array([rho, 0.0, vm, p]))
    Up = conserved_from_primitive(np.array([rho, 0.0, vp, p]))
    F = numerical_flux(Um, Up, flavor="new")
    np.testing.assert_allclose(F, flux_x_2d(Um), rtol=1e-14, atol=1e-14)
    np.testing.assert_allclose(numerical_flux_2d_y(swap_xy(Um), swap_xy(Up), flavor="new"),
                               flux_y_2d(swap_xy(Um)), rtol=1e-14, atol=1e-14)
    assert abs(numerical_flux(Um, Up, flavor="cu")[3]) > 1e-3
