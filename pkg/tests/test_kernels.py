import numpy as np
import pytest

from ldcu import kernels
from ldcu.euler import AdmissibilityError, conserved_from_primitive
from ldcu.flux import Flavor
from conftest import random_primitive

needs_compiled = pytest.mark.skipif("compiled" not in kernels.BACKENDS,
                                    reason="compiled extension not built")


def random_lines(rng, ncomp, nlines, n):
    """Random base states with smooth random-phase waves along each line."""
    base = random_primitive(rng, (nlines, 1), 1 if ncomp == 3 else 2)
    x = np.linspace(0, 2 * np.pi, n + 4)
    phase = rng.uniform(0, 2 * np.pi, (ncomp, nlines, 1))
    W = base * (1 + 0.3 * np.sin(3 * x + phase))
    W[1:-1] = base[1:-1] + np.sin(2 * x + phase[1:-1])
    return np.ascontiguousarray(conserved_from_primitive(W))


def run_sweep(backend, U, flavor, normal=1, tangential=2):
    F = np.empty(U.shape[:2] + (U.shape[2] - 3,))
    smax, guarded = kernels.sweep(U, F, 0.01, 1.3, 1.4, flavor.code, 1e-12, normal,
                                  tangential, backend=backend)
    return F, smax, guarded


def test_backend_is_known():
    assert kernels.BACKEND in kernels.BACKENDS


@pytest.mark.parametrize("flavor", list(Flavor))
def test_constant_lines_give_physical_flux(backend, flavor):
    U = np.broadcast_to(np.array([1.0, 0.5, 2.5])[:, None, None], (3, 2, 10)).copy()
    F, smax, _ = run_sweep(backend, U, flavor)
    np.testing.assert_allclose(F[0], 0.5, rtol=1e-14)
    assert smax > 0


@needs_compiled
@pytest.mark.parametrize("ncomp", [3, 4])
@pytest.mark.parametrize("flavor", list(Flavor))
def test_backends_agree(rng, ncomp, flavor):
    U = random_lines(rng, ncomp, 6, 40)
    Fp, sp, gp = run_sweep("python", U, flavor)
    Fc, sc, gc = run_sweep("compiled", U, flavor)
    np.testing.assert_allclose(Fc, Fp, rtol=1e-13, atol=1e-13)
    assert sc == sp and gc == gp


@needs_compiled
def test_backends_agree_on_strided_view(rng):
    x = np.linspace(0, 3, 13)
    X, Y = np.meshgrid(x, x)
    W = np.stack([1.5 + np.sin(X + 2 * Y), np.cos(Y), 0.5 * np.sin(X * Y), 2.0 + np.cos(X - Y)])
    U = conserved_from_primitive(W)
    view = U[:, :, 2:-2].swapaxes(1, 2)
    Fp, _, _ = run_sweep("python", view, Flavor.NEW, normal=2, tangential=1)
    Fc, _, _ = run_sweep("compiled", view, Flavor.NEW, normal=2, tangential=1)
    np.testing.assert_allclose(Fc, Fp, rtol=1e-13, atol=1e-13)


def test_inadmissible_state_reports_location(backend):
    U = np.broadcast_to(np.array([1.0, 0.0, 2.5])[:, None, None], (3, 1, 10)).copy()
    U[2, 0, 5] = -1.0  # negative energy -> negative pressure
    with pytest.raises(AdmissibilityError) as exc:
        run_sweep(backend, U, Flavor.NEW)
    assert exc.value.index[0] == 0
