"""Pure-numpy directional sweep (fallback for the compiled kernel)."""
from __future__ import annotations

import numpy as np

from .euler import AdmissibilityError
from .flux import Flavor, numerical_flux
from .reconstruction import interface_values, slopes

_FLAVORS = {0: Flavor.NEW, 1: Flavor.OLD, 2: Flavor.CU}


def sweep(U, dx, theta, gamma, flavor, eps, normal, tangential, F):
    """Reconstruct along the last axis of ``U`` and evaluate interface fluxes.

    ``U`` has shape ``(ncomp, nlines, n + 4)`` including two ghost cells per
    end; the ``n + 1`` interface fluxes of every line are written to ``F``
    (shape ``(ncomp, nlines, n + 1)``) in the original component order.
    ``normal``/``tangential`` name the momentum components normal and
    parallel to the interfaces (``tangential`` is ignored for 3 components).

    Returns ``(max_speed, n_guarded, status)``; ``status`` is ``None`` on
    success or ``(code, line, interface)`` where code 1/2 flags an
    inadmissible minus/plus point value and 3 a non-positive star density.
    """
    ncomp = U.shape[0]
    order = [0, normal, ncomp - 1] if ncomp == 3 else [0, normal, tangential, ncomp - 1]
    Ul = np.asarray(U)[order]
    s = slopes(Ul, dx, theta, axis=-1)
    Um, Up = interface_values(Ul, s, dx, axis=-1)
    try:
        flux, info = numerical_flux(Um, Up, gamma, _FLAVORS[flavor], eps, return_info=True)
    except AdmissibilityError as err:
        code = 3 if "star" in str(err) else (1 if "minus" in str(err) else 2)
        line, iface = err.index
        return 0.0, 0, (code, line, iface)
    F[order] = flux
    smax = float(max(info["a_plus"].max(), (-info["a_minus"]).max()))
    return smax, int(np.count_nonzero(info["fallback"])), None
