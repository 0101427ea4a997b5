"""Backend selection for the hot directional sweep.

The compiled extension ``ldcu._sweep`` is used when it imports; otherwise,
or when ``LDCU_BACKEND=python`` is set, the numpy implementation is used.
"""
from __future__ import annotations

import os

from . import _sweep_py
from .euler import AdmissibilityError

_STATUS = {1: "inadmissible reconstructed state (minus side)",
           2: "inadmissible reconstructed state (plus side)",
           3: "non-positive star density"}

BACKENDS = {"python": _sweep_py.sweep}
try:
    from . import _sweep as _compiled
except ImportError:  # extension not built
    _compiled = None
else:
    BACKENDS["compiled"] = _compiled.sweep

_requested = os.environ.get("LDCU_BACKEND", "").strip().lower()
if _requested and _requested not in ("python", "compiled"):
    raise ImportError(f"LDCU_BACKEND must be 'python' or 'compiled', got {_requested!r}")
if _requested == "compiled" and _compiled is None:
    raise ImportError("LDCU_BACKEND=compiled but ldcu._sweep is not built")
BACKEND = _requested or ("compiled" if _compiled is not None else "python")


def sweep(U, F, dx, theta, gamma, flavor_code, eps, normal=1, tangential=2, backend=None):
    """Run the selected backend and turn a failure status into an exception.

    Returns ``(max_speed, n_guarded)``.
    """
    fn = BACKENDS[backend or BACKEND]
    smax, guarded, status = fn(U, float(dx), float(theta), float(gamma), int(flavor_code),
                               float(eps), int(normal), int(tangential), F)
    if status is not None:
        code, line, iface = status
        raise AdmissibilityError(_STATUS[code], where="interface", index=(line, iface))
    return smax, guarded
