"""Ideal-gas Euler state algebra.

States are numpy arrays with the conserved components on axis 0:
``(rho, rho*u, E)`` in 1-D and ``(rho, rho*u, rho*v, E)`` in 2-D. Any
trailing shape is allowed, so the same functions serve single states and
whole fields.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

GAMMA_DEFAULT = 1.4


class AdmissibilityError(RuntimeError):
    """Raised when a density or pressure is not strictly positive.

    Attributes
    ----------
    where : str
        What was being evaluated (``"cell"``, ``"interface"``, ``"state"``...).
    index : tuple or None
        Location of the first offending entry.
    time : float or None
        Simulation time, when known.
    stage : int or None
        Runge-Kutta stage, when known.
    """

    def __init__(self, message, where="state", index=None, time=None, stage=None):
        self.where = where
        self.index = index
        self.time = time
        self.stage = stage
        self.state = None
        parts = [message]
        if index is not None:
            parts.append(f"{where} index {index}")
        if time is not None:
            parts.append(f"t={time!r}")
        if stage is not None:
            parts.append(f"stage {stage}")
        super().__init__(", ".join(parts))


@dataclass(frozen=True)
class GasModel:
    gamma: float = GAMMA_DEFAULT

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")


def _gamma(g):
    return g.gamma if isinstance(g, GasModel) else float(g)


def _first_bad(mask):
    idx = np.argwhere(mask)
    return tuple(int(i) for i in idx[0]) if idx.size else None


def _require_positive(values, name, where="state"):
    values = np.asarray(values)
    bad = ~(values > 0)
    if np.any(bad):
        raise AdmissibilityError(f"non-positive {name}", where=where, index=_first_bad(bad))


def pressure1d(U, g=GAMMA_DEFAULT):
    """Pressure ``(gamma-1)(E - m^2/(2 rho))`` of 1-D conserved states."""
    U = np.asarray(U, dtype=float)
    rho, m, E = U[0], U[1], U[2]
    _require_positive(rho, "density")
    return (_gamma(g) - 1.0) * (E - m * m / (2.0 * rho))


def pressure2d(U, g=GAMMA_DEFAULT):
    U = np.asarray(U, dtype=float)
    rho, mx, my, E = U[0], U[1], U[2], U[3]
    _require_positive(rho, "density")
    return (_gamma(g) - 1.0) * (E - (mx * mx + my * my) / (2.0 * rho))


def pressure(U, g=GAMMA_DEFAULT):
    """Dispatch on the number of components (3 -> 1-D, 4 -> 2-D)."""
    U = np.asarray(U, dtype=float)
    return pressure1d(U, g) if U.shape[0] == 3 else pressure2d(U, g)


def sound_speed(rho, p, g=GAMMA_DEFAULT):
    """``sqrt(gamma p / rho)``; both arguments must be strictly positive."""
    _require_positive(rho, "density")
    _require_positive(p, "pressure")
    return np.sqrt(_gamma(g) * np.asarray(p, dtype=float) / np.asarray(rho, dtype=float))


def check_admissible(U, g=GAMMA_DEFAULT, where="state"):
    """Raise :class:`AdmissibilityError` unless rho > 0 and p > 0 everywhere."""
    U = np.asarray(U, dtype=float)
    _require_positive(U[0], "density", where)
    _require_positive(pressure(U, g), "pressure", where)


def flux_x_1d(U, g=GAMMA_DEFAULT):
    U = np.asarray(U, dtype=float)
    p = pressure1d(U, g)
    u = U[1] / U[0]
    return np.stack([U[1], U[1] * u + p, u * (U[2] + p)])


def flux_x_2d(U, g=GAMMA_DEFAULT):
    U = np.asarray(U, dtype=float)
    p = pressure2d(U, g)
    u = U[1] / U[0]
    return np.stack([U[1], U[1] * u + p, U[2] * u, u * (U[3] + p)])


def swap_xy(U):
    """Exchange the x and y momentum (or flux) components of a 2-D vector."""
    U = np.asarray(U)
    return U[[0, 2, 1, 3]]


def flux_y_2d(U, g=GAMMA_DEFAULT):
    return swap_xy(flux_x_2d(swap_xy(U), g))


def conserved_from_primitive(W, g=GAMMA_DEFAULT):
    """``(rho, u[, v], p)`` -> conserved components."""
    W = np.asarray(W, dtype=float)
    gm1 = _gamma(g) - 1.0
    rho = W[0]
    if W.shape[0] == 3:
        u, p = W[1], W[2]
        return np.stack([rho, rho * u, p / gm1 + 0.5 * rho * u * u])
    u, v, p = W[1], W[2], W[3]
    return np.stack([rho, rho * u, rho * v, p / gm1 + 0.5 * rho * (u * u + v * v)])


def primitive_from_conserved(U, g=GAMMA_DEFAULT):
    """Conserved components -> ``(rho, u[, v], p)``."""
    U = np.asarray(U, dtype=float)
    p = pressure(U, g)
    rho = U[0]
    if U.shape[0] == 3:
        return np.stack([rho, U[1] / rho, p])
    return np.stack([rho, U[1] / rho, U[2] / rho, p])
