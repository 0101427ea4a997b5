"""Benchmark problems: initial data, domains, boundaries, final times."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .euler import GAMMA_DEFAULT, conserved_from_primitive
from .mesh import BC, BoundarySpec, Grid1D, Grid2D


@dataclass(frozen=True)
class ProblemSpec:
    """A complete initial-boundary value problem.

    ``ic`` maps cell-centre coordinates (``x`` in 1-D, ``(x, y)`` in 2-D) to
    stacked primitive variables ``(rho, u[, v], p)``. ``exact``, when given,
    maps ``(x, t)`` the same way.
    """

    name: str
    ndim: int
    bounds: tuple
    n: tuple
    ic: Callable
    bc: BoundarySpec
    t_final: float
    gamma: float = GAMMA_DEFAULT
    snapshots: tuple = ()
    reference_n: tuple | None = None
    exact: Callable | None = None
    notes: dict = field(default_factory=dict)

    def grid(self, nx=None, ny=None):
        if self.ndim == 1:
            return Grid1D(int(nx or self.n[0]), *self.bounds)
        nx = int(nx or self.n[0])
        ny = int(ny or (self.n[1] if nx == self.n[0] else nx))
        return Grid2D(nx, ny, *self.bounds)

    def initial_field(self, grid):
        """Cell averages from the IC sampled at cell centres, ghosts zeroed."""
        if self.ndim == 1:
            W = self.ic(grid.centers())
        else:
            W = self.ic(*grid.centers())
        U = grid.allocate(W.shape[0])
        U[grid.interior] = conserved_from_primitive(W, self.gamma)
        return U


def _stack(*cols, like):
    return np.stack([np.broadcast_to(np.asarray(c, dtype=float), like.shape) for c in cols])


def _n_for(length, dx):
    return int(round(length / dx))


def shock_entropy():
    def ic(x):
        left = x < -4.5
        rho = np.where(left, 1.51695, 1.0 + 0.1 * np.sin(20.0 * x))
        u = np.where(left, 0.523346, 0.0)
        p = np.where(left, 1.805, 1.0)
        return _stack(rho, u, p, like=x)

    return ProblemSpec("shock_entropy", 1, (-5.0, 5.0), (_n_for(10.0, 1 / 80),), ic,
                       BoundarySpec(BC.FREE, BC.FREE), 5.0,
                       reference_n=(_n_for(10.0, 1 / 800),))


def stationary_contact():
    def ic(x):
        p = np.where(x < 0.8, 1000.0, 0.01)
        return _stack(1.0, -19.59745, p, like=x)

    return ProblemSpec("stationary_contact", 1, (0.0, 1.0), (200,), ic,
                       BoundarySpec(BC.FREE, BC.FREE), 0.012, reference_n=(8000,))


def riemann2d_config3():
    quadrants = {
        (True, True): (1.5, 0.0, 0.0, 1.5),
        (False, True): (0.5323, 1.206, 0.0, 0.3),
        (False, False): (0.138, 1.206, 1.206, 0.029),
        (True, False): (0.5323, 0.0, 1.206, 0.3),
    }

    def ic(x, y):
        W = np.empty((4,) + np.shape(x))
        for (east, north), state in quadrants.items():
            mask = ((x > 1.0) == east) & ((y > 1.0) == north)
            for c in range(4):
                W[c][mask] = state[c]
        return W

    n = _n_for(1.2, 0.001)
    return ProblemSpec("riemann2d_config3", 2, (0.0, 1.2, 0.0, 1.2), (n, n), ic,
                       BoundarySpec.uniform(BC.FREE), 1.0)


def explosion():
    def ic(x, y):
        inside = x * x + y * y < 0.16
        rho = np.where(inside, 1.0, 0.125)
        p = np.where(inside, 1.0, 0.1)
        return _stack(rho, 0.0, 0.0, p, like=x)

    n = _n_for(1.5, 3 / 800)
    return ProblemSpec("explosion", 2, (0.0, 1.5, 0.0, 1.5), (n, n), ic,
                       BoundarySpec(left=BC.WALL, right=BC.FREE, bottom=BC.WALL, top=BC.FREE),
                       3.2, notes={"ic_sampling": "cell centres"})


def implosion():
    def ic(x, y):
        inside = np.abs(x) + np.abs(y) < 0.15
        rho = np.where(inside, 0.125, 1.0)
        p = np.where(inside, 0.14, 1.0)
        return _stack(rho, 0.0, 0.0, p, like=x)

    n = _n_for(0.3, 1 / 2000)
    return ProblemSpec("implosion", 2, (0.0, 0.3, 0.0, 0.3), (n, n), ic,
                       BoundarySpec.uniform(BC.WALL), 2.5,
                       notes={"ic_sampling": "cell centres"})


def smooth_wave():
    """Density sine wave advected at unit speed through a periodic box."""

    def exact(x, t):
        rho = 1.0 + 0.2 * np.sin(math.pi * (x - t))
        return _stack(rho, 1.0, 1.0, like=np.asarray(x, dtype=float))

    return ProblemSpec("smooth_wave", 1, (0.0, 2.0), (100,), lambda x: exact(x, 0.0),
                       BoundarySpec(BC.PERIODIC, BC.PERIODIC), 0.5, exact=exact)


def riemann_1d(left, right, x0=0.5, bounds=(0.0, 1.0), t_final=0.2, n=100,
               bc=BC.FREE, gamma=GAMMA_DEFAULT, name="riemann_1d"):
    """Two constant primitive states ``(rho, u, p)`` separated at ``x0``."""
    left = tuple(float(v) for v in left)
    right = tuple(float(v) for v in right)

    def ic(x):
        lo = x < x0
        return np.stack([np.where(lo, a, b) for a, b in zip(left, right)])

    return ProblemSpec(name, 1, tuple(map(float, bounds)), (int(n),), ic,
                       BoundarySpec(bc, bc), float(t_final), gamma=gamma)


def sod():
    return riemann_1d((1.0, 0.0, 1.0), (0.125, 0.0, 0.1), name="sod")


PROBLEMS = {
    "shock_entropy": shock_entropy,
    "stationary_contact": stationary_contact,
    "riemann2d_config3": riemann2d_config3,
    "explosion": explosion,
    "implosion": implosion,
    "smooth_wave": smooth_wave,
    "sod": sod,
}


def get_problem(name):
    try:
        return PROBLEMS[name]()
    except KeyError:
        raise KeyError(f"unknown problem {name!r}; choose from {sorted(PROBLEMS)}") from None
