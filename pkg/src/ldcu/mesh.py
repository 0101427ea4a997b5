"""Uniform cell grids with two ghost layers and boundary-condition filling.

Fields are numpy arrays of shape ``(ncomp, n + 4)`` in 1-D and
``(ncomp, ny + 4, nx + 4)`` in 2-D (y is the slower index). Interior cells
occupy ``[2, n + 2)`` along each axis.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

N_GHOST = 2


class BC(str, Enum):
    FREE = "free"
    WALL = "wall"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class BoundarySpec:
    """Per-side boundary conditions; 1-D problems use ``left``/``right`` only."""

    left: BC = BC.FREE
    right: BC = BC.FREE
    bottom: BC = BC.FREE
    top: BC = BC.FREE

    def __post_init__(self):
        for side in ("left", "right", "bottom", "top"):
            object.__setattr__(self, side, BC(getattr(self, side)))
        if (self.left is BC.PERIODIC) != (self.right is BC.PERIODIC):
            raise ValueError("periodic boundaries must be paired (left/right)")
        if (self.bottom is BC.PERIODIC) != (self.top is BC.PERIODIC):
            raise ValueError("periodic boundaries must be paired (bottom/top)")

    @classmethod
    def uniform(cls, bc):
        return cls(bc, bc, bc, bc)


@dataclass(frozen=True)
class Grid1D:
    n: int
    x_lo: float
    x_hi: float
    n_ghost: int = N_GHOST

    def __post_init__(self):
        if self.n < 1 or not self.x_hi > self.x_lo:
            raise ValueError("need n >= 1 and x_hi > x_lo")

    ndim = 1

    @property
    def dx(self):
        return (self.x_hi - self.x_lo) / self.n

    @property
    def shape(self):
        return (self.n + 2 * self.n_ghost,)

    @property
    def interior(self):
        g = self.n_ghost
        return (slice(None), slice(g, g + self.n))

    def centers(self):
        return self.x_lo + (np.arange(self.n) + 0.5) * self.dx

    def allocate(self, ncomp=3):
        return np.zeros((ncomp,) + self.shape)

    @property
    def cell_volume(self):
        return self.dx


@dataclass(frozen=True)
class Grid2D:
    nx: int
    ny: int
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float
    n_ghost: int = N_GHOST

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError("need nx, ny >= 1")
        if not (self.x_hi > self.x_lo and self.y_hi > self.y_lo):
            raise ValueError("empty domain")

    ndim = 2

    @property
    def dx(self):
        return (self.x_hi - self.x_lo) / self.nx

    @property
    def dy(self):
        return (self.y_hi - self.y_lo) / self.ny

    @property
    def shape(self):
        g = self.n_ghost
        return (self.ny + 2 * g, self.nx + 2 * g)

    @property
    def interior(self):
        g = self.n_ghost
        return (slice(None), slice(g, g + self.ny), slice(g, g + self.nx))

    def centers(self):
        """Return ``(X, Y)`` arrays of shape ``(ny, nx)``."""
        x = self.x_lo + (np.arange(self.nx) + 0.5) * self.dx
        y = self.y_lo + (np.arange(self.ny) + 0.5) * self.dy
        return np.meshgrid(x, y)

    def allocate(self, ncomp=4):
        return np.zeros((ncomp,) + self.shape)

    @property
    def cell_volume(self):
        return self.dx * self.dy


def _fill_axis(U, axis, n, lo, hi, normal):
    """Fill the two ghost layers on both ends of one spatial axis of ``U``.

    ``axis`` indexes the array (1 or 2), ``normal`` is the momentum component
    normal to the boundaries of that axis.
    """
    g = N_GHOST

    def sl(i):
        idx = [slice(None)] * U.ndim
        idx[axis] = i
        return tuple(idx)

    first, last = g, g + n - 1
    for layer in range(g):
        ghost_lo, ghost_hi = g - 1 - layer, g + n + layer
        if lo is BC.FREE:
            U[sl(ghost_lo)] = U[sl(first)]
        elif lo is BC.WALL:
            U[sl(ghost_lo)] = U[sl(first + layer)]
            U[(normal,) + sl(ghost_lo)[1:]] *= -1.0
        else:
            U[sl(ghost_lo)] = U[sl(last - layer)]
        if hi is BC.FREE:
            U[sl(ghost_hi)] = U[sl(last)]
        elif hi is BC.WALL:
            U[sl(ghost_hi)] = U[sl(last - layer)]
            U[(normal,) + sl(ghost_hi)[1:]] *= -1.0
        else:
            U[sl(ghost_hi)] = U[sl(first + layer)]


def apply_bc(U, spec, grid):
    """Fill ghost cells of ``U`` in place and return it.

    Free copies the nearest interior cell, a solid wall mirrors layer ``g``
    with the wall-normal momentum negated, periodic wraps around. Interior
    cells are never written.
    """
    if grid.ndim == 1:
        _fill_axis(U, 1, grid.n, spec.left, spec.right, normal=1)
    else:
        # x first over all rows, then y over all columns (corners included).
        _fill_axis(U, 2, grid.nx, spec.left, spec.right, normal=1)
        _fill_axis(U, 1, grid.ny, spec.bottom, spec.top, normal=2)
    return U


def restrict_field(values, factor):
    """Average blocks of ``factor`` (or ``factor x factor``) interior cells.

    ``values`` holds interior cells only, components on axis 0.
    """
    values = np.asarray(values, dtype=float)
    factor = int(factor)
    if factor < 1:
        raise ValueError("factor must be >= 1")
    shape = values.shape[1:]
    if any(s % factor for s in shape):
        raise ValueError(f"interior shape {shape} not divisible by {factor}")
    if len(shape) == 1:
        return values.reshape(values.shape[0], shape[0] // factor, factor).mean(axis=2)
    ny, nx = shape
    blocks = values.reshape(values.shape[0], ny // factor, factor, nx // factor, factor)
    return blocks.mean(axis=(2, 4))
