"""Piecewise-linear reconstruction with the generalized minmod limiter."""
from __future__ import annotations

import numpy as np

THETA_DEFAULT = 1.3


def minmod2(a, b):
    """``0.5 (sgn a + sgn b) min(|a|, |b|)``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return 0.5 * (np.sign(a) + np.sign(b)) * np.minimum(np.abs(a), np.abs(b))


def minmod3(a, b, c):
    """Smallest-magnitude argument if all three share a strict sign, else 0."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    pos = (a > 0) & (b > 0) & (c > 0)
    neg = (a < 0) & (b < 0) & (c < 0)
    lo = np.minimum(np.minimum(a, b), c)
    hi = np.maximum(np.maximum(a, b), c)
    return np.where(pos, lo, np.where(neg, hi, 0.0))


def check_theta(theta):
    if not 1.0 <= theta <= 2.0:
        raise ValueError(f"minmod parameter must lie in [1, 2], got {theta}")
    return float(theta)


def slopes(U, dx, theta=THETA_DEFAULT, axis=-1):
    """Limited slopes along ``axis`` for every cell that has two neighbours.

    The returned array is two cells shorter than ``U`` along ``axis``: entry
    ``i`` is the slope of cell ``i + 1``.
    """
    theta = check_theta(theta)
    U = np.moveaxis(np.asarray(U, dtype=float), axis, -1)
    left = U[..., 1:-1] - U[..., :-2]
    right = U[..., 2:] - U[..., 1:-1]
    central = U[..., 2:] - U[..., :-2]
    s = minmod3(theta * left / dx, central / (2.0 * dx), theta * right / dx)
    return np.moveaxis(s, -1, axis)


def interface_values(U, s, dx, axis=-1):
    """One-sided point values at the interfaces between slope-carrying cells.

    ``U`` is the full field along ``axis`` and ``s`` the output of
    :func:`slopes`. Returns ``(Um, Up)`` for the interfaces between cells
    ``i + 1`` and ``i + 2``; ``Um`` comes from the left cell and ``Up`` from
    the right one.
    """
    U = np.moveaxis(np.asarray(U, dtype=float), axis, -1)
    s = np.moveaxis(s, axis, -1)
    half = 0.5 * dx
    Um = U[..., 1:-2] + half * s[..., :-1]
    Up = U[..., 2:-1] - half * s[..., 1:]
    return np.moveaxis(Um, -1, axis), np.moveaxis(Up, -1, axis)
