"""Solution metrics: totals, total variation, overshoots, symmetry, L1 errors."""
from __future__ import annotations

import math

import numpy as np

from .euler import primitive_from_conserved


def _window_mask(x, window):
    lo, hi = window
    mask = (x >= lo) & (x <= hi)
    if not np.any(mask):
        raise ValueError(f"window {window} contains no cell centres")
    return mask


def total_variation(values, x=None, window=None):
    """``sum |v[j+1] - v[j]|`` over cells whose centres lie in ``window``.

    For 2-D ``values`` (shape ``(ny, nx)``) the variation is summed along
    every row and every column; ``x`` then is a pair ``(xc, yc)`` of 1-D
    centre coordinates and ``window`` a pair of intervals.
    """
    v = np.asarray(values, dtype=float)
    if v.ndim == 1:
        if window is not None:
            v = v[_window_mask(np.asarray(x), window)]
        return math.fsum(np.abs(np.diff(v)))
    if window is not None:
        (xc, yc), (wx, wy) = x, window
        v = v[np.ix_(_window_mask(np.asarray(yc), wy), _window_mask(np.asarray(xc), wx))]
    return math.fsum(np.abs(np.diff(v, axis=1)).ravel()) + math.fsum(
        np.abs(np.diff(v, axis=0)).ravel())


def conserved_totals(U_interior, grid):
    """Per-component ``cell volume * sum`` with compensated summation."""
    U = np.asarray(U_interior, dtype=float)
    return [grid.cell_volume * math.fsum(U[c].ravel()) for c in range(U.shape[0])]


def overshoot(values, lo, hi, x=None, window=None):
    """``(max(0, max v - hi), max(0, lo - min v))`` over the window."""
    v = np.asarray(values, dtype=float)
    if window is not None:
        v = v[_window_mask(np.asarray(x), window)]
    return max(0.0, float(v.max()) - hi), max(0.0, lo - float(v.min()))


def l1_error(U_interior, reference, grid):
    """Per-component ``cell volume * sum |U - reference|``."""
    U = np.asarray(U_interior, dtype=float)
    R = np.asarray(reference, dtype=float)
    if U.shape != R.shape:
        raise ValueError(f"shape mismatch {U.shape} vs {R.shape}")
    return [grid.cell_volume * math.fsum(np.abs(U[c] - R[c]).ravel())
            for c in range(U.shape[0])]


def symmetry_error(U_interior):
    """Mismatch of a 2-D field with its reflection across the diagonal y = x.

    ``max |rho(j,k) - rho(k,j)| + max |m_x(j,k) - m_y(k,j)|``.
    """
    U = np.asarray(U_interior, dtype=float)
    if U.shape[1] != U.shape[2]:
        raise ValueError("symmetry error needs a square grid")
    drho = np.abs(U[0] - U[0].T).max()
    dmom = np.abs(U[1] - U[2].T).max()
    return float(drho + dmom)


def convergence_rates(errors):
    """``log2(e_i / e_{i+1})`` for successive resolution doublings."""
    return [math.log2(a / b) for a, b in zip(errors[:-1], errors[1:])]


def summary(U_interior, grid, gamma, tv_windows=(), overshoot_specs=(), reference=None):
    """Flat diagnostics dictionary for one solution."""
    U = np.asarray(U_interior, dtype=float)
    W = primitive_from_conserved(U, gamma)
    names = ["mass", "momentum_x", "energy"] if U.shape[0] == 3 else \
        ["mass", "momentum_x", "momentum_y", "energy"]
    out = {}
    for name, total in zip(names, conserved_totals(U, grid)):
        out[f"total.{name}"] = total
    out["rho.min"], out["rho.max"] = float(W[0].min()), float(W[0].max())
    out["p.min"], out["p.max"] = float(W[-1].min()), float(W[-1].max())
    if grid.ndim == 1:
        x = grid.centers()
        out["tv.rho"] = total_variation(W[0])
        for lo, hi in tv_windows:
            out[f"tv.rho[{lo:g},{hi:g}]"] = total_variation(W[0], x, (lo, hi))
        for spec in overshoot_specs:
            lo_w, hi_w = spec["window"]
            over, under = overshoot(W[0], spec["lo"], spec["hi"], x, (lo_w, hi_w))
            out[f"overshoot.rho[{lo_w:g},{hi_w:g}]"] = over
            out[f"undershoot.rho[{lo_w:g},{hi_w:g}]"] = under
    else:
        out["tv.rho"] = total_variation(W[0])
        if grid.nx == grid.ny:
            out["symmetry_error"] = symmetry_error(U)
    if reference is not None:
        for name, err in zip(names, l1_error(U, reference, grid)):
            out[f"l1.{name}"] = err
    return out


def format_report(report):
    """``key = value`` lines; floats use ``repr`` so they round-trip."""
    lines = []
    for key, value in report.items():
        lines.append(f"{key} = {value!r}" if isinstance(value, float) else f"{key} = {value}")
    return "\n".join(lines) + "\n"


def parse_report(text):
    out = {}
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        key, _, value = line.partition(" = ")
        try:
            out[key] = float(value) if any(ch in value for ch in ".eEn") else int(value)
        except ValueError:
            out[key] = value
    return out
