"""Plain-text snapshot files.

1-D: ``# key = value`` metadata lines, then the CSV header ``x,rho,u,p,E``
and one row per interior cell. 2-D: a comment line naming the grid header
fields ``# nx ny x_lo y_lo dx dy t gamma scheme``, a comment line with their
values, optional ``# key = value`` lines, then ``x,y,rho,u,v,p,E`` rows in
row-major order (x fastest). Floats are written with 17 significant digits
so a reload reproduces them bit for bit.
"""
from __future__ import annotations

import io

import numpy as np

from .euler import primitive_from_conserved

HEADER_1D = "x,rho,u,p,E"
HEADER_2D = "x,y,rho,u,v,p,E"
GRID_KEYS_2D = ("nx", "ny", "x_lo", "y_lo", "dx", "dy", "t", "gamma", "scheme")
FMT = "%.17g"


def _meta_lines(meta):
    return [f"# {k} = {v!r}" if isinstance(v, float) else f"# {k} = {v}"
            for k, v in meta.items()]


def _rows(cols):
    buf = io.StringIO()
    np.savetxt(buf, np.column_stack(cols), fmt=FMT, delimiter=",")
    return buf.getvalue()


def write_snapshot_1d(path, U_interior, grid, t, gamma, **meta):
    W = primitive_from_conserved(U_interior, gamma)
    head = {"t": float(t), "n": grid.n, "x_lo": grid.x_lo, "x_hi": grid.x_hi,
            "dx": grid.dx, "gamma": float(gamma), **meta}
    text = "\n".join(_meta_lines(head) + [HEADER_1D]) + "\n"
    text += _rows([grid.centers(), W[0], W[1], W[2], U_interior[2]])
    with open(path, "w") as fh:
        fh.write(text)


def write_snapshot_2d(path, U_interior, grid, t, gamma, scheme="", **meta):
    W = primitive_from_conserved(U_interior, gamma)
    X, Y = grid.centers()
    values = (grid.nx, grid.ny, grid.x_lo, grid.y_lo, grid.dx, grid.dy, float(t),
              float(gamma), scheme)
    lines = ["# " + " ".join(GRID_KEYS_2D),
             "# " + " ".join(repr(v) if isinstance(v, float) else str(v) for v in values)]
    lines += _meta_lines(meta)
    lines.append(HEADER_2D)
    text = "\n".join(lines) + "\n"
    text += _rows([X.ravel(), Y.ravel(), W[0].ravel(), W[1].ravel(), W[2].ravel(),
                   W[3].ravel(), U_interior[3].ravel()])
    with open(path, "w") as fh:
        fh.write(text)


def _coerce(value):
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            pass
    return value


def read_snapshot(path):
    """Return ``(meta, columns)``; ``columns`` maps header names to arrays.

    2-D columns are reshaped to ``(ny, nx)``.
    """
    meta = {}
    with open(path) as fh:
        lines = fh.read().splitlines()
    i = 0
    comments = []
    while i < len(lines) and lines[i].startswith("#"):
        comments.append(lines[i][1:].strip())
        i += 1
    header = lines[i].split(",")
    if comments and comments[0].split() == list(GRID_KEYS_2D):
        meta.update(zip(GRID_KEYS_2D, (_coerce(v) for v in comments[1].split())))
        comments = comments[2:]
    for c in comments:
        key, _, value = c.partition(" = ")
        meta[key] = _coerce(value)
    body = "\n".join(lines[i + 1:])
    data = np.loadtxt(io.StringIO(body), delimiter=",", ndmin=2)
    cols = {name: data[:, k].copy() for k, name in enumerate(header)}
    if header == HEADER_2D.split(","):
        shape = (meta["ny"], meta["nx"])
        cols = {k: v.reshape(shape) for k, v in cols.items()}
    return meta, cols


def conserved_from_snapshot(cols):
    """Conserved interior field (``rho*u`` recomputed from ``rho`` and ``u``)."""
    if "y" in cols:
        return np.stack([cols["rho"], cols["rho"] * cols["u"], cols["rho"] * cols["v"],
                         cols["E"]])
    return np.stack([cols["rho"], cols["rho"] * cols["u"], cols["E"]])


def write_step_log(path, records):
    with open(path, "w") as fh:
        fh.write("step,t,dt,max_speed,min_rho,min_p\n")
        for r in records:
            fh.write(f"{r.step},{r.t!r},{r.dt!r},{r.max_speed!r},{r.min_rho!r},{r.min_p!r}\n")
