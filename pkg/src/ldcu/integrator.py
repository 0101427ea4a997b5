"""Semi-discrete right-hand side and SSP-RK3 time stepping."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .euler import AdmissibilityError, GAMMA_DEFAULT
from .flux import EPS_DEFAULT, Flavor
from .mesh import apply_bc
from .reconstruction import THETA_DEFAULT, check_theta

log = logging.getLogger(__name__)

CFL_DEFAULT = 0.475


@dataclass(frozen=True)
class SchemeConfig:
    flavor: Flavor = Flavor.NEW
    gamma: float = GAMMA_DEFAULT
    theta: float = THETA_DEFAULT
    eps: float = EPS_DEFAULT
    backend: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "flavor", Flavor(self.flavor))
        check_theta(self.theta)
        if not self.gamma > 1.0:
            raise ValueError("gamma must exceed 1")
        if not self.eps > 0.0:
            raise ValueError("eps must be positive")


@dataclass(frozen=True)
class IntegratorConfig:
    cfl: float = CFL_DEFAULT
    t_final: float = 0.0
    max_steps: int = 10_000_000
    dt_max: float = math.inf

    def __post_init__(self):
        if not 0.0 < self.cfl < 1.0:
            raise ValueError(f"cfl must lie in (0, 1), got {self.cfl}")
        if self.t_final < 0.0:
            raise ValueError("t_final must be non-negative")


@dataclass
class StepRecord:
    step: int
    t: float
    dt: float
    max_speed: float
    min_rho: float
    min_p: float


@dataclass
class RHSInfo:
    """Side products of one right-hand-side evaluation."""

    speed_x: float = 0.0
    speed_y: float = 0.0
    guarded: int = 0


def rhs_1d(U, grid, scheme, bc, info=None):
    """``-(F_{j+1/2} - F_{j-1/2}) / dx`` on interior cells (ghosts filled in place).

    Returns an array shaped like ``U`` whose ghost entries are zero.
    """
    apply_bc(U, bc, grid)
    F = np.empty((U.shape[0], 1, grid.n + 1))
    smax, guarded = kernels.sweep(U[:, None, :], F, grid.dx, scheme.theta, scheme.gamma,
                                  scheme.flavor.code, scheme.eps, backend=scheme.backend)
    F = F[:, 0, :]
    L = np.zeros_like(U)
    L[grid.interior] = -(F[:, 1:] - F[:, :-1]) / grid.dx
    if info is not None:
        info.speed_x, info.guarded = smax, guarded
    return L


def rhs_2d(U, grid, scheme, bc, info=None):
    """Unsplit dimension-by-dimension right-hand side on interior cells."""
    g = grid.n_ghost
    nx, ny = grid.nx, grid.ny
    apply_bc(U, bc, grid)
    Fx = np.empty((4, ny, nx + 1))
    sx, gx = kernels.sweep(U[:, g:g + ny, :], Fx, grid.dx, scheme.theta, scheme.gamma,
                           scheme.flavor.code, scheme.eps, normal=1, tangential=2,
                           backend=scheme.backend)
    # y-sweep on the transposed view: lines are columns.
    Fy_t = np.empty((4, nx, ny + 1))
    sy, gy = kernels.sweep(U[:, :, g:g + nx].swapaxes(1, 2), Fy_t, grid.dy, scheme.theta,
                           scheme.gamma, scheme.flavor.code, scheme.eps, normal=2,
                           tangential=1, backend=scheme.backend)
    Fy = Fy_t.swapaxes(1, 2)
    L = np.zeros_like(U)
    L[grid.interior] = (-(Fx[:, :, 1:] - Fx[:, :, :-1]) / grid.dx
                        - (Fy[:, 1:, :] - Fy[:, :-1, :]) / grid.dy)
    if info is not None:
        info.speed_x, info.speed_y, info.guarded = sx, sy, gx + gy
    return L


def rhs(U, grid, scheme, bc, info=None):
    if grid.ndim == 1:
        return rhs_1d(U, grid, scheme, bc, info)
    return rhs_2d(U, grid, scheme, bc, info)


def dt_from_speeds(grid, cfl, speed_x, speed_y=0.0, t=0.0, t_final=math.inf,
                   dt_max=math.inf):
    """CFL time step, clipped so that ``t + dt <= t_final``."""
    if grid.ndim == 1:
        rate = speed_x / grid.dx
    else:
        rate = speed_x / grid.dx + speed_y / grid.dy
    dt = cfl / rate if rate > 0.0 else dt_max
    dt = min(dt, dt_max, t_final - t)
    if not 0.0 < dt < math.inf:
        raise ValueError(f"no admissible time step (t={t}, t_final={t_final}, dt={dt})")
    return dt


def compute_dt(U, grid, cfl, scheme, bc, t=0.0, t_final=math.inf, dt_max=math.inf):
    """Time step from the interface speed bounds of the current state."""
    info = RHSInfo()
    rhs(U.copy(), grid, scheme, bc, info)
    return dt_from_speeds(grid, cfl, info.speed_x, info.speed_y, t, t_final, dt_max)


def check_interior(U, grid, gamma, t=None, stage=None):
    """Return ``(min rho, min p)`` of the interior or raise with a state dump."""
    inner = U[grid.interior]
    rho = inner[0]
    with np.errstate(all="ignore"):
        kinetic = (inner[1:-1] ** 2).sum(axis=0) / (2.0 * rho)
        p = (gamma - 1.0) * (inner[-1] - kinetic)
    bad = ~((rho > 0) & (p > 0))
    if np.any(bad):
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
        err = AdmissibilityError("inadmissible cell average", where="cell", index=idx,
                                 time=t, stage=stage)
        err.state = U.copy()
        raise err
    return float(rho.min()), float(p.min())


def ssp_rk3_step(U, dt, L, L0=None):
    """One three-stage SSP Runge-Kutta step with a fixed ``dt``.

    ``L`` maps a state to its time derivative; ``L0`` optionally supplies
    ``L(U)`` when it is already known.
    """
    if L0 is None:
        L0 = L(U)
    U1 = U + dt * L0
    # 3/4 U + 1/4 (U1 + dt L1) and 1/3 U + 2/3 (U2 + dt L2), written as
    # increments so that L == 0 leaves U bitwise unchanged.
    U2 = U + 0.25 * ((U1 - U) + dt * L(U1))
    return U + (2.0 / 3.0) * ((U2 - U) + dt * L(U2))


@dataclass
class RunResult:
    U: np.ndarray
    t: float
    records: list = field(default_factory=list)
    guarded: int = 0


def run(U0, grid, bc, scheme, cfg, snapshot_times=(), sinks=(), t0=0.0, dt_fixed=None):
    """Integrate from ``t0`` to ``cfg.t_final``.

    Each sink is called as ``sink(t, U)`` at ``t0``, at each snapshot time
    (hit exactly by clipping the step) and at the final time. Returns a
    :class:`RunResult`.
    """
    U = np.array(U0, dtype=float, copy=True)
    t = float(t0)
    targets = sorted({float(s) for s in snapshot_times if t0 < s < cfg.t_final})
    targets.append(cfg.t_final)
    records = []
    guarded = 0
    check_interior(U, grid, scheme.gamma, t, 0)
    for sink in sinks:
        sink(t, U)

    step = 0
    for target in targets:
        while t < target:
            if step >= cfg.max_steps:
                raise RuntimeError(f"max_steps={cfg.max_steps} reached at t={t}")
            info = RHSInfo()
            try:
                L0 = rhs(U, grid, scheme, bc, info)
            except AdmissibilityError as err:
                err.time, err.stage, err.state = t, 1, U.copy()
                raise
            guarded += info.guarded
            if dt_fixed is not None:
                dt = min(dt_fixed, target - t)
            else:
                dt = dt_from_speeds(grid, cfg.cfl, info.speed_x, info.speed_y, t, target,
                                    cfg.dt_max)
            stage = [1]

            def L(V):
                stage[0] += 1
                check_interior(V, grid, scheme.gamma, t, stage[0])
                sub = RHSInfo()
                try:
                    out = rhs(V, grid, scheme, bc, sub)
                except AdmissibilityError as err:
                    err.time, err.stage, err.state = t, stage[0], V.copy()
                    raise
                nonlocal guarded
                guarded += sub.guarded
                return out

            U = ssp_rk3_step(U, dt, L, L0)
            # Land exactly on the target instead of accumulating roundoff.
            t = target if target - t - dt <= 1e-14 * max(1.0, abs(target)) else t + dt
            step += 1
            min_rho, min_p = check_interior(U, grid, scheme.gamma, t, 3)
            records.append(StepRecord(step, t, dt, max(info.speed_x, info.speed_y),
                                      min_rho, min_p))
        if target > t0:
            for sink in sinks:
                sink(t, U)
    if guarded:
        log.info("anti-diffusion guard triggered %d times", guarded)
    return RunResult(U, t, records, guarded)
