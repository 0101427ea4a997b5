"""Command-line driver: ``ldcu run|compare|convergence --config CFG.json``.

Exit codes: 0 success, 2 configuration error, 3 admissibility abort,
4 I/O error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import diagnostics
from .euler import AdmissibilityError, conserved_from_primitive
from .flux import EPS_DEFAULT, Flavor
from .integrator import CFL_DEFAULT, IntegratorConfig, SchemeConfig, run
from .mesh import restrict_field
from .problems import PROBLEMS, get_problem, riemann_1d
from .reconstruction import THETA_DEFAULT
from .snapshots import write_snapshot_1d, write_snapshot_2d, write_step_log

log = logging.getLogger("ldcu")

EXIT_OK, EXIT_CONFIG, EXIT_ADMISSIBILITY, EXIT_IO = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    problem: str | None = None
    custom: dict | None = None
    scheme: Flavor = Flavor.NEW
    nx: int | None = None
    ny: int | None = None
    t_final: float | None = None
    cfl: float = CFL_DEFAULT
    theta: float = THETA_DEFAULT
    gamma: float | None = None
    epsilon: float = EPS_DEFAULT
    snapshots: list = field(default_factory=list)
    tv_windows: list = field(default_factory=list)
    overshoot: list = field(default_factory=list)
    reference_nx: int | None = None
    flavors: list = field(default_factory=list)
    resolutions: list = field(default_factory=list)
    max_steps: int = 10_000_000
    backend: str | None = None

    def build_problem(self):
        if self.custom is not None:
            spec = dict(self.custom)
            kind = spec.pop("type", "riemann_1d")
            if kind != "riemann_1d":
                raise ConfigError(f"custom.type: unsupported {kind!r}")
            try:
                pb = riemann_1d(**spec)
            except (TypeError, ValueError) as err:
                raise ConfigError(f"custom: {err}") from None
        else:
            pb = get_problem(self.problem)
        changes = {}
        if self.t_final is not None:
            changes["t_final"] = self.t_final
        if self.gamma is not None:
            changes["gamma"] = self.gamma
        return dataclasses.replace(pb, **changes) if changes else pb

    def scheme_config(self, flavor=None):
        return SchemeConfig(flavor or self.scheme, self.build_problem().gamma, self.theta,
                            self.epsilon, self.backend)


_FIELDS = {f.name for f in dataclasses.fields(RunConfig)}
_POSITIVE = ("nx", "ny", "cfl", "theta", "gamma", "epsilon", "reference_nx", "max_steps")


def _flavor(value):
    return value if isinstance(value, Flavor) else Flavor(str(value).lower())


def _validate(cfg):
    if (cfg.problem is None) == (cfg.custom is None):
        raise ConfigError("exactly one of 'problem' or 'custom' is required")
    if cfg.problem is not None and cfg.problem not in PROBLEMS:
        raise ConfigError(f"problem: unknown problem {cfg.problem!r}; "
                          f"choose from {sorted(PROBLEMS)}")
    try:
        cfg.scheme = _flavor(cfg.scheme)
        cfg.flavors = [_flavor(f) for f in cfg.flavors]
    except ValueError as err:
        raise ConfigError(f"scheme: {err}") from None
    for name in _POSITIVE:
        value = getattr(cfg, name)
        if value is None:
            continue
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
            raise ConfigError(f"{name}: must be a positive number, got {value!r}")
    for name in ("nx", "ny", "reference_nx", "max_steps"):
        value = getattr(cfg, name)
        if value is not None and int(value) != value:
            raise ConfigError(f"{name}: must be an integer")
    if cfg.t_final is not None and not (isinstance(cfg.t_final, (int, float))
                                        and cfg.t_final >= 0):
        raise ConfigError("t_final: must be a non-negative number")
    if not 0 < cfg.cfl < 1:
        raise ConfigError("cfl: must lie in (0, 1)")
    if not 1 <= cfg.theta <= 2:
        raise ConfigError("theta: must lie in [1, 2]")
    if cfg.gamma is not None and not cfg.gamma > 1:
        raise ConfigError("gamma: must exceed 1")
    for k, w in enumerate(cfg.tv_windows):
        if len(w) != 2 or not w[0] < w[1]:
            raise ConfigError(f"tv_windows[{k}]: need [lo, hi] with lo < hi")
    for k, spec in enumerate(cfg.overshoot):
        if not isinstance(spec, dict) or "window" not in spec:
            raise ConfigError(f"overshoot[{k}]: need an object with 'window'")
        extra = set(spec) - {"window", "lo", "hi"}
        if extra:
            raise ConfigError(f"overshoot[{k}]: unknown keys {sorted(extra)}")
    for k, n in enumerate(cfg.resolutions):
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ConfigError(f"resolutions[{k}]: must be a positive integer")
    if cfg.backend not in (None, "python", "compiled"):
        raise ConfigError("backend: must be 'python' or 'compiled'")
    try:
        pb = cfg.build_problem()
    except ConfigError:
        raise
    except (KeyError, ValueError) as err:
        raise ConfigError(str(err)) from None
    if cfg.custom is not None:
        grid = pb.grid(cfg.nx)
        W = pb.ic(grid.centers())
        if not (np.all(W[0] > 0) and np.all(W[-1] > 0)):
            raise ConfigError("custom: initial density and pressure must be positive")
    return cfg


def parse_config(text, overrides=()):
    """Parse a JSON config document (plus ``key=value`` overrides) into a RunConfig."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(f"invalid JSON: {err}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    for item in overrides:
        key, sep, raw = item.partition("=")
        if not sep:
            raise ConfigError(f"override {item!r}: expected key=value")
        try:
            data[key.strip()] = json.loads(raw)
        except json.JSONDecodeError:
            data[key.strip()] = raw
    unknown = set(data) - _FIELDS
    if unknown:
        raise ConfigError(f"unknown keys: {sorted(unknown)}")
    if "epsilon" in data and isinstance(data["epsilon"], str):
        raise ConfigError("epsilon: must be a positive number")
    return _validate(RunConfig(**data))


# -- running -----------------------------------------------------------------

def _tag(t):
    return f"{t:.6g}"


def _solve(cfg, out_dir, flavor, nx=None, write=True, label=None):
    pb = cfg.build_problem()
    grid = pb.grid(nx or cfg.nx, cfg.ny)
    scheme = cfg.scheme_config(flavor)
    stem = os.path.join(out_dir, label or f"{pb.name}_{scheme.flavor.value}")
    meta = {"problem": pb.name, "scheme": scheme.flavor.value, "theta": scheme.theta,
            "cfl": cfg.cfl, "eps": scheme.eps}
    written = []

    def sink(t, U):
        inner = U[grid.interior]
        if grid.ndim == 1:
            path = f"{stem}_t{_tag(t)}.csv"
            write_snapshot_1d(path, inner, grid, t, pb.gamma, **meta)
        else:
            path = f"{stem}_t{_tag(t)}.txt"
            meta2 = {k: v for k, v in meta.items() if k != "scheme"}
            meta2.update(pb.notes)
            write_snapshot_2d(path, inner, grid, t, pb.gamma, scheme.flavor.value, **meta2)
        written.append(path)

    icfg = IntegratorConfig(cfg.cfl, pb.t_final, int(cfg.max_steps))
    try:
        result = run(pb.initial_field(grid), grid, pb.bc, scheme, icfg,
                     snapshot_times=cfg.snapshots, sinks=[sink] if write else [])
    except AdmissibilityError as err:
        if write and err.state is not None:
            np.savez(f"{stem}_dump.npz", state=err.state, time=err.time if err.time else 0.0)
        raise
    if write:
        write_step_log(f"{stem}_steps.csv", result.records)
    return pb, grid, result, stem


def _overshoot_specs(cfg, out_dir):
    """Fill missing lo/hi bounds from a fine NEW reference run."""
    specs = [dict(s) for s in cfg.overshoot]
    if not any("lo" not in s or "hi" not in s for s in specs):
        return specs
    if cfg.reference_nx is None:
        raise ConfigError("overshoot: bounds missing and no reference_nx given")
    pb, grid, ref, _ = _solve(cfg, out_dir, Flavor.NEW, nx=cfg.reference_nx, write=False)
    rho = ref.U[grid.interior][0]
    x = grid.centers()
    for s in specs:
        mask = (x >= s["window"][0]) & (x <= s["window"][1])
        s.setdefault("lo", float(rho[mask].min()))
        s.setdefault("hi", float(rho[mask].max()))
    return specs


def _report(cfg, pb, grid, result, specs, reference=None):
    rep = {"problem": pb.name, "t": result.t, "steps": len(result.records),
           "guarded_interfaces": result.guarded}
    rep.update(diagnostics.summary(result.U[grid.interior], grid, pb.gamma,
                                   [tuple(w) for w in cfg.tv_windows], specs, reference))
    return rep


def cmd_run(cfg, out_dir):
    os.makedirs(out_dir, exist_ok=True)
    specs = _overshoot_specs(cfg, out_dir)
    pb, grid, result, stem = _solve(cfg, out_dir, cfg.scheme)
    rep = _report(cfg, pb, grid, result, specs)
    rep["scheme"] = cfg.scheme.value
    with open(f"{stem}_report.txt", "w") as fh:
        fh.write(diagnostics.format_report(rep))
    return EXIT_OK


def cmd_compare(cfg, out_dir, flavors=None):
    try:
        flavors = [Flavor(f) for f in (flavors or cfg.flavors or [Flavor.NEW, Flavor.OLD])]
    except ValueError as err:
        raise ConfigError(f"flavors: {err}") from None
    os.makedirs(out_dir, exist_ok=True)
    specs = _overshoot_specs(cfg, out_dir)
    joint = {}
    for k, flavor in enumerate(flavors):
        pb, grid, result, _ = _solve(cfg, out_dir, flavor,
                                     label=f"{cfg.build_problem().name}_{flavor.value}_{k}")
        for key, value in _report(cfg, pb, grid, result, specs).items():
            joint[f"{k}.{flavor.value}.{key}"] = value
    with open(os.path.join(out_dir, "compare_report.txt"), "w") as fh:
        fh.write(diagnostics.format_report(joint))
    return EXIT_OK


def cmd_convergence(cfg, out_dir, resolutions=None):
    resolutions = list(resolutions or cfg.resolutions or [50, 100, 200])
    pb = cfg.build_problem()
    if pb.exact is None and cfg.reference_nx is None:
        raise ConfigError("convergence: problem has no exact solution; set reference_nx")
    os.makedirs(out_dir, exist_ok=True)
    ref_U = None
    if pb.exact is None:
        _, ref_grid, ref, _ = _solve(cfg, out_dir, cfg.scheme, nx=cfg.reference_nx,
                                     write=False)
        ref_U = ref.U[ref_grid.interior]
    rep = {"problem": pb.name, "scheme": cfg.scheme.value}
    errors = []
    for n in resolutions:
        _, grid, result, _ = _solve(cfg, out_dir, cfg.scheme, nx=n,
                                    label=f"{pb.name}_{cfg.scheme.value}_n{n}")
        if pb.exact is not None:
            R = conserved_from_primitive(pb.exact(grid.centers(), result.t), pb.gamma)
        else:
            if cfg.reference_nx % n:
                raise ConfigError(f"resolutions: {n} does not divide reference_nx")
            R = restrict_field(ref_U, cfg.reference_nx // n)
        err = diagnostics.l1_error(result.U[grid.interior], R, grid)[0]
        errors.append(err)
        rep[f"l1.rho.n{n}"] = err
    for (a, b), rate in zip(zip(resolutions[:-1], resolutions[1:]),
                            diagnostics.convergence_rates(errors)):
        rep[f"rate.n{a}_n{b}"] = rate
    with open(os.path.join(out_dir, "convergence_report.txt"), "w") as fh:
        fh.write(diagnostics.format_report(rep))
    return EXIT_OK


def _csv_list(text, cast):
    return [cast(v) for v in text.split(",") if v.strip()]


def build_parser():
    parser = argparse.ArgumentParser(prog="ldcu", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("run", "compare", "convergence"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--override", action="append", default=[], metavar="KEY=VALUE")
        p.add_argument("--out", default="./out", help="output directory")
        if name == "compare":
            p.add_argument("--flavors", help="comma-separated, e.g. new,old")
        if name == "convergence":
            p.add_argument("--resolutions", help="comma-separated cell counts")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        try:
            with open(args.config) as fh:
                text = fh.read()
        except OSError as err:
            log.error("cannot read config %s: %s", args.config, err)
            return EXIT_IO
        cfg = parse_config(text, args.override)
        if args.command == "run":
            return cmd_run(cfg, args.out)
        if args.command == "compare":
            flavors = _csv_list(args.flavors, str.lower) if args.flavors else None
            return cmd_compare(cfg, args.out, flavors)
        res = _csv_list(args.resolutions, int) if args.resolutions else None
        return cmd_convergence(cfg, args.out, res)
    except ConfigError as err:
        log.error("config error: %s", err)
        return EXIT_CONFIG
    except AdmissibilityError as err:
        log.error("admissibility abort: %s", err)
        return EXIT_ADMISSIBILITY
    except OSError as err:
        log.error("I/O error: %s", err)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
