"""Command-line front end: ``ghzrate simulate | heatmap | optimize | protocol | verify``.

Times are dimensionless (units of the tangle period T) unless ``--physical-time``
is given.  Angles are radians unless ``--degrees`` is given.  Exit codes: 0 on
success, 1 on invalid input or an infeasible request, 2 when verification fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

import numpy as np

from . import oracle
from .evolution import evolve
from .optimizer import StationaryPhaseRequired, optimization_paths, optimize, ratio_value
from .protocols import (ThresholdError, free_timeline, run_sigma_z_protocol,
                        run_stationary_protocol, stationary_phase)
from .state import GHZState, HamiltonianParams, make_state, phase_for_b, to_amplitudes
from .tangle import extrema, rate_initial, tangle_closed_form

CSV_COLUMNS = ["t_tilde", "t", "p", "varphi", "tau", "gamma", "op"]

ALIASES = {"tau_star": "tau_threshold", "dt": "sample_dt", "format": "output_format",
           "out": "output_path"}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    gamma_x: float = 2.0
    gamma_y: float = 1.0
    hbar: float = 1.0
    phi: float = math.pi / 4
    varphi: float = 0.0
    p: Optional[float] = None
    r: Optional[float] = None
    tau_threshold: Optional[float] = None
    delay: float = 0.0
    horizon: float = 2.0
    sample_dt: float = 0.01
    seed: int = 42
    output_format: str = "csv"
    output_path: Optional[str] = None
    degrees: bool = False
    physical_time: bool = False

    def hamiltonian(self) -> HamiltonianParams:
        gx = self.r * self.gamma_y if self.r is not None else self.gamma_x
        try:
            return HamiltonianParams(gx, self.gamma_y, self.hbar)
        except ValueError as e:
            raise ConfigError(str(e)) from None

    def state(self) -> GHZState:
        vp = math.radians(self.varphi) if self.degrees else self.varphi
        if self.p is not None:
            if not 0.0 <= self.p <= 1.0:
                raise ConfigError("p must lie in [0, 1]")
            return GHZState(self.p, vp)
        phi = math.radians(self.phi) if self.degrees else self.phi
        return make_state(phi, vp)

    def times(self, H: HamiltonianParams) -> tuple[float, float, float]:
        """(horizon, dt, delay) in dimensionless units."""
        scale = 1.0 / H.T if self.physical_time else 1.0
        return self.horizon * scale, self.sample_dt * scale, self.delay * scale

    def validate(self) -> None:
        if self.gamma_y == 0.0:
            raise ConfigError("gamma_y must be non-zero")
        if not self.horizon > 0:
            raise ConfigError("horizon must be positive")
        if not self.sample_dt > 0:
            raise ConfigError("sample_dt must be positive")
        if self.delay < 0:
            raise ConfigError("delay must be non-negative")
        if self.tau_threshold is not None and not 0.0 < self.tau_threshold < 1.0:
            raise ConfigError("tau_threshold must lie in (0, 1)")
        if self.output_format not in ("csv", "json"):
            raise ConfigError("output_format must be csv or json")


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key: str, raw: str):
    kind = _FIELD_TYPES[key]
    if "bool" in kind:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if "int" in kind:
        return int(raw)
    if "float" in kind:
        return float(raw)
    return raw.strip()


def parse_config_text(text: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {n}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = ALIASES.get(key.replace("-", "_"), key.replace("-", "_"))
        if key not in _FIELD_TYPES:
            raise ConfigError(f"line {n}: unknown key {key!r}")
        try:
            out[key] = _coerce(key, val)
        except ValueError:
            raise ConfigError(f"line {n}: bad value for {key}: {val!r}") from None
    return out


def build_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if args.config:
        try:
            values.update(parse_config_text(Path(args.config).read_text()))
        except OSError as e:
            raise ConfigError(f"cannot read config: {e}") from None
    for name in _FIELD_TYPES:
        v = getattr(args, name, None)
        if v is not None and v is not False:
            values[name] = v
    cfg = RunConfig(**values)
    for name in ("gamma_x", "gamma_y", "hbar", "phi", "varphi", "horizon", "sample_dt", "delay"):
        if not math.isfinite(getattr(cfg, name)):
            raise ConfigError(f"{name} must be finite")
    cfg.validate()
    return cfg


def fmt(x: float) -> str:
    return format(float(x), ".12g")


def _round(x: float) -> float:
    return float(fmt(x))


def timeline_rows(tl) -> list[dict]:
    return [{"t_tilde": pt.t_tilde, "t": pt.t, "p": pt.state.p, "varphi": pt.state.varphi,
             "tau": pt.tau, "gamma": pt.gamma, "op": pt.op} for pt in tl.points]


def render_rows(rows: list[dict], columns: list[str], output_format: str) -> str:
    if output_format == "json":
        clean = [{k: (_round(r[k]) if isinstance(r[k], float) else r[k]) for k in columns}
                 for r in rows]
        return json.dumps(clean, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(r[k]) if isinstance(r[k], float) else r[k] for k in columns])
    return buf.getvalue()


def emit(text: str, path: Optional[str]) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_simulate(cfg: RunConfig) -> int:
    H = cfg.hamiltonian()
    horizon, dt, _ = cfg.times(H)
    tl = free_timeline(cfg.state(), H, horizon, dt)
    emit(render_rows(timeline_rows(tl), CSV_COLUMNS, cfg.output_format), cfg.output_path)
    return 0


def heatmap_value(kind: str, state: GHZState, H: HamiltonianParams) -> float:
    if kind == "gamma0":
        return rate_initial(state, H)
    ext = extrema(state, H)
    if kind == "tmax":
        # the stationary eigenstate sits at tau = 1; report the period
        return 1.0 if ext.stationary else ext.t_max_first
    ratio = ratio_value(state, H)
    return 0.0 if ratio is None else ratio


def heatmap_rows(kind: str, grid: str, nx: int, ny: int, H: HamiltonianParams) -> list[dict]:
    if nx < 2 or ny < 2:
        raise ConfigError("grid resolution must be at least 2 per axis")
    if kind not in ("tmax", "gamma0", "ratio"):
        raise ConfigError(f"unknown map {kind!r}")
    if grid not in ("phi-b", "phi-varphi"):
        raise ConfigError(f"unknown grid {grid!r}")
    rows = []
    for i in range(nx):
        phi = 0.5 * math.pi * i / (nx - 1)
        for j in range(ny):
            if grid == "phi-b":
                y = j / (ny - 1)
                vp = phase_for_b(y, H)
            else:
                y = 2.0 * math.pi * j / (ny - 1)
                vp = y
            rows.append({"x": phi, "y": y, "value": heatmap_value(kind, make_state(phi, vp), H)})
    return rows


def cmd_heatmap(cfg: RunConfig, kind: str, grid: str, nx: int, ny: int) -> int:
    rows = heatmap_rows(kind, grid, nx, ny, cfg.hamiltonian())
    emit(render_rows(rows, ["x", "y", "value"], cfg.output_format), cfg.output_path)
    return 0


def _state_dict(s: GHZState) -> dict:
    return {"p": s.p, "varphi": s.varphi}


def optimize_report(cfg: RunConfig) -> dict:
    H = cfg.hamiltonian()
    s = cfg.state()
    try:
        rep = optimize(s, H).to_dict()
        paths = optimization_paths(s, H)
    except StationaryPhaseRequired:
        return {"advisory": "stationary phase applies", "varphi_s": stationary_phase(H),
                "p": s.p, "varphi": s.varphi}
    rep["paths"] = {k: _state_dict(getattr(paths, k)) for k in "ABCD"}
    rep["paths"]["gamma0_B"] = paths.gamma0_B
    rep["paths"]["gamma0_D"] = paths.gamma0_D
    return rep


def cmd_optimize(cfg: RunConfig) -> int:
    emit(_json(optimize_report(cfg)), cfg.output_path)
    return 0


def cmd_protocol(cfg: RunConfig, kind: str, margin: float, repeat_every: Optional[float],
                 target: int, summary_path: Optional[str]) -> int:
    H = cfg.hamiltonian()
    horizon, dt, delay = cfg.times(H)
    s = cfg.state()
    if kind == "sigma-z":
        if cfg.tau_threshold is None:
            raise ConfigError("sigma-z protocol needs --tau-star")
        tl = run_sigma_z_protocol(s, H, cfg.tau_threshold, horizon, dt, margin=margin, target=target)
    else:
        if repeat_every is not None and cfg.physical_time:
            repeat_every /= H.T
        tl = run_stationary_protocol(s, H, delay, horizon, dt, repeat_every=repeat_every,
                                     target=target)
    emit(render_rows(timeline_rows(tl), CSV_COLUMNS, cfg.output_format), cfg.output_path)
    summary = _json(tl.summary())
    if summary_path:
        Path(summary_path).write_text(summary)
    else:
        sys.stderr.write(summary)
    return 0


def verification_report(cases: int, seed: int) -> dict:
    """Closed forms against the dense oracle on seeded random inputs."""
    rng = np.random.default_rng(seed)
    err_p = err_tau = 0.0
    for _ in range(cases):
        phi = rng.uniform(0.0, 0.5 * math.pi)
        vp = rng.uniform(0.0, 2.0 * math.pi)
        gy = rng.choice([-1.0, 1.0]) * rng.uniform(0.2, 2.0)
        H = HamiltonianParams.from_ratio(rng.uniform(-5.0, 5.0), gy)
        tt = rng.uniform(0.0, 2.0)
        s0 = make_state(phi, vp)
        psi = oracle.matrix_exp_evolve(to_amplitudes(s0), H, H.to_physical(tt))
        p_o, _ = oracle.ghz_components(psi)
        err_p = max(err_p, abs(evolve(s0, H, tt).p - p_o))
        err_tau = max(err_tau, abs(tangle_closed_form(s0, H, tt) - oracle.tangle_general(psi)))
    err_ckw = 0.0
    for _ in range(max(1, cases // 2)):
        psi = oracle.random_pure_state(rng)
        err_ckw = max(err_ckw, abs(oracle.tangle_general(psi) - oracle.ckw_tangle(psi)))
    err_h2 = 0.0
    for _ in range(min(cases, 100)):
        H = HamiltonianParams(rng.uniform(-5, 5), rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 5))
        m = oracle.hamiltonian_matrix(H)
        err_h2 = max(err_h2, float(np.abs(m @ m - H.omega ** 2 * np.eye(8)).max()))
    checks = {"p_error": (err_p, 1e-9), "tau_error": (err_tau, 1e-9),
              "ckw_error": (err_ckw, 1e-8), "h2_error": (err_h2, 1e-12)}
    report = {k: {"max": float(v), "tol": tol, "pass": bool(v < tol)}
              for k, (v, tol) in checks.items()}
    report["cases"] = cases
    report["seed"] = seed
    report["pass"] = all(c["pass"] for c in report.values() if isinstance(c, dict))
    return report


def cmd_verify(cfg: RunConfig, cases: int) -> int:
    if cases < 1:
        raise ConfigError("cases must be at least 1")
    report = verification_report(cases, cfg.seed)
    emit(_json(report), cfg.output_path)
    return 0 if report["pass"] else 2


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("model and run parameters")
    g.add_argument("--config", metavar="PATH", help="flat key=value file; flags override it")
    g.add_argument("--gamma-x", type=float)
    g.add_argument("--gamma-y", type=float)
    g.add_argument("--r", type=float, help="gamma_x / gamma_y (with --gamma-y)")
    g.add_argument("--hbar", type=float)
    g.add_argument("--phi", type=float, help="population angle")
    g.add_argument("--p", type=float, help="population of |000> (instead of --phi)")
    g.add_argument("--varphi", type=float, help="relative phase")
    g.add_argument("--tau-star", dest="tau_threshold", type=float)
    g.add_argument("--delay", type=float)
    g.add_argument("--horizon", type=float)
    g.add_argument("--dt", dest="sample_dt", type=float)
    g.add_argument("--seed", type=int)
    g.add_argument("--format", dest="output_format", choices=["csv", "json"])
    g.add_argument("--out", dest="output_path", metavar="PATH")
    g.add_argument("--degrees", action="store_true", help="angles given in degrees")
    g.add_argument("--physical-time", action="store_true",
                   help="horizon, dt and delay are physical times")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghzrate", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("simulate", help="free evolution trajectory"))
    hm = sub.add_parser("heatmap", help="t_max, Gamma_0 or ratio over a parameter grid")
    _common(hm)
    hm.add_argument("--map", dest="map_kind", choices=["tmax", "gamma0", "ratio"], default="tmax")
    hm.add_argument("--grid", choices=["phi-b", "phi-varphi"], default="phi-b")
    hm.add_argument("--nx", type=int, default=51)
    hm.add_argument("--ny", type=int, default=51)
    _common(sub.add_parser("optimize", help="optimal rotation and flip report (json)"))
    pr = sub.add_parser("protocol", help="run a threshold-keeping protocol")
    _common(pr)
    pr.add_argument("--kind", choices=["sigma-z", "stationary"], default="sigma-z")
    pr.add_argument("--margin", type=float, default=0.0)
    pr.add_argument("--repeat-every", type=float)
    pr.add_argument("--target", type=int, default=2, choices=[0, 1, 2])
    pr.add_argument("--summary", metavar="PATH")
    ve = sub.add_parser("verify", help="closed forms vs dense oracle")
    _common(ve)
    ve.add_argument("--cases", type=int, default=1000)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        if args.command == "simulate":
            return cmd_simulate(cfg)
        if args.command == "heatmap":
            return cmd_heatmap(cfg, args.map_kind, args.grid, args.nx, args.ny)
        if args.command == "optimize":
            return cmd_optimize(cfg)
        if args.command == "protocol":
            return cmd_protocol(cfg, args.kind, args.margin, args.repeat_every, args.target,
                                args.summary)
        return cmd_verify(cfg, args.cases)
    except (ConfigError, ThresholdError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
