"""Command-line front end: simulate, equilibria, verify, plot.

Exit codes: 0 success (and verification PASS), 1 usage or I/O problems,
2 numerical failures (including verification FAIL).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .classic import solve_isogold_path
from .equilibria import catalog_from_json, catalog_to_json, multiset_distance, newgold_equilibria
from .model import ConfigError, GoldfishError, load_config, period
from .oracle import integrate
from .presets import BUNDLED, bundled_config
from .roots import match_labels, permutation_order
from .spectral import solve_newgold, solve_newgold_with_coeffs
from .svgplot import catalog_svg, trajectory_svg
from .symmetry import eval_monic, polynomial_scale
from .trajfile import (
    trajectory_from_csv,
    trajectory_from_json,
    trajectory_to_csv,
    trajectory_to_json,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_config(path_or_name):
    name = path_or_name.removesuffix(".json")
    p = Path(path_or_name)
    if p.exists():
        try:
            return load_config(p.read_bytes())
        except OSError as exc:
            raise UsageError(f"cannot read config {path_or_name}: {exc}") from exc
    if name in BUNDLED:
        return bundled_config(name)
    raise UsageError(f"config file not found: {path_or_name}")


def _write_text(path, text):
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _simulate(args) -> int:
    config = _read_config(args.config)
    t_end = args.t_end if args.t_end is not None else config.duration
    if t_end <= 0:
        raise UsageError("--t-end must be > 0")
    samples = args.samples if args.samples is not None else config.samples
    if samples < 1:
        raise UsageError("--samples must be >= 1")
    times = np.linspace(0.0, t_end, samples + 1)
    if args.method == "spectral":
        traj = solve_newgold(config, times)
    elif args.method == "ode":
        traj = integrate("newgold", (config.z0, config.v0), config.omega, (0.0, t_end), samples)
    elif args.method == "isogold-algebraic":
        traj = solve_isogold_path(config, times)
    else:  # isogold-ode
        traj = integrate("isogold", (config.z0, config.v0), config.omega, (0.0, t_end), samples)
    text = trajectory_to_csv(traj) if args.format == "csv" else trajectory_to_json(traj) + "\n"
    _write_text(args.out, text)
    return 0


def _equilibria(args) -> int:
    if args.n < 2:
        raise UsageError("--n must be >= 2")
    catalog = newgold_equilibria(args.n)
    _write_text(args.out, catalog_to_json(catalog) + "\n")
    return 0


def _verify(args) -> int:
    from .oracle import integrate_states
    from .spectral import CoefficientPath, build_spectral

    config = _read_config(args.config)
    t_period = period(config)
    t_end = args.t_end if args.t_end is not None else t_period
    if t_end <= 0:
        raise UsageError("--t-end must be > 0")
    samples = config.samples

    # The coefficient branches return to their slots only after k_c periods
    # (the coefficient multiset is T-periodic, individual branches may
    # permute); positions recur as a multiset at k_c*T.
    path = CoefficientPath(build_spectral(config))
    sigma_c = match_labels(path.at(t_period), path.at(0.0))
    k_c = permutation_order(sigma_c)
    t_recur = k_c * t_period

    horizon = max(t_end, t_recur)
    checkpoints = np.linspace(0.0, t_end, 9)
    grid = np.unique(np.concatenate([
        np.linspace(0.0, horizon, samples + 1),
        checkpoints,
        [t_period, t_recur, t_end],
    ]))
    traj, coeffs = solve_newgold_with_coeffs(config, grid)

    # Independent integration, free-running between the few checkpoints so
    # its accuracy reflects --ode-rtol rather than the output grid spacing.
    ode_states = integrate_states(
        "newgold", (config.z0, config.v0), config.omega, checkpoints, rtol=args.ode_rtol
    )
    idx = np.searchsorted(grid, checkpoints)
    cross_dev = float(np.abs(traj.samples[idx] - ode_states[:, : config.n]).max())

    i_recur = int(np.argmin(np.abs(grid - t_recur)))
    closure_multiset = multiset_distance(traj.samples[i_recur], traj.samples[0])
    sigma = match_labels(traj.samples[i_recur], traj.samples[0])
    k_z = permutation_order(sigma)
    k_total = k_z * k_c

    if k_z > 1:
        full_grid = np.unique(np.concatenate([
            np.linspace(0.0, k_total * t_period, samples + 1),
            [k_total * t_period],
        ]))
        full_traj = solve_newgold(config, full_grid)
        closure_labeled = float(np.abs(full_traj.samples[-1] - full_traj.samples[0]).max())
    else:
        closure_labeled = float(np.abs(traj.samples[i_recur] - traj.samples[0]).max())

    psi_resid = 0.0
    for row, c in zip(traj.samples, coeffs):
        resid = np.abs(eval_monic(c, row)).max() / polynomial_scale(c)
        psi_resid = max(psi_resid, float(resid))

    drift = float(np.abs(traj.samples - traj.samples[0]).max())

    tol = args.tol
    recur_name = "T" if k_c == 1 else f"{k_c}*T"
    checks = [
        ("cross-method max deviation", cross_dev, tol),
        (f"multiset closure at {recur_name}", closure_multiset, tol),
        (f"labeled closure at {k_total}*T", closure_labeled, tol),
        ("psi-membership residual", psi_resid, max(tol, 1e-8)),
    ]
    ok = all(value <= bound for _, value, bound in checks)
    print(f"config: n={config.n} omega={config.omega} T={t_period:.9g}")
    print(f"coefficient monodromy order: {k_c}")
    for name, value, bound in checks:
        flag = "ok" if value <= bound else "EXCEEDED"
        print(f"{name}: {value:.3e} (tol {bound:.1e}) {flag}")
    print(f"closure permutation at {recur_name}: {[int(j) + 1 for j in sigma]} (order {k_z})")
    print(f"max drift from start: {drift:.3e}"
          + ("  [stationary within tol]" if drift <= tol else ""))
    print("PASS" if ok else "FAIL")
    return 0 if ok else 2


def _nearest_catalog_entry(traj):
    if traj.n > 6:
        raise UsageError("--mark-equilibria supports up to 6 bodies")
    catalog = newgold_equilibria(traj.n)
    start = traj.samples[0]
    best = min(catalog.entries, key=lambda e: multiset_distance(start, e.configuration))
    return best.configuration


def _plot(args) -> int:
    path = Path(args.input)
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from exc
    if not text.strip():
        raise UsageError(f"{args.input} is empty")
    out = args.out if args.out is not None else str(path.with_suffix(".svg"))

    head = text.lstrip()[0]
    if head == "[":
        catalog = catalog_from_json(text)
        _write_text(out, catalog_svg(catalog))
        return 0
    try:
        traj = trajectory_from_json(text) if head == "{" else trajectory_from_csv(text)
    except ValueError as exc:
        raise UsageError(f"{args.input}: {exc}") from exc
    equilibrium = _nearest_catalog_entry(traj) if args.mark_equilibria else None
    initial = traj.samples[0] if args.mark_initial else None
    _write_text(out, trajectory_svg(traj, equilibrium=equilibrium, initial=initial))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="goldfish", description=__doc__)
    parser.add_argument("--version", action="version", version=f"goldfish {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="produce a trajectory file")
    p.add_argument("--config", required=True, help="config path or bundled name (n2a..n2e, n3)")
    p.add_argument("--method", default="spectral",
                   choices=("spectral", "ode", "isogold-algebraic", "isogold-ode"))
    p.add_argument("--t-end", type=float, default=None, dest="t_end")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.set_defaults(func=_simulate)

    p = sub.add_parser("equilibria", help="export the stationary-configuration catalog")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_equilibria)

    p = sub.add_parser("verify", help="cross-check the exact solver and periodicity")
    p.add_argument("--config", required=True)
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--t-end", type=float, default=None, dest="t_end")
    p.add_argument("--ode-rtol", type=float, default=1e-10, dest="ode_rtol",
                   help="relative tolerance of the reference integration")
    p.set_defaults(func=_verify)

    p = sub.add_parser("plot", help="render a trajectory or catalog file as SVG")
    p.add_argument("input", help="trajectory CSV/JSON or catalog JSON")
    p.add_argument("--out", default=None)
    p.add_argument("--mark-equilibria", action="store_true",
                   help="mark the nearest stationary configuration")
    p.add_argument("--mark-initial", action="store_true",
                   help="mark the initial positions")
    p.set_defaults(func=_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GoldfishError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
