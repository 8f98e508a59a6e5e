"""Command-line front end.

Subcommands:

* ``torques``     batch torque breakdown of a trajectory table
* ``decompose``   component proportions and per-joint charts of a breakdown
* ``fit``         identify (Cd, Cm) from a paired land/water torque log
* ``simulate``    generate a gait and synthetic paired logs
* ``resistance``  derive and characterise viscous / seal resistance grids
* ``efficiency``  loss fraction and efficiency from loss vs rated current

Every command validates and computes before touching the filesystem, so a
failing run leaves no partial output files. Given the same inputs, seed
and configuration, outputs are byte-identical across runs.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import GridError
from .fitting import FitResult, assemble_regression, fit_hydro_params
from .gait import (NoiseSpec, default_gait, gen_trajectory, load_gait_spec,
                   samples_from_log, synthesize_measurements)
from .geometry import DEFAULT_PROFILE, EnvParams, LegGeometry, load_profile
from .quadrature import QuadratureSpec
from .resistance import (compare_surface_fits, efficiency_report, fit_surface,
                         monotonicity_check, seal_current, sensitivity_report,
                         viscous_current)
from .svgchart import line_chart
from .tables import (read_breakdown_csv, read_paired_csv, read_resistance_csv,
                     read_trajectory_csv, write_breakdown_csv, write_paired_csv,
                     write_resistance_csv, write_trajectory_csv)
from .torques import HydroCoeffs, batch_breakdown


@dataclass(frozen=True)
class RunConfig:
    """Shared run options resolved from the command line."""

    geom: LegGeometry
    env: EnvParams
    angle_unit: str
    quad: QuadratureSpec
    seed: int
    out_dir: Path


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--geometry", default=DEFAULT_PROFILE,
                        help="geometry profile name or YAML path "
                             f"(default: {DEFAULT_PROFILE})")
    parser.add_argument("--nodes", type=int, default=32,
                        help="quadrature nodes per link (default: 32)")
    parser.add_argument("--seed", type=int, default=0,
                        help="random seed (default: 0)")
    parser.add_argument("--out", default=".",
                        help="output directory (default: current)")


def _config(args) -> RunConfig:
    geom, env, angle_unit = load_profile(args.geometry)
    return RunConfig(geom=geom, env=env, angle_unit=angle_unit,
                     quad=QuadratureSpec(args.nodes), seed=args.seed,
                     out_dir=Path(args.out))


def _parse_joints(text: str) -> tuple[int, ...]:
    try:
        joints = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValueError(f"--joints must be a comma list of 1..3, got {text!r}")
    if not joints or any(j not in (1, 2, 3) for j in joints):
        raise ValueError(f"--joints must be a comma list of 1..3, got {text!r}")
    return joints


def _write_outputs(out_dir: Path, outputs: dict[str, str]) -> list[Path]:
    """Write fully assembled outputs; called only after all computation."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, content in outputs.items():
        path = out_dir / name
        path.write_text(content, encoding="utf-8", newline="\n")
        written.append(path)
    return written


def _render_to_string(write_fn, *args) -> str:
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "table.csv"
        write_fn(path, *args)
        return path.read_text(encoding="utf-8")


def cmd_torques(args) -> int:
    config = _config(args)
    traj = read_trajectory_csv(args.trajectory_csv, config.angle_unit)
    coeffs = HydroCoeffs(Cd=args.cd, Cm=args.cm)
    table = batch_breakdown(traj.t, traj.states, config.geom, config.env,
                            coeffs, config.quad)
    outputs = {"breakdown.csv": _render_to_string(write_breakdown_csv, table)}
    paths = _write_outputs(config.out_dir, outputs)
    print(f"wrote {paths[0]} ({len(traj)} samples x 3 joints)")
    return 0


def _component_stats(table) -> list[dict]:
    stats = []
    for j in range(3):
        row = {"joint": j + 1}
        for name in ("tau_w", "tau_f", "tau_d", "tau_m"):
            series = getattr(table, name)[:, j]
            row[f"{name}_rms"] = float(np.sqrt(np.mean(series**2)))
            row[f"{name}_peak"] = float(np.max(np.abs(series)))
        total = row["tau_f_rms"] + row["tau_d_rms"] + row["tau_m_rms"]
        for name in ("tau_f", "tau_d", "tau_m"):
            row[f"{name}_share"] = (row[f"{name}_rms"] / total if total > 0
                                    else None)
        stats.append(row)
    return stats


def cmd_decompose(args) -> int:
    config = _config(args)
    table = read_breakdown_csv(args.breakdown_csv)
    stats = _component_stats(table)
    lines = ["torque component proportions (RMS basis)"]
    for row in stats:
        lines.append(f"joint {row['joint']}:")
        for name, label in (("tau_w", "total"), ("tau_f", "buoyancy"),
                            ("tau_d", "drag"), ("tau_m", "added-mass")):
            lines.append(f"  {label:<10} rms {row[f'{name}_rms']:.6f} N*m   "
                         f"peak {row[f'{name}_peak']:.6f} N*m")
        shares = []
        for name, label in (("tau_f", "buoyancy"), ("tau_d", "drag"),
                            ("tau_m", "added-mass")):
            share = row[f"{name}_share"]
            shares.append(f"{label} undefined" if share is None
                          else f"{label} {100 * share:.2f}%")
        flag = " (all components zero)" if row["tau_f_share"] is None else ""
        lines.append("  shares: " + ", ".join(shares) + flag)
    outputs = {"decompose_report.txt": "\n".join(lines) + "\n"}
    for j in range(3):
        series = [(label, table.t, getattr(table, name)[:, j])
                  for name, label in (("tau_w", "total"), ("tau_f", "buoyancy"),
                                      ("tau_d", "drag"), ("tau_m", "added-mass"))]
        outputs[f"decompose_joint{j + 1}.svg"] = line_chart(
            series, title=f"joint {j + 1} hydrodynamic torque components",
            x_label="t [s]", y_label="torque [N*m]")
    _write_outputs(config.out_dir, outputs)
    print("\n".join(lines))
    return 0


def _fit_report(result: FitResult, joints: tuple[int, ...]) -> str:
    def pm(value, err):
        return (f"{value:.6f} +/- {err:.6f}" if err is not None
                else f"{value:.6f} +/- n/a")

    lines = [
        "hydrodynamic coefficient fit",
        f"rows: {result.sample_count} (joints {','.join(map(str, joints))})",
        f"Cd: {pm(result.Cd_hat, result.Cd_stderr)}",
        f"Cm: {pm(result.Cm_hat, result.Cm_stderr)}",
        f"cod: {result.cod:.6f}",
        f"residual_rms: {result.residual_rms:.6g} N*m",
    ]
    return "\n".join(lines) + "\n"


def cmd_fit(args) -> int:
    config = _config(args)
    joints = _parse_joints(args.joints)
    log = read_paired_csv(args.paired_csv, trajectory_path=args.trajectory,
                          angle_unit=config.angle_unit)
    rows = assemble_regression(samples_from_log(log), config.geom, config.env,
                               config.quad, joints=joints)
    result = fit_hydro_params(rows)
    report = _fit_report(result, joints)
    _write_outputs(config.out_dir, {"fit_report.txt": report})
    print(report, end="")
    return 0


def cmd_simulate(args) -> int:
    config = _config(args)
    spec = load_gait_spec(args.gait) if args.gait else default_gait()
    truth = HydroCoeffs(Cd=args.cd, Cm=args.cm)
    noise = NoiseSpec(torque_sigma=args.noise, seed=config.seed)
    traj = gen_trajectory(spec, config.geom)
    log = synthesize_measurements(traj, config.geom, config.env, truth,
                                  noise, config.quad)
    outputs = {
        "trajectory.csv": _render_to_string(write_trajectory_csv, traj),
        "paired_torques.csv": _render_to_string(write_paired_csv, log),
    }
    paths = _write_outputs(config.out_dir, outputs)
    print(f"wrote {paths[0]} and {paths[1]} "
          f"({len(traj)} samples, Cd={truth.Cd}, Cm={truth.Cm}, "
          f"sigma={noise.torque_sigma})")
    if config.angle_unit == "degrees":
        print("note: emitted tables use radians; the profile's 'angles: "
              "degrees' applies only when ingesting external tables")
    return 0


def _surface_block(name, surface, adj=None) -> list[str]:
    lines = [f"{name} surface: I(n,p) = {surface.c00:.6g} + {surface.c10:.6g}*n "
             f"+ {surface.c01:.6g}*p + {surface.c11:.6g}*n*p"]
    if surface.c20 or surface.c02:
        lines[-1] += f" + {surface.c20:.6g}*n^2 + {surface.c02:.6g}*p^2"
    lines.append(f"  fit cod: {surface.fit_cod:.6f}"
                 + (f"   adjusted: {adj:.6f}" if adj is not None else ""))
    return lines


def cmd_resistance(args) -> int:
    config = _config(args)
    grids = read_resistance_csv(args.grids_csv)
    missing = [c for c in ("dry", "oil_no_seal", "oil_seal") if c not in grids]
    if missing:
        raise GridError(f"{args.grids_csv}: missing configuration(s) {missing}")
    viscous = viscous_current(grids["oil_no_seal"], grids["dry"])
    seal = seal_current(grids["oil_seal"], grids["oil_no_seal"])

    quadratic = args.surface_model in ("quadratic", "both")
    lines = ["watertight-joint resistance analysis"]
    if args.surface_model == "both":
        v_bi, v_quad, v_adj_bi, v_adj_quad = compare_surface_fits(viscous)
        s_bi, s_quad, s_adj_bi, s_adj_quad = compare_surface_fits(seal)
        lines += _surface_block("viscous (bilinear)", v_bi, v_adj_bi)
        lines += _surface_block("viscous (quadratic)", v_quad, v_adj_quad)
        lines += _surface_block("seal (bilinear)", s_bi, s_adj_bi)
        lines += _surface_block("seal (quadratic)", s_quad, s_adj_quad)
        surf_v = v_quad if v_adj_quad > v_adj_bi else v_bi
        surf_s = s_quad if s_adj_quad > s_adj_bi else s_bi
    else:
        surf_v = fit_surface(viscous, include_quadratic=quadratic)
        surf_s = fit_surface(seal, include_quadratic=quadratic)
        lines += _surface_block("viscous", surf_v)
        lines += _surface_block("seal", surf_s)

    mono_v = monotonicity_check(viscous)
    mono_s = monotonicity_check(seal)
    for name, mono in (("viscous", mono_v), ("seal", mono_s)):
        lines.append(f"{name} monotone in speed: {mono.increasing_in_speed}   "
                     f"in pressure: {mono.increasing_in_pressure}   "
                     f"violations: {len(mono.violations)}")
        for v in mono.violations[:10]:
            lines.append(f"  drop {v.drop:.6g} A along {v.axis} "
                         f"{v.start:g} -> {v.stop:g} at {v.fixed:g}")
    sens = sensitivity_report(surf_v, surf_s)
    lines.append(f"viscous sensitivity: speed {sens.viscous_s_speed:.6g} A, "
                 f"pressure {sens.viscous_s_pressure:.6g} A "
                 f"-> {sens.viscous_dominant}-dominant")
    lines.append(f"seal sensitivity: speed {sens.seal_s_speed:.6g} A, "
                 f"pressure {sens.seal_s_pressure:.6g} A "
                 f"-> {sens.seal_dominant}-dominant")
    monotone_both = (mono_v.increasing_in_speed and mono_v.increasing_in_pressure
                     and mono_s.increasing_in_speed
                     and mono_s.increasing_in_pressure)
    lines.append(f"law 1 (monotone increase in speed and pressure): "
                 f"{'holds' if monotone_both else 'violated'}")
    lines.append(f"law 2 (viscous speed-dominant, seal pressure-dominant): "
                 f"{'holds' if sens.expected_ordering else 'violated'}")

    if args.rated_current is not None:
        corner = (max(viscous.speed.max(), seal.speed.max()),
                  max(viscous.pressure.max(), seal.pressure.max()))
        keys_v = viscous.key_set()
        keys_s = seal.key_set()
        if corner not in keys_v or corner not in keys_s:
            raise GridError(f"no measurement at the corner point {corner} "
                            f"for the efficiency block")
        loss_v = float(viscous.current[(viscous.speed == corner[0])
                                       & (viscous.pressure == corner[1])][0])
        loss_s = float(seal.current[(seal.speed == corner[0])
                                    & (seal.pressure == corner[1])][0])
        eff = efficiency_report(loss_v + loss_s, args.rated_current)
        lines.append(f"total loss current at {corner[0]:g} r/min, "
                     f"{corner[1]:g} MPa: {eff.total_loss_current:.6g} A "
                     f"(viscous {loss_v:.6g} + seal {loss_s:.6g})")
        lines.append(f"rated current: {eff.rated_current:.6g} A")
        lines.append(f"loss fraction: {100 * eff.loss_fraction:.2f}%")
        lines.append(f"efficiency: {100 * eff.efficiency:.2f}%")
        if not eff.within_rating:
            lines.append("warning: loss current exceeds the rated current")

    report = "\n".join(lines) + "\n"

    def heat_lines(grid, title):
        series = []
        for p in np.unique(grid.pressure):
            mask = grid.pressure == p
            order = np.argsort(grid.speed[mask])
            series.append((f"{p:g} MPa", grid.speed[mask][order],
                           grid.current[mask][order]))
        return line_chart(series, title=title, x_label="speed [r/min]",
                          y_label="current [A]")

    outputs = {
        "resistance_report.txt": report,
        "viscous_grid.csv": _render_to_string(write_resistance_csv, [viscous]),
        "seal_grid.csv": _render_to_string(write_resistance_csv, [seal]),
        "viscous.svg": heat_lines(viscous, "viscous resistance current"),
        "seal.svg": heat_lines(seal, "dynamic seal resistance current"),
    }
    _write_outputs(config.out_dir, outputs)
    print(report, end="")
    return 0


def cmd_efficiency(args) -> int:
    eff = efficiency_report(args.loss_current, args.rated_current)
    lines = [
        f"loss current: {eff.total_loss_current:.6g} A",
        f"rated current: {eff.rated_current:.6g} A",
        f"loss fraction: {100 * eff.loss_fraction:.2f}%",
        f"efficiency: {100 * eff.efficiency:.2f}%",
    ]
    if not eff.within_rating:
        lines.append("warning: loss current exceeds the rated current")
    report = "\n".join(lines) + "\n"
    if args.out is not None:
        _write_outputs(Path(args.out), {"efficiency_report.txt": report})
    print(report, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uwleg",
        description="Hydrodynamic torque modelling, coefficient identification "
                    "and joint-resistance analysis for a 3-DOF underwater leg.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("torques", help="batch torque breakdown of a trajectory")
    p.add_argument("trajectory_csv")
    p.add_argument("--cd", type=float, default=2.2,
                   help="drag coefficient (default: 2.2)")
    p.add_argument("--cm", type=float, default=0.5,
                   help="added-mass coefficient (default: 0.5)")
    _add_common(p)
    p.set_defaults(func=cmd_torques)

    p = sub.add_parser("decompose",
                       help="component proportions and charts of a breakdown")
    p.add_argument("breakdown_csv")
    _add_common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("fit", help="identify (Cd, Cm) from a paired torque log")
    p.add_argument("paired_csv")
    p.add_argument("--trajectory", default=None,
                   help="sidecar trajectory CSV when states are not inline")
    p.add_argument("--joints", default="1",
                   help="joints whose rows enter the fit (default: 1)")
    _add_common(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("simulate",
                       help="generate a gait and synthetic paired torque logs")
    p.add_argument("--gait", default=None,
                   help="gait spec YAML (default: built-in sinusoid gait)")
    p.add_argument("--cd", type=float, default=2.2,
                   help="true drag coefficient (default: 2.2)")
    p.add_argument("--cm", type=float, default=0.5,
                   help="true added-mass coefficient (default: 0.5)")
    p.add_argument("--noise", type=float, default=0.0,
                   help="torque noise sigma in N*m (default: 0)")
    _add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("resistance",
                       help="derive and characterise resistance grids")
    p.add_argument("grids_csv")
    p.add_argument("--surface-model", choices=("bilinear", "quadratic", "both"),
                   default="bilinear")
    p.add_argument("--rated-current", type=float, default=None,
                   help="motor rated current in A; enables the efficiency block")
    _add_common(p)
    p.set_defaults(func=cmd_resistance)

    p = sub.add_parser("efficiency",
                       help="loss fraction and efficiency from currents")
    p.add_argument("loss_current", type=float)
    p.add_argument("rated_current", type=float)
    p.add_argument("--out", default=None,
                   help="directory for efficiency_report.txt (optional)")
    p.set_defaults(func=cmd_efficiency)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
