"""Command-line surface: scenario config in, tables/grids/reports/images out.

Subcommands: design, pattern, cuts, compare, link.  Exit codes: 0 success,
2 input error, 3 design error, 4 I/O error.  All CSV/JSON output is
byte-deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import metrics, ris
from .arrays import PatternGrid
from .design import design_closed_form, design_finite_l
from .geometry import EmptyCoverError, SolidAngle, cover_set, from_psi
from .scenario import ConfigError, ScenarioConfig, load_scenario, parse_angle, resolve_eta
from .svgplot import heatmap_svg


class DesignError(RuntimeError):
    """Design stage failed (empty cover, degenerate inputs)."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_text(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _write_json(path: Path, payload):
    _write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _run_design(scenario: ScenarioConfig):
    """Cover, equal-gain params, design result, and surface config for a scenario."""
    try:
        cover = cover_set(scenario.spec, scenario.grid, scenario.geom)
        params = resolve_eta(scenario, cover)
        if scenario.design.method == "closed_form":
            result = design_closed_form(cover, scenario.grid, scenario.geom, params)
        else:
            result = design_finite_l(cover, scenario.grid, scenario.geom, params,
                                     l_v=scenario.design.l_v,
                                     l_h=scenario.design.l_h,
                                     exact_ls=scenario.design.exact_ls)
        config = ris.ris_from_beamformer(result.beamformer, scenario.incident,
                                         scenario.geom)
        if scenario.design.unit_modulus:
            config = ris.unit_modulus_project(config)
    except (EmptyCoverError, ValueError) as exc:
        raise DesignError(str(exc)) from None
    return cover, params, result, config


def _pattern_source(scenario: ScenarioConfig, result, config):
    """What radiates in this scenario: the feed itself, or the projected surface."""
    return config if scenario.design.unit_modulus else result.beamformer


def _resolution(scenario: ScenarioConfig, args) -> tuple:
    if args.resolution:
        parts = args.resolution.lower().split("x")
        try:
            r_v, r_h = (int(p) for p in parts)
        except ValueError:
            raise ConfigError(f"--resolution: expected NxM, got {args.resolution!r}") \
                from None
        if r_v < 2 or r_h < 2:
            raise ConfigError("--resolution: values must be >= 2")
        return r_v, r_h
    return scenario.output.pattern_resolution


def _out_dir(scenario: ScenarioConfig, args) -> Path:
    return Path(args.out) if args.out else Path(scenario.output.directory)


def cmd_design(args) -> int:
    scenario = load_scenario(args.config)
    cover, params, result, config = _run_design(scenario)
    out = _out_dir(scenario, args)

    lines = ["m_v,m_h,beta,theta_radians"]
    for m_v in range(scenario.geom.m_v):
        for m_h in range(scenario.geom.m_h):
            lines.append(f"{m_v},{m_h},{_fmt(config.betas[m_v, m_h])},"
                         f"{_fmt(config.thetas[m_v, m_h])}")
    _write_text(out / "ris_coefficients.csv", "\n".join(lines) + "\n")

    meta = {
        "cover_size": cover.size,
        "cover_cells": [list(c) for c in cover.sorted()],
        "per_lobe_cell_counts": [len(s) for s in cover.per_lobe],
        "ideal_gain_level": result.ideal.level_t,
        "ideal_gain_level_db": result.ideal.level_db,
        "eta_v": params.eta_v,
        "eta_h": params.eta_h,
        "method": {"name": result.method.name, "l_v": result.method.l_v,
                   "l_h": result.method.l_h, "exact_ls": result.method.exact_ls,
                   "residual": result.method.residual,
                   "rank_deficient": result.method.rank_deficient},
        "norm_checks": {
            "beamformer_norm": float(np.linalg.norm(result.beamformer.entries)),
            "max_beta": float(config.betas.max()),
            "min_beta": float(config.betas.min()),
        },
        "effective_config": scenario.effective,
    }
    _write_json(out / "design_metadata.json", meta)
    return 0


def pattern_csv_text(grid_pattern: PatternGrid) -> str:
    header = "xi_zeta," + ",".join(_fmt(z) for z in grid_pattern.zeta_samples)
    lines = [header]
    for i, xi in enumerate(grid_pattern.xi_samples):
        row_db = (metrics.to_db(g) for g in grid_pattern.gains[i])
        lines.append(_fmt(xi) + "," + ",".join(_fmt(v) for v in row_db))
    return "\n".join(lines) + "\n"


def read_pattern_csv(path) -> PatternGrid:
    """Re-load a pattern CSV (dB body) into linear gains."""
    with open(path, encoding="utf-8") as fh:
        rows = [line.rstrip("\n").split(",") for line in fh if line.strip()]
    zeta = np.array([float(v) for v in rows[0][1:]])
    xi = np.array([float(r[0]) for r in rows[1:]])
    db = np.array([[float(v) for v in r[1:]] for r in rows[1:]])
    return PatternGrid(xi_samples=xi, zeta_samples=zeta, gains=10.0 ** (db / 10.0))


def cmd_pattern(args) -> int:
    scenario = load_scenario(args.config)
    r_v, r_h = _resolution(scenario, args)
    _, _, result, config = _run_design(scenario)
    source = _pattern_source(scenario, result, config)
    grid_pattern = metrics.sample_pattern(source, r_v, r_h)
    out = _out_dir(scenario, args)
    _write_text(out / "pattern.csv", pattern_csv_text(grid_pattern))
    gains_db = 10.0 * np.log10(np.maximum(grid_pattern.gains,
                                          10.0 ** (metrics.DB_FLOOR / 10.0)))
    svg = heatmap_svg(gains_db, grid_pattern.xi_samples, grid_pattern.zeta_samples,
                      title="Reflected gain pattern")
    _write_text(out / "pattern.svg", svg)
    return 0


def _parse_cut_flag(text: str) -> dict:
    axis, sep, value = text.partition(":")
    if not sep:
        raise ConfigError(f"--cut: expected axis:value, got {text!r}")
    return {"axis": axis, "value": parse_angle(value, "--cut")}


def cmd_cuts(args) -> int:
    scenario = load_scenario(args.config)
    cut_specs = [_parse_cut_flag(c) for c in args.cut] \
        if args.cut else list(scenario.output.cuts)
    if not cut_specs:
        raise ConfigError("no cuts given: add output.cuts to the config or pass --cut")
    for spec_ in cut_specs:
        if spec_["axis"] not in ("fixed_phi", "fixed_theta"):
            raise ConfigError(f"--cut: unknown axis {spec_['axis']!r}")
    _, _, result, config = _run_design(scenario)
    source = _pattern_source(scenario, result, config)
    out = _out_dir(scenario, args)

    summary = []
    for i, spec_ in enumerate(cut_specs):
        try:
            profile = metrics.cut(source, scenario.grid, scenario.geom,
                                  spec_["axis"], spec_["value"],
                                  resolution=args.cut_resolution)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        lines = ["angle_radians,gain_db"]
        lines += [f"{_fmt(a)},{_fmt(g)}"
                  for a, g in zip(profile.angles, profile.gains_db)]
        name = f"cut_{i:02d}_{spec_['axis']}.csv"
        _write_text(out / name, "\n".join(lines) + "\n")
        summary.append({
            "file": name,
            "axis": spec_["axis"],
            "fixed_value": spec_["value"],
            "widths_radians": {f"{level:g}": list(w)
                               for level, w in profile.widths.items()},
        })
    _write_json(out / "cut_widths.json", {"cuts": summary})
    return 0


def cmd_compare(args) -> int:
    scenario = load_scenario(args.config)
    if len(scenario.spec.lobes) < 2:
        raise DesignError("comparison needs at least 2 lobes")
    cover, params, result, config = _run_design(scenario)
    single_cover = metrics.bounding_rectangle_cover(cover, scenario.grid)
    try:
        single_params = resolve_eta(scenario, single_cover)
        if scenario.design.method == "closed_form":
            single = design_closed_form(single_cover, scenario.grid, scenario.geom,
                                        single_params)
        else:
            single = design_finite_l(single_cover, scenario.grid, scenario.geom,
                                     single_params, l_v=scenario.design.l_v,
                                     l_h=scenario.design.l_h,
                                     exact_ls=scenario.design.exact_ls)
    except (EmptyCoverError, ValueError) as exc:
        raise DesignError(str(exc)) from None
    resolution = max(_resolution(scenario, args))
    rep_multi = metrics.report(result.beamformer, cover, scenario.grid,
                               resolution=resolution)
    rep_single = metrics.report(single.beamformer, cover, scenario.grid,
                                resolution=resolution)
    payload = {
        "multi_mean_db": rep_multi.mean_in_db,
        "single_mean_db": rep_single.mean_in_db,
        "delta_db": metrics.compare(rep_multi, rep_single),
        "multi_cover_size": cover.size,
        "single_cover_size": single_cover.size,
        "ideal_level_db": rep_multi.ideal_level_db,
        "resolution": resolution,
    }
    _write_json(_out_dir(scenario, args) / "comparison.json", payload)
    return 0


def _parse_omega(text: str, where: str) -> SolidAngle:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"{where}: expected 'phi,theta', got {text!r}")
    try:
        return SolidAngle(parse_angle(parts[0], where), parse_angle(parts[1], where))
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _lobe_centers(scenario: ScenarioConfig):
    centers = []
    for lobe in scenario.spec.lobes:
        rect = lobe.rects[0]
        if hasattr(rect, "phi_min"):
            centers.append(SolidAngle((rect.phi_min + rect.phi_max) / 2,
                                      (rect.theta_min + rect.theta_max) / 2))
        else:
            from .geometry import PsiPoint
            mid = PsiPoint((rect.xi_min + rect.xi_max) / 2,
                           (rect.zeta_min + rect.zeta_max) / 2)
            centers.append(from_psi(mid, scenario.geom))
    return centers


def cmd_link(args) -> int:
    scenario = load_scenario(args.config)
    if args.tx_power <= 0 or args.noise_var <= 0:
        raise ConfigError("--tx-power and --noise-var must be > 0")
    if args.m_t < 1 or args.m_r < 1:
        raise ConfigError("--m-t and --m-r must be >= 1")
    omega_t = _parse_omega(args.omega_t, "--omega-t")
    omega_r = _parse_omega(args.omega_r, "--omega-r")
    targets = [_parse_omega(t, "--omega-2") for t in args.omega_2] \
        if args.omega_2 else _lobe_centers(scenario)
    _, _, result, config = _run_design(scenario)

    entries = []
    for omega_2 in targets:
        scene = ris.LinkScene(omega_t=omega_t, omega_1=scenario.incident,
                              omega_2=omega_2, omega_r=omega_r,
                              rho_t=args.rho_t, rho_r=args.rho_r,
                              m_t=args.m_t, m_r=args.m_r)
        h = ris.cascaded_channel(scene, config)
        gamma = ris.reflection_coefficient(config, scene.omega_1, scene.omega_2)
        entries.append({
            "phi": omega_2.phi,
            "theta": omega_2.theta,
            "gamma_abs": abs(gamma),
            "channel_fro_norm": float(np.linalg.norm(h)),
            "snr_db": ris.received_snr(scene, config, args.tx_power, args.noise_var),
        })
    payload = {
        "tx_power_w": args.tx_power,
        "noise_var_w": args.noise_var,
        "m_t": args.m_t,
        "m_r": args.m_r,
        "incident": {"phi": scenario.incident.phi, "theta": scenario.incident.theta},
        "directions": entries,
    }
    _write_json(_out_dir(scenario, args) / "link_report.json", payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="risbeam",
        description="Multi-lobe reflection beam synthesis for planar "
                    "reflecting surfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="scenario JSON path")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--resolution", default=None,
                       help="pattern resolution NxM, overrides the config")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for randomized demos (unused by the "
                            "deterministic commands)")

    p = sub.add_parser("design", help="write the per-element coefficient table")
    common(p)
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("pattern", help="write the sampled gain grid and heatmap")
    common(p)
    p.set_defaults(func=cmd_pattern)

    p = sub.add_parser("cuts", help="write 1D pattern cuts and measured widths")
    common(p)
    p.add_argument("--cut", action="append", default=None,
                   help="axis:value, e.g. fixed_phi:'-8/32 pi' (repeatable; "
                        "defaults to the config's cuts)")
    p.add_argument("--cut-resolution", type=int, default=1024)
    p.set_defaults(func=cmd_cuts)

    p = sub.add_parser("compare", help="multi-lobe vs single bounding-lobe gain")
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("link", help="cascaded-channel SNR report")
    common(p)
    p.add_argument("--tx-power", type=float, default=1.0, help="watts")
    p.add_argument("--noise-var", type=float, default=1e-6, help="watts")
    p.add_argument("--m-t", type=int, default=1)
    p.add_argument("--m-r", type=int, default=1)
    p.add_argument("--rho-t", type=float, default=1.0)
    p.add_argument("--rho-r", type=float, default=1.0)
    p.add_argument("--omega-t", default="0,0", help="departure at tx: phi,theta")
    p.add_argument("--omega-r", default="0,0", help="arrival at rx: phi,theta")
    p.add_argument("--omega-2", action="append", default=None,
                   help="observation direction phi,theta (repeatable; "
                        "defaults to the lobe centers)")
    p.set_defaults(func=cmd_link)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DesignError as exc:
        print(f"design error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        # Anything design-stage raises is already wrapped in DesignError;
        # a ValueError surfacing here came from the inputs.
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
