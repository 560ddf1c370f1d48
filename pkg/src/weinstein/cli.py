"""Command line interface.

Subcommands: transform, cwt, localize, verify, convergence.  All accept
--config PATH (key=value file) and repeatable --set key=value overrides.
Outputs are CSV files under the configured output directory.

Exit codes: 0 all checks pass, 1 check failure, 2 configuration error,
3 runtime error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np


def _load_config(args):
    from .config import ConfigError, RunConfig, apply_overrides, parse_config
    config_path = getattr(args, "config", None)
    overrides = getattr(args, "set", None) or []
    if config_path:
        text = Path(config_path).read_text()
        cfg = parse_config(text)
    else:
        cfg = RunConfig()
    if overrides:
        cfg = apply_overrides(cfg, overrides)
    return cfg.validate()


def _out_dir(cfg) -> Path:
    p = Path(cfg.out_dir)
    p.mkdir(parents=True, exist_ok=True)
    (p / "fields").mkdir(exist_ok=True)
    return p


def cmd_transform(cfg) -> int:
    from .grids import Field
    from .probes import gaussian
    from .report import field_to_csv, parse_field_csv
    from .transform import forward, inverse
    from .verify import build_stack
    st = build_stack(cfg.alpha, cfg.d, cfg.n, cfg.m, cfg.a_min, cfg.a_max,
                     cfg.scales, cfg.theta_count, cfg.cart_extent, cfg.radial_extent)
    out = _out_dir(cfg)
    if cfg.window_phi.startswith("csv:"):
        vals = parse_field_csv(st.grid, Path(cfg.window_phi[4:]).read_text())
        f = Field(st.grid, vals)
    else:
        f = gaussian(st.grid)
    Ff = forward(st.plan, f)
    back = inverse(st.plan, Ff)
    (out / "fields" / "input.csv").write_text(field_to_csv(st.grid, f.values))
    (out / "fields" / "transform.csv").write_text(field_to_csv(st.grid, Ff.values))
    (out / "fields" / "roundtrip.csv").write_text(field_to_csv(st.grid, back.values))
    print(f"transform written to {out / 'fields'}")
    return 0


def cmd_cwt(cfg) -> int:
    from .probes import gaussian
    from .report import scale_field_to_csv
    from .verify import build_stack
    from .wavelets import build_pair, cwt
    st = build_stack(cfg.alpha, cfg.d, cfg.n, cfg.m, cfg.a_min, cfg.a_max,
                     cfg.scales, cfg.theta_count, cfg.cart_extent, cfg.radial_extent)
    pair = build_pair(st.plan, st.scale_grid, st.kernel)
    f = gaussian(st.grid)
    W = cwt(pair, f, "phi")
    out = _out_dir(cfg)
    (out / "fields" / "cwt.csv").write_text(scale_field_to_csv(st.scale_grid, W.values))
    print(f"wavelet transform written to {out / 'fields' / 'cwt.csv'}")
    return 0


def cmd_localize(cfg) -> int:
    from . import localization as loc
    from .report import matrix_to_csv
    from .verify import build_stack, _symbols
    from .wavelets import build_pair
    st = build_stack(cfg.alpha, cfg.d, cfg.op_n, cfg.op_m, cfg.a_min, cfg.a_max,
                     cfg.op_scales, cfg.theta_count)
    pair = build_pair(st.plan, st.scale_grid, st.kernel)
    if cfg.symbol.startswith("csv:"):
        from .report import parse_scale_field_csv
        vals = parse_scale_field_csv(st.scale_grid, Path(cfg.symbol[4:]).read_text())
        sym = loc.SymbolField(st.scale_grid, vals)
    else:
        symbols = _symbols(st.scale_grid)
        if cfg.symbol not in symbols:
            print(f"unknown symbol class {cfg.symbol!r}; choices: "
                  f"{sorted(symbols)} or csv:<path>", file=sys.stderr)
            return 2
        sym = symbols[cfg.symbol]
    L = loc.assemble(pair, sym)
    out = _out_dir(cfg)
    (out / "operator.csv").write_text(matrix_to_csv(L.matrix))
    # bound report: one row per (theorem, p) with the dominance ratio
    from .report import fmt
    lines = ["theorem_id,p,measured,bound,ratio"]
    ok = True
    for p in (1, 2, np.inf):
        measured = loc.measured_norm(L, p)
        _, _, every = loc.theoretical_bound(pair, sym, p)
        for name, val in sorted(every.items()):
            ratio = measured / val if val > 0 else np.inf
            ok = ok and ratio <= 1.05
            lines.append(f"{name},{p},{fmt(measured)},{fmt(val)},{fmt(ratio)}")
    (out / "bounds.csv").write_text("\n".join(lines) + "\n")
    print(f"operator written to {out / 'operator.csv'}; bound report to {out / 'bounds.csv'}")
    return 0 if ok else 1


def cmd_verify(cfg) -> int:
    from .report import rows_to_csv
    from .verify import run_verify
    rows = run_verify(cfg)
    out = _out_dir(cfg)
    (out / "report.csv").write_text(rows_to_csv(rows))
    n_fail = sum(1 for r in rows if not r.passed)
    for r in rows:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.check_id}")
    print(f"{len(rows) - n_fail}/{len(rows)} checks passed; report at {out / 'report.csv'}")
    return 0 if n_fail == 0 else 1


def cmd_convergence(cfg, levels: int) -> int:
    from .convergence import run_convergence
    from .report import rows_to_csv
    rows = run_convergence(cfg, levels)
    out = _out_dir(cfg)
    (out / "convergence.csv").write_text(rows_to_csv(rows))
    n_fail = sum(1 for r in rows if not r.passed)
    for r in rows:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.check_id}: {r.lhs:.3e}")
    print(f"{len(rows) - n_fail}/{len(rows)} rows passed; report at {out / 'convergence.csv'}")
    return 0 if n_fail == 0 else 1


def main(argv=None) -> int:
    # SUPPRESS keeps subparser defaults from clobbering values parsed before
    # the subcommand name (flags are accepted in either position)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="key=value config file")
    common.add_argument("--set", action="append", default=argparse.SUPPRESS,
                        help="override a config key (repeatable): --set key=value")
    ap = argparse.ArgumentParser(
        prog="weinstein", parents=[common],
        description="Weinstein harmonic analysis: transforms, wavelets and "
                    "localization operators on discretized grids")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("transform", parents=[common],
                   help="forward/inverse transform of a field")
    sub.add_parser("cwt", parents=[common],
                   help="continuous wavelet transform of the Gaussian")
    sub.add_parser("localize", parents=[common],
                   help="assemble a localization operator and bound report")
    sub.add_parser("verify", parents=[common],
                   help="run the full verification battery")
    pc = sub.add_parser("convergence", parents=[common],
                        help="identity errors under grid doubling")
    pc.add_argument("--levels", type=int, default=2)
    args = ap.parse_args(argv)

    from .config import ConfigError
    try:
        cfg = _load_config(args)
    except (ConfigError, OSError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    try:
        if args.command == "transform":
            return cmd_transform(cfg)
        if args.command == "cwt":
            return cmd_cwt(cfg)
        if args.command == "localize":
            return cmd_localize(cfg)
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "convergence":
            return cmd_convergence(cfg, args.levels)
    except Exception as e:  # noqa: BLE001 - map any runtime failure to exit 3
        print(f"runtime error: {e}", file=sys.stderr)
        return 3
    return 2


if __name__ == "__main__":
    sys.exit(main())
