"""Command-line interface: growth tables, single spectra, and bound sweeps.

Exit codes: 0 success, 2 configuration error, 3 resource cap exceeded,
4 disconnected interior set, 5 check failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import cayley, groups, harness, solver, subgraph

EXIT_CONFIG = 2
EXIT_CAP = 3
EXIT_DISCONNECTED = 4
EXIT_CHECK_FAILED = 5

ALL_CHECKS = ("han_hua", "decay", "main_bound", "spectrum")


@dataclass
class RunConfig:
    group: str = "Z^2"
    family: str = "ball"
    n_min: int = 2
    n_max: int = 10
    k_count: int = 5
    out_dir: str = "out"
    ball_cap: int = cayley.DEFAULT_BALL_CAP
    checks: tuple[str, ...] = ALL_CHECKS
    omega_file: str | None = None

    def validate(self) -> None:
        if self.n_min > self.n_max:
            raise ValueError(f"n_min={self.n_min} exceeds n_max={self.n_max}")
        if self.k_count < 1:
            raise ValueError("K must be >= 1")
        for c in self.checks:
            if c not in ALL_CHECKS:
                raise ValueError(f"unknown check {c!r} (valid: {', '.join(ALL_CHECKS)})")

    def to_text(self) -> str:
        lines = [
            f"group={self.group}",
            f"family={self.family}",
            f"n_min={self.n_min}",
            f"n_max={self.n_max}",
            f"K={self.k_count}",
            f"out={self.out_dir}",
            f"ball_cap={self.ball_cap}",
            f"checks={','.join(self.checks)}",
        ]
        if self.omega_file:
            lines.append(f"omega_file={self.omega_file}")
        return "\n".join(lines) + "\n"


_CONFIG_KEYS = {
    "group": ("group", str),
    "family": ("family", str),
    "n_min": ("n_min", int),
    "n_max": ("n_max", int),
    "K": ("k_count", int),
    "out": ("out_dir", str),
    "ball_cap": ("ball_cap", int),
    "omega_file": ("omega_file", str),
}


def parse_config_file(text: str) -> dict:
    values: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key=value, got {line!r}")
        key, _, raw = line.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key == "checks":
            values["checks"] = tuple(c for c in raw.split(",") if c)
            continue
        if key not in _CONFIG_KEYS:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        attr, conv = _CONFIG_KEYS[key]
        values[attr] = conv(raw)
    return values


def build_config(args: argparse.Namespace) -> RunConfig:
    """Config file values first, command-line flags override."""
    values: dict = {}
    if getattr(args, "config", None):
        values.update(parse_config_file(Path(args.config).read_text(encoding="utf-8")))
    flag_map = {
        "group": "group",
        "family": "family",
        "n_min": "n_min",
        "n_max": "n_max",
        "K": "k_count",
        "out": "out_dir",
        "ball_cap": "ball_cap",
        "omega_file": "omega_file",
    }
    for flag, attr in flag_map.items():
        val = getattr(args, flag, None)
        if val is not None:
            values[attr] = val
    if getattr(args, "checks", None) is not None:
        values["checks"] = tuple(c for c in args.checks.split(",") if c)
    cfg = RunConfig(**values)
    cfg.validate()
    groups.parse_group(cfg.group)  # fail early on a bad group string
    return cfg


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", help='group string, e.g. "Z^2", "H3", "Z^1 x H3"')
    p.add_argument("--family", help="ball, box, punctured_ball or annulus")
    p.add_argument("--n-min", dest="n_min", type=int)
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("-K", dest="K", type=int, help="spectrum prefix length")
    p.add_argument("--out", help="output directory")
    p.add_argument("--ball-cap", dest="ball_cap", type=int)
    p.add_argument("--checks", help="comma-separated subset of: " + ",".join(ALL_CHECKS))
    p.add_argument("--config", help="key=value config file; flags override")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steklov",
        description="Steklov spectra of subgraphs of polynomial-growth Cayley graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_growth = sub.add_parser("growth", help="growth table V(n) and estimated order")
    _add_common_flags(p_growth)
    p_spec = sub.add_parser("spectrum", help="Steklov spectrum of one subgraph")
    _add_common_flags(p_spec)
    p_spec.add_argument("--omega-file", dest="omega_file", help="file of interior vertex coordinates")
    p_sweep = sub.add_parser("sweep", help="family sweep with bound checks")
    _add_common_flags(p_sweep)
    return parser


def cmd_growth(cfg: RunConfig) -> int:
    spec = groups.parse_group(cfg.group)
    table = cayley.growth_table(spec, cfg.n_max, ball_cap=cfg.ball_cap)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "growth.csv").write_text(table.to_csv(), encoding="utf-8")
    n_min_fit = max(cfg.n_min, 2)
    slope = cayley.estimate_growth_order(table, n_min=n_min_fit)
    print(f"group {spec.describe()}: V({cfg.n_max}) = {table.counts[-1]}, "
          f"estimated growth order {slope:.3f} (fit over n >= {n_min_fit})")
    return 0


def cmd_spectrum(cfg: RunConfig) -> int:
    spec = groups.parse_group(cfg.group)
    if cfg.omega_file:
        omega = subgraph.parse_omega_file(Path(cfg.omega_file).read_text(encoding="utf-8"))
    else:
        family = subgraph.parse_family(cfg.family)
        omega = subgraph.instantiate_family(spec, family, cfg.n_max)
    sub = subgraph.induce(spec, omega)
    spectrum = solver.spectrum_of(sub, with_vectors=False)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "spectrum.csv").write_text(solver.spectrum_to_csv(spectrum), encoding="utf-8")
    shown = list(spectrum.eigenvalues[: min(cfg.k_count, sub.n_boundary - 1) + 1])
    zero_tol = 1e-9 * max(1.0, float(spectrum.eigenvalues[-1]))
    shown = [0.0 if abs(v) <= zero_tol else v for v in shown]
    print(f"|Omega|={sub.n_interior} |B|={sub.n_boundary}")
    print("sigma:", ", ".join(f"{v:.6g}" for v in shown))
    return 0


def cmd_sweep(cfg: RunConfig) -> int:
    spec = groups.parse_group(cfg.group)
    d = spec.growth_order
    is_lattice = all(b.kind == groups.LATTICE for b in spec.blocks)
    if "han_hua" in cfg.checks and not is_lattice:
        raise harness.CheckScopeError(
            f"the Han-Hua check applies to integer lattices only, not {spec.describe()}"
        )
    family = subgraph.parse_family(cfg.family)
    records = harness.run_sweep(spec, family, range(cfg.n_min, cfg.n_max + 1), cfg.k_count)

    checks: list[harness.CheckResult] = []
    if "spectrum" in cfg.checks:
        checks.extend(harness.check_spectrum_invariants(records))
    if "han_hua" in cfg.checks:
        consts = harness.HanHuaConstants.for_order(d)
        checks.extend(harness.check_han_hua(records, consts, spec))
    if "decay" in cfg.checks:
        checks.extend(harness.check_decay(records, d))
    if "main_bound" in cfg.checks:
        checks.extend(harness.check_main_bound(records))

    written = harness.emit_report(cfg.out_dir, records, checks, d)
    (Path(cfg.out_dir) / "config.txt").write_text(cfg.to_text(), encoding="utf-8")
    for path in written:
        print(f"wrote {path}")
    for c in checks:
        k_part = "" if c.k is None else f" k={c.k}"
        print(f"{'PASS' if c.verdict else 'FAIL'} {c.check}{k_part}: {c.value:.6g} {c.detail}")
    if any(not c.verdict and c.unconditional for c in checks):
        return EXIT_CHECK_FAILED
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
    except (ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "growth":
            return cmd_growth(cfg)
        if args.command == "spectrum":
            return cmd_spectrum(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        raise AssertionError(args.command)
    except harness.CheckScopeError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except cayley.BallCapExceededError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except subgraph.DisconnectedOmegaError as exc:
        print(f"disconnected omega: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    except RuntimeError as exc:
        cause = exc.__cause__
        if isinstance(cause, cayley.BallCapExceededError):
            print(f"resource cap: {exc}: {cause}", file=sys.stderr)
            return EXIT_CAP
        if isinstance(cause, subgraph.DisconnectedOmegaError):
            print(f"disconnected omega: {exc}: {cause}", file=sys.stderr)
            return EXIT_DISCONNECTED
        raise


if __name__ == "__main__":
    sys.exit(main())
