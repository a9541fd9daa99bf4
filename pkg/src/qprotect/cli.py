"""Command-line interface.

Subcommands: ``verify`` (cross-check battery), ``sweep-time``, ``sweep-w``
and ``frontier`` (CSV emitters), and ``protect`` (single protection point,
printed in full). Angle arguments accept multiples of pi as a ``pi`` suffix,
e.g. ``--theta 0.4225pi``. A JSON config file can supply any sweep field;
explicit flags override it. Exit codes: 0 success, 1 a verification check
failed, 2 bad configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import channels, circuit, experiments, qmat
from .channels import PureQubit, reversal_strength
from .errors import ConfigError, QProtectError, UnreachableError


def parse_angle(text: str) -> float:
    """Parse a float, optionally in units of pi ('0.4225pi', 'pi')."""
    s = str(text).strip().lower()
    try:
        if s.endswith("pi"):
            head = s[:-2].strip()
            return math.pi * (float(head) if head else 1.0)
        return float(s)
    except ValueError as exc:
        raise ConfigError(f"cannot parse angle {text!r}") from exc


def parse_float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in str(text).split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse number list {text!r}") from exc


def parse_angle_list(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [parse_angle(v) if isinstance(v, str) else float(v) for v in text]
    return [parse_angle(tok) for tok in str(text).split(",") if tok.strip()]


def build_config(args, mode: str) -> experiments.SweepConfig:
    cfg = experiments.SweepConfig(mode=mode)
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {args.config}: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError("config file must hold a JSON object")
        for key in doc:
            if key == "gamma":
                cfg.gamma = float(doc[key])
            elif key == "t_list":
                cfg.t_list = [float(v) for v in doc[key]]
            elif key == "w_list":
                cfg.w_list = [float(v) for v in doc[key]]
            elif key == "theta_grid":
                cfg.theta_grid = parse_angle_list(doc[key])
            elif key == "phi":
                cfg.phi = parse_angle(doc[key]) if isinstance(doc[key], str) else float(doc[key])
            elif key == "target_fidelity":
                cfg.target_fidelity = float(doc[key])
            elif key == "out":
                cfg.out = str(doc[key])
            elif key == "mode":
                pass  # the subcommand decides the mode
            else:
                raise ConfigError(f"unknown config field {key!r}")
    if getattr(args, "gamma", None) is not None:
        cfg.gamma = args.gamma
    if getattr(args, "t", None) is not None:
        cfg.t_list = parse_float_list(args.t)
    if getattr(args, "w", None) is not None:
        cfg.w_list = parse_float_list(args.w)
    if getattr(args, "theta", None) is not None:
        cfg.theta_grid = parse_angle_list(args.theta)
    if getattr(args, "phi", None) is not None:
        cfg.phi = parse_angle(args.phi)
    if getattr(args, "target_f", None) is not None:
        cfg.target_fidelity = args.target_f
    if getattr(args, "out", None) is not None:
        cfg.out = args.out
    cfg.validate()  # mode-dependent grid defaults are resolved by the runner
    return cfg


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _matrix_lines(label: str, mat: np.ndarray) -> list[str]:
    body = np.array2string(mat, precision=6, suppress_small=True, separator="  ")
    return [f"{label}:"] + ["  " + ln for ln in body.splitlines()]


def cmd_verify(args) -> int:
    report = experiments.verify_all()
    for line in report.lines():
        print(line)
    return 0 if report.all_passed else 1


def cmd_sweep_time(args) -> int:
    cfg = build_config(args, "time-sweep")
    _emit(experiments.sweep_csv(experiments.sweep_time(cfg)), cfg.out)
    return 0


def cmd_sweep_w(args) -> int:
    cfg = build_config(args, "w-sweep")
    _emit(experiments.sweep_csv(experiments.sweep_w(cfg)), cfg.out)
    return 0


def cmd_frontier(args) -> int:
    cfg = build_config(args, "frontier")
    _emit(experiments.frontier_csv(experiments.frontier(cfg)), cfg.out)
    return 0


def cmd_protect(args) -> int:
    theta = parse_angle(args.theta)
    phi = parse_angle(args.phi) if args.phi is not None else math.pi / 2
    gamma = args.gamma if args.gamma is not None else 0.5
    t = float(args.t) if args.t is not None else 1.0
    w = float(args.w) if args.w is not None else 0.1
    p = 1.0 - math.exp(-gamma * t)
    wr = reversal_strength(w, p)

    state = PureQubit(theta, phi)
    rho0 = state.rho()
    rad = channels.rho_ad(rho0, p)
    rho_prot, n_theory = channels.rho_protect_analytic(rho0, w, p, wr)
    sig = circuit.run_circuit(circuit.build_protection_circuit(w, p, wr), rho0)
    rho_sim, n_sim = circuit.extract_protected(sig)

    lines = [
        f"theta = {theta:.9g}  phi = {phi:.9g}  gamma = {gamma:.9g}  t = {t:.9g}",
        f"p = {p:.9g}  w = {w:.9g}  wr = {wr:.9g}",
    ]
    lines += _matrix_lines("input state", rho0.mat)
    lines += _matrix_lines("damped state (no protection)", rad.mat)
    lines += _matrix_lines("protected state (closed form)", rho_prot.mat)
    lines += _matrix_lines("protected state (circuit)", rho_sim.mat)
    lines += [
        f"F_ad = {qmat.uhlmann_fidelity(rho0, rad):.9g}",
        f"F_protect (closed form) = {qmat.uhlmann_fidelity(rho0, rho_prot):.9g}",
        f"F_protect (circuit)     = {qmat.uhlmann_fidelity(rho0, rho_sim):.9g}",
        f"N (closed form) = {n_theory:.9g}",
        f"N (circuit)     = {n_sim:.9g}",
    ]
    print("\n".join(lines))
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qprotect",
        description="Weak-measurement state protection: sweeps, frontier and cross-checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("verify", help="run the full cross-check battery")

    def add_sweep_flags(p, with_target=False):
        p.add_argument("--gamma", type=float, help="damping rate (1/s)")
        p.add_argument("--t", help="time or comma-separated list of times (s)")
        p.add_argument("--w", help="WM strength or comma-separated list")
        p.add_argument("--theta", help="polar angle(s); accepts 'pi' units, e.g. 0.4225pi")
        p.add_argument("--phi", help="relative phase; accepts 'pi' units")
        if with_target:
            p.add_argument("--target-f", dest="target_f", type=float,
                           help="fidelity target for the frontier")
        p.add_argument("--out", help="output CSV path (default: stdout)")
        p.add_argument("--config", help="JSON file with sweep fields; flags override")

    add_sweep_flags(sub.add_parser("sweep-time", help="fidelity vs time at fixed w"))
    add_sweep_flags(sub.add_parser("sweep-w", help="fidelity and N vs WM strength"))
    add_sweep_flags(sub.add_parser("frontier", help="minimal w reaching the fidelity target"),
                    with_target=True)

    p = sub.add_parser("protect", help="single protection point, printed in full")
    p.add_argument("--theta", required=True, help="polar angle; accepts 'pi' units")
    p.add_argument("--phi", help="relative phase (default pi/2)")
    p.add_argument("--gamma", type=float, help="damping rate (default 0.5)")
    p.add_argument("--t", help="damping time (default 1.0)")
    p.add_argument("--w", help="WM strength (default 0.1)")
    return parser


COMMANDS = {
    "verify": cmd_verify,
    "sweep-time": cmd_sweep_time,
    "sweep-w": cmd_sweep_w,
    "frontier": cmd_frontier,
    "protect": cmd_protect,
}


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, UnreachableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QProtectError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
