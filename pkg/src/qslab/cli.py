"""Command line front end: evolve, zeta, qsl, sweep, and fig subcommands.

Rate-like flags (--gamma-big, --a) are given in units of mu, with --mu
defaulting to 1, so `--channel oun --gamma-big 0.1` means gamma_big = 0.1*mu.
Times (--t, --horizon, --tau) are absolute.  A JSON file passed via --config
supplies defaults for any flag not typed on the command line.

Exit codes: 0 success, 1 validation or domain error, 2 sweep finished with
error rows.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .channels import NMADChannel, NoiseChannel, OUNChannel, RTNChannel, decoherence_p, evolve
from .memory import zeta
from .qmat import BlochState
from .sweep import (
    BOUND_KEYS,
    Scenario,
    SWEEPABLE,
    SweepPlan,
    emit,
    fig_preset,
    read_csv,
    run_scenario,
    run_sweep,
)

_STATE_ALIASES = {
    "plus": (1.0, 0.0, 0.0),
    "excited": (0.0, 0.0, 1.0),
    "ground": (0.0, 0.0, -1.0),
}


def parse_state(text: str) -> BlochState:
    """Parse a state flag: an alias, mixed-x=r / mixed-z=r, or rx=..,ry=..,rz=.."""
    t = text.strip()
    if t in _STATE_ALIASES:
        return BlochState(*_STATE_ALIASES[t])
    if t.startswith("mixed-x="):
        return BlochState(float(t[len("mixed-x="):]), 0.0, 0.0)
    if t.startswith("mixed-z="):
        return BlochState(0.0, 0.0, float(t[len("mixed-z="):]))
    comps = {"rx": 0.0, "ry": 0.0, "rz": 0.0}
    seen: set[str] = set()
    for part in t.split(","):
        if "=" not in part:
            raise ValueError(f"bad state component {part!r}; expected rx=..,ry=..,rz=..")
        key, value = part.split("=", 1)
        key = key.strip()
        if key not in comps:
            raise ValueError(f"unknown state component {key!r}")
        if key in seen:
            raise ValueError(f"state component {key!r} given twice")
        comps[key] = float(value)
        seen.add(key)
    return BlochState(comps["rx"], comps["ry"], comps["rz"])


def build_channel(args: argparse.Namespace) -> NoiseChannel:
    mu = float(args.mu)
    if mu <= 0.0:
        raise ValueError(f"mu must be positive, got {mu}")
    name = args.channel
    if name == "oun":
        if args.gamma_big is None:
            raise ValueError("channel oun requires --gamma-big")
        return OUNChannel(mu=mu, gamma_big=float(args.gamma_big) * mu)
    if name == "rtn":
        if args.a is None:
            raise ValueError("channel rtn requires --a")
        return RTNChannel(a=float(args.a) * mu, mu=mu)
    if name == "nmad":
        if args.gamma_big is None:
            raise ValueError("channel nmad requires --gamma-big")
        return NMADChannel(mu=mu, gamma_big=float(args.gamma_big) * mu)
    raise ValueError(f"unknown channel {name!r}")


def _add_channel_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--channel", choices=("oun", "rtn", "nmad"), required=True)
    p.add_argument("--mu", type=float, default=1.0, help="base rate, default 1")
    p.add_argument("--gamma-big", type=float, default=None, dest="gamma_big",
                   help="oun/nmad bandwidth parameter, in units of mu")
    p.add_argument("--a", type=float, default=None,
                   help="rtn coupling parameter, in units of mu")
    p.add_argument("--config", default=None,
                   help="JSON file of flag defaults; typed flags win")


def _add_state_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--state", default="plus",
                   help="plus|excited|ground|mixed-x=R|mixed-z=R|rx=..,ry=..,rz=..")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qslab",
                                     description="single-qubit memory and speed-limit toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="evolve a state to time t and print p, rate, rho")
    _add_channel_flags(p)
    _add_state_flag(p)
    p.add_argument("--t", type=float, required=True, help="evolution time, absolute")

    p = sub.add_parser("zeta", help="memory measure over [0, horizon]")
    _add_channel_flags(p)
    p.add_argument("--horizon", type=float, required=True, help="averaging window, absolute")
    p.add_argument("--grid", type=int, default=2001)

    p = sub.add_parser("qsl", help="one speed-limit bound for a pinned scenario")
    _add_channel_flags(p)
    _add_state_flag(p)
    p.add_argument("--tau", type=float, required=True, help="actual driving time, absolute")
    p.add_argument("--bound", choices=BOUND_KEYS, default="relative_purity")
    p.add_argument("--norm", choices=("op", "hs", "tr"), default="op")
    p.add_argument("--literal-paper", action="store_true", dest="literal_paper",
                   help="use the uncorrected printed closed form where one exists")

    p = sub.add_parser("sweep", help="sweep one parameter, writing (zeta, bound) rows")
    _add_channel_flags(p)
    _add_state_flag(p)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--bound", choices=BOUND_KEYS, default="relative_purity")
    p.add_argument("--norm", choices=("op", "hs", "tr"), default="op")
    p.add_argument("--literal-paper", action="store_true", dest="literal_paper")
    p.add_argument("--grid", type=int, default=2001)
    p.add_argument("--vary", choices=SWEEPABLE, required=True)
    p.add_argument("--lo", type=float, required=True,
                   help="range start; units of mu for gamma_big/a, absolute for mu/tau")
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--steps", type=int, default=40)
    p.add_argument("--scale", choices=("linear", "log"), default="log")
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.add_argument("--out", required=True, help="output file path")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("fig", help="figure-reproduction preset sweeps")
    p.add_argument("--id", type=int, choices=(1, 2, 3, 4), required=True)
    p.add_argument("--out-dir", default=".", dest="out_dir")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--config", default=None)

    return parser


def _merge_config(args: argparse.Namespace, argv: list[str]) -> None:
    if getattr(args, "config", None) is None:
        return
    with open(args.config) as f:
        cfg = json.load(f)
    if not isinstance(cfg, dict):
        raise ValueError("config must be a JSON object of flag values")
    typed = set()
    for token in argv:
        if token.startswith("--"):
            typed.add(token[2:].split("=", 1)[0])
    for key, value in cfg.items():
        flag = key.replace("_", "-")
        attr = key.replace("-", "_")
        if attr in ("command", "config") or not hasattr(args, attr):
            raise ValueError(f"unknown config key {key!r}")
        if flag in typed:
            continue
        setattr(args, attr, value)


def _fmt(x: float) -> str:
    return repr(float(x))


def _cmd_evolve(args: argparse.Namespace) -> int:
    channel = build_channel(args)
    state = parse_state(str(args.state))
    t = float(args.t)
    rho = evolve(channel, state, t)
    print(f"p = {_fmt(decoherence_p(channel, t))}")
    try:
        print(f"rate = {_fmt(channel.rate(t))}")
    except ArithmeticError:
        print("rate = singular (decoherence function is zero here)")
    cells = ", ".join(
        "[" + ", ".join(repr(complex(rho[i, j])) for j in range(2)) + "]" for i in range(2)
    )
    print(f"rho = [{cells}]")
    return 0


def _cmd_zeta(args: argparse.Namespace) -> int:
    channel = build_channel(args)
    result = zeta(channel, float(args.horizon), int(args.grid))
    print(f"zeta = {_fmt(result.zeta)}")
    print(f"gamma_star = {_fmt(result.gamma_star)}")
    return 0


def _cmd_qsl(args: argparse.Namespace) -> int:
    scenario = Scenario(
        channel=build_channel(args),
        state=parse_state(str(args.state)),
        tau=float(args.tau),
        bound=args.bound,
        norm=args.norm,
        literal_paper=bool(args.literal_paper),
    )
    record = run_scenario(scenario)
    print(f"kind = {record.bound_kind}")
    print(f"value = {_fmt(record.bound_value)}")
    print(f"zeta = {_fmt(record.zeta)}")
    print(f"tau = {_fmt(record.tau)}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    mu = float(args.mu)
    vary = args.vary
    lo, hi = float(args.lo), float(args.hi)
    if vary in ("gamma_big", "a"):
        lo, hi = lo * mu, hi * mu
        # seed the varied field so the base channel constructs; every sweep
        # step replaces it anyway
        if vary == "gamma_big" and args.gamma_big is None:
            args.gamma_big = float(args.lo)
        if vary == "a" and args.a is None:
            args.a = float(args.lo)
    scenario = Scenario(
        channel=build_channel(args),
        state=parse_state(str(args.state)),
        tau=float(args.tau),
        bound=args.bound,
        grid=int(args.grid),
        norm=args.norm,
        literal_paper=bool(args.literal_paper),
    )
    plan = SweepPlan(scenario=scenario, vary=vary, lo=lo, hi=hi,
                     steps=int(args.steps), scale=args.scale)
    records = run_sweep(plan, workers=int(args.workers))
    emit(records, args.format, args.out)
    n_err = sum(1 for r in records if r.status == "error")
    print(f"wrote {args.out}: {len(records)} rows, {n_err} error rows")
    return 2 if n_err else 0


def _cmd_fig(args: argparse.Namespace) -> int:
    paths = fig_preset(int(args.id), args.out_dir, workers=int(args.workers))
    n_err = 0
    for path in paths:
        print(f"wrote {path}")
        if path.endswith(".csv"):
            n_err += sum(1 for r in read_csv(path) if r.status == "error")
    if n_err:
        print(f"{n_err} error rows", file=sys.stderr)
        return 2
    return 0


_HANDLERS = {
    "evolve": _cmd_evolve,
    "zeta": _cmd_zeta,
    "qsl": _cmd_qsl,
    "sweep": _cmd_sweep,
    "fig": _cmd_fig,
}


def main(argv: Optional[list[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        _merge_config(args, list(argv))
        return _HANDLERS[args.command](args)
    except (ValueError, ArithmeticError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
