"""Parameter sweeps producing (zeta, bound) trend curves, plus file emission.

A Scenario pins one channel, state, driving time, and bound; a SweepPlan
varies a single channel parameter (or tau) across a range.  Each sweep step
yields one SweepRecord; step failures (degenerate states, rate singularities,
quadrature breakdown) become rows with status "error" so one bad point cannot
destroy a whole sweep.

Emission is deliberately boring: CSV with a fixed header, JSON with identical
keys, and a hand-written SVG scatter.  No timestamps anywhere, so identical
invocations produce byte-identical files.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .channels import (
    AMPLITUDE_DAMPING,
    DEPHASING,
    NMADChannel,
    NoiseChannel,
    OUNChannel,
    RTNChannel,
)
from .memory import zeta
from .qmat import BlochState
from .qsl import (
    qsl_bures_ad_closed,
    qsl_bures_dl,
    qsl_relative_purity,
    qsl_rp_ad_closed,
    qsl_rp_dephasing_closed,
    qsl_wu_ad_closed,
    qsl_wu_mixed,
    v_qsl_avg,
)

__all__ = [
    "BOUND_KEYS",
    "CSV_HEADER",
    "Scenario",
    "SweepPlan",
    "SweepRecord",
    "run_scenario",
    "run_sweep",
    "emit",
    "read_csv",
    "fig_preset",
]

BOUND_KEYS = (
    "relative_purity",
    "rp_dephasing_closed",
    "rp_ad_closed",
    "fisher_speed",
    "bures_dl",
    "bures_ad_closed",
    "wu_mixed",
    "wu_ad_closed",
)

SWEEPABLE = ("gamma_big", "a", "mu", "tau")

CSV_HEADER = [
    "sweep_param",
    "sweep_value",
    "zeta",
    "bound_kind",
    "bound_value",
    "channel",
    "state",
    "tau",
    "status",
]

_CHANNEL_NAMES = {
    "OUNChannel": "oun",
    "RTNChannel": "rtn",
    "NMADChannel": "nmad",
    "SemigroupChannel": "semigroup",
}


@dataclass(frozen=True)
class Scenario:
    """One fully pinned evaluation: channel, state, driving time, bound."""

    channel: NoiseChannel
    state: BlochState
    tau: float
    bound: str
    grid: int = 2001
    norm: str = "op"
    literal_paper: bool = False

    def __post_init__(self) -> None:
        if not (math.isfinite(self.tau) and self.tau > 0.0):
            raise ValueError(f"tau must be positive and finite, got {self.tau!r}")
        if self.bound not in BOUND_KEYS:
            raise ValueError(f"unknown bound {self.bound!r}; choose from {BOUND_KEYS}")
        if self.norm not in ("op", "hs", "tr"):
            raise ValueError(f"unknown norm {self.norm!r}")


@dataclass(frozen=True)
class SweepPlan:
    """A Scenario plus one varied parameter over a range."""

    scenario: Scenario
    vary: str
    lo: float
    hi: float
    steps: int
    scale: str = "log"

    def __post_init__(self) -> None:
        if self.vary not in SWEEPABLE:
            raise ValueError(f"cannot sweep {self.vary!r}; choose from {SWEEPABLE}")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise ValueError(f"sweep range must satisfy lo < hi, got [{self.lo!r}, {self.hi!r}]")
        if self.steps < 2:
            raise ValueError(f"need at least 2 sweep steps, got {self.steps}")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"unknown scale {self.scale!r}")
        if self.scale == "log" and self.lo <= 0.0:
            raise ValueError("log scale requires a positive lower bound")


@dataclass(frozen=True)
class SweepRecord:
    """One row of a sweep result; fields mirror the CSV columns."""

    sweep_param: str
    sweep_value: Optional[float]
    zeta: Optional[float]
    bound_kind: str
    bound_value: Optional[float]
    channel: str
    state: str
    tau: float
    status: str


def channel_tag(channel: NoiseChannel) -> str:
    name = _CHANNEL_NAMES.get(type(channel).__name__, type(channel).__name__.lower())
    fields = ";".join(
        f"{f.name}={_fmt_value(getattr(channel, f.name))}" for f in dataclasses.fields(channel)
    )
    return f"{name}({fields})"


def state_tag(state: BlochState) -> str:
    return f"rx={_fmt_value(state.rx)};ry={_fmt_value(state.ry)};rz={_fmt_value(state.rz)}"


def _fmt_value(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def resolved_bound_kind(scenario: Scenario) -> str:
    """Final bound-kind label, including the norm suffix where one applies."""
    if scenario.bound in ("bures_dl", "wu_mixed"):
        return f"{scenario.bound}_{scenario.norm}"
    return scenario.bound


def _bound_value(scenario: Scenario) -> float:
    c, s, tau = scenario.channel, scenario.state, scenario.tau
    b = scenario.bound
    if b == "relative_purity":
        return qsl_relative_purity(c, s, tau).value
    if b == "rp_dephasing_closed":
        return qsl_rp_dephasing_closed(c, s, tau).value
    if b == "rp_ad_closed":
        return qsl_rp_ad_closed(c, s, tau, literal_paper=scenario.literal_paper).value
    if b == "fisher_speed":
        return v_qsl_avg(c, s, tau)
    if b == "bures_dl":
        return qsl_bures_dl(c, s, tau, norm=scenario.norm).value
    if b == "bures_ad_closed":
        return qsl_bures_ad_closed(c, s, tau).value
    if b == "wu_mixed":
        return qsl_wu_mixed(c, s, tau, norm=scenario.norm).value
    if b == "wu_ad_closed":
        return qsl_wu_ad_closed(c, s, tau).value
    raise ValueError(f"unknown bound {b!r}")


_STEP_ERRORS = (ValueError, ArithmeticError, RuntimeError)


def run_scenario(
    scenario: Scenario,
    sweep_param: str = "",
    sweep_value: Optional[float] = None,
) -> SweepRecord:
    """Evaluate zeta over [0, tau] plus the requested bound for one scenario.

    Domain failures are re-raised with the scenario attached so a bare error
    message still identifies which point broke.
    """
    kind = resolved_bound_kind(scenario)
    ctx = (
        f"channel={channel_tag(scenario.channel)} state={state_tag(scenario.state)} "
        f"tau={scenario.tau:g} bound={kind}"
    )
    try:
        zeta_value = zeta(scenario.channel, scenario.tau, scenario.grid).zeta
        bound_value = _bound_value(scenario)
    except _STEP_ERRORS as exc:
        raise type(exc)(f"{exc} [{ctx}]") from None
    return SweepRecord(
        sweep_param=sweep_param,
        sweep_value=sweep_value,
        zeta=zeta_value,
        bound_kind=kind,
        bound_value=bound_value,
        channel=channel_tag(scenario.channel),
        state=state_tag(scenario.state),
        tau=scenario.tau,
        status="ok",
    )


def _with_value(plan: SweepPlan, value: float) -> Scenario:
    base = plan.scenario
    if plan.vary == "tau":
        return dataclasses.replace(base, tau=float(value))
    field_names = {f.name for f in dataclasses.fields(base.channel)}
    if plan.vary not in field_names:
        raise ValueError(
            f"channel {type(base.channel).__name__} has no parameter {plan.vary!r}"
        )
    channel = dataclasses.replace(base.channel, **{plan.vary: float(value)})
    return dataclasses.replace(base, channel=channel)


def _sweep_values(plan: SweepPlan) -> np.ndarray:
    if plan.scale == "log":
        return np.geomspace(plan.lo, plan.hi, plan.steps)
    return np.linspace(plan.lo, plan.hi, plan.steps)


def run_sweep(plan: SweepPlan, workers: int = 1) -> list[SweepRecord]:
    """One record per sweep step, in sweep order.

    Step failures become rows with status "error" and empty numeric fields.
    With workers > 1 the steps run on a thread pool; every step is a pure
    function of its value, so parallel output equals serial output exactly.
    """

    def step(value: float) -> SweepRecord:
        try:
            scenario = _with_value(plan, float(value))
            return run_scenario(scenario, plan.vary, float(value))
        except _STEP_ERRORS:
            base = plan.scenario
            tau = float(value) if plan.vary == "tau" else base.tau
            return SweepRecord(
                sweep_param=plan.vary,
                sweep_value=float(value),
                zeta=None,
                bound_kind=resolved_bound_kind(base),
                bound_value=None,
                channel=channel_tag(base.channel),
                state=state_tag(base.state),
                tau=tau,
                status="error",
            )

    values = _sweep_values(plan)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(step, values))
    return [step(v) for v in values]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit(
    records: Sequence[SweepRecord],
    format: str,
    path: str,
    comments: Sequence[str] = (),
) -> str:
    """Write records to path as csv, json, or svg; returns the path."""
    if format == "csv":
        _emit_csv(records, path, comments)
    elif format == "json":
        _emit_json(records, path)
    elif format == "svg":
        _emit_svg(records, path, comments)
    else:
        raise ValueError(f"unknown format {format!r}; use csv, json, or svg")
    return path


def _record_cells(r: SweepRecord) -> list[str]:
    return [
        r.sweep_param,
        _cell(r.sweep_value),
        _cell(r.zeta),
        r.bound_kind,
        _cell(r.bound_value),
        r.channel,
        r.state,
        _cell(r.tau),
        r.status,
    ]


def _emit_csv(records: Sequence[SweepRecord], path: str, comments: Sequence[str]) -> None:
    with open(path, "w", newline="") as f:
        for line in comments:
            f.write(f"# {line}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in records:
            writer.writerow(_record_cells(r))


def _emit_json(records: Sequence[SweepRecord], path: str) -> None:
    payload = []
    for r in records:
        payload.append(
            {
                "sweep_param": r.sweep_param,
                "sweep_value": r.sweep_value,
                "zeta": r.zeta,
                "bound_kind": r.bound_kind,
                "bound_value": r.bound_value,
                "channel": r.channel,
                "state": r.state,
                "tau": r.tau,
                "status": r.status,
            }
        )
    with open(path, "w") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")


def read_csv(path: str) -> list[SweepRecord]:
    """Parse a CSV written by emit back into records, field for field."""
    with open(path, newline="") as f:
        lines = [line for line in f if not line.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader)
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header!r}")
    out = []
    for row in reader:
        if len(row) != len(CSV_HEADER):
            raise ValueError(f"malformed CSV row {row!r}")
        out.append(
            SweepRecord(
                sweep_param=row[0],
                sweep_value=None if row[1] == "" else float(row[1]),
                zeta=None if row[2] == "" else float(row[2]),
                bound_kind=row[3],
                bound_value=None if row[4] == "" else float(row[4]),
                channel=row[5],
                state=row[6],
                tau=float(row[7]),
                status=row[8],
            )
        )
    return out


def _emit_svg(records: Sequence[SweepRecord], path: str, comments: Sequence[str]) -> None:
    pts = [
        (r.zeta, r.bound_value)
        for r in records
        if r.status == "ok" and r.zeta is not None and r.bound_value is not None
    ]
    if not pts:
        raise ValueError("no plottable records; svg needs at least one ok row")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]

    def _range(vals: list[float]) -> tuple[float, float]:
        lo, hi = min(vals), max(vals)
        span = hi - lo
        if span <= 0.0:
            span = max(abs(hi), 1.0) * 0.1
            lo, hi = lo - span / 2.0, hi + span / 2.0
        else:
            lo, hi = lo - 0.05 * span, hi + 0.05 * span
        return lo, hi

    x_lo, x_hi = _range(xs)
    y_lo, y_hi = _range(ys)
    width, height, margin = 640.0, 480.0, 70.0

    def sx(x: float) -> float:
        return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2.0 * margin)

    def sy(y: float) -> float:
        return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2.0 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">'
    ]
    for line in comments:
        parts.append(f"<!-- {line} -->")
    parts.append(f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>')
    axis = 'stroke="black" stroke-width="1"'
    parts.append(
        f'<line x1="{margin:.1f}" y1="{height - margin:.1f}" x2="{width - margin:.1f}" '
        f'y2="{height - margin:.1f}" {axis}/>'
    )
    parts.append(
        f'<line x1="{margin:.1f}" y1="{margin:.1f}" x2="{margin:.1f}" '
        f'y2="{height - margin:.1f}" {axis}/>'
    )
    n_ticks = 5
    for k in range(n_ticks):
        fx = x_lo + (x_hi - x_lo) * k / (n_ticks - 1)
        px = sx(fx)
        parts.append(
            f'<line x1="{px:.1f}" y1="{height - margin:.1f}" x2="{px:.1f}" '
            f'y2="{height - margin + 5:.1f}" {axis}/>'
        )
        parts.append(
            f'<text x="{px:.1f}" y="{height - margin + 20:.1f}" font-size="11" '
            f'text-anchor="middle">{fx:.4g}</text>'
        )
        fy = y_lo + (y_hi - y_lo) * k / (n_ticks - 1)
        py = sy(fy)
        parts.append(
            f'<line x1="{margin - 5:.1f}" y1="{py:.1f}" x2="{margin:.1f}" y2="{py:.1f}" {axis}/>'
        )
        parts.append(
            f'<text x="{margin - 8:.1f}" y="{py + 4:.1f}" font-size="11" '
            f'text-anchor="end">{fy:.4g}</text>'
        )
    parts.append(
        f'<text x="{width / 2:.1f}" y="{height - 15:.1f}" font-size="13" '
        f'text-anchor="middle">zeta</text>'
    )
    parts.append(
        f'<text x="18" y="{height / 2:.1f}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 18 {height / 2:.1f})">{records[0].bound_kind}</text>'
    )
    poly = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
    parts.append(f'<polyline points="{poly}" fill="none" stroke="steelblue" stroke-width="1.5"/>')
    for x, y in pts:
        parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3" fill="steelblue"/>')
    parts.append("</svg>")
    with open(path, "w") as f:
        f.write("\n".join(parts))
        f.write("\n")


_PLUS = BlochState(1.0, 0.0, 0.0)
_EXCITED = BlochState(0.0, 0.0, 1.0)
_MIXED_X = BlochState(0.5, 0.0, 0.0)
_MIXED_Z = BlochState(0.0, 0.0, 0.5)

# Per-preset sweep bundles.  The trend figures never state what varies along
# their curves; these presets move each channel's memory knob (gamma_big for
# the dephasing/damping bandwidth families, a for telegraph noise) through a
# log-spaced range chosen to (a) contain the captions' reference parameters
# and (b) keep the first zero of p outside [0, tau] so zeta stays finite.
_FIG_SWEEPS: dict[int, list[tuple[str, NoiseChannel, BlochState, str, float, float]]] = {
    1: [
        ("oun", OUNChannel(mu=1.0, gamma_big=0.1), _PLUS, "gamma_big", 0.05, 2.0),
        ("rtn", RTNChannel(a=0.6, mu=1.0), _PLUS, "a", 0.1, 1.0),
        ("nmad", NMADChannel(mu=1.0, gamma_big=0.1), _EXCITED, "gamma_big", 0.05, 2.0),
    ],
    2: [
        ("oun", OUNChannel(mu=1.0, gamma_big=0.1), _PLUS, "gamma_big", 0.05, 2.0),
        ("rtn", RTNChannel(a=0.6, mu=1.0), _PLUS, "a", 0.1, 1.0),
        ("nmad", NMADChannel(mu=1.0, gamma_big=0.1), _EXCITED, "gamma_big", 0.05, 2.0),
    ],
    3: [
        ("nmad", NMADChannel(mu=1.0, gamma_big=0.1), _EXCITED, "gamma_big", 0.02, 0.18),
    ],
    4: [
        ("oun", OUNChannel(mu=1.0, gamma_big=0.1), _MIXED_X, "gamma_big", 0.05, 2.0),
        ("rtn", RTNChannel(a=0.6, mu=1.0), _MIXED_X, "a", 0.1, 1.0),
        ("nmad", NMADChannel(mu=1.0, gamma_big=0.1), _MIXED_Z, "gamma_big", 0.05, 2.0),
    ],
}

_FIG_BOUND = {1: "relative_purity", 2: "fisher_speed", 3: "bures_ad_closed", 4: "relative_purity"}
_FIG_TAU = {1: 1.0, 2: 1.0, 3: 2.0 * math.pi, 4: 1.0}
FIG_STEPS = 40


def fig_preset(fig_id: int, out_dir: str, workers: int = 1) -> list[str]:
    """Run one figure preset and write CSV+SVG per channel; returns the paths."""
    if fig_id not in _FIG_SWEEPS:
        raise ValueError(f"unknown figure preset {fig_id!r}; choose 1-4")
    os.makedirs(out_dir, exist_ok=True)
    tau = _FIG_TAU[fig_id]
    bound = _FIG_BOUND[fig_id]
    written = []
    for label, channel, state, vary, lo, hi in _FIG_SWEEPS[fig_id]:
        scenario = Scenario(channel=channel, state=state, tau=tau, bound=bound)
        plan = SweepPlan(scenario=scenario, vary=vary, lo=lo, hi=hi, steps=FIG_STEPS, scale="log")
        records = run_sweep(plan, workers=workers)
        comments = [
            f"figure preset {fig_id}, channel {label}",
            f"swept memory parameter: {vary} over [{_fmt_value(lo)}, {_fmt_value(hi)}] "
            f"(units of mu), log scale, {FIG_STEPS} steps; the trend curves do not state "
            "what varies, so the choice is recorded here",
            f"fixed: tau={_fmt_value(tau)}, bound={resolved_bound_kind(scenario)}, "
            f"state {state_tag(state)}",
        ]
        if fig_id == 3:
            comments.append("range keeps the first zero of p outside [0, tau]")
        if fig_id == 4:
            comments.append("initial state purity 0.625")
        base = os.path.join(out_dir, f"fig{fig_id}_{label}")
        emit(records, "csv", base + ".csv", comments)
        emit(records, "svg", base + ".svg", comments)
        written.extend([base + ".csv", base + ".svg"])
    return written
