"""Top-level acceptance checks, one per numbered criterion.

Each test prints a single `ACCEPTANCE n: PASS|FAIL - detail` line (visible
with pytest -s) and then asserts.  Criteria 3 and 4 contain sub-checks that
the implemented formulas cannot meet; they are asserted as stated anyway and
fail with the measured numbers on display.
"""

import dataclasses
import math

import numpy as np
from scipy import stats

from qslab import (
    AMPLITUDE_DAMPING,
    DEPHASING,
    BlochState,
    DegenerateStateError,
    NMADChannel,
    OUNChannel,
    QuadratureSpec,
    SemigroupChannel,
    bures_angle,
    bures_fidelity,
    choi_distance_factor,
    evolve,
    fig_preset,
    fisher_q,
    integrate,
    qsl_bures_ad_closed,
    qsl_bures_dl,
    qsl_relative_purity,
    qsl_rp_ad_closed,
    qsl_rp_dephasing_closed,
    qsl_wu_ad_closed,
    qsl_wu_mixed,
    read_csv,
    v_qsl_avg,
    zeta,
)
from qslab.cli import main
from qslab.sweep import _FIG_SWEEPS, _FIG_TAU

import oracles

PLUS = BlochState(1.0, 0.0, 0.0)
EXCITED = BlochState(0.0, 0.0, 1.0)


def _report(n: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"acceptance {n}: {detail}"


def test_acceptance_1_channel_consistency():
    # p(t) must equal exp(-k int gamma) with k = 2 (dephasing), 1/2 (damping)
    rng = np.random.default_rng(29)
    seg = QuadratureSpec(abs_tol=1e-12)
    worst = 0.0
    for family in oracles.FAMILIES:
        for _ in range(20):
            channel = oracles.random_channel(rng, family)
            k = 2.0 if channel.kind == DEPHASING else 0.5
            accum = 0.0
            prev = 0.0
            for t in np.linspace(0.0, 2.0, 201)[1:]:
                accum += integrate(channel.rate, prev, float(t), seg)
                prev = float(t)
                worst = max(worst, abs(channel.p(prev) - math.exp(-k * accum)))
    _report(
        1,
        worst <= 1e-8,
        f"max |p - exp(-k int gamma)| = {worst:.3e} over 60 draws x 200 grid points (tol 1e-8)",
    )


def _planar_state(rng):
    while True:
        s = oracles.random_bloch(rng, 0.3, 0.95)
        if s.rx * s.rx + s.ry * s.ry >= 1e-3:
            return s


def _cone_state(rng, r_lo, r_hi, pad):
    r = rng.uniform(r_lo, r_hi)
    th = rng.uniform(pad, math.pi - pad)
    ph = rng.uniform(0.0, 2.0 * math.pi)
    return BlochState(
        r * math.sin(th) * math.cos(ph),
        r * math.sin(th) * math.sin(ph),
        r * math.cos(th),
    )


def test_acceptance_2_closed_vs_generic():
    rng = np.random.default_rng(17)
    worst = 0.0

    def track(closed, generic):
        nonlocal worst
        worst = max(worst, abs(closed - generic) / max(abs(generic), 1e-12))

    for i in range(200):
        channel = oracles.random_channel(rng, "oun" if i % 2 == 0 else "rtn")
        state = _planar_state(rng)
        tau = float(rng.uniform(0.4, 2.0))
        track(
            qsl_rp_dephasing_closed(channel, state, tau).value,
            qsl_relative_purity(channel, state, tau).value,
        )

        channel = oracles.random_channel(rng, "nmad")
        s = oracles.random_bloch(rng, 0.2, 0.9)
        state = BlochState(s.rx, s.ry, abs(s.rz))
        tau = float(rng.uniform(0.4, 2.0))
        track(
            qsl_rp_ad_closed(channel, state, tau).value,
            qsl_relative_purity(channel, state, tau).value,
        )

        channel = oracles.random_channel(rng, "nmad")
        state = _cone_state(rng, 0.2, 0.9, 0.3)
        tau = float(rng.uniform(0.4, 2.0))
        track(
            qsl_bures_ad_closed(channel, state, tau).value,
            qsl_bures_dl(channel, state, tau, norm="op").value,
        )

        channel = oracles.random_channel(rng, "nmad")
        state = _cone_state(rng, 0.2, 0.9, 0.3)
        tau = float(rng.uniform(0.4, 2.0))
        track(
            qsl_wu_ad_closed(channel, state, tau).value,
            qsl_wu_mixed(channel, state, tau, norm="op").value,
        )
    _report(
        2,
        worst <= 1e-6,
        f"max relative closed/generic deviation {worst:.3e} over 4 x 200 scenarios (tol 1e-6)",
    )


def test_acceptance_3_geodesic_saturation():
    fast = qsl_bures_ad_closed(NMADChannel(mu=1.0, gamma_big=5.0), EXCITED, 3.0).value
    fast_dev = abs(fast - 3.0)
    tau = 2.0 * math.pi
    slow = qsl_bures_ad_closed(NMADChannel(mu=1.0, gamma_big=0.1), EXCITED, tau).value
    shortfall = (tau - slow) / tau
    ok = fast_dev <= 1e-6 and slow < tau and shortfall >= 0.01
    _report(
        3,
        ok,
        f"monotone regime |bound - tau| = {fast_dev:.2e} (tol 1e-6); oscillatory regime "
        f"shortfall {shortfall:.3e} of tau (required >= 1e-2)",
    )


def test_acceptance_4_figure_trends(tmp_path):
    details = []
    ok = True
    for fig_id, want_positive in ((1, False), (2, True), (3, False), (4, False)):
        paths = fig_preset(fig_id, str(tmp_path / f"fig{fig_id}"))
        worst = None
        for path in (p for p in paths if p.endswith(".csv")):
            records = [r for r in read_csv(path) if r.status == "ok"]
            rho = float(
                stats.spearmanr(
                    [r.zeta for r in records], [r.bound_value for r in records]
                ).statistic
            )
            if worst is None:
                worst = rho
            else:
                worst = min(worst, rho) if want_positive else max(worst, rho)
        if want_positive:
            fig_ok = worst >= 0.9
            details.append(f"fig{fig_id} min spearman {worst:+.4f} (need >= +0.9)")
        else:
            fig_ok = worst <= -0.9
            details.append(f"fig{fig_id} max spearman {worst:+.4f} (need <= -0.9)")
        ok = ok and fig_ok
    _report(4, ok, "; ".join(details))


def test_acceptance_5_memory_fixed_points():
    semi = max(
        zeta(SemigroupChannel(kind=kind, rate0=0.3), 2.0).zeta
        for kind in (DEPHASING, AMPLITUDE_DAMPING)
    )
    fast = zeta(OUNChannel(mu=1.0, gamma_big=1000.0), 1.0).zeta
    rng = np.random.default_rng(41)
    med_vs_gold = 0.0
    for i in range(50):
        channel = oracles.random_channel(rng, oracles.FAMILIES[i % 3])
        horizon = float(rng.uniform(0.5, 3.0))
        med = zeta(channel, horizon, method="median").zeta
        gold = zeta(channel, horizon, method="golden").zeta
        med_vs_gold = max(med_vs_gold, abs(med - gold))
    ok = semi <= 1e-12 and fast <= 1e-3 and med_vs_gold <= 1e-8
    _report(
        5,
        ok,
        f"semigroup zeta {semi:.2e} (tol 1e-12); fast-bandwidth zeta {fast:.4e} (tol 1e-3); "
        f"max |median - golden| {med_vs_gold:.2e} over 50 draws (tol 1e-8)",
    )


def test_acceptance_6_norm_ordering():
    rng = np.random.default_rng(17)
    slack = math.inf
    count = 0

    def check(channel, state, tau):
        nonlocal slack, count
        for bound in (qsl_bures_dl, qsl_wu_mixed):
            try:
                op = bound(channel, state, tau, norm="op").value
                hs = bound(channel, state, tau, norm="hs").value
                tr = bound(channel, state, tau, norm="tr").value
            except DegenerateStateError:
                return
            slack = min(slack, op - hs, hs - tr)
            count += 1

    for i in range(50):
        check(
            oracles.random_channel(rng, oracles.FAMILIES[i % 3]),
            oracles.random_bloch(rng, 0.2, 0.95),
            float(rng.uniform(0.4, 2.0)),
        )
    for fig_id, entries in _FIG_SWEEPS.items():
        tau = _FIG_TAU[fig_id]
        for _, channel, state, vary, lo, hi in entries:
            for value in np.geomspace(lo, hi, 5):
                check(dataclasses.replace(channel, **{vary: float(value)}), state, tau)
    ok = count > 0 and slack >= 0.0
    _report(
        6,
        ok,
        f"min op>=hs>=tr ordering slack {slack:.2e} across {count} scenario evaluations (need >= 0)",
    )


def test_acceptance_7_fisher_expansion_and_speed_integral():
    dts = (1e-3, 5e-4, 2.5e-4)
    rng = np.random.default_rng(3)
    ratio_lo, ratio_hi = math.inf, 0.0
    excess = -math.inf
    for trial in range(50):
        channel, state, t = oracles.fisher_scenario(rng, trial)
        fq = fisher_q(channel, state, t)
        rho_t = evolve(channel, state, t)
        errs = []
        for dt in dts:
            f = bures_fidelity(rho_t, evolve(channel, state, t + dt))
            errs.append(abs(1.0 - f - dt * dt * fq / 4.0))
        for num, den in ((errs[0], errs[1]), (errs[1], errs[2])):
            ratio = num / den
            ratio_lo = min(ratio_lo, ratio)
            ratio_hi = max(ratio_hi, ratio)
        b = bures_angle(evolve(channel, state, 0.0), rho_t)
        excess = max(excess, b - t * v_qsl_avg(channel, state, t))
    ok = ratio_lo >= 4.0 and ratio_hi <= 16.0 and excess <= 1e-6
    _report(
        7,
        ok,
        f"dt-halving error ratios in [{ratio_lo:.2f}, {ratio_hi:.2f}] over 50 scenarios "
        f"(need within [4, 16]); max B minus speed integral {excess:.2e} (slack 1e-6)",
    )


def test_acceptance_8_brute_force_point_values():
    channel = OUNChannel(mu=1.0, gamma_big=0.1)
    z = zeta(channel, 1.0).zeta
    z_brute, _ = oracles.zeta_brute(channel, 1.0, choi_distance_factor(DEPHASING))
    rp = qsl_relative_purity(channel, PLUS, 1.0).value
    rp_brute = oracles.rp_bound_dephasing_brute(1.0, 0.1, PLUS, 1.0)
    dz = abs(z - z_brute) / z_brute
    dr = abs(rp - rp_brute) / rp_brute
    ok = dz <= 0.01 and dr <= 0.01 and abs(z - 0.024) <= 1e-3 and abs(rp - 0.567) <= 1e-3
    _report(
        8,
        ok,
        f"zeta {z:.6f} vs brute force {z_brute:.6f} (rel {dz:.2e}); bound {rp:.6f} vs "
        f"brute force {rp_brute:.6f} (rel {dr:.2e}); tol 1% plus the 0.024/0.567 anchors",
    )


def test_acceptance_9_cli_determinism(tmp_path, capsys):
    dirs = [str(tmp_path / name) for name in ("serial_a", "serial_b", "parallel")]
    assert main(["fig", "--id", "1", "--out-dir", dirs[0]]) == 0
    assert main(["fig", "--id", "1", "--out-dir", dirs[1]]) == 0
    assert main(["fig", "--id", "1", "--out-dir", dirs[2], "--workers", "4"]) == 0
    capsys.readouterr()
    compared = 0
    identical = True
    for label in ("oun", "rtn", "nmad"):
        blobs = [open(f"{d}/fig1_{label}.csv", "rb").read() for d in dirs]
        identical = identical and blobs[0] == blobs[1] == blobs[2]
        compared += 1
    ok = identical and compared == 3
    _report(
        9,
        ok,
        f"{compared} csv files byte-identical across two serial runs and one 4-worker run",
    )
