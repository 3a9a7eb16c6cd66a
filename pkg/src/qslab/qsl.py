"""Quantum speed limit bounds for the exactly solvable channels.

Four families are implemented, each a lower bound on the time needed to
connect the initial state to its evolved image along this very evolution:

  * overlap-angle bound on relative purity, with the generator applied to
    the initial state (generic matrix route plus per-kind closed forms),
  * Fisher-information speed, instantaneous and time-averaged,
  * Bures-angle bound with selectable norm in the denominator (generic
    route plus a scalar closed form for amplitude damping),
  * mixed-state overlap bound with the same denominators (generic plus a
    scalar closed form for amplitude damping).

Generic and closed routes are deliberately independent: the generic path
works through matrices and numeric norms, the closed path through scalar
p(t) formulas.  The test suite holds the pairs to 1e-6 relative agreement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import (
    AMPLITUDE_DAMPING,
    DEPHASING,
    NoiseChannel,
    RateSingularityError,
    apply_generator,
    evolve,
    time_derivative,
)
from .numerics import DEFAULT_QUADRATURE, QuadratureSpec, integrate
from .qmat import (
    BlochState,
    bloch_to_rho,
    bures_angle,
    norms,
    purity,
    relative_purity,
)

__all__ = [
    "DegenerateStateError",
    "QslResult",
    "qsl_relative_purity",
    "qsl_rp_dephasing_closed",
    "qsl_rp_ad_closed",
    "sld",
    "fisher_q",
    "v_qsl",
    "v_qsl_avg",
    "qsl_bures_dl",
    "qsl_bures_ad_closed",
    "qsl_wu_mixed",
    "qsl_wu_ad_closed",
]

# arccos arguments may ride rounding error past the domain edge by this much
_CLAMP_MARGIN = 1e-12
# fraction of the window used to nudge a quadrature node off a p zero
_NUDGE = 1e-9

_NORM_INDEX = {"op": 0, "hs": 1, "tr": 2}


class DegenerateStateError(ValueError):
    """The requested bound is undefined for this state/channel combination."""


@dataclass(frozen=True)
class QslResult:
    """A bound value with the scenario it belongs to."""

    value: float
    kind: str
    tau: float
    channel: str
    state: str


def _check_tau(tau) -> float:
    tau = float(tau)
    if not (math.isfinite(tau) and tau > 0.0):
        raise ValueError(f"tau must be positive and finite, got {tau!r}")
    return tau


def _arccos_unit(x: float, what: str) -> float:
    if x > 1.0 + _CLAMP_MARGIN or x < -1.0 - _CLAMP_MARGIN:
        raise DegenerateStateError(f"{what} = {x!r} lies outside [-1, 1]; angle undefined")
    return math.acos(min(1.0, max(-1.0, x)))


def _result(channel: NoiseChannel, state: BlochState, tau: float, kind: str, value: float) -> QslResult:
    return QslResult(value=value, kind=kind, tau=tau, channel=repr(channel), state=repr(state))


def qsl_relative_purity(
    channel: NoiseChannel,
    state: BlochState,
    tau,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> QslResult:
    """Overlap-angle bound, generic route.

    4 theta^2 tr(rho0^2) / (pi^2 Lambda) with theta = arccos of the relative
    purity at tau and Lambda the time average of the Hilbert-Schmidt norm of
    the instantaneous generator applied to the initial state.
    """
    tau = _check_tau(tau)
    rho0 = bloch_to_rho(state)
    tr2 = purity(rho0)
    pr = relative_purity(rho0, evolve(channel, state, tau))
    theta = _arccos_unit(pr, "relative purity")

    def speed(t: float) -> float:
        try:
            gen = apply_generator(channel, rho0, t)
        except RateSingularityError:
            gen = apply_generator(channel, rho0, t + _NUDGE * tau)
        return norms(gen)[1]

    lam = integrate(speed, 0.0, tau, quad) / tau
    if lam <= 0.0:
        raise DegenerateStateError("initial state is a fixed point of the generator; bound undefined")
    value = 4.0 * theta * theta * tr2 / (math.pi * math.pi * lam)
    return _result(channel, state, tau, "relative_purity", value)


def _abs_log_deriv(channel: NoiseChannel, t: float, tau: float) -> float:
    # |pdot/p| with the spec'd nudge off decoherence-function zeros
    p = channel.p(t)
    if abs(p) < 1e-12:
        t = t + _NUDGE * tau
        p = channel.p(t)
    return abs(channel.pdot(t) / p)


def qsl_rp_dephasing_closed(
    channel: NoiseChannel,
    state: BlochState,
    tau,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> QslResult:
    """Overlap-angle bound for dephasing, scalar closed form."""
    tau = _check_tau(tau)
    if channel.kind != DEPHASING:
        raise ValueError("closed form requires a dephasing channel")
    rxy2 = state.rx * state.rx + state.ry * state.ry
    if rxy2 <= 0.0:
        raise DegenerateStateError("state on the z axis is invariant under dephasing; bound degenerate")
    r2 = rxy2 + state.rz * state.rz
    tr2 = 0.5 * (1.0 + r2)
    p_tau = channel.p(tau)
    pr = (1.0 + state.rz * state.rz + p_tau * rxy2) / (1.0 + r2)
    theta = _arccos_unit(pr, "relative purity")
    den = integrate(lambda t: _abs_log_deriv(channel, t, tau), 0.0, tau, quad)
    den *= math.sqrt(rxy2) / tau
    value = 4.0 * math.sqrt(2.0) * theta * theta * tr2 / (math.pi * math.pi * den)
    return _result(channel, state, tau, "rp_dephasing_closed", value)


def qsl_rp_ad_closed(
    channel: NoiseChannel,
    state: BlochState,
    tau,
    literal_paper: bool = False,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> QslResult:
    """Overlap-angle bound for amplitude damping, scalar closed form.

    The default geometric factor under the square root is 4(1+rz)^2, the form
    consistent with the generic generator route; literal_paper=True switches
    to 4(1+rz^2) for comparison with the other printed variant.
    """
    tau = _check_tau(tau)
    if channel.kind != AMPLITUDE_DAMPING:
        raise ValueError("closed form requires an amplitude-damping channel")
    rx, ry, rz = state.rx, state.ry, state.rz
    rxy2 = rx * rx + ry * ry
    r2 = rxy2 + rz * rz
    geom = 4.0 * (1.0 + rz * rz) if literal_paper else 4.0 * (1.0 + rz) ** 2
    root = math.sqrt(rxy2 + geom)
    if root <= 0.0:
        raise DegenerateStateError("ground state is a fixed point of damping; bound degenerate")
    tr2 = 0.5 * (1.0 + r2)
    p_tau = channel.p(tau)
    pr = (1.0 - rz + p_tau * (rxy2 + p_tau * rz * (1.0 + rz))) / (1.0 + r2)
    theta = _arccos_unit(pr, "relative purity")
    den = integrate(lambda t: _abs_log_deriv(channel, t, tau), 0.0, tau, quad)
    den *= root / tau
    value = 4.0 * math.sqrt(2.0) * theta * theta * tr2 / (math.pi * math.pi * den)
    return _result(channel, state, tau, "rp_ad_closed", value)


def sld(rho: np.ndarray, rho_dot: np.ndarray, eps: float = 1e-12) -> np.ndarray:
    """Symmetric logarithmic derivative: solves rho_dot = (rho L + L rho)/2.

    Solved in the eigenbasis of rho; matrix elements on eigenvalue pairs
    summing below eps are zeroed, the standard convention at rank boundaries.
    """
    rho = np.asarray(rho, dtype=complex)
    rho_dot = np.asarray(rho_dot, dtype=complex)
    if rho.shape != (2, 2) or rho_dot.shape != (2, 2):
        raise ValueError("expected 2x2 matrices")
    if not np.allclose(rho_dot, rho_dot.conj().T, atol=1e-9):
        raise ValueError("rho_dot must be Hermitian")
    if abs(np.trace(rho_dot)) > 1e-9:
        raise ValueError("rho_dot must be traceless")
    w, v = np.linalg.eigh(rho)
    rd = v.conj().T @ rho_dot @ v
    out = np.zeros_like(rd)
    for i in range(2):
        for j in range(2):
            s = w[i] + w[j]
            if s > eps:
                out[i, j] = 2.0 * rd[i, j] / s
    return v @ out @ v.conj().T


def fisher_q(channel: NoiseChannel, state: BlochState, t) -> float:
    """Quantum Fisher information tr(rho_t L^2) along the evolution."""
    rho = evolve(channel, state, t)
    rho_dot = time_derivative(channel, state, t)
    ell = sld(rho, rho_dot)
    return max(float(np.trace(rho @ ell @ ell).real), 0.0)


def v_qsl(channel: NoiseChannel, state: BlochState, t) -> float:
    """Instantaneous evolution speed, half the root of the Fisher information."""
    return 0.5 * math.sqrt(fisher_q(channel, state, t))


# Origin regularization for the averaged speed.  Two constraints meet at
# t = 0: the speed has a removable jump there, and while 1 - p(t)^2 sits
# below ~3e-8 the evolved state is so close to pure that its small eigenvalue
# drowns in rounding noise, which the eigenvalue-based Fisher route amplifies
# until the adaptive quadrature cannot converge.  The average therefore
# freezes the integrand below the earliest time where 1 - p^2 clears that
# threshold; the frozen stretch is O(1e-4) of the window for typical rates,
# so the induced error is ~1e-8 of the average.
_PURITY_GAP = 3e-8
_FLOOR_MIN = 1e-9
_FLOOR_CAP = 3e-3


def _origin_floor(channel: NoiseChannel, tau: float) -> float:
    def gap(t: float) -> float:
        p = channel.p(t)
        return 1.0 - p * p

    lo = _FLOOR_MIN * tau
    hi = _FLOOR_CAP * tau
    if gap(lo) >= _PURITY_GAP:
        return lo
    if gap(hi) < _PURITY_GAP:
        # essentially no decoherence anywhere near the origin; the cap keeps
        # the frozen stretch a negligible slice of the window
        return hi
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if gap(mid) >= _PURITY_GAP:
            hi = mid
        else:
            lo = mid
    return hi


def v_qsl_avg(
    channel: NoiseChannel,
    state: BlochState,
    tau,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Time average of v_qsl over [0, tau], with the origin regularized."""
    tau = _check_tau(tau)
    floor = _origin_floor(channel, tau)
    return integrate(lambda t: v_qsl(channel, state, max(t, floor)), 0.0, tau, quad) / tau


def _norm_averaged_speed(
    channel: NoiseChannel,
    state: BlochState,
    tau: float,
    norm: str,
    quad: QuadratureSpec,
) -> float:
    try:
        idx = _NORM_INDEX[norm]
    except KeyError:
        raise ValueError(f"unknown norm {norm!r}; use one of op, hs, tr") from None
    lam = integrate(lambda t: norms(time_derivative(channel, state, t))[idx], 0.0, tau, quad)
    return lam / tau


def qsl_bures_dl(
    channel: NoiseChannel,
    state: BlochState,
    tau,
    norm: str = "op",
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> QslResult:
    """Bures-angle bound sin^2(B) / Lambda_norm, generic route.

    Lambda_norm is the time-averaged norm of the state derivative; the op
    variant is the largest bound of the three.
    """
    tau = _check_tau(tau)
    rho0 = bloch_to_rho(state)
    b = bures_angle(rho0, evolve(channel, state, tau))
    lam = _norm_averaged_speed(channel, state, tau, norm, quad)
    if lam <= 0.0:
        raise DegenerateStateError("state is stationary under the channel; bound undefined")
    value = math.sin(b) ** 2 / lam
    return _result(channel, state, tau, f"bures_dl_{norm}", value)


def qsl_bures_ad_closed(
    channel: NoiseChannel,
    state: BlochState,
    tau,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> QslResult:
    """Bures-angle bound for amplitude damping, scalar closed form.

    Numerator [1 + rz - p (rxy^2 + p rz (1+rz)) - h1 h2t] with
    h1 = sqrt(1 - |r|^2) and h2t = sqrt(p^2 (2 - rxy^2 + 2 rz - p^2 (1+rz)^2));
    denominator the time average of |pdot| sqrt(rxy^2 + 4 p^2 (1+rz)^2).
    """
    tau = _check_tau(tau)
    if channel.kind != AMPLITUDE_DAMPING:
        raise ValueError("closed form requires an amplitude-damping channel")
    rx, ry, rz = state.rx, state.ry, state.rz
    rxy2 = rx * rx + ry * ry
    r2 = rxy2 + rz * rz
    h1 = math.sqrt(max(0.0, 1.0 - r2))
    p_tau = channel.p(tau)
    radicand = p_tau * p_tau * (2.0 - rxy2 + 2.0 * rz - p_tau * p_tau * (1.0 + rz) ** 2)
    if radicand < -_CLAMP_MARGIN:
        raise DegenerateStateError(f"negative radicand {radicand!r}; state outside the bound's validity")
    h2t = math.sqrt(max(0.0, radicand))
    num = 1.0 + rz - p_tau * (rxy2 + p_tau * rz * (1.0 + rz)) - h1 * h2t
    num = max(num, 0.0)

    def integrand(t: float) -> float:
        p = channel.p(t)
        return abs(channel.pdot(t)) * math.sqrt(rxy2 + 4.0 * p * p * (1.0 + rz) ** 2)

    lam = integrate(integrand, 0.0, tau, quad) / tau
    if lam <= 0.0:
        raise DegenerateStateError("state is stationary under the channel; bound undefined")
    value = num / lam
    return _result(channel, state, tau, "bures_ad_closed", value)


def qsl_wu_mixed(
    channel: NoiseChannel,
    state: BlochState,
    tau,
    norm: str = "op",
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> QslResult:
    """Mixed-state overlap bound sin^2(phi) tr(rho0^2) / Lambda_norm.

    cos(phi) is the square root of the relative purity; damping can push the
    overlap above one, where the angle saturates at zero and so does the
    bound.
    """
    tau = _check_tau(tau)
    rho0 = bloch_to_rho(state)
    tr2 = purity(rho0)
    pr = relative_purity(rho0, evolve(channel, state, tau))
    cos_phi = math.sqrt(min(1.0, max(0.0, pr)))
    lam = _norm_averaged_speed(channel, state, tau, norm, quad)
    if lam <= 0.0:
        raise DegenerateStateError("state is stationary under the channel; bound undefined")
    value = (1.0 - cos_phi * cos_phi) * tr2 / lam
    return _result(channel, state, tau, f"wu_mixed_{norm}", value)


def qsl_wu_ad_closed(
    channel: NoiseChannel,
    state: BlochState,
    tau,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> QslResult:
    """Mixed-state overlap bound for amplitude damping, scalar closed form.

    Numerator (1-p)[rxy^2 + rz (1+p)(1+rz)] over the same denominator as the
    Bures closed form; negative raw numerators mean the overlap grew past
    one, where the generic route saturates at zero, so this clamps to match.
    """
    tau = _check_tau(tau)
    if channel.kind != AMPLITUDE_DAMPING:
        raise ValueError("closed form requires an amplitude-damping channel")
    rx, ry, rz = state.rx, state.ry, state.rz
    rxy2 = rx * rx + ry * ry
    p_tau = channel.p(tau)
    num = (1.0 - p_tau) * (rxy2 + rz * (1.0 + p_tau) * (1.0 + rz))
    num = max(num, 0.0)

    def integrand(t: float) -> float:
        p = channel.p(t)
        return abs(channel.pdot(t)) * math.sqrt(rxy2 + 4.0 * p * p * (1.0 + rz) ** 2)

    lam = integrate(integrand, 0.0, tau, quad) / tau
    if lam <= 0.0:
        raise DegenerateStateError("state is stationary under the channel; bound undefined")
    value = num / lam
    return _result(channel, state, tau, "wu_ad_closed", value)
