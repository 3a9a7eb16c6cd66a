"""Three exactly solvable single-qubit noise channels.

Each channel is fully determined by a scalar decoherence function p(t) with
p(0) = 1.  Dephasing channels scale the coherences by p; the amplitude-damping
channel scales the excited population by p^2 and the coherences by p.  The
time-local rate follows from p through the kind-dependent convention

    dephasing:          gamma = -pdot / (2 p),   so p = exp(-2 int gamma)
    amplitude damping:  gamma = -2 pdot / p,     so p = exp(-int gamma / 2)

Oscillatory regimes (RTN with a > mu/2, damped cavity with Gamma < 2 mu) are
handled by trig/hyperbolic branch selection on the sign of the discriminant,
never by complex arithmetic, so p stays real by construction.  The rate is
singular wherever p crosses zero; rate() reports that as RateSingularityError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .qmat import BlochState

__all__ = [
    "DEPHASING",
    "AMPLITUDE_DAMPING",
    "RateSingularityError",
    "NoiseChannel",
    "OUNChannel",
    "RTNChannel",
    "NMADChannel",
    "SemigroupChannel",
    "decoherence_p",
    "rate_gamma",
    "evolve",
    "apply_generator",
    "time_derivative",
    "markov_reference",
]

DEPHASING = "dephasing"
AMPLITUDE_DAMPING = "amplitude_damping"

# |p| below this is treated as a decoherence-function zero
P_SINGULAR = 1e-12
# switch to exponent-subtracted forms once sqrt(s) would exceed this
_BIG_X = 300.0
_BIG_S = _BIG_X * _BIG_X


class RateSingularityError(ArithmeticError):
    """The time-local rate is undefined at a zero of the decoherence function."""


def _check_time(t) -> float:
    t = float(t)
    if not (math.isfinite(t) and t >= 0.0):
        raise ValueError(f"time must be finite and nonnegative, got {t!r}")
    return t


def _check_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0.0):
        raise ValueError(f"{name} must be positive and finite, got {value!r}")


def _cosh_s(s: float) -> float:
    # cosh(sqrt(s)) continued through s < 0 as cos(sqrt(-s))
    if abs(s) < 1e-10:
        return 1.0 + s / 2.0 + s * s / 24.0
    if s > 0.0:
        return math.cosh(math.sqrt(s))
    return math.cos(math.sqrt(-s))


def _sinhc_s(s: float) -> float:
    # sinh(sqrt(s))/sqrt(s) continued through s < 0 as sin(sqrt(-s))/sqrt(-s)
    if abs(s) < 1e-10:
        return 1.0 + s / 6.0 + s * s / 120.0
    if s > 0.0:
        x = math.sqrt(s)
        return math.sinh(x) / x
    x = math.sqrt(-s)
    return math.sin(x) / x


class NoiseChannel:
    """Shared rate logic; concrete channels provide p and pdot."""

    kind: str = ""

    def p(self, t) -> float:
        raise NotImplementedError

    def pdot(self, t) -> float:
        raise NotImplementedError

    def rate(self, t) -> float:
        p = self.p(t)
        if abs(p) < P_SINGULAR:
            raise RateSingularityError(
                f"|p| = {abs(p):.3e} at t = {float(t)!r}; time-local rate undefined"
            )
        if self.kind == DEPHASING:
            return -self.pdot(t) / (2.0 * p)
        return -2.0 * self.pdot(t) / p

    def first_p_zero(self) -> Optional[float]:
        """Smallest t > 0 with p(t) = 0, or None when p never vanishes."""
        return None

    def rate_limit(self) -> Optional[float]:
        """Long-time limit of the rate, or None in oscillatory regimes."""
        return None


@dataclass(frozen=True)
class OUNChannel(NoiseChannel):
    """Dephasing driven by Ornstein-Uhlenbeck noise.

    p(t) = exp(-(mu/2)[t + (e^{-Gamma t} - 1)/Gamma]).  The rate
    mu(1 - e^{-Gamma t})/4 is nonnegative for every t, so the evolution is
    CP-divisible, yet the rate is time dependent: no semigroup reproduces it.
    """

    mu: float
    gamma_big: float

    kind = DEPHASING

    def __post_init__(self) -> None:
        _check_positive("mu", self.mu)
        _check_positive("gamma_big", self.gamma_big)

    def p(self, t) -> float:
        t = _check_time(t)
        return math.exp(-0.5 * self.mu * (t + math.expm1(-self.gamma_big * t) / self.gamma_big))

    def pdot(self, t) -> float:
        t = _check_time(t)
        return 0.5 * self.mu * math.expm1(-self.gamma_big * t) * self.p(t)

    def rate_limit(self) -> float:
        return 0.25 * self.mu


@dataclass(frozen=True)
class RTNChannel(NoiseChannel):
    """Dephasing driven by random telegraph noise.

    With frequency w = sqrt(4a^2 - mu^2),
    p(t) = e^{-mu t}[cos(w t) + (mu/w) sin(w t)], continued through
    hyperbolic functions when 4a^2 < mu^2.  For a > mu/2 the decoherence
    function oscillates through zero and the rate turns negative on
    intervals: the memory regime.
    """

    a: float
    mu: float

    kind = DEPHASING

    def __post_init__(self) -> None:
        _check_positive("a", self.a)
        _check_positive("mu", self.mu)

    def _disc(self) -> float:
        # positive in the hyperbolic (motional-damping) regime
        return self.mu * self.mu - 4.0 * self.a * self.a

    def p(self, t) -> float:
        t = _check_time(t)
        s = self._disc() * t * t
        if s > _BIG_S:
            w = math.sqrt(self._disc())
            q = self.mu / w
            return 0.5 * (
                (1.0 + q) * math.exp((w - self.mu) * t)
                + (1.0 - q) * math.exp(-(w + self.mu) * t)
            )
        return math.exp(-self.mu * t) * (_cosh_s(s) + self.mu * t * _sinhc_s(s))

    def pdot(self, t) -> float:
        t = _check_time(t)
        s = self._disc() * t * t
        c = 4.0 * self.a * self.a
        if s > _BIG_S:
            w = math.sqrt(self._disc())
            return -0.5 * (c / w) * (
                math.exp((w - self.mu) * t) - math.exp(-(w + self.mu) * t)
            )
        return -c * t * math.exp(-self.mu * t) * _sinhc_s(s)

    def first_p_zero(self) -> Optional[float]:
        disc = -self._disc()
        if disc <= 0.0:
            return None
        w = math.sqrt(disc)
        return (math.pi - math.atan2(w, self.mu)) / w

    def rate_limit(self) -> Optional[float]:
        disc = self._disc()
        if disc < 0.0:
            return None
        return 2.0 * self.a * self.a / (math.sqrt(disc) + self.mu)


@dataclass(frozen=True)
class NMADChannel(NoiseChannel):
    """Amplitude damping from a qubit resonantly coupled to a leaky cavity.

    With d = sqrt(Gamma^2 - 2 mu Gamma),
    p(t) = e^{-Gamma t/2}[cosh(dt/2) + (Gamma/d) sinh(dt/2)], continued
    through trigonometric functions when Gamma < 2 mu, where p oscillates
    through zero and the rate diverges: the memory regime.
    """

    mu: float
    gamma_big: float

    kind = AMPLITUDE_DAMPING

    def __post_init__(self) -> None:
        _check_positive("mu", self.mu)
        _check_positive("gamma_big", self.gamma_big)

    def _disc(self) -> float:
        # positive in the overdamped (monotone) regime
        return self.gamma_big * (self.gamma_big - 2.0 * self.mu)

    def p(self, t) -> float:
        t = _check_time(t)
        g = self.gamma_big
        s = 0.25 * self._disc() * t * t
        if s > _BIG_S:
            d = math.sqrt(self._disc())
            q = g / d
            return 0.5 * (
                (1.0 + q) * math.exp(0.5 * (d - g) * t)
                + (1.0 - q) * math.exp(-0.5 * (d + g) * t)
            )
        return math.exp(-0.5 * g * t) * (_cosh_s(s) + 0.5 * g * t * _sinhc_s(s))

    def pdot(self, t) -> float:
        t = _check_time(t)
        g = self.gamma_big
        s = 0.25 * self._disc() * t * t
        if s > _BIG_S:
            d = math.sqrt(self._disc())
            return -0.5 * (self.mu * g / d) * (
                math.exp(0.5 * (d - g) * t) - math.exp(-0.5 * (d + g) * t)
            )
        return -0.5 * self.mu * g * t * math.exp(-0.5 * g * t) * _sinhc_s(s)

    def first_p_zero(self) -> Optional[float]:
        disc = -self._disc()
        if disc <= 0.0:
            return None
        d = math.sqrt(disc)
        return 2.0 * (math.pi - math.atan2(d, self.gamma_big)) / d

    def rate_limit(self) -> Optional[float]:
        disc = self._disc()
        if disc < 0.0:
            return None
        return 2.0 * self.mu * self.gamma_big / (math.sqrt(disc) + self.gamma_big)


@dataclass(frozen=True)
class SemigroupChannel(NoiseChannel):
    """Constant-rate reference channel of either kind.

    The defining datum is the rate itself, so rate() never consults p and
    stays finite for all times.
    """

    # bare field() marker: without it the inherited class attribute "" would
    # be taken as a default, outlawing the no-default rate0 field after it
    kind: str = field()
    rate0: float = field()

    def __post_init__(self) -> None:
        if self.kind not in (DEPHASING, AMPLITUDE_DAMPING):
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if not (math.isfinite(self.rate0) and self.rate0 >= 0.0):
            raise ValueError(f"rate must be nonnegative and finite, got {self.rate0!r}")

    def p(self, t) -> float:
        t = _check_time(t)
        if self.kind == DEPHASING:
            return math.exp(-2.0 * self.rate0 * t)
        return math.exp(-0.5 * self.rate0 * t)

    def pdot(self, t) -> float:
        t = _check_time(t)
        if self.kind == DEPHASING:
            return -2.0 * self.rate0 * self.p(t)
        return -0.5 * self.rate0 * self.p(t)

    def rate(self, t) -> float:
        _check_time(t)
        return self.rate0

    def rate_limit(self) -> float:
        return self.rate0


def decoherence_p(channel: NoiseChannel, t) -> float:
    """Decoherence function p(t) of the channel."""
    return channel.p(t)


def rate_gamma(channel: NoiseChannel, t) -> float:
    """Time-local decay rate; singular where p vanishes."""
    return channel.rate(t)


def evolve(channel: NoiseChannel, state: BlochState, t) -> np.ndarray:
    """Exact evolved density matrix of the initial Bloch state."""
    p = channel.p(t)
    off = p * (state.rx - 1.0j * state.ry) / 2.0
    if channel.kind == DEPHASING:
        diag_hi = (1.0 + state.rz) / 2.0
    else:
        # excited population decays as p^2; p may pass through negative
        # values in the oscillatory regime, which p^2 renders harmless
        diag_hi = (1.0 + state.rz) * p * p / 2.0
    return np.array(
        [[1.0 - diag_hi, off], [np.conj(off), diag_hi]],
        dtype=complex,
    )


def apply_generator(channel: NoiseChannel, rho: np.ndarray, t) -> np.ndarray:
    """Instantaneous generator applied to an arbitrary qubit state."""
    g = channel.rate(t)
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {rho.shape}")
    if channel.kind == DEPHASING:
        return np.array(
            [[0.0, -2.0 * g * rho[0, 1]], [-2.0 * g * rho[1, 0], 0.0]],
            dtype=complex,
        )
    return g * np.array(
        [[rho[1, 1], -rho[0, 1] / 2.0], [-rho[1, 0] / 2.0, -rho[1, 1]]],
        dtype=complex,
    )


def time_derivative(channel: NoiseChannel, state: BlochState, t) -> np.ndarray:
    """Analytic d(rho_t)/dt along the evolution from the given initial state.

    Unlike apply_generator this never divides by p, so it stays finite
    through zeros of the decoherence function.
    """
    pd = channel.pdot(t)
    off = pd * (state.rx - 1.0j * state.ry) / 2.0
    if channel.kind == DEPHASING:
        diag = 0.0
    else:
        diag = (1.0 + state.rz) * channel.p(t) * pd
    return np.array(
        [[-diag, off], [np.conj(off), diag]],
        dtype=complex,
    )


def markov_reference(channel: NoiseChannel, rate: Optional[float] = None) -> SemigroupChannel:
    """Constant-rate channel with the same operator form.

    The structural form (dephasing vs amplitude damping) comes from the
    channel; the numeric rate is the caller's choice, e.g. the minimizer found
    by the memory measure.  When omitted, the long-time limit of the channel's
    own rate is used; oscillatory regimes have no such limit.
    """
    if rate is None:
        rate = channel.rate_limit()
        if rate is None:
            raise ValueError(
                "rate has no long-time limit in the oscillatory regime; pass an explicit rate"
            )
    return SemigroupChannel(channel.kind, rate)
