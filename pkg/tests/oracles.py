"""Independent reference routes used only by the tests.

Every function here recomputes a package quantity through a different
algorithm: 50-digit scalar formulas and numerical derivatives (mpmath),
characteristic-polynomial eigenvalues via Newton's identities, explicit
matrix square roots, and dense-grid brute force with an exhaustive
candidate scan for the memory measure.  Nothing imports the production
numerics kernels.
"""

import math

import mpmath as mp
import numpy as np
import scipy.linalg

mp.mp.dps = 50


# ---------------------------------------------------------------- channels

def p_oun(mu, gamma_big, t):
    mu, g, t = mp.mpf(mu), mp.mpf(gamma_big), mp.mpf(t)
    return mp.e ** (-(mu / 2) * (t + (mp.e ** (-g * t) - 1) / g))


def p_rtn(a, mu, t):
    # complex continuation: the bracket is entire in w^2, so evaluating with
    # a complex w and keeping the real part covers both regimes at once
    a, mu, t = mp.mpf(a), mp.mpf(mu), mp.mpf(t)
    w = mp.sqrt(mp.mpc(mu * mu - 4 * a * a))
    return mp.re(mp.e ** (-mu * t) * (mp.cosh(w * t) + mu / w * mp.sinh(w * t)))


def p_nmad(mu, gamma_big, t):
    mu, g, t = mp.mpf(mu), mp.mpf(gamma_big), mp.mpf(t)
    d = mp.sqrt(mp.mpc(g * g - 2 * mu * g))
    return mp.re(mp.e ** (-g * t / 2) * (mp.cosh(d * t / 2) + g / d * mp.sinh(d * t / 2)))


def oracle_p(channel):
    """High-precision p(t) for a production channel instance."""
    name = type(channel).__name__
    if name == "OUNChannel":
        return lambda t: p_oun(channel.mu, channel.gamma_big, t)
    if name == "RTNChannel":
        return lambda t: p_rtn(channel.a, channel.mu, t)
    if name == "NMADChannel":
        return lambda t: p_nmad(channel.mu, channel.gamma_big, t)
    raise ValueError(f"no oracle for {name}")


def oracle_pdot(channel, t):
    return mp.diff(oracle_p(channel), mp.mpf(t))


def oracle_rate(channel, t):
    """Rate from the p oracle under the package's kind conventions."""
    pf = oracle_p(channel)
    pd = mp.diff(pf, mp.mpf(t))
    p = pf(t)
    if channel.kind == "dephasing":
        return -pd / (2 * p)
    return -2 * pd / p


def oun_rate_closed(mu, gamma_big, t):
    # the analytic rate formula, kept separate from the -pdot/(2p) route
    return mu * (1.0 - math.exp(-gamma_big * t)) / 4.0


# ------------------------------------------------------------ linear algebra

def trace_norm_char_poly(m) -> float:
    """Sum of |eigenvalues| via Newton's identities and polynomial roots."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    power = np.eye(n, dtype=complex)
    psums = []
    for _ in range(n):
        power = power @ m
        psums.append(float(np.trace(power).real))
    elem = [1.0]
    for k in range(1, n + 1):
        s = 0.0
        for i in range(1, k + 1):
            s += (-1.0) ** (i - 1) * elem[k - i] * psums[i - 1]
        elem.append(s / k)
    coeffs = [(-1.0) ** k * elem[k] for k in range(n + 1)]
    roots = np.roots(coeffs)
    return float(np.sum(np.abs(roots.real)))


def fidelity_sqrtm(rho0, rho1) -> float:
    """Uhlmann fidelity straight from the matrix-square-root definition."""
    s = scipy.linalg.sqrtm(np.asarray(rho0, dtype=complex))
    inner = scipy.linalg.sqrtm(s @ np.asarray(rho1, dtype=complex) @ s)
    return float(np.real(np.trace(inner)) ** 2)


# ------------------------------------------------------------ memory measure

def zeta_brute(channel, horizon, factor, n_grid=200001, n_candidates=100001):
    """Dense trapezoid quadrature plus an exhaustive scan over gamma*.

    Returns (zeta, gamma_star).  The candidate grid spans the sampled rate
    range at n_candidates resolution; the objective is evaluated for every
    candidate at once through prefix sums over the sorted samples.
    """
    ts = np.linspace(0.0, horizon, n_grid)
    rates = np.array([channel.rate(float(t)) for t in ts])
    h = horizon / (n_grid - 1)
    w = np.full(n_grid, h)
    w[0] = w[-1] = h / 2.0
    order = np.argsort(rates)
    r_s = rates[order]
    w_s = w[order]
    cw = np.cumsum(w_s)
    crw = np.cumsum(r_s * w_s)
    cands = np.linspace(r_s[0], r_s[-1], n_candidates)
    idx = np.searchsorted(r_s, cands, side="right")
    safe = np.maximum(idx - 1, 0)
    below_w = np.where(idx > 0, cw[safe], 0.0)
    below_rw = np.where(idx > 0, crw[safe], 0.0)
    obj = cands * below_w - below_rw + (crw[-1] - below_rw) - cands * (cw[-1] - below_w)
    k = int(np.argmin(obj))
    return factor * float(obj[k]) / horizon, float(cands[k])


def rp_bound_dephasing_brute(mu, gamma_big, state, tau, n_grid=200001):
    """Overlap-angle bound for an OUN scenario, fully independent route.

    Uses the analytic rate formula, a dense trapezoid for the denominator,
    and the 50-digit p oracle for the relative purity at tau.
    """
    rxy2 = state.rx * state.rx + state.ry * state.ry
    r2 = rxy2 + state.rz * state.rz
    tr2 = 0.5 * (1.0 + r2)
    p_tau = float(p_oun(mu, gamma_big, tau))
    pr = (1.0 + state.rz * state.rz + p_tau * rxy2) / (1.0 + r2)
    theta = math.acos(min(1.0, pr))
    ts = np.linspace(0.0, tau, n_grid)
    gammas = np.array([oun_rate_closed(mu, gamma_big, float(t)) for t in ts])
    # generator applied to rho0 has a single off-diagonal pair of magnitude
    # gamma * rxy, so its Hilbert-Schmidt norm is sqrt(2) * gamma * rxy
    lam = math.sqrt(2.0) * math.sqrt(rxy2) * float(np.trapezoid(gammas, ts)) / tau
    return 4.0 * theta * theta * tr2 / (math.pi * math.pi * lam)


# ------------------------------------------------------------ random draws

def random_bloch(rng, r_lo=0.0, r_hi=1.0):
    """Uniform direction, radius uniform in [r_lo, r_hi]."""
    from qslab import BlochState

    r = rng.uniform(r_lo, r_hi)
    th = math.acos(rng.uniform(-1.0, 1.0))
    ph = rng.uniform(0.0, 2.0 * math.pi)
    return BlochState(
        r * math.sin(th) * math.cos(ph),
        r * math.sin(th) * math.sin(ph),
        r * math.cos(th),
    )


def random_channel(rng, family):
    """One channel with parameters inside its singularity-free window.

    RTN stays below the oscillation threshold and NMAD above it, so every
    drawn channel has a finite rate on all of [0, 10].
    """
    from qslab import NMADChannel, OUNChannel, RTNChannel

    mu = rng.uniform(0.5, 2.0)
    if family == "oun":
        return OUNChannel(mu=mu, gamma_big=rng.uniform(0.3, 3.0) * mu)
    if family == "rtn":
        return RTNChannel(a=rng.uniform(0.15, 0.45) * mu, mu=mu)
    if family == "nmad":
        return NMADChannel(mu=mu, gamma_big=rng.uniform(2.1, 6.0) * mu)
    raise ValueError(f"unknown family {family!r}")


FAMILIES = ("oun", "rtn", "nmad")


def fisher_scenario(rng, trial):
    """Deterministic (channel, state, t) draw for the fidelity-expansion tests.

    The polar angle stays away from the poles and t away from 0, so the
    cubic term of the fidelity expansion does not vanish by symmetry.
    """
    from qslab import BlochState

    channel = random_channel(rng, FAMILIES[trial % 3])
    r = rng.uniform(0.3, 0.9)
    th = rng.uniform(0.4, math.pi - 0.4)
    ph = rng.uniform(0.0, 2.0 * math.pi)
    state = BlochState(
        r * math.sin(th) * math.cos(ph),
        r * math.sin(th) * math.sin(ph),
        r * math.cos(th),
    )
    t = rng.uniform(0.3, 1.2)
    return channel, state, t
