"""Deterministic numerical kernels shared by the physics modules.

Quadrature is an adaptive composite Simpson rule rather than a Gaussian rule:
the integrands produced elsewhere in the package routinely contain absolute
values (|pdot|, |gamma - gamma*|), and the kink guard plus plain bisection
recover accuracy at such points where high-order nodes would not.  All
summation orders are fixed, so repeated runs give bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

__all__ = [
    "QuadratureError",
    "MinimizationError",
    "QuadratureSpec",
    "MinimizeSpec",
    "DEFAULT_QUADRATURE",
    "integrate",
    "minimize_scalar",
    "finite_diff",
]


class QuadratureError(RuntimeError):
    """Adaptive refinement hit max_depth without meeting the tolerance."""


class MinimizationError(RuntimeError):
    """Golden-section search exhausted max_iter before the interval converged."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for adaptive Simpson integration.

    abs_tol is an absolute target for the whole interval; kink_guard forces an
    initial uniform split plus one mandatory refinement per panel so that a
    symmetric integrand cannot fool the first Richardson comparison.
    """

    abs_tol: float = 1e-9
    max_depth: int = 30
    kink_guard: bool = True

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0.0 and math.isfinite(self.abs_tol)):
            raise ValueError("abs_tol must be a positive finite number")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")


DEFAULT_QUADRATURE = QuadratureSpec()


@dataclass(frozen=True)
class MinimizeSpec:
    """Bracket and tolerances for scalar golden-section minimization."""

    lo: float
    hi: float
    rel_tol: float = 1e-10
    max_iter: int = 200

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("bracket endpoints must be finite")
        if self.hi < self.lo:
            raise ValueError("bracket must satisfy lo <= hi")
        if not (self.rel_tol > 0.0):
            raise ValueError("rel_tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return h / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    fa: float,
    fm: float,
    fb: float,
    whole: float,
    tol: float,
    depth: int,
    max_depth: int,
    min_depth: int,
) -> float:
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(fa, flm, fm, m - a)
    right = _simpson(fm, frm, fb, b - m)
    refined = left + right
    if depth >= min_depth and abs(refined - whole) <= 15.0 * tol:
        return refined + (refined - whole) / 15.0
    if depth >= max_depth:
        raise QuadratureError(
            f"no convergence on [{a!r}, {b!r}] at depth {depth} (residual {abs(refined - whole):.3e})"
        )
    half = 0.5 * tol
    return _adaptive(f, a, m, fa, flm, fm, left, half, depth + 1, max_depth, min_depth) + _adaptive(
        f, m, b, fm, frm, fb, right, half, depth + 1, max_depth, min_depth
    )


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Adaptive Simpson estimate of the integral of f over [a, b].

    Raises QuadratureError when max_depth is reached without convergence and
    ValueError for an empty or inverted interval.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integration limits must be finite")
    if b < a:
        raise ValueError("integration limits must satisfy a <= b")
    if a == b:
        return 0.0
    panels = 8 if spec.kink_guard else 1
    min_depth = 1 if spec.kink_guard else 0
    h = (b - a) / panels
    tol = spec.abs_tol / panels
    total = 0.0
    left_t = a
    f_left = f(a)
    for k in range(panels):
        right_t = a + (k + 1) * h if k < panels - 1 else b
        mid_t = 0.5 * (left_t + right_t)
        f_mid = f(mid_t)
        f_right = f(right_t)
        whole = _simpson(f_left, f_mid, f_right, right_t - left_t)
        total += _adaptive(
            f, left_t, right_t, f_left, f_mid, f_right, whole, tol, 0, spec.max_depth, min_depth
        )
        left_t = right_t
        f_left = f_right
    return total


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 1/phi^2


def minimize_scalar(f: Callable[[float], float], spec: MinimizeSpec) -> tuple[float, float]:
    """Golden-section minimum of f on [spec.lo, spec.hi].

    Returns (argmin, f(argmin)).  Assumes a unimodal objective on the bracket;
    on a flat stretch any minimizing point may be returned.
    """
    lo, hi = spec.lo, spec.hi
    if hi == lo:
        return lo, f(lo)
    width0 = hi - lo
    target = spec.rel_tol * width0
    c = lo + _INV_PHI2 * width0
    d = lo + _INV_PHI * width0
    fc = f(c)
    fd = f(d)
    for _ in range(spec.max_iter):
        if hi - lo <= target:
            break
        if fc < fd:
            hi, d, fd = d, c, fc
            c = lo + _INV_PHI2 * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
    else:
        raise MinimizationError(f"interval width {hi - lo:.3e} after {spec.max_iter} iterations")
    x = 0.5 * (lo + hi)
    return x, f(x)


def finite_diff(f: Callable[[float], float], t: float, h: float) -> float:
    """Central difference estimate of df/dt, O(h^2) accurate."""
    if not (h > 0.0 and math.isfinite(h)):
        raise ValueError("step h must be positive and finite")
    return (f(t + h) - f(t - h)) / (2.0 * h)
