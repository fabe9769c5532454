"""Numeric primitives: the antiderivative of sqrt(z^2 - 1), a quadrature
cross-check for it, and a bracketed scalar root finder."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy import integrate, optimize

from .errors import ConvergenceError, DomainError, NoSignChangeError

# Below this distance from 1 the closed form loses digits to cancellation
# between z*sqrt(z^2-1) and ln(z + sqrt(z^2-1)); a series in t = z - 1 is
# used instead.  Truncation error at the cutoff is below 1e-19 relative.
_SERIES_CUTOFF = 0.05
_SERIES_TERMS = 14


def _series_coeffs(n):
    # sqrt(1 + t/2) = sum a_k t^k with a_k = binom(1/2, k) / 2^k
    coeffs, binom = [], 1.0
    for k in range(n):
        coeffs.append(binom / 2.0**k)
        binom *= (0.5 - k) / (k + 1)
    return tuple(coeffs)


_SERIES_COEFFS = _series_coeffs(_SERIES_TERMS)


@dataclass(frozen=True)
class RootConfig:
    """Stopping rule for :func:`find_root`.

    Tolerances apply to the parameter, not the residual.
    """

    abs_tol: float = 1e-14
    rel_tol: float = 1e-13
    max_iterations: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("root tolerances must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


DEFAULT_ROOT_CONFIG = RootConfig()


def f_antiderivative(zeta: float) -> float:
    """Antiderivative of sqrt(zeta^2 - 1) normalized so that F(1) = 0.

    F(zeta) = (zeta*sqrt(zeta^2-1) - ln(zeta + sqrt(zeta^2-1))) / 2
    """
    if not zeta >= 1.0:
        raise DomainError(f"f_antiderivative requires zeta >= 1, got {zeta!r}")
    t = zeta - 1.0
    if t < _SERIES_CUTOFF:
        # integral_0^t sqrt(2u) * sum a_k u^k du, Horner in t
        total = 0.0
        for k in reversed(range(_SERIES_TERMS)):
            total = total * t + _SERIES_COEFFS[k] / (k + 1.5)
        return math.sqrt(2.0) * t * math.sqrt(t) * total
    root = math.sqrt(t * (zeta + 1.0))
    return 0.5 * (zeta * root - math.log(zeta + root))


def quad_sqrt(zeta_lo: float, zeta_hi: float) -> float:
    """Adaptive quadrature of sqrt(zeta^2 - 1) over [zeta_lo, zeta_hi].

    Independent of :func:`f_antiderivative`; intended for cross-checks.
    """
    if not (1.0 <= zeta_lo <= zeta_hi):
        raise DomainError(
            f"quad_sqrt requires 1 <= lo <= hi, got [{zeta_lo!r}, {zeta_hi!r}]"
        )
    if zeta_lo == zeta_hi:
        return 0.0
    value, _ = integrate.quad(
        lambda z: math.sqrt(max(z * z - 1.0, 0.0)),
        zeta_lo,
        zeta_hi,
        epsabs=1e-13,
        epsrel=1e-13,
        limit=200,
    )
    return value


def find_root(
    f: Callable[[float], float],
    bracket_lo: float,
    bracket_hi: float,
    cfg: RootConfig = DEFAULT_ROOT_CONFIG,
) -> float:
    """Root of ``f`` inside ``[bracket_lo, bracket_hi]``.

    Brent's method (bisection safeguarded by inverse quadratic
    interpolation), so the iterate never leaves the bracket. An endpoint
    whose value is exactly zero is returned as is.

    Raises:
        NoSignChangeError: f has the same sign at both endpoints.
        ConvergenceError: no convergence within ``cfg.max_iterations``.
    """
    lo, hi = float(bracket_lo), float(bracket_hi)
    if lo > hi:
        lo, hi = hi, lo
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if math.isnan(f_lo) or math.isnan(f_hi) or (f_lo > 0) == (f_hi > 0):
        raise NoSignChangeError(lo, hi, f_lo, f_hi)
    if hi - lo <= cfg.abs_tol:
        return lo if abs(f_lo) <= abs(f_hi) else hi
    x, res = optimize.brentq(
        f,
        lo,
        hi,
        xtol=cfg.abs_tol,
        rtol=max(cfg.rel_tol, 4 * 2.220446049250313e-16),
        maxiter=cfg.max_iterations,
        full_output=True,
        disp=False,
    )
    if not res.converged:
        raise ConvergenceError(
            f"root finder did not converge in {cfg.max_iterations} iterations "
            f"(last iterate {x!r})"
        )
    return min(max(x, lo), hi)
