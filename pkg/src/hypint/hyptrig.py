"""Scalar hyperbolic-trigonometry kernel.

Closed forms for collars, seam perpendiculars of a pair of pants, arcs with
prescribed feet offsets, the thin-part crossing model, and the trace/length
translation. Everything here is a pure function of floats; domain violations
raise instead of clamping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from .errors import DomainError, NotHyperbolic

# Fixed threshold below which a curve counts as short: exp(-sqrt(2)).
# Chosen so that collar_half_width(x) >= |log x| >= sqrt(2) for 0 < x < A1.
A1 = math.exp(-math.sqrt(2.0))

# Collar-regime threshold 2*arcsinh(1); curves at most this long have
# pairwise disjoint standard collars with boundary circles of length <= 2*sqrt(2).
TWO_ARCSINH1 = 2.0 * math.asinh(1.0)


def _check_positive(name: str, x: float) -> None:
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {x!r}")


def acosh_stable(x: float) -> float:
    """arccosh that keeps relative accuracy for arguments just above 1."""
    if x < 1.0:
        raise DomainError(f"arccosh argument {x!r} < 1")
    u = x - 1.0
    if u < 0.5:
        return math.log1p(u + math.sqrt(2.0 * u + u * u))
    return math.acosh(x)


@dataclass(frozen=True)
class CollarData:
    """Standard collar of a simple closed geodesic."""

    curve_length: float
    half_width: float
    boundary_circle_length: float


def collar_half_width(l: float) -> float:
    """Half-width arcsinh(1/sinh(l/2)) of the standard collar; decreasing in l."""
    _check_positive("curve length", l)
    return math.asinh(1.0 / math.sinh(0.5 * l))


def collar_circle_length(l: float, rho: float) -> float:
    """Length l*cosh(rho) of the equidistant circle at distance rho from the core."""
    _check_positive("curve length", l)
    if not math.isfinite(rho) or rho < 0.0:
        raise DomainError(f"distance from core must be >= 0, got {rho!r}")
    w = collar_half_width(l)
    if rho > w * (1.0 + 1e-12) + 1e-15:
        raise DomainError(f"rho={rho!r} exceeds collar half-width {w!r}")
    return l * math.cosh(rho)


def collar(l: float) -> CollarData:
    w = collar_half_width(l)
    return CollarData(l, w, collar_circle_length(l, w))


def perp_distinct_cosh(l1: float, l2: float, l3: float) -> Tuple[float, float]:
    """(cosh(eta), cosh(eta) - 1) for the seam between distinct boundaries.

    The minus-one form (cosh(l3/2) + cosh((l1-l2)/2)) / (sinh(l1/2)sinh(l2/2))
    avoids cancellation when the seam is short (very long boundaries).
    """
    for name, l in (("l1", l1), ("l2", l2), ("l3", l3)):
        _check_positive(name, l)
    den = math.sinh(0.5 * l1) * math.sinh(0.5 * l2)
    ch = (math.cosh(0.5 * l3) + math.cosh(0.5 * l1) * math.cosh(0.5 * l2)) / den
    chm1 = (math.cosh(0.5 * l3) + math.cosh(0.5 * (l1 - l2))) / den
    return ch, chm1


def perp_distinct(l1: float, l2: float, l3: float) -> float:
    """Seam between two distinct boundary geodesics of a pants.

    Boundary lengths l1, l2 carry the seam; l3 is the third boundary:
    cosh(eta) = (cosh(l3/2) + cosh(l1/2)cosh(l2/2)) / (sinh(l1/2)sinh(l2/2)).
    Symmetric in (l1, l2).
    """
    for name, l in (("l1", l1), ("l2", l2), ("l3", l3)):
        _check_positive(name, l)
    num = math.cosh(0.5 * l3) + math.cosh(0.5 * l1) * math.cosh(0.5 * l2)
    den = math.sinh(0.5 * l1) * math.sinh(0.5 * l2)
    return acosh_stable(num / den)


def perp_same(l1: float, l3: float, eta13: float) -> float:
    """Seam from a boundary geodesic back to itself, around boundary 3.

    cosh(eta/2) = sinh(eta13) * sinh(l3/2) where eta13 is the seam between
    boundaries 1 and 3. The argument drops below 1 only for geometrically
    impossible configurations.
    """
    _check_positive("l1", l1)
    _check_positive("l3", l3)
    _check_positive("eta13", eta13)
    arg = math.sinh(eta13) * math.sinh(0.5 * l3)
    if arg < 1.0:
        raise DomainError(f"sinh(eta13)*sinh(l3/2) = {arg!r} < 1: impossible configuration")
    return 2.0 * acosh_stable(arg)


def arc_with_feet(rho1: float, rho2: float, eta: float) -> float:
    """Arc length between boundary points at signed offsets rho1, rho2 from the seam feet.

    cosh(len) = cosh(rho1)cosh(rho2)cosh(eta) - sinh(rho1)sinh(rho2); the sign
    of the offsets enters only through the product term.
    """
    _check_positive("eta", eta)
    arg = math.cosh(rho1) * math.cosh(rho2) * math.cosh(eta) - math.sinh(rho1) * math.sinh(rho2)
    # arg >= cosh(eta) > 1 holds in exact arithmetic; tolerate rounding at the floor
    if arg < 1.0:
        if arg > 1.0 - 1e-12:
            return 0.0
        raise DomainError(f"arc_with_feet argument {arg!r} < 1")
    return acosh_stable(arg)


def thin_crossing_model(l_gamma: float, m: int) -> float:
    """Model value 2|log l| + m*l for a collar crossing winding m times.

    The true crossing length differs from this by an additive universal
    constant never asserted here; the estimator fits it empirically.
    """
    _check_positive("l_gamma", l_gamma)
    if l_gamma > TWO_ARCSINH1 * (1.0 + 1e-12):
        raise DomainError(f"l_gamma={l_gamma!r} outside the collar regime <= 2*arcsinh(1)")
    if m < 0 or int(m) != m:
        raise DomainError(f"winding count must be a non-negative integer, got {m!r}")
    return 2.0 * abs(math.log(l_gamma)) + m * l_gamma


def trace_to_length(tr: float) -> float:
    """Translation length 2*arccosh(|tr|/2) of a hyperbolic matrix trace."""
    if not math.isfinite(tr):
        raise DomainError(f"trace must be finite, got {tr!r}")
    a = abs(tr)
    if a <= 2.0:
        raise NotHyperbolic(f"|trace| = {a!r} <= 2: not a hyperbolic element")
    return 2.0 * acosh_stable(0.5 * a)


def length_to_trace(l: float) -> float:
    """Positive trace 2*cosh(l/2) realizing translation length l."""
    _check_positive("length", l)
    return 2.0 * math.cosh(0.5 * l)
