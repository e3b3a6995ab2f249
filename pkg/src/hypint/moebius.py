"""Orientation-preserving isometries of the hyperbolic plane.

Upper-half-plane model. Isometries are unit-determinant 2x2 real matrices up
to sign; boundary points live on RP^1 as projective 2-vectors so that infinity
needs no special casing. Crossing predicates for oriented axes are decided by
determinant signs, with a single sign convention: the crossing of axis b over
axis a counts +1 when b runs left-to-right across a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from .errors import DomainError, NotHyperbolic, NumericallyAmbiguous, SharedGeodesic
from .hyptrig import trace_to_length

DET_TOL = 1e-9
ENDPOINT_TOL = 1e-9

Crossing = Tuple[str, int]  # ("cross", +1/-1); other outcomes are plain strings


def _normalize_det(m: np.ndarray) -> np.ndarray:
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if not np.isfinite(det) or det <= 0.0:
        raise DomainError(f"matrix determinant {det!r} is not positive")
    if abs(det - 1.0) > DET_TOL:
        m = m / math.sqrt(det)
    return m


class Isometry:
    """Element of PSL(2,R) stored as a det-1 matrix (sign immaterial)."""

    __slots__ = ("m",)

    def __init__(self, m) -> None:
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2):
            raise DomainError(f"expected a 2x2 matrix, got shape {m.shape}")
        self.m = _normalize_det(m)

    @classmethod
    def raw(cls, m: np.ndarray) -> "Isometry":
        """Wrap a matrix already known to have det 1.

        Products of det-1 factors drift from det 1 only by rounding, while
        recomputing ad - bc cancels catastrophically once entries are large;
        internal compositions therefore skip the check.
        """
        iso = object.__new__(cls)
        iso.m = m
        return iso

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(np.eye(2))

    @classmethod
    def translation(cls, l: float) -> "Isometry":
        """Translation by l along the axis (0, infinity), upward for l > 0."""
        e = math.exp(0.5 * l)
        return cls(np.array([[e, 0.0], [0.0, 1.0 / e]]))

    @classmethod
    def perp_translation(cls, d: float) -> "Isometry":
        """Translation by d along the unit semicircle, from -1 toward +1."""
        c, s = math.cosh(0.5 * d), math.sinh(0.5 * d)
        return cls(np.array([[c, s], [s, c]]))

    @classmethod
    def half_turn_flip(cls) -> "Isometry":
        """z -> -1/z: reverses the axis (0, infinity) and swaps its sides."""
        return cls(np.array([[0.0, -1.0], [1.0, 0.0]]))

    def compose(self, other: "Isometry") -> "Isometry":
        return Isometry.raw(self.m @ other.m)

    __matmul__ = compose

    def inverse(self) -> "Isometry":
        a, b, c, d = self.m.ravel()
        return Isometry.raw(np.array([[d, -b], [-c, a]]))

    def trace(self) -> float:
        return float(self.m[0, 0] + self.m[1, 1])

    def is_hyperbolic(self, margin: float = 0.0) -> bool:
        return abs(self.trace()) > 2.0 + margin

    def translation_length(self) -> float:
        return trace_to_length(self.trace())

    def apply(self, z: complex) -> complex:
        """Moebius action on an interior point of the upper half-plane."""
        a, b, c, d = self.m.ravel()
        return (a * z + b) / (c * z + d)

    __call__ = apply

    def apply_boundary(self, v: np.ndarray) -> np.ndarray:
        return self.m @ v

    def __repr__(self) -> str:
        return f"Isometry({self.m.tolist()})"


def displacement(iso: Isometry, z: complex = 1j) -> float:
    """Hyperbolic distance from z to iso(z)."""
    w = iso.apply(z)
    d2 = abs(w - z) ** 2
    return math.acosh(1.0 + d2 / (2.0 * z.imag * w.imag))


def dist(z: complex, w: complex) -> float:
    return math.acosh(1.0 + abs(w - z) ** 2 / (2.0 * z.imag * w.imag))


def _normalize_point(v: np.ndarray) -> np.ndarray:
    n = math.hypot(v[0], v[1])
    if n == 0.0:
        raise DomainError("zero projective vector")
    v = v / n
    # deterministic sign: make the larger component positive
    if abs(v[0]) >= abs(v[1]):
        if v[0] < 0:
            v = -v
    elif v[1] < 0:
        v = -v
    return v


def boundary_point(x: Union[float, None]) -> np.ndarray:
    """Projective vector for a real boundary point; None means infinity."""
    if x is None:
        return np.array([1.0, 0.0])
    return _normalize_point(np.array([float(x), 1.0]))


@dataclass(frozen=True)
class Axis:
    """Oriented geodesic, from repelling to attracting boundary point."""

    start: np.ndarray  # repelling fixed point, normalized projective vector
    end: np.ndarray  # attracting fixed point

    def reversed(self) -> "Axis":
        return Axis(self.end, self.start)

    def transformed(self, iso: Isometry) -> "Axis":
        return Axis(_normalize_point(iso.m @ self.start), _normalize_point(iso.m @ self.end))

    def endpoints_real(self) -> Tuple[Union[float, None], Union[float, None]]:
        """Endpoints as reals (None for infinity), for display."""
        out = []
        for v in (self.start, self.end):
            out.append(None if abs(v[1]) < 1e-14 else v[0] / v[1])
        return tuple(out)


def axis_of(iso: Isometry) -> Axis:
    """Oriented axis of a hyperbolic isometry."""
    tr = iso.trace()
    if abs(tr) <= 2.0:
        raise NotHyperbolic(f"|trace| = {abs(tr)!r} <= 2 has no axis")
    a, b, c, d = iso.m.ravel()
    disc = math.sqrt(tr * tr - 4.0)
    # eigenvalues (tr +- disc)/2; the attracting one has the larger modulus
    lam_plus = 0.5 * (tr + disc) if tr > 0 else 0.5 * (tr - disc)
    lam_minus = (a * d - b * c) / lam_plus
    vs = []
    for lam in (lam_minus, lam_plus):
        # kernel of (m - lam I): pick the better-conditioned row
        r1 = np.array([b, lam - a])
        r2 = np.array([lam - d, c])
        v = r1 if math.hypot(*r1) >= math.hypot(*r2) else r2
        vs.append(_normalize_point(v))
    return Axis(vs[0], vs[1])


def _det2(u: np.ndarray, v: np.ndarray) -> float:
    return u[0] * v[1] - u[1] * v[0]


def axes_cross(a: Axis, b: Axis, tol: float = ENDPOINT_TOL):
    """Classify the relative position of two oriented axes.

    Returns "disjoint", "shared", or ("cross", sign) with sign +1 when b
    crosses a left-to-right. Raises NumericallyAmbiguous when an endpoint
    pairing is below tolerance without the axes sharing both endpoints.
    """
    d_rr = _det2(a.start, b.start)
    d_ra = _det2(a.start, b.end)
    d_ar = _det2(a.end, b.start)
    d_aa = _det2(a.end, b.end)
    same = (abs(d_rr) < tol and abs(d_aa) < tol)
    opposite = (abs(d_ra) < tol and abs(d_ar) < tol)
    if same or opposite:
        return "shared"
    small = min(abs(d_rr), abs(d_ra), abs(d_ar), abs(d_aa))
    if small < tol:
        raise NumericallyAmbiguous(f"axis endpoint separation {small!r} below tolerance")
    # b's endpoints separate a's endpoints iff the cross-ratio is negative
    if (d_rr * d_aa) * (d_ra * d_ar) < 0.0:
        # +1 iff b.start lies on the left of a, i.e. its chart coordinate
        # x = D(b.start, a.start)/D(b.start, a.end) satisfies h*x < 0
        h = _det2(a.start, a.end)  # chart handedness
        s = math.copysign(1.0, h) * math.copysign(1.0, d_rr) * math.copysign(1.0, d_ar)
        return ("cross", -int(s))
    return "disjoint"


def crossing_parameter(a: Axis, b: Axis, tol: float = ENDPOINT_TOL) -> float:
    """Signed position along a of its crossing with b.

    Origin and scale come from a's normalized endpoint vectors, so parameters
    of different crossings along the same Axis object are comparable.
    """
    outcome = axes_cross(a, b, tol)
    if outcome == "shared":
        raise SharedGeodesic("axes coincide")
    if outcome == "disjoint":
        raise DomainError("axes do not cross")
    # chart sending a.start -> 0, a.end -> inf; x(v) = D(v, a.start)/D(v, a.end)
    x_r = _det2(b.start, a.start) / _det2(b.start, a.end)
    x_a = _det2(b.end, a.start) / _det2(b.end, a.end)
    prod = -x_r * x_a
    if prod <= 0.0:
        raise NumericallyAmbiguous("crossing height collapsed")
    # the chart pins a.start -> 0 and a.end -> inf, so position toward a.end
    # is increasing log-height whatever the chart handedness
    return 0.5 * math.log(prod)


def point_parameter(a: Axis, z: complex) -> float:
    """Parameter along a of the foot of the perpendicular from interior point z."""
    # chart matrix rows J*start, J*end with J = [[0,-1],[1,0]] applied via dets
    m = np.array([[a.start[1], -a.start[0]], [a.end[1], -a.end[0]]])
    num = m[0, 0] * z + m[0, 1]
    den = m[1, 0] * z + m[1, 1]
    w = num / den
    if w.imag == 0.0:
        raise DomainError("point lies on the axis boundary")
    return math.log(abs(w))


def perp_foot_height(x1: float, x2: float) -> float:
    """Height of the common perpendicular foot on (0, inf) of the geodesic over [x1, x2].

    Requires x1*x2 > 0 (geodesic disjoint from the imaginary axis).
    """
    p = x1 * x2
    if p <= 0.0:
        raise DomainError("geodesic not disjoint from the imaginary axis")
    return math.sqrt(p)


def side_of(a: Axis, z: complex, tol: float = 1e-12) -> int:
    """-1 if z lies left of the oriented axis a, +1 if right."""
    m = np.array([[a.start[1], -a.start[0]], [a.end[1], -a.end[0]]])
    w = (m[0, 0] * z + m[0, 1]) / (m[1, 0] * z + m[1, 1])
    h = math.copysign(1.0, _det2(a.start, a.end))
    val = h * w.real
    if abs(val) < tol:
        raise NumericallyAmbiguous("point is on the axis within tolerance")
    return 1 if val > 0 else -1


def map_to_standard(a: Axis) -> Isometry:
    """Isometry carrying the oriented axis a to (0, infinity), deterministically."""
    m = np.array([[a.start[1], -a.start[0]], [a.end[1], -a.end[0]]])
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if det < 0:
        m = np.array([[-m[0, 0], -m[0, 1]], [m[1, 0], m[1, 1]]])
    return Isometry(m)
