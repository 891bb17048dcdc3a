"""Special conformal transformations of light-cone coordinates.

The one-parameter group acting on (r, x4 = ct) rescales both coordinates
by a position-dependent conformal factor:

    r  -> r'  = gamma * r
    x4 -> x4' = gamma * (x4 - beta4 * s2)

with s2 = x4^2 - r^2 and gamma = 1 / (1 - 2*beta4*x4 + beta4^2*s2).

This module provides the finite transformation and its inverse, the
differential (Jacobian) map and slope map, the conserved ratio s2/r, the
metric rescaling factor, the first-order (Hill) approximations in the
inverse-time parameter alpha = 2*c*beta4, and a fixed-step Runge-Kutta
integration of the generating vector field used as an independent
cross-check of the closed forms.

Everything here is a pure function of immutable values; all operations
are safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import SPEED_OF_LIGHT
from .errors import (
    DomainCrossing,
    SingularTransform,
    SlopeSingular,
    StepDivergence,
    ZeroRadius,
)

# Relative tolerance below which the conformal-factor denominator is
# treated as singular.
EPS_SINGULAR = 1e-12

_DIRECTION_NORM_TOL = 1e-12


@dataclass(frozen=True)
class Event:
    """A point (r, x4) in an observer's light-cone coordinates.

    r is the radial distance (length, >= 0) and x4 = c*t the time
    coordinate (length, signed).  The optional direction is a unit
    3-vector; the transformations act on the radial magnitude only and
    never alter it.
    """

    r: float
    x4: float
    direction: tuple[float, float, float] | None = None

    def __post_init__(self):
        if not self.r >= 0.0:
            raise ValueError(f"r must be >= 0, got {self.r}")
        if self.direction is not None:
            dx, dy, dz = self.direction
            norm = math.sqrt(dx * dx + dy * dy + dz * dz)
            if abs(norm - 1.0) > _DIRECTION_NORM_TOL:
                raise ValueError(f"direction must be a unit vector, |d| = {norm!r}")


@dataclass(frozen=True)
class GroupParameter:
    """Selects a group element: beta4 in 1/length, c in length/time.

    beta4 is stored; the inverse-time form alpha = 2*c*beta4 is derived,
    so the pair always satisfies the relation exactly.
    """

    beta4: float
    c: float = SPEED_OF_LIGHT

    def __post_init__(self):
        if not self.c > 0.0:
            raise ValueError(f"c must be positive, got {self.c}")

    @classmethod
    def from_alpha(cls, alpha: float, c: float = SPEED_OF_LIGHT) -> "GroupParameter":
        """Build from the inverse-time parameter, beta4 = alpha / (2c)."""
        return cls(beta4=alpha / (2.0 * c), c=c)

    @property
    def alpha(self) -> float:
        """Inverse-time form of the parameter."""
        return 2.0 * self.c * self.beta4

    def negated(self) -> "GroupParameter":
        return GroupParameter(beta4=-self.beta4, c=self.c)


@dataclass(frozen=True)
class DifferentialCoeffs:
    """Coefficients of the differential map dr' = gamma2*(A dr + B dx4)."""

    A: float
    B: float
    gamma2: float


def interval_squared(e: Event) -> float:
    """Signed squared interval s2 = x4^2 - r^2 of an event."""
    return e.x4 * e.x4 - e.r * e.r


def line_element_squared(dr: float, dx4: float) -> float:
    """Squared line element |dr^2 - dx4^2| of a displacement."""
    return abs(dr * dr - dx4 * dx4)


def conformal_factor(p: GroupParameter, e: Event, eps: float = EPS_SINGULAR) -> float:
    """Conformal factor gamma = 1 / (1 - 2*beta4*x4 + beta4^2 * s2).

    gamma is positive everywhere on the admissible domain.  Raises
    SingularTransform when the denominator is within `eps` (relative to
    the magnitude of its terms) of zero, and DomainCrossing when the
    denominator is negative, i.e. the event lies beyond the singular
    surface where transformed coordinates diverge and flip sign.
    """
    b = p.beta4
    s2 = interval_squared(e)
    denom = 1.0 - 2.0 * b * e.x4 + b * b * s2
    scale = 1.0 + abs(2.0 * b * e.x4) + abs(b * b * s2)
    if abs(denom) < eps * scale:
        raise SingularTransform(
            f"conformal factor singular at (r={e.r}, x4={e.x4}) for beta4={b}"
        )
    if denom < 0.0:
        raise DomainCrossing(
            f"event (r={e.r}, x4={e.x4}) lies beyond the singular surface of beta4={b}"
        )
    return 1.0 / denom


def transform_finite(p: GroupParameter, e: Event, eps: float = EPS_SINGULAR) -> Event:
    """Finite transformation (r, x4) -> (gamma*r, gamma*(x4 - beta4*s2)).

    The direction vector, if present, is passed through unchanged.
    """
    g = conformal_factor(p, e, eps)
    s2 = interval_squared(e)
    return Event(r=g * e.r, x4=g * (e.x4 - p.beta4 * s2), direction=e.direction)


def transform_inverse_finite(p: GroupParameter, e_primed: Event, eps: float = EPS_SINGULAR) -> Event:
    """Inverse map: the finite transformation taken at -beta4."""
    return transform_finite(p.negated(), e_primed, eps)


def differential_coeffs(p: GroupParameter, e: Event) -> DifferentialCoeffs:
    """Polynomial coefficients A, B and the factor gamma^2 at an event.

    A = 1 - 2*beta4*x4 + beta4^2*(r^2 + x4^2) and B = 2*beta4*r*(1 - beta4*x4).
    Never raises; a singular gamma^2 only surfaces in dependent operations.
    """
    b = p.beta4
    a_coeff = 1.0 - 2.0 * b * e.x4 + b * b * (e.r * e.r + e.x4 * e.x4)
    b_coeff = 2.0 * b * e.r * (1.0 - b * e.x4)
    denom = 1.0 - 2.0 * b * e.x4 + b * b * interval_squared(e)
    d2 = denom * denom
    gamma2 = math.inf if d2 == 0.0 else 1.0 / d2
    return DifferentialCoeffs(A=a_coeff, B=b_coeff, gamma2=gamma2)


def differential_map(
    p: GroupParameter, e: Event, dr: float, dx4: float, eps: float = EPS_SINGULAR
) -> tuple[float, float]:
    """Push a displacement (dr, dx4) at event e through the transformation:

    dr' = gamma^2 * (A dr + B dx4),  dx4' = gamma^2 * (B dr + A dx4).
    """
    g = conformal_factor(p, e, eps)
    co = differential_coeffs(p, e)
    g2 = g * g
    return (g2 * (co.A * dr + co.B * dx4), g2 * (co.B * dr + co.A * dx4))


def slope_transform(
    p: GroupParameter, e: Event, slope: float, eps: float = EPS_SINGULAR
) -> float:
    """Moebius map of a coordinate slope dr/dx4:

    slope' = (A*slope + B) / (B*slope + A).

    Slopes +1 and -1 (light speed) are fixed points.  Raises
    SlopeSingular when the denominator is within eps of zero.
    """
    co = differential_coeffs(p, e)
    denom = co.B * slope + co.A
    if abs(denom) < eps:
        raise SlopeSingular(f"slope map singular: B*slope + A = {denom!r}")
    return (co.A * slope + co.B) / denom


def invariant_ratio(e: Event) -> float:
    """The conserved ratio s2/r = (x4^2 - r^2) / r; requires r > 0."""
    if e.r == 0.0:
        raise ZeroRadius("s2/r is undefined at r = 0")
    return interval_squared(e) / e.r


def interval_scale(p: GroupParameter, e: Event, eps: float = EPS_SINGULAR) -> float:
    """Factor gamma^2 by which squared line elements rescale at this event.

    The finite interval s2 itself rescales by a single factor of gamma;
    use conformal_factor for that.
    """
    g = conformal_factor(p, e, eps)
    return g * g


def hill_transform(p: GroupParameter, r: float, t: float) -> tuple[float, float]:
    """First-order map in alpha:

    r' = (1 + alpha*t) * r,  t' = t + alpha*(r^2/c^2 + t^2) / 2.

    Intended for |alpha*t| << 1; accepts all inputs.
    """
    a = p.alpha
    return (
        (1.0 + a * t) * r,
        t + a * (r * r / (p.c * p.c) + t * t) / 2.0,
    )


def hill_differentials(
    p: GroupParameter, r: float, t: float, dr: float, dt: float
) -> tuple[float, float]:
    """First-order map of displacements, the differential of hill_transform:

    dr' = dr*(1 + alpha*t) + alpha*r*dt,
    dt' = dt*(1 + alpha*t) + alpha*r*dr/c^2.
    """
    a = p.alpha
    return (
        dr * (1.0 + a * t) + a * r * dt,
        dt * (1.0 + a * t) + a * r * dr / (p.c * p.c),
    )


def hill_velocity(p: GroupParameter, r: float, v: float) -> float:
    """First-order velocity map v' = v + alpha*r*(1 - v^2/c^2).

    Light speed is preserved exactly: the correction vanishes at v = +-c.
    """
    return v + p.alpha * r * (1.0 - v * v / (p.c * p.c))


def flow_oracle(
    p: GroupParameter,
    e: Event,
    steps: int = 100_000,
    divergence_bound: float = 1e12,
) -> Event:
    """Integrate the generating vector field

        dr/dtau = 2*x4*r,  dx4/dtau = r^2 + x4^2

    from tau = 0 to tau = beta4 with classical fixed-step RK4.  Serves as
    the independent cross-check for transform_finite (the closed form is
    the exponential of this generator).

    Raises StepDivergence if |r| + |x4| exceeds divergence_bound, which
    signals an approach to the singular surface.
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if p.beta4 == 0.0:
        return Event(r=e.r, x4=e.x4, direction=e.direction)
    h = p.beta4 / steps
    r = e.r
    x = e.x4
    for _ in range(steps):
        k1r = 2.0 * x * r
        k1x = r * r + x * x
        r2 = r + 0.5 * h * k1r
        x2 = x + 0.5 * h * k1x
        k2r = 2.0 * x2 * r2
        k2x = r2 * r2 + x2 * x2
        r3 = r + 0.5 * h * k2r
        x3 = x + 0.5 * h * k2x
        k3r = 2.0 * x3 * r3
        k3x = r3 * r3 + x3 * x3
        r4 = r + h * k3r
        x4 = x + h * k3x
        k4r = 2.0 * x4 * r4
        k4x = r4 * r4 + x4 * x4
        r += h * (k1r + 2.0 * (k2r + k3r) + k4r) / 6.0
        x += h * (k1x + 2.0 * (k2x + k3x) + k4x) / 6.0
        if abs(r) + abs(x) > divergence_bound:
            raise StepDivergence(
                f"flow state exceeded bound {divergence_bound:g} (r={r:g}, x4={x:g})"
            )
    return Event(r=r, x4=x, direction=e.direction)
