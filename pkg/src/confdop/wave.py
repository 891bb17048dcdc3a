"""Null rays on the past light cone and the Doppler/Hubble relations.

Inbound electromagnetic waves travel at speed -c toward the observer at
the origin in both coordinate systems.  The conformal map stretches the
wavelength measured in the unprimed system relative to the primed one by
a factor that depends on emission epoch and range; at the origin the two
agree, which is why a received shift can be read either as pure source
velocity or as velocity plus an alpha*r kinematic term.
"""

from __future__ import annotations

from dataclasses import dataclass

from .conformal import Event, GroupParameter, transform_finite
from .constants import SPEED_OF_LIGHT
from .errors import NotPastCone


@dataclass(frozen=True)
class EmissionEvent:
    """Emission coordinates of one inbound wave in both systems.

    Times are stored negative (emission in the past).  Construct via
    from_unprimed so the two coordinate pairs are related by the finite
    transformation.
    """

    r_in: float
    t_in: float
    primed_r_in: float
    primed_t_in: float

    def __post_init__(self):
        if not (self.t_in < 0.0 and self.primed_t_in < 0.0):
            raise NotPastCone(
                f"emission times must be negative, got t={self.t_in}, t'={self.primed_t_in}"
            )

    @classmethod
    def from_unprimed(cls, p: GroupParameter, r_in: float, t_in: float) -> "EmissionEvent":
        ev = transform_finite(p, Event(r=r_in, x4=p.c * t_in))
        return cls(
            r_in=r_in,
            t_in=t_in,
            primed_r_in=ev.r,
            primed_t_in=ev.x4 / p.c,
        )


@dataclass(frozen=True)
class WaveSample:
    """Wavelengths of an inbound wave sample in both coordinate systems."""

    lambda_unprimed: float
    lambda_primed: float
    r_prime: float
    t_prime: float

    @classmethod
    def from_primed(
        cls, p: GroupParameter, lambda_primed: float, r_prime: float, t_prime: float
    ) -> "WaveSample":
        lam = wavelength_map(p, lambda_primed, r_prime, t_prime)
        return cls(
            lambda_unprimed=lam,
            lambda_primed=lambda_primed,
            r_prime=r_prime,
            t_prime=t_prime,
        )


@dataclass(frozen=True)
class DopplerObservable:
    """Fractional Doppler shift of an observed wavelength against a reference."""

    frac_shift: float
    lambda_ref: float
    lambda_obs: float

    @classmethod
    def from_wavelengths(cls, lambda_obs: float, lambda_ref: float) -> "DopplerObservable":
        return cls(
            frac_shift=(lambda_obs - lambda_ref) / lambda_ref,
            lambda_ref=lambda_ref,
            lambda_obs=lambda_obs,
        )

    @classmethod
    def from_frac_shift(cls, frac_shift: float, lambda_ref: float = 1.0) -> "DopplerObservable":
        return cls(
            frac_shift=frac_shift,
            lambda_ref=lambda_ref,
            lambda_obs=lambda_ref * (1.0 + frac_shift),
        )


@dataclass(frozen=True)
class HubbleInputs:
    """Inputs of the distance-velocity relation: c*shift = V + H0*R."""

    V: float
    R: float
    H0: float
    alpha: float = 0.0


def inbound_ray_coords(p: GroupParameter, r_prime: float, t_prime: float) -> tuple[float, float]:
    """Unprimed coordinates of a point riding an inbound null ray.

    Solves the first-order implicit pair

        r = (1 + alpha*|t|) * r',   |t| = |t'| + alpha*(r^2/c^2 + t^2)/2

    by a fixed-point pass seeded at (r', t') plus one refinement, which
    is adequate at second order in alpha.  For alpha > 0 the outputs
    satisfy r >= r' and |t| >= |t'|.
    """
    if t_prime >= 0.0:
        raise NotPastCone(f"inbound ray needs t' < 0, got {t_prime}")
    if r_prime < 0.0:
        raise ValueError(f"r_prime must be >= 0, got {r_prime}")
    a = p.alpha
    c2 = p.c * p.c
    r = r_prime
    t = t_prime
    for _ in range(2):
        abs_t = -t_prime + a * (r * r / c2 + t * t) / 2.0
        t = -abs_t
        r = (1.0 + a * abs_t) * r_prime
    return r, t


def inbound_ray_differentials(
    p: GroupParameter, r_prime: float, t_prime: float, dr_prime: float, dt_prime: float
) -> tuple[float, float]:
    """Map inbound-ray differentials from the primed to the unprimed system:

    dr = dr'*(1 - alpha*t') - alpha*r'*dt'
    dt = dt'*(1 - alpha*t)  - alpha*r'*dr'/c^2

    The dt relation carries the unprimed time t of the same point, here
    evaluated at first order from (r', t').  During inbound flight
    dr' < 0 and dt' > 0, and for small alpha the signs are preserved.
    """
    a = p.alpha
    c2 = p.c * p.c
    t = t_prime - a * (r_prime * r_prime / c2 + t_prime * t_prime) / 2.0
    dr = dr_prime * (1.0 - a * t_prime) - a * r_prime * dt_prime
    dt = dt_prime * (1.0 - a * t) - a * r_prime * dr_prime / c2
    return dr, dt


def wavelength_map(
    p: GroupParameter, lambda_primed: float, r_prime: float, t_prime: float
) -> float:
    """Wavelength in the unprimed system of a wave sample at (r', t'):

    lambda = lambda' * (1 + alpha*(|t'| + r'/c))

    The factor is >= 1 for alpha > 0 on the past cone and tends to 1 as
    the sample approaches the origin, where both wavelengths agree with
    the measured one.
    """
    if t_prime >= 0.0 and r_prime > 0.0:
        raise NotPastCone(
            f"wave sample must lie on the past cone, got (r'={r_prime}, t'={t_prime})"
        )
    return lambda_primed * (1.0 + p.alpha * (abs(t_prime) + r_prime / p.c))


def doppler_velocity(obs: DopplerObservable, c: float = SPEED_OF_LIGHT) -> float:
    """Source radial velocity read off a fractional shift: c * frac_shift.

    Nonrelativistic regime; interpreted as dr'/dt' of the source.
    """
    return c * obs.frac_shift


def doppler_model_conformal(p: GroupParameter, r, v):
    """Velocity-equivalent Doppler shift c*dLambda/Lambda_ref = v + alpha*r.

    Terms of order alpha*v^2/c^2 are dropped; hill_velocity in the
    transform module keeps them for cross-checks.  At alpha = 0 this is
    the plain shift-equals-velocity relation.  Accepts scalars or numpy
    arrays for r and v.
    """
    return v + p.alpha * r


def hubble_prediction(h: HubbleInputs) -> float:
    """Velocity-equivalent shift V + H0*R of the distance-velocity relation.

    Symbol-for-symbol the same arithmetic as doppler_model_conformal
    under (V, H0, R) <-> (v, alpha, r).
    """
    return h.V + h.H0 * h.R


def hubble_alpha_correction(H0: float, alpha: float) -> float:
    """Rate left for dynamics once the kinematic part is removed: H0 - alpha."""
    return H0 - alpha
