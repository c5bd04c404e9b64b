"""Stiffened-gas binary mixture closure.

Each component obeys the stiffened-gas equations of state

    p_k = R_k r_k theta - p_star_k,
    eps_k = c_vk theta + p_star_k / r_k + eps0_k,

with R_k = (gamma_k - 1) c_vk.  For a one-velocity, one-temperature,
one-pressure mixture the common pressure, given the partial densities
(rho1, rho2) and the internal energy density rho*eps, is the physical
root of a quadratic equation

    p^2 - b p - c = 0.

This module computes that root with cancellation-safe arithmetic and
derives the remaining per-node quantities (temperature, volume
fractions, phase densities, squared speed of sound), together with a
set of algebraic identities (root sum/product, alternative discriminant
and speed-of-sound forms, Wood speed relation, speed orderings) that
tests use to cross-check every code path.

All quantities are SI.  Functions are pure and thread-safe.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .exceptions import (
    InvalidPrimitive,
    NegativeDiscriminant,
    NonpositivePressure,
    NonpositiveTemperature,
    PoleAtP,
    ZeroDensity,
)

#: closure residuals above this are reported as a diagnostic warning
RESIDUAL_WARN_LEVEL = 1e-8


class ClosureResidualWarning(RuntimeWarning):
    """Rational-equation residual at the computed pressure is suspiciously large."""


@dataclass(frozen=True)
class GasParams:
    """Stiffened-gas constants for one component.

    gamma   -- adiabatic exponent, > 1
    cv      -- specific heat at constant volume, J/(kg K)
    p_star  -- stiffening pressure, Pa, >= 0
    eps0    -- specific energy offset, J/kg
    """

    gamma: float
    cv: float
    p_star: float = 0.0
    eps0: float = 0.0

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise InvalidPrimitive(f"gamma must exceed 1, got {self.gamma}")
        if not self.cv > 0.0:
            raise InvalidPrimitive(f"cv must be positive, got {self.cv}")
        if self.p_star < 0.0:
            raise InvalidPrimitive(f"p_star must be non-negative, got {self.p_star}")

    @property
    def r_gas(self) -> float:
        """Gas constant R_k = (gamma_k - 1) c_vk, J/(kg K)."""
        return (self.gamma - 1.0) * self.cv

    @property
    def cp(self) -> float:
        """Specific heat at constant pressure, gamma_k * c_vk, J/(kg K)."""
        return self.gamma * self.cv


@dataclass(frozen=True)
class GasPair:
    """The two components of a binary mixture."""

    g1: GasParams
    g2: GasParams

    def flat(self) -> tuple:
        """(R1, cv1, p_star1, eps0_1, R2, cv2, p_star2, eps0_2) for the array kernels."""
        return (
            self.g1.r_gas, self.g1.cv, self.g1.p_star, self.g1.eps0,
            self.g2.r_gas, self.g2.cv, self.g2.p_star, self.g2.eps0,
        )


@dataclass(frozen=True)
class ConservedState:
    """Conserved unknowns at one node: partial densities, momentum and total energy density."""

    rho1: float
    rho2: float
    mom: float
    etot: float

    def __post_init__(self):
        if self.rho1 < 0.0 or self.rho2 < 0.0:
            raise InvalidPrimitive("partial densities must be non-negative")
        if not self.rho1 + self.rho2 > 0.0:
            raise ZeroDensity("total density must be positive")

    @property
    def rho(self) -> float:
        return self.rho1 + self.rho2

    @property
    def u(self) -> float:
        return self.mom / self.rho

    @property
    def rho_eps(self) -> float:
        """Internal energy density rho*eps = E - (1/2) rho u^2."""
        return self.etot - 0.5 * self.mom * self.mom / self.rho


@dataclass(frozen=True)
class MixtureCoeffs:
    """Density-weighted mixture coefficients.

    rho R = <R_k rho_k>, rho c_v = <c_vk rho_k>, rho eps0 = <eps0_k rho_k>,
    gamma = R/c_v + 1 and sigma_k = R_k rho_k / (c_v rho) with
    sigma1 + sigma2 = gamma - 1.
    """

    rho: float
    r_mix: float
    cv_mix: float
    cp_mix: float
    gamma_mix: float
    eps0_mix: float
    sigma1: float
    sigma2: float


@dataclass(frozen=True)
class PressureSolution:
    """Both roots of the quadratic pressure equation p^2 - b p - c = 0.

    p_plus is the physical root; p_minus <= 0 is the parasitic one.
    d = b^2 + 4c is the discriminant, evaluated in the robust form
    (b1 - b2)^2 + 4 a1 a2.
    """

    b: float
    c: float
    d: float
    p_plus: float
    p_minus: float


@dataclass(frozen=True)
class Closure:
    """All derived per-node quantities for one conserved state."""

    p: float
    theta: float
    alpha1: float
    alpha2: float
    r1: float
    r2: float
    cs2: float
    coeffs: MixtureCoeffs
    residual: float


@dataclass(frozen=True)
class WoodRelation:
    """Wood speed of sound and the exact correction linking it to the mixture speed.

    1/(rho cs^2) = 1/(rho cs_wood^2) + correction, hence cs^2 <= cs_wood^2.
    relation_residual is the left side minus the right side.
    """

    cs_wood2: float
    correction: float
    relation_residual: float


@dataclass(frozen=True)
class PressureDifferential:
    """Coefficients of dp = P1 drho1 + P2 drho2 + P d(rho eps)."""

    p1: float
    p2: float
    p: float


def mixture_coefficients(rho1: float, rho2: float, gases: GasPair) -> MixtureCoeffs:
    """Density-weighted mixture coefficients for partial densities (rho1, rho2)."""
    rho = rho1 + rho2
    if not rho > 0.0:
        raise ZeroDensity(f"rho1 + rho2 = {rho} must be positive")
    g1, g2 = gases.g1, gases.g2
    r_rho = g1.r_gas * rho1 + g2.r_gas * rho2
    cv_rho = g1.cv * rho1 + g2.cv * rho2
    e0_rho = g1.eps0 * rho1 + g2.eps0 * rho2
    gamma = r_rho / cv_rho + 1.0
    return MixtureCoeffs(
        rho=rho,
        r_mix=r_rho / rho,
        cv_mix=cv_rho / rho,
        cp_mix=gamma * cv_rho / rho,
        gamma_mix=gamma,
        eps0_mix=e0_rho / rho,
        sigma1=g1.r_gas * rho1 / cv_rho,
        sigma2=g2.r_gas * rho2 / cv_rho,
    )


def _quadratic_terms(rho1, rho2, rho_eps, gases):
    """Raw coefficients (b1, b2, a1, a2, b, c, d) of the pressure quadratic.

    m = rho*(eps - eps0), a_k = sigma_k (m - p_star_k), b_k = a_k - p_star_k.
    The discriminant is evaluated as d = (b1 - b2)^2 + 4 a1 a2, which keeps
    full precision when one component vanishes (where b^2 + 4c cancels).
    """
    g1, g2 = gases.g1, gases.g2
    cv_rho = g1.cv * rho1 + g2.cv * rho2
    m = rho_eps - (g1.eps0 * rho1 + g2.eps0 * rho2)
    sigma1 = g1.r_gas * rho1 / cv_rho
    sigma2 = g2.r_gas * rho2 / cv_rho
    a1 = sigma1 * (m - g1.p_star)
    a2 = sigma2 * (m - g2.p_star)
    b1 = a1 - g1.p_star
    b2 = a2 - g2.p_star
    b = b1 + b2
    c = a1 * g2.p_star + a2 * g1.p_star - g1.p_star * g2.p_star
    d = (b1 - b2) ** 2 + 4.0 * a1 * a2
    return b, c, d, m, sigma1, sigma2


def pressure_quadratic(rho1: float, rho2: float, rho_eps: float, gases: GasPair) -> PressureSolution:
    """Solve the quadratic pressure equation for the state (rho1, rho2, rho*eps).

    The physical root is selected without cancellation:
    p_plus = (b + sqrt(d))/2 for b >= 0 and 2c/(sqrt(d) - b) otherwise.
    """
    if rho1 + rho2 <= 0.0:
        raise ZeroDensity(f"rho1 + rho2 = {rho1 + rho2} must be positive")
    b, c, d, _, _, _ = _quadratic_terms(rho1, rho2, rho_eps, gases)
    if d <= 0.0:
        raise NegativeDiscriminant(
            f"discriminant {d} <= 0 for rho1={rho1}, rho2={rho2}, rho_eps={rho_eps}"
        )
    sd = math.sqrt(d)
    p_plus = 0.5 * (b + sd) if b >= 0.0 else 2.0 * c / (sd - b)
    if p_plus <= 0.0:
        raise NonpositivePressure(f"physical pressure root {p_plus} <= 0")
    p_minus = -c / p_plus
    return PressureSolution(b=b, c=c, d=d, p_plus=p_plus, p_minus=p_minus)


def rational_residual(p: float, rho1: float, rho2: float, rho_eps: float, gases: GasPair) -> float:
    """Residual of the rational pressure equation at pressure p.

    Returns <sigma_k (m - p_star_k) / (p + p_star_k)> - 1, which vanishes at
    the physical pressure.  Serves as the independent oracle for the
    quadratic route and as a closure-validity diagnostic.
    """
    g1, g2 = gases.g1, gases.g2
    if p + g1.p_star == 0.0 or p + g2.p_star == 0.0:
        raise PoleAtP(f"p = {p} coincides with a pole -p_star_k")
    _, _, _, m, sigma1, sigma2 = _quadratic_terms(rho1, rho2, rho_eps, gases)
    return (
        sigma1 * (m - g1.p_star) / (p + g1.p_star)
        + sigma2 * (m - g2.p_star) / (p + g2.p_star)
        - 1.0
    )


def closure(state: ConservedState, gases: GasPair) -> Closure:
    """Close one conserved state: pressure, temperature, fractions, phase densities, sound speed.

    Temperature comes from the reciprocal-sum form
    theta = <R_k rho_k / (p + p_star_k)>^-1, which makes alpha1 + alpha2 = 1
    hold by construction; phase densities use r_k = (p + p_star_k)/(R_k theta),
    well defined even for a vanished component.
    """
    g1, g2 = gases.g1, gases.g2
    rho1, rho2 = state.rho1, state.rho2
    coeffs = mixture_coefficients(rho1, rho2, gases)
    sol = pressure_quadratic(rho1, rho2, state.rho_eps, gases)
    p = sol.p_plus
    t1 = g1.r_gas * rho1 / (p + g1.p_star)
    t2 = g2.r_gas * rho2 / (p + g2.p_star)
    theta = 1.0 / (t1 + t2)
    if not theta > 0.0:
        raise NonpositiveTemperature(f"theta = {theta} <= 0")
    alpha1 = t1 * theta
    alpha2 = t2 * theta
    r1 = (p + g1.p_star) / (g1.r_gas * theta)
    r2 = (p + g2.p_star) / (g2.r_gas * theta)
    cs2 = coeffs.gamma_mix * (p + g1.p_star) * (p + g2.p_star) / (coeffs.rho * math.sqrt(sol.d))
    residual = rational_residual(p, rho1, rho2, state.rho_eps, gases)
    if abs(residual) > RESIDUAL_WARN_LEVEL:
        warnings.warn(
            f"closure residual {residual:.3e} exceeds {RESIDUAL_WARN_LEVEL:g}",
            ClosureResidualWarning,
            stacklevel=2,
        )
    return Closure(
        p=p, theta=theta, alpha1=alpha1, alpha2=alpha2,
        r1=r1, r2=r2, cs2=cs2, coeffs=coeffs, residual=residual,
    )


def speed_of_sound(rho1: float, rho2: float, rho_eps: float, gases: GasPair) -> float:
    """Squared speed of sound, cs^2 = gamma (p + p_star1)(p + p_star2) / (rho sqrt(d))."""
    coeffs = mixture_coefficients(rho1, rho2, gases)
    sol = pressure_quadratic(rho1, rho2, rho_eps, gases)
    p = sol.p_plus
    return (
        coeffs.gamma_mix
        * (p + gases.g1.p_star)
        * (p + gases.g2.p_star)
        / (coeffs.rho * math.sqrt(sol.d))
    )


def speed_of_sound_alt(p_plus: float, rho1: float, rho2: float, rho_eps: float, gases: GasPair) -> float:
    """Radical-free squared speed of sound.

    cs^2 = (gamma / rho) <sigma_k (m - p_star_k) / (p + p_star_k)^2>^-1,
    algebraically identical to the sqrt(d) form for the physical pressure.
    """
    g1, g2 = gases.g1, gases.g2
    if p_plus + g1.p_star == 0.0 or p_plus + g2.p_star == 0.0:
        raise PoleAtP(f"p = {p_plus} coincides with a pole -p_star_k")
    coeffs = mixture_coefficients(rho1, rho2, gases)
    _, _, _, m, sigma1, sigma2 = _quadratic_terms(rho1, rho2, rho_eps, gases)
    s = (
        sigma1 * (m - g1.p_star) / (p_plus + g1.p_star) ** 2
        + sigma2 * (m - g2.p_star) / (p_plus + g2.p_star) ** 2
    )
    return coeffs.gamma_mix / (coeffs.rho * s)


def wood_relation(clo: Closure, gases: GasPair) -> WoodRelation:
    """Wood speed of sound and its exact relation to the mixture speed.

    1/(rho cs_wood^2) = <alpha_k / (r_k cs_k^2)> with cs_k^2 = gamma_k (gamma_k - 1) c_vk theta;
    the correction term (cp1 a1 r1)(cp2 a2 r2) (zeta1 - zeta2)^2 / (theta rho cp)
    with zeta_k = 1/(cp_k r_k) makes the relation an identity.  When either
    volume fraction vanishes the correction degenerates to zero and
    cs_wood^2 = cs^2 is returned.
    """
    g1, g2 = gases.g1, gases.g2
    theta = clo.theta
    if clo.alpha1 * clo.alpha2 <= 0.0:
        return WoodRelation(cs_wood2=clo.cs2, correction=0.0, relation_residual=0.0)
    cs1sq = g1.gamma * (g1.gamma - 1.0) * g1.cv * theta
    cs2sq = g2.gamma * (g2.gamma - 1.0) * g2.cv * theta
    inv_rho_cw2 = clo.alpha1 / (clo.r1 * cs1sq) + clo.alpha2 / (clo.r2 * cs2sq)
    rho = clo.coeffs.rho
    cs_wood2 = 1.0 / (rho * inv_rho_cw2)
    cp1r1 = g1.cp * clo.r1
    cp2r2 = g2.cp * clo.r2
    rho_cp = clo.alpha1 * cp1r1 + clo.alpha2 * cp2r2
    zeta1 = 1.0 / cp1r1
    zeta2 = 1.0 / cp2r2
    correction = (
        (clo.alpha1 * cp1r1) * (clo.alpha2 * cp2r2) / (theta * rho_cp) * (zeta1 - zeta2) ** 2
    )
    residual = 1.0 / (rho * clo.cs2) - inv_rho_cw2 - correction
    return WoodRelation(cs_wood2=cs_wood2, correction=correction, relation_residual=residual)


def speed_bounds(clo: Closure, gases: GasPair) -> tuple:
    """The three classical mixture sound-speed candidates, in provably increasing order.

    Returns (cs^2, gamma (gamma-1) c_v theta, <(rho_k/rho) cs_k^2>); the first
    inequality is strict unless p_star1 = p_star2 or a phase vanishes.
    """
    g1, g2 = gases.g1, gases.g2
    co = clo.coeffs
    mid = co.gamma_mix * (co.gamma_mix - 1.0) * co.cv_mix * clo.theta
    cs1sq = g1.gamma * (g1.gamma - 1.0) * g1.cv * clo.theta
    cs2sq = g2.gamma * (g2.gamma - 1.0) * g2.cv * clo.theta
    rho1 = clo.alpha1 * clo.r1
    rho2 = clo.alpha2 * clo.r2
    upper = (rho1 * cs1sq + rho2 * cs2sq) / co.rho
    return clo.cs2, mid, upper


def pressure_differential(rho1: float, rho2: float, rho_eps: float, gases: GasPair) -> PressureDifferential:
    """Coefficients of the exact differential dp = P1 drho1 + P2 drho2 + P d(rho eps).

    sqrt(d) P = (gamma - 1) p + sigma1 p_star2 + sigma2 p_star1 and
    sqrt(d) P1 =  G rho2 - sqrt(d) P eps0_1,
    sqrt(d) P2 = -G rho1 - sqrt(d) P eps0_2,
    where G = (R1 cv2 H1 - R2 cv1 H2) / (cv rho)^2 and
    H_k = (m - p_star_k)(p + p_star_other).  The density-weighted
    combination <(rho_k/rho) P_k> + ((rho eps + p)/rho) P reproduces cs^2.
    """
    g1, g2 = gases.g1, gases.g2
    sol = pressure_quadratic(rho1, rho2, rho_eps, gases)
    p = sol.p_plus
    sd = math.sqrt(sol.d)
    _, _, _, m, sigma1, sigma2 = _quadratic_terms(rho1, rho2, rho_eps, gases)
    gamma_m1 = sigma1 + sigma2
    big_p = (gamma_m1 * p + sigma1 * g2.p_star + sigma2 * g1.p_star) / sd
    cv_rho = g1.cv * rho1 + g2.cv * rho2
    h1 = (m - g1.p_star) * (p + g2.p_star)
    h2 = (m - g2.p_star) * (p + g1.p_star)
    g = (g1.r_gas * g2.cv * h1 - g2.r_gas * g1.cv * h2) / (cv_rho * cv_rho)
    p1 = g * rho2 / sd - big_p * g1.eps0
    p2 = -g * rho1 / sd - big_p * g2.eps0
    return PressureDifferential(p1=p1, p2=p2, p=big_p)


def volume_fraction_from_mass(y1: float, p: float, gases: GasPair) -> float:
    """Volume fraction of component 1 from its mass fraction at pressure p.

    alpha1 = g y1 / (g y1 + 1 - y1) with g = ((p + p_star2)/(p + p_star1)) R1/R2.
    """
    g1, g2 = gases.g1, gases.g2
    if not 0.0 <= y1 <= 1.0:
        raise InvalidPrimitive(f"mass fraction y1 = {y1} outside [0, 1]")
    if p + g1.p_star <= 0.0 or p + g2.p_star <= 0.0:
        raise PoleAtP(f"p = {p} not above both poles -p_star_k")
    g = (p + g2.p_star) / (p + g1.p_star) * (g1.r_gas / g2.r_gas)
    return g * y1 / (g * y1 + 1.0 - y1)


def primitive_to_conserved(p: float, u: float, theta: float, alpha1: float, gases: GasPair) -> ConservedState:
    """Assemble a conserved state from primitives (p, u, theta, alpha1).

    Uses r_k = (p + p_star_k)/(R_k theta), rho_k = alpha_k r_k and
    rho eps = c_v rho theta + <alpha_k p_star_k> + rho eps0.
    """
    g1, g2 = gases.g1, gases.g2
    if p + g1.p_star <= 0.0 or p + g2.p_star <= 0.0:
        raise InvalidPrimitive(f"p = {p} must exceed both -p_star_k")
    if not theta > 0.0:
        raise InvalidPrimitive(f"theta = {theta} must be positive")
    if not 0.0 <= alpha1 <= 1.0:
        raise InvalidPrimitive(f"alpha1 = {alpha1} outside [0, 1]")
    alpha2 = 1.0 - alpha1
    r1 = (p + g1.p_star) / (g1.r_gas * theta)
    r2 = (p + g2.p_star) / (g2.r_gas * theta)
    rho1 = alpha1 * r1
    rho2 = alpha2 * r2
    rho = rho1 + rho2
    cv_rho = g1.cv * rho1 + g2.cv * rho2
    e0_rho = g1.eps0 * rho1 + g2.eps0 * rho2
    rho_eps = cv_rho * theta + alpha1 * g1.p_star + alpha2 * g2.p_star + e0_rho
    return ConservedState(rho1=rho1, rho2=rho2, mom=rho * u, etot=0.5 * rho * u * u + rho_eps)
