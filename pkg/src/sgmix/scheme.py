"""Explicit two-level, symmetric three-point QGD/QHD-regularized schemes in 1D.

The conserved unknowns (rho1, rho2, rho u, E) live on the main mesh.
Regularizing velocities, viscous stress and heat flux live on the
auxiliary mesh.  Each step evaluates all half-node fluxes from the old
level, updates interior nodes in flux form, closes the boundary (copy
or periodic) and re-closes the thermodynamics.  There are no limiters
and no positivity clamps: a state that can no longer be closed aborts
the run with the offending node and time.

The hot loops are delegated to sgmix.kernels (numba by default, numpy
fallback); the discrete balance identities for mixture mass, kinetic
and internal energy are evaluated here through the typed grid operators
as an independent route that cross-checks the kernels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import kernels
from .eos import GasPair
from .exceptions import (
    AdmissibilityLost,
    InvalidConfig,
    StateBlowup,
    ZeroAveragedDensity,
)
from .grid import (
    HalfField,
    Mesh,
    NodeField,
    avg,
    avg_star,
    delta,
    delta_star,
)

REG_QGD = "qgd"
REG_QHD = "qhd"
BOUNDARY_COPY = "copy"
BOUNDARY_PERIODIC = "periodic"


@dataclass
class SchemeConfig:
    """Numerical parameters of the regularized scheme.

    reg          -- "qgd" or "qhd"
    a            -- relaxation-time parameter in tau = a h / (c_s + i_tau |u|)
    beta         -- Courant parameter of the automatic time step
    a_s          -- Schmidt number multiplying the artificial viscosity
    prandtl_inv  -- reported inverse-Prandtl knob; the heat-conduction
                    coefficient is kappa = (1/prandtl_inv) [tau][c_p][p],
                    so smaller reported values mean stronger conduction
    i_tau        -- 0 or 1; whether |u| enters the tau denominator
    boundary     -- "copy" or "periodic"
    q_source     -- optional heat source Q(x), W/m^3, sampled on half nodes
    qhd_viscous  -- include the a_s viscosity in the QHD stress (off by
                    default; the plain QHD stress is [u][rho]w_hat only)
    mass_flux_guard -- donor-capacity cap on the component mass fluxes;
                    the capped excess moves to the other component, so the
                    mixture mass flux is preserved exactly.  Engages only
                    where a nearly vanished component meets a sharp front;
                    without it such fronts drive the vanished component's
                    partial density far enough below zero to break the
                    pressure closure (carbon-dioxide depressurization is
                    the canonical victim).  Disable for a strictly
                    unguarded scheme.
    """

    reg: str = REG_QGD
    a: float = 0.5
    beta: float = 0.2
    a_s: float = 1.0
    prandtl_inv: float = 1.0
    i_tau: int = 0
    boundary: str = BOUNDARY_COPY
    q_source: Optional[Callable] = None
    qhd_viscous: bool = False
    mass_flux_guard: bool = True

    def __post_init__(self):
        if self.reg not in (REG_QGD, REG_QHD):
            raise InvalidConfig(f"reg must be 'qgd' or 'qhd', got {self.reg!r}")
        if self.boundary not in (BOUNDARY_COPY, BOUNDARY_PERIODIC):
            raise InvalidConfig(f"boundary must be 'copy' or 'periodic', got {self.boundary!r}")
        if not self.a > 0.0:
            raise InvalidConfig("a must be positive")
        if not self.beta > 0.0:
            raise InvalidConfig("beta must be positive")
        if self.a_s < 0.0:
            raise InvalidConfig("a_s must be non-negative")
        if not self.prandtl_inv > 0.0:
            raise InvalidConfig("prandtl_inv must be positive")
        if self.i_tau not in (0, 1):
            raise InvalidConfig("i_tau must be 0 or 1")

    @property
    def kappa_factor(self) -> float:
        return 1.0 / self.prandtl_inv


_STATUS_MESSAGES = {
    kernels.STATUS_ZERO_DENSITY: "total density not positive",
    kernels.STATUS_BAD_DISCRIMINANT: "pressure-equation discriminant not positive",
    kernels.STATUS_BAD_PRESSURE: "pressure root not above every -p_star_k",
    kernels.STATUS_BAD_TEMPERATURE: "temperature not positive",
}


def _raise_status(status: int, node: int, time: float):
    if status == kernels.STATUS_NONFINITE:
        raise StateBlowup(
            f"non-finite value at node {node}, t = {time:.6e} s", node=node, time=time
        )
    msg = _STATUS_MESSAGES.get(status, "closure failed")
    raise AdmissibilityLost(
        f"{msg} at node {node}, t = {time:.6e} s", node=node, time=time
    )


@dataclass
class MeshState:
    """Conserved fields on a mesh plus the derived closure fields."""

    mesh: Mesh
    gases: GasPair
    rho1: np.ndarray = field(repr=False)
    rho2: np.ndarray = field(repr=False)
    mom: np.ndarray = field(repr=False)
    etot: np.ndarray = field(repr=False)
    p: np.ndarray = field(repr=False, default=None)
    theta: np.ndarray = field(repr=False, default=None)
    cs2: np.ndarray = field(repr=False, default=None)
    u: np.ndarray = field(repr=False, default=None)
    alpha1: np.ndarray = field(repr=False, default=None)
    alpha2: np.ndarray = field(repr=False, default=None)
    cp: np.ndarray = field(repr=False, default=None)

    @classmethod
    def from_conserved(cls, mesh: Mesh, gases: GasPair, rho1, rho2, mom, etot,
                       time: float = 0.0) -> "MeshState":
        """Build a state from conserved arrays, closing every node (raises if not closable)."""
        state = cls(
            mesh=mesh, gases=gases,
            rho1=np.ascontiguousarray(rho1, dtype=np.float64),
            rho2=np.ascontiguousarray(rho2, dtype=np.float64),
            mom=np.ascontiguousarray(mom, dtype=np.float64),
            etot=np.ascontiguousarray(etot, dtype=np.float64),
        )
        state.refresh(time=time)
        return state

    def refresh(self, time: float = 0.0):
        """Recompute the derived fields from the conserved ones."""
        out = kernels.closure_fields(self.rho1, self.rho2, self.mom, self.etot,
                                     *self.gases.flat())
        p, theta, cs2, u, alpha1, alpha2, cp, status, bad = out
        if status != kernels.STATUS_OK:
            _raise_status(status, bad, time)
        self.p, self.theta, self.cs2, self.u = p, theta, cs2, u
        self.alpha1, self.alpha2, self.cp = alpha1, alpha2, cp

    @property
    def rho(self) -> np.ndarray:
        return self.rho1 + self.rho2

    @property
    def rho_eps(self) -> np.ndarray:
        return self.etot - 0.5 * self.mom * self.u

    @property
    def y1(self) -> np.ndarray:
        return self.rho1 / self.rho

    @property
    def cs(self) -> np.ndarray:
        return np.sqrt(self.cs2)

    def node_field(self, name: str) -> NodeField:
        return NodeField(self.mesh, getattr(self, name))

    def copy(self) -> "MeshState":
        return MeshState(
            mesh=self.mesh, gases=self.gases,
            rho1=self.rho1.copy(), rho2=self.rho2.copy(),
            mom=self.mom.copy(), etot=self.etot.copy(),
            p=self.p.copy(), theta=self.theta.copy(), cs2=self.cs2.copy(),
            u=self.u.copy(), alpha1=self.alpha1.copy(), alpha2=self.alpha2.copy(),
            cp=self.cp.copy(),
        )


@dataclass(frozen=True)
class CoefficientFields:
    """Relaxation time on the main mesh, artificial viscosity and conduction on the half mesh."""

    tau: NodeField
    nu: HalfField
    kappa: HalfField


@dataclass(frozen=True)
class RegularizerFields:
    """Regularizing velocities, viscous stress and (minus) heat flux on the half mesh.

    minus_q holds -q, the quantity the energy flux actually uses.
    """

    w1: HalfField
    w2: HalfField
    w: HalfField
    w_hat: HalfField
    pi: HalfField
    minus_q: HalfField


def _q_half(cfg: SchemeConfig, mesh: Mesh):
    if cfg.q_source is None:
        return None
    return np.asarray(cfg.q_source(mesh.half_x()), dtype=np.float64)


def coefficients(state: MeshState, cfg: SchemeConfig) -> CoefficientFields:
    """tau = a h / (c_s + i_tau |u|) on main nodes; nu = a_s [tau][p] and
    kappa = (1/prandtl_inv) [tau][c_p][p] on half nodes."""
    mesh = state.mesh
    tau_v = cfg.a * mesh.h / (state.cs + cfg.i_tau * np.abs(state.u))
    tau = NodeField(mesh, tau_v)
    ta = avg(tau)
    pa = avg(state.node_field("p"))
    cpa = avg(state.node_field("cp"))
    nu = cfg.a_s * ta * pa
    kappa = cfg.kappa_factor * ta * cpa * pa
    return CoefficientFields(tau=tau, nu=nu, kappa=kappa)


def _mixture_regularizers(state: MeshState, cfg: SchemeConfig):
    """(w_hat, w, pi, minus_q) half fields via the typed grid operators.

    This is the reference route used by the balance-identity evaluator;
    the step kernels fuse the same formulas.
    """
    mesh = state.mesh
    coeff = coefficients(state, cfg)
    rho = state.node_field("rho")
    u = state.node_field("u")
    p = state.node_field("p")
    theta = state.node_field("theta")
    ra, ua, pa = avg(rho), avg(u), avg(p)
    ta = avg(coeff.tau)
    du, dp = delta(u), delta(p)
    inv_ra = HalfField(mesh, 1.0 / ra.values)
    w_hat = ta * inv_ra * (ra * ua * du + dp)

    qh = _q_half(cfg, mesh)
    if cfg.reg == REG_QHD:
        w = w_hat
        pi = ua * ra * w_hat
        if cfg.qhd_viscous:
            pi = pi + coeff.nu * du
        minus_q = coeff.kappa * delta(theta)
        return coeff, w_hat, w, pi, minus_q, qh

    rho_eps = state.node_field("rho_eps")
    mom = NodeField(mesh, state.mom)
    rea = avg(rho_eps)
    w = ta * inv_ra * ua * delta(mom) + w_hat
    rc2 = NodeField(mesh, state.rho * state.cs2)
    pi = coeff.nu * du + ua * ra * w_hat + ta * (ua * dp + avg(rc2) * du)
    minus_q = coeff.kappa * delta(theta) + ta * (
        (delta(rho_eps) - inv_ra * (rea + pa) * delta(rho)) * ua * ua
    )
    if qh is not None:
        c2a = avg(state.node_field("cs2"))
        cpa = avg(state.node_field("cp"))
        tha = avg(theta)
        qf = HalfField(mesh, qh)
        pi = pi - ta * HalfField(mesh, c2a.values / (cpa.values * tha.values)) * qf
        minus_q = minus_q - ta * qf * ua
    return coeff, w_hat, w, pi, minus_q, qh


def regularizers(state: MeshState, cfg: SchemeConfig) -> RegularizerFields:
    """All regularizer fields, including the per-component velocities w_k.

    For QGD, w_k = ([tau]/[rho_k])[u] delta(rho_k u) + w_hat requires
    [rho_k] > 0 on every half node; a vanished component raises
    ZeroAveragedDensity (the step itself never divides by [rho_k]
    because the mass flux only needs the product [rho_k] w_k).
    """
    mesh = state.mesh
    coeff, w_hat, w, pi, minus_q, _ = _mixture_regularizers(state, cfg)
    if cfg.reg == REG_QHD:
        return RegularizerFields(w1=w_hat, w2=w_hat, w=w_hat, w_hat=w_hat,
                                 pi=pi, minus_q=minus_q)
    u = state.node_field("u")
    ua = avg(u)
    ta = avg(coeff.tau)
    ws = []
    for rho_k in (state.rho1, state.rho2):
        rka = avg(NodeField(mesh, rho_k))
        if np.any(rka.values == 0.0):
            idx = int(np.argmax(rka.values == 0.0))
            raise ZeroAveragedDensity(
                f"averaged partial density vanishes at half node {idx}"
            )
        rku = NodeField(mesh, rho_k * state.u)
        wk = ta * HalfField(mesh, 1.0 / rka.values) * ua * delta(rku) + w_hat
        ws.append(wk)
    return RegularizerFields(w1=ws[0], w2=ws[1], w=w, w_hat=w_hat, pi=pi, minus_q=minus_q)


def time_step(state: MeshState, cfg: SchemeConfig, remaining: Optional[float] = None) -> float:
    """Automatic step dt = beta h / max_i(c_s,i + |u_i|), clipped to the remaining time."""
    dt = cfg.beta * state.mesh.h / float(np.max(state.cs + np.abs(state.u)))
    if remaining is not None and dt > remaining:
        dt = remaining
    return dt


def step(state: MeshState, cfg: SchemeConfig, dt: float, t: float = 0.0) -> MeshState:
    """Advance one explicit step of size dt; raises if the new state cannot be closed."""
    if not dt > 0.0:
        raise InvalidConfig(f"dt must be positive, got {dt}")
    mesh = state.mesh
    qh = _q_half(cfg, mesh)
    has_q = qh is not None
    if qh is None:
        qh = np.zeros(mesh.n_cells)
    n1, n2, nm, ne = kernels.step_arrays(
        state.rho1, state.rho2, state.mom, state.etot,
        state.u, state.p, state.theta, state.cs2, state.cp,
        mesh.h, dt, cfg.a, cfg.a_s, cfg.kappa_factor, cfg.i_tau,
        cfg.reg == REG_QHD, cfg.qhd_viscous,
        cfg.boundary == BOUNDARY_PERIODIC, qh, has_q,
        cfg.mass_flux_guard,
    )
    return MeshState.from_conserved(mesh, state.gases, n1, n2, nm, ne, time=t + dt)


def conserved_totals(state: MeshState, boundary: str = BOUNDARY_COPY) -> np.ndarray:
    """h-weighted totals of (rho1, rho2, rho u, E).

    With a periodic boundary node N duplicates node 0 and is not counted.
    """
    sl = slice(0, -1) if boundary == BOUNDARY_PERIODIC else slice(None)
    h = state.mesh.h
    return np.array([
        h * float(np.sum(state.rho1[sl])),
        h * float(np.sum(state.rho2[sl])),
        h * float(np.sum(state.mom[sl])),
        h * float(np.sum(state.etot[sl])),
    ])


@dataclass(frozen=True)
class IdentityResiduals:
    """Interior-node residuals of the discrete mass/kinetic/internal energy balances.

    Each residual comes with the per-node sum of absolute term magnitudes;
    max_normalized() reports max |residual| / scale per identity.
    """

    mass: NodeField
    mass_scale: NodeField
    kinetic: NodeField
    kinetic_scale: NodeField
    internal: NodeField
    internal_scale: NodeField

    def max_normalized(self) -> tuple:
        out = []
        for res, scale in ((self.mass, self.mass_scale),
                           (self.kinetic, self.kinetic_scale),
                           (self.internal, self.internal_scale)):
            r = np.abs(res.values[1:-1])
            s = scale.values[1:-1]
            ratio = np.where(s > 0.0, r / np.where(s > 0.0, s, 1.0),
                             np.where(r > 0.0, np.inf, 0.0))
            out.append(float(np.max(ratio)) if ratio.size else 0.0)
        return tuple(out)


def energy_identity_residuals(state: MeshState, new: MeshState, cfg: SchemeConfig,
                              dt: float) -> IdentityResiduals:
    """Evaluate the three exact discrete balance identities for one completed step.

    The identities are algebraic consequences of the update equations, so
    for a consistent (state, new) pair every residual sits at round-off of
    the local term magnitudes.  Evaluation goes through the typed grid
    operators, independently of the fused step kernels.
    """
    mesh = state.mesh
    _, _, w, pi, minus_q, qh = _mixture_regularizers(state, cfg)
    rho_o = state.node_field("rho")
    rho_n = new.node_field("rho")
    u_o = state.node_field("u")
    u_n = new.node_field("u")
    p_o = state.node_field("p")
    re_o = state.node_field("rho_eps")
    re_n = new.node_field("rho_eps")

    ua = avg(u_o)
    j = avg(rho_o) * (ua - w)  # total mass flux [rho]([u] - w)

    def residual(terms):
        total = terms[0]
        scale = NodeField(mesh, np.abs(terms[0].values))
        for term in terms[1:]:
            total = total + term
            scale = scale + NodeField(mesh, np.abs(term.values))
        return total, scale

    inv_dt = 1.0 / dt
    # mass: d_t rho + delta* j = 0
    mass_terms = [
        NodeField(mesh, (rho_n.values - rho_o.values) * inv_dt),
        delta_star(j),
    ]
    mass, mass_scale = residual(mass_terms)

    # kinetic: (1/2) d_t(rho u^2) - (dt/2) rho_new (d_t u)^2
    #          + (1/2) delta*(j u_- u_+) + (delta*[p]) u = (delta* Pi) u
    dtu = NodeField(mesh, (u_n.values - u_o.values) * inv_dt)
    geo = HalfField(mesh, u_o.values[:-1] * u_o.values[1:])
    kin_terms = [
        NodeField(mesh, 0.5 * (rho_n.values * u_n.values**2 - rho_o.values * u_o.values**2) * inv_dt),
        NodeField(mesh, -0.5 * dt * rho_n.values * dtu.values**2),
        0.5 * delta_star(j * geo),
        delta_star(avg(p_o)) * u_o,
        -1.0 * (delta_star(pi) * u_o),
    ]
    kinetic, kinetic_scale = residual(kin_terms)

    # internal: d_t(rho eps) + (dt/2) rho_new (d_t u)^2 + delta*([rho eps]([u]-w))
    #           = -delta* q + [Pi delta u]* - p delta*([u]-w) + [w delta p]* + [Q]*
    int_terms = [
        NodeField(mesh, (re_n.values - re_o.values) * inv_dt),
        NodeField(mesh, 0.5 * dt * rho_n.values * dtu.values**2),
        delta_star(avg(re_o) * (ua - w)),
        -1.0 * delta_star(minus_q),
        -1.0 * avg_star(pi * delta(u_o)),
        p_o * delta_star(ua - w),
        -1.0 * avg_star(w * delta(p_o)),
    ]
    if qh is not None:
        int_terms.append(-1.0 * avg_star(HalfField(mesh, qh)))
    internal, internal_scale = residual(int_terms)

    return IdentityResiduals(
        mass=mass, mass_scale=mass_scale,
        kinetic=kinetic, kinetic_scale=kinetic_scale,
        internal=internal, internal_scale=internal_scale,
    )


@dataclass
class StepDiagnostics:
    """Per-step record: time, step size, conserved totals, identity residuals, field ranges."""

    step: int
    t: float
    dt: float
    mass1: float
    mass2: float
    momentum: float
    energy: float
    res_mass: float
    res_kinetic: float
    res_internal: float
    p_min: float
    p_max: float
    theta_min: float
    theta_max: float
    alpha1_min: float
    alpha1_max: float


@dataclass
class RunResult:
    """Final state plus the per-step diagnostic history of one run."""

    final: MeshState
    history: list
    t_final: float
    n_steps: int
    min_rho1: float
    min_rho2: float


def run(initial: MeshState, cfg: SchemeConfig, t_fin: float,
        diag_stride: int = 1, record_residuals: bool = True,
        max_steps: int = 2_000_000) -> RunResult:
    """March from the initial state to exactly t_fin with automatic steps.

    Diagnostics are recorded every diag_stride steps (0 disables them; the
    final step is always recorded when the stride is non-zero).  Identity
    residuals are evaluated only on recorded steps since they cost about
    as much as the step itself.
    """
    if t_fin < 0.0:
        raise InvalidConfig("t_fin must be non-negative")
    state = initial
    t = 0.0
    steps = 0
    history = []
    min_rho1 = float(np.min(initial.rho1))
    min_rho2 = float(np.min(initial.rho2))
    while t < t_fin:
        if steps >= max_steps:
            raise StateBlowup(f"exceeded {max_steps} steps at t = {t:.6e} s", time=t)
        remaining = t_fin - t
        dt = time_step(state, cfg, remaining=remaining)
        new = step(state, cfg, dt, t=t)
        steps += 1
        t = t_fin if dt == remaining else t + dt
        min_rho1 = min(min_rho1, float(np.min(new.rho1)))
        min_rho2 = min(min_rho2, float(np.min(new.rho2)))
        if diag_stride and (steps % diag_stride == 0 or t == t_fin):
            if record_residuals:
                res = energy_identity_residuals(state, new, cfg, dt).max_normalized()
            else:
                res = (np.nan, np.nan, np.nan)
            totals = conserved_totals(new, cfg.boundary)
            history.append(StepDiagnostics(
                step=steps, t=t, dt=dt,
                mass1=totals[0], mass2=totals[1], momentum=totals[2], energy=totals[3],
                res_mass=res[0], res_kinetic=res[1], res_internal=res[2],
                p_min=float(np.min(new.p)), p_max=float(np.max(new.p)),
                theta_min=float(np.min(new.theta)), theta_max=float(np.max(new.theta)),
                alpha1_min=float(np.min(new.alpha1)), alpha1_max=float(np.max(new.alpha1)),
            ))
        state = new
    return RunResult(final=state, history=history, t_final=t, n_steps=steps,
                     min_rho1=min_rho1, min_rho2=min_rho2)
