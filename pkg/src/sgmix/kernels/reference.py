"""Pure-numpy implementations of the hot per-node kernels.

This is the fallback backend (SGMIX_BACKEND=numpy) and the reference
the numba backend is checked against.  Both backends implement the same
arithmetic; only the execution strategy differs.
"""

from __future__ import annotations

import numpy as np

STATUS_OK = 0
STATUS_NONFINITE = 1
STATUS_ZERO_DENSITY = 2
STATUS_BAD_DISCRIMINANT = 3
STATUS_BAD_PRESSURE = 4
STATUS_BAD_TEMPERATURE = 5


def _first_bad(mask) -> int:
    return int(np.argmax(mask))


def closure_fields(rho1, rho2, mom, etot, R1, cv1, pst1, e01, R2, cv2, pst2, e02):
    """Close every node of a conserved state.

    Returns (p, theta, cs2, u, alpha1, alpha2, cp, status, bad_idx); on a
    non-zero status the arrays are not meaningful and bad_idx points at the
    first offending node.
    """
    n = rho1.shape[0]
    zeros = np.zeros(n)
    bad = ~(
        np.isfinite(rho1) & np.isfinite(rho2) & np.isfinite(mom) & np.isfinite(etot)
    )
    if bad.any():
        return zeros, zeros, zeros, zeros, zeros, zeros, zeros, STATUS_NONFINITE, _first_bad(bad)

    rho = rho1 + rho2
    bad = rho <= 0.0
    if bad.any():
        return zeros, zeros, zeros, zeros, zeros, zeros, zeros, STATUS_ZERO_DENSITY, _first_bad(bad)

    u = mom / rho
    rho_eps = etot - 0.5 * mom * u
    cv_rho = cv1 * rho1 + cv2 * rho2
    m = rho_eps - (e01 * rho1 + e02 * rho2)
    sigma1 = R1 * rho1 / cv_rho
    sigma2 = R2 * rho2 / cv_rho
    a1 = sigma1 * (m - pst1)
    a2 = sigma2 * (m - pst2)
    b1 = a1 - pst1
    b2 = a2 - pst2
    b = b1 + b2
    c = a1 * pst2 + a2 * pst1 - pst1 * pst2
    d = (b1 - b2) ** 2 + 4.0 * a1 * a2
    bad = ~(d > 0.0)
    if bad.any():
        return zeros, zeros, zeros, zeros, zeros, zeros, zeros, STATUS_BAD_DISCRIMINANT, _first_bad(bad)

    sd = np.sqrt(d)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(b >= 0.0, 0.5 * (b + sd), 2.0 * c / (sd - b))
    bad = ~((p > 0.0) & (p + pst1 > 0.0) & (p + pst2 > 0.0))
    if bad.any():
        return zeros, zeros, zeros, zeros, zeros, zeros, zeros, STATUS_BAD_PRESSURE, _first_bad(bad)

    t1 = R1 * rho1 / (p + pst1)
    t2 = R2 * rho2 / (p + pst2)
    theta = 1.0 / (t1 + t2)
    bad = ~(theta > 0.0)
    if bad.any():
        return zeros, zeros, zeros, zeros, zeros, zeros, zeros, STATUS_BAD_TEMPERATURE, _first_bad(bad)

    alpha1 = t1 * theta
    alpha2 = t2 * theta
    gamma = (R1 * rho1 + R2 * rho2) / cv_rho + 1.0
    cs2 = gamma * (p + pst1) * (p + pst2) / (rho * sd)
    cp = gamma * cv_rho / rho
    return p, theta, cs2, u, alpha1, alpha2, cp, STATUS_OK, -1


def step_arrays(rho1, rho2, mom, etot, u, p, theta, cs2, cp,
                h, dt, a, a_s, a_pr, i_tau, qhd, qhd_visc, periodic,
                q_half, has_q, guard):
    """One explicit two-level update of the conserved fields.

    Fluxes live on the N half nodes; interior nodes are updated in flux
    form, then the boundary is closed by copy or periodically.  Component
    mass fluxes are assembled in product form [rho_k][u] - ([tau][u]
    d(rho_k u) + [rho_k] w_hat), which stays defined when a component
    vanishes over a whole cell.

    With `guard` enabled, each component mass flux is capped at the rate
    that would drain half of the donor node's content of that component
    in one step, and the capped excess is carried by the other component,
    so the mixture mass flux (and with it conservation and the discrete
    mixture balance identities) is preserved bitwise.  The cap can only
    engage where a nearly vanished component meets a sharp front; on
    healthy mixtures the fluxes are untouched.
    """
    rho = rho1 + rho2
    rho_eps = etot - 0.5 * mom * u
    cs = np.sqrt(cs2)
    tau = a * h / (cs + i_tau * np.abs(u))

    def average(v):
        return 0.5 * (v[:-1] + v[1:])

    def diff(v):
        return (v[1:] - v[:-1]) / h

    ra = average(rho)
    ua = average(u)
    pa = average(p)
    ta = average(tau)
    rea = average(rho_eps)
    r1a = average(rho1)
    r2a = average(rho2)
    du = diff(u)
    dp = diff(p)
    dth = diff(theta)
    what = (ta / ra) * (ra * ua * du + dp)
    cpa = average(cp)
    kappa = a_pr * ta * cpa * pa

    if qhd:
        w = what
        f1 = r1a * (ua - what)
        f2 = r2a * (ua - what)
        pi = ua * ra * what
        if qhd_visc:
            pi = pi + (a_s * ta * pa) * du
        mq = kappa * dth
    else:
        dr1u = diff(rho1 * u)
        dr2u = diff(rho2 * u)
        drhou = diff(mom)
        drho = diff(rho)
        drhoeps = diff(rho_eps)
        w = (ta / ra) * ua * drhou + what
        f1 = r1a * ua - (ta * ua * dr1u + r1a * what)
        f2 = r2a * ua - (ta * ua * dr2u + r2a * what)
        nu = a_s * ta * pa
        rc2a = average(rho * cs2)
        pi = nu * du + ua * ra * what + ta * (ua * dp + rc2a * du)
        mq = kappa * dth + ta * (drhoeps - ((rea + pa) / ra) * drho) * ua * ua
        if has_q:
            c2a = average(cs2)
            tha = average(theta)
            pi = pi - ta * (c2a / (cpa * tha)) * q_half
            mq = mq - ta * q_half * ua

    if guard:
        rate = 0.5 * h / dt
        hi1 = rate * rho1[:-1]
        lo1 = -rate * rho1[1:]
        hi2 = rate * rho2[:-1]
        lo2 = -rate * rho2[1:]
        e1 = f1 - np.minimum(np.maximum(f1, lo1), hi1)
        e2 = f2 - np.minimum(np.maximum(f2, lo2), hi2)
        f1 = f1 - e1 + e2
        f2 = f2 - e2 + e1

    j = ra * (ua - w)
    geo = u[:-1] * u[1:]
    fm = j * ua + pa - pi
    fe = (0.5 * ra * geo + rea + pa) * (ua - w) - 0.25 * h * h * dp * du - mq - pi * ua

    inv = dt / h
    n1 = rho1.copy()
    n2 = rho2.copy()
    nm = mom.copy()
    ne = etot.copy()
    n1[1:-1] = rho1[1:-1] - inv * (f1[1:] - f1[:-1])
    n2[1:-1] = rho2[1:-1] - inv * (f2[1:] - f2[:-1])
    nm[1:-1] = mom[1:-1] - inv * (fm[1:] - fm[:-1])
    ne[1:-1] = etot[1:-1] - inv * (fe[1:] - fe[:-1])
    if has_q:
        ne[1:-1] += dt * 0.5 * (q_half[:-1] + q_half[1:])

    if periodic:
        # node N is the same physical point as node 0
        n1[0] = rho1[0] - inv * (f1[0] - f1[-1])
        n2[0] = rho2[0] - inv * (f2[0] - f2[-1])
        nm[0] = mom[0] - inv * (fm[0] - fm[-1])
        ne[0] = etot[0] - inv * (fe[0] - fe[-1])
        if has_q:
            ne[0] += dt * 0.5 * (q_half[-1] + q_half[0])
        n1[-1] = n1[0]
        n2[-1] = n2[0]
        nm[-1] = nm[0]
        ne[-1] = ne[0]
    else:
        n1[0] = n1[1]
        n2[0] = n2[1]
        nm[0] = nm[1]
        ne[0] = ne[1]
        n1[-1] = n1[-2]
        n2[-1] = n2[-2]
        nm[-1] = nm[-2]
        ne[-1] = ne[-2]
    return n1, n2, nm, ne
