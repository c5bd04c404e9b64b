"""Numba-compiled implementations of the hot per-node kernels.

Same arithmetic as kernels.reference, written as explicit loops for JIT
compilation.  Selected by default when numba imports cleanly.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .reference import (
    STATUS_BAD_DISCRIMINANT,
    STATUS_BAD_PRESSURE,
    STATUS_BAD_TEMPERATURE,
    STATUS_NONFINITE,
    STATUS_OK,
    STATUS_ZERO_DENSITY,
)


@njit(cache=True)
def closure_fields(rho1, rho2, mom, etot, R1, cv1, pst1, e01, R2, cv2, pst2, e02):
    n = rho1.shape[0]
    p = np.zeros(n)
    theta = np.zeros(n)
    cs2 = np.zeros(n)
    u = np.zeros(n)
    alpha1 = np.zeros(n)
    alpha2 = np.zeros(n)
    cp = np.zeros(n)
    for i in range(n):
        r1 = rho1[i]
        r2 = rho2[i]
        mo = mom[i]
        et = etot[i]
        if not (np.isfinite(r1) and np.isfinite(r2) and np.isfinite(mo) and np.isfinite(et)):
            return p, theta, cs2, u, alpha1, alpha2, cp, STATUS_NONFINITE, i
        rho = r1 + r2
        if rho <= 0.0:
            return p, theta, cs2, u, alpha1, alpha2, cp, STATUS_ZERO_DENSITY, i
        ui = mo / rho
        rho_eps = et - 0.5 * mo * ui
        cv_rho = cv1 * r1 + cv2 * r2
        m = rho_eps - (e01 * r1 + e02 * r2)
        sigma1 = R1 * r1 / cv_rho
        sigma2 = R2 * r2 / cv_rho
        a1 = sigma1 * (m - pst1)
        a2 = sigma2 * (m - pst2)
        b1 = a1 - pst1
        b2 = a2 - pst2
        b = b1 + b2
        c = a1 * pst2 + a2 * pst1 - pst1 * pst2
        d = (b1 - b2) ** 2 + 4.0 * a1 * a2
        if not d > 0.0:
            return p, theta, cs2, u, alpha1, alpha2, cp, STATUS_BAD_DISCRIMINANT, i
        sd = np.sqrt(d)
        if b >= 0.0:
            pi = 0.5 * (b + sd)
        else:
            pi = 2.0 * c / (sd - b)
        if not (pi > 0.0 and pi + pst1 > 0.0 and pi + pst2 > 0.0):
            return p, theta, cs2, u, alpha1, alpha2, cp, STATUS_BAD_PRESSURE, i
        t1 = R1 * r1 / (pi + pst1)
        t2 = R2 * r2 / (pi + pst2)
        th = 1.0 / (t1 + t2)
        if not th > 0.0:
            return p, theta, cs2, u, alpha1, alpha2, cp, STATUS_BAD_TEMPERATURE, i
        gamma = (R1 * r1 + R2 * r2) / cv_rho + 1.0
        p[i] = pi
        theta[i] = th
        cs2[i] = gamma * (pi + pst1) * (pi + pst2) / (rho * sd)
        u[i] = ui
        alpha1[i] = t1 * th
        alpha2[i] = t2 * th
        cp[i] = gamma * cv_rho / rho
    return p, theta, cs2, u, alpha1, alpha2, cp, STATUS_OK, -1


@njit(cache=True)
def step_arrays(rho1, rho2, mom, etot, u, p, theta, cs2, cp,
                h, dt, a, a_s, a_pr, i_tau, qhd, qhd_visc, periodic,
                q_half, has_q, guard):
    n = rho1.shape[0]
    nh = n - 1
    f1 = np.empty(nh)
    f2 = np.empty(nh)
    fm = np.empty(nh)
    fe = np.empty(nh)
    for i in range(nh):
        k = i + 1
        rho_l = rho1[i] + rho2[i]
        rho_r = rho1[k] + rho2[k]
        re_l = etot[i] - 0.5 * mom[i] * u[i]
        re_r = etot[k] - 0.5 * mom[k] * u[k]
        tau_l = a * h / (np.sqrt(cs2[i]) + i_tau * abs(u[i]))
        tau_r = a * h / (np.sqrt(cs2[k]) + i_tau * abs(u[k]))

        ra = 0.5 * (rho_l + rho_r)
        ua = 0.5 * (u[i] + u[k])
        pa = 0.5 * (p[i] + p[k])
        ta = 0.5 * (tau_l + tau_r)
        rea = 0.5 * (re_l + re_r)
        r1a = 0.5 * (rho1[i] + rho1[k])
        r2a = 0.5 * (rho2[i] + rho2[k])
        du = (u[k] - u[i]) / h
        dp = (p[k] - p[i]) / h
        dth = (theta[k] - theta[i]) / h
        what = (ta / ra) * (ra * ua * du + dp)
        cpa = 0.5 * (cp[i] + cp[k])
        kappa = a_pr * ta * cpa * pa

        if qhd:
            w = what
            f1[i] = r1a * (ua - what)
            f2[i] = r2a * (ua - what)
            pi = ua * ra * what
            if qhd_visc:
                pi = pi + (a_s * ta * pa) * du
            mq = kappa * dth
        else:
            dr1u = (rho1[k] * u[k] - rho1[i] * u[i]) / h
            dr2u = (rho2[k] * u[k] - rho2[i] * u[i]) / h
            drhou = (mom[k] - mom[i]) / h
            drho = (rho_r - rho_l) / h
            drhoeps = (re_r - re_l) / h
            w = (ta / ra) * ua * drhou + what
            f1[i] = r1a * ua - (ta * ua * dr1u + r1a * what)
            f2[i] = r2a * ua - (ta * ua * dr2u + r2a * what)
            nu = a_s * ta * pa
            rc2a = 0.5 * (rho_l * cs2[i] + rho_r * cs2[k])
            pi = nu * du + ua * ra * what + ta * (ua * dp + rc2a * du)
            mq = kappa * dth + ta * (drhoeps - ((rea + pa) / ra) * drho) * ua * ua
            if has_q:
                c2a = 0.5 * (cs2[i] + cs2[k])
                tha = 0.5 * (theta[i] + theta[k])
                pi = pi - ta * (c2a / (cpa * tha)) * q_half[i]
                mq = mq - ta * q_half[i] * ua

        if guard:
            rate = 0.5 * h / dt
            f1c = min(max(f1[i], -rate * rho1[k]), rate * rho1[i])
            f2c = min(max(f2[i], -rate * rho2[k]), rate * rho2[i])
            e1 = f1[i] - f1c
            e2 = f2[i] - f2c
            f1[i] = f1[i] - e1 + e2
            f2[i] = f2[i] - e2 + e1

        j = ra * (ua - w)
        geo = u[i] * u[k]
        fm[i] = j * ua + pa - pi
        fe[i] = (0.5 * ra * geo + rea + pa) * (ua - w) - 0.25 * h * h * dp * du - mq - pi * ua

    inv = dt / h
    n1 = rho1.copy()
    n2 = rho2.copy()
    nm = mom.copy()
    ne = etot.copy()
    for i in range(1, n - 1):
        n1[i] = rho1[i] - inv * (f1[i] - f1[i - 1])
        n2[i] = rho2[i] - inv * (f2[i] - f2[i - 1])
        nm[i] = mom[i] - inv * (fm[i] - fm[i - 1])
        ne[i] = etot[i] - inv * (fe[i] - fe[i - 1])
        if has_q:
            ne[i] += dt * 0.5 * (q_half[i - 1] + q_half[i])

    if periodic:
        n1[0] = rho1[0] - inv * (f1[0] - f1[nh - 1])
        n2[0] = rho2[0] - inv * (f2[0] - f2[nh - 1])
        nm[0] = mom[0] - inv * (fm[0] - fm[nh - 1])
        ne[0] = etot[0] - inv * (fe[0] - fe[nh - 1])
        if has_q:
            ne[0] += dt * 0.5 * (q_half[nh - 1] + q_half[0])
        n1[n - 1] = n1[0]
        n2[n - 1] = n2[0]
        nm[n - 1] = nm[0]
        ne[n - 1] = ne[0]
    else:
        n1[0] = n1[1]
        n2[0] = n2[1]
        nm[0] = nm[1]
        ne[0] = ne[1]
        n1[n - 1] = n1[n - 2]
        n2[n - 1] = n2[n - 2]
        nm[n - 1] = nm[n - 2]
        ne[n - 1] = ne[n - 2]
    return n1, n2, nm, ne
