"""Pure-numpy fallback for the stepping kernels.

Semantics match the compiled module exactly (zero boundary fluxes, cell
measure dx, p == 2 shortcut); floating-point results may differ from the
compiled backend in the last bits because numpy reduces pairwise while C
reduces sequentially. Within one backend everything is deterministic.
"""

import math

import numpy as np


def _face_flux(u, dx, p):
    g = (u[1:] - u[:-1]) / dx
    if p == 2.0:
        return g
    return np.abs(g) ** (p - 2.0) * g


def plap_apply(u, dx, p, out):
    fl = _face_flux(u, dx, p)
    out[0] = fl[0] / dx
    out[1:-1] = (fl[1:] - fl[:-1]) / dx
    out[-1] = (0.0 - fl[-1]) / dx


def rhs_into(u, fu, dx, p, out):
    plap_apply(u, dx, p, out)
    out += fu - np.sum(fu) / len(fu)


def euler_step_into(u, fu, dx, p, dt, out):
    rhs_into(u, fu, dx, p, out)
    out *= dt
    out += u


def max_abs_face_grad(u, dx):
    if len(u) < 2:
        return 0.0
    return float(np.max(np.abs(u[1:] - u[:-1]))) / dx


def grad_p_norm(u, dx, p):
    g = (u[1:] - u[:-1]) / dx
    return float(np.sum(np.abs(g) ** p)) * dx


def field_stats(u, dx):
    return (
        float(np.sum(u)) * dx,
        math.sqrt(float(np.sum(u * u)) * dx),
        float(np.max(np.abs(u))) if len(u) else 0.0,
    )


def max_abs_diff(a, b):
    return float(np.max(np.abs(a - b)))


def diff_l2sq(a, b, inv_dt, dx):
    d = (a - b) * inv_dt
    return float(np.sum(d * d)) * dx


def all_finite(u):
    return bool(np.all(np.isfinite(u)))
