"""Numba-jitted kernel implementations (default backend).

Loop-style twins of ``_kernels_numpy`` compiled with ``@njit(cache=True)``.
Division by zero inside a step is tolerated: it surfaces as inf/nan in the
error estimate and the step is rejected and shrunk.
"""

import math

import numpy as np
from numba import njit

from ._systems import (
    A21, A31, A32, A41, A42, A43, A51, A52, A53, A54, A61, A62, A63, A64, A65,
    B1, B3, B4, B5, B6, C2, C3, C4, C5,
    COLLISION_TOL, E1, E3, E4, E5, E6, E7, MAX_STEPS,
    STATUS_COLLISION_C, STATUS_COLLISION_Z, STATUS_MAXSTEPS, STATUS_OK,
    STATUS_UNDERFLOW, SYS_CALOGERO, SYS_ISOGOLD, SYS_NEWGOLD,
)


@njit(cache=True)
def elem_sym(z):
    n = z.shape[0]
    a = np.zeros(n + 1, dtype=np.complex128)
    a[0] = 1.0
    for k in range(n):
        for j in range(k + 1, 0, -1):
            a[j] = a[j] - z[k] * a[j - 1]
    return a[1:]


@njit(cache=True)
def elem_sym_dot(z, v):
    n = z.shape[0]
    a = np.zeros(n + 1, dtype=np.complex128)
    ad = np.zeros(n + 1, dtype=np.complex128)
    a[0] = 1.0
    for k in range(n):
        for j in range(k + 1, 0, -1):
            ad[j] = ad[j] - z[k] * ad[j - 1] - v[k] * a[j - 1]
            a[j] = a[j] - z[k] * a[j - 1]
    return ad[1:]


@njit(cache=True)
def aberth(coeffs, rotation, max_iter):
    n = coeffs.shape[0]
    if n == 1:
        roots = np.empty(1, dtype=np.complex128)
        roots[0] = -coeffs[0]
        return roots, True, 0

    radius = 1.0
    for m in range(1, n + 1):
        mag = abs(coeffs[m - 1]) ** (1.0 / m)
        if 1.0 + mag > radius:
            radius = 1.0 + mag
    x = np.empty(n, dtype=np.complex128)
    for k in range(n):
        ang = 2.0 * np.pi * k / n + rotation
        x[k] = radius * complex(math.cos(ang), math.sin(ang))

    delta = np.empty(n, dtype=np.complex128)
    for it in range(max_iter):
        for i in range(n):
            xi = x[i]
            p = 1.0 + 0.0j
            dp = 0.0 + 0.0j
            for k in range(n):
                dp = dp * xi + p
                p = p * xi + coeffs[k]
            w = p / dp
            s = 0.0 + 0.0j
            for j in range(n):
                if j != i:
                    s += 1.0 / (xi - x[j])
            d = w / (1.0 - w * s)
            if not (math.isfinite(d.real) and math.isfinite(d.imag)):
                d = w
                if not (math.isfinite(d.real) and math.isfinite(d.imag)):
                    d = 1e-3 + 0.0j
            delta[i] = d
        done = True
        for i in range(n):
            x[i] = x[i] - delta[i]
            if abs(delta[i]) >= 1e-13 * (1.0 + abs(x[i])):
                done = False
        if done:
            return x, True, it + 1
    return x, False, max_iter


@njit(cache=True)
def rhs_calogero(c, omega):
    n = c.shape[0]
    out = np.empty(n, dtype=np.complex128)
    for m in range(n):
        acc = 0.0 + 0.0j
        for l in range(n):
            if l != m:
                d = c[m] - c[l]
                acc += 1.0 / (d * d * d)
        out[m] = -(omega * omega) * c[m] + 2.0 * acc
    return out


@njit(cache=True)
def rhs_isogold(z, v, omega):
    n = z.shape[0]
    out = np.empty(n, dtype=np.complex128)
    for i in range(n):
        acc = complex(0.0, omega) * v[i]
        for l in range(n):
            if l != i:
                acc += 2.0 * v[i] * v[l] / (z[i] - z[l])
        out[i] = acc
    return out


@njit(cache=True)
def rhs_newgold(z, v, omega):
    n = z.shape[0]
    c = elem_sym(z)
    g = rhs_calogero(c, omega)
    out = np.empty(n, dtype=np.complex128)
    for i in range(n):
        vel = 0.0 + 0.0j
        prod = 1.0 + 0.0j
        for l in range(n):
            if l != i:
                d = z[i] - z[l]
                vel += 2.0 * v[i] * v[l] / d
                prod *= d
        s = g[0]
        for m in range(1, n):
            s = s * z[i] + g[m]
        out[i] = vel - s / prod
    return out


@njit(cache=True)
def _rhs_first_order(system, t, y, omega):
    n = y.shape[0] // 2
    out = np.empty_like(y)
    if system == SYS_CALOGERO:
        acc = rhs_calogero(y[:n], omega)
    elif system == SYS_ISOGOLD:
        acc = rhs_isogold(y[:n], y[n:], omega)
    else:
        acc = rhs_newgold(y[:n], y[n:], omega)
    for i in range(n):
        out[i] = y[n + i]
        out[n + i] = acc[i]
    return out


@njit(cache=True)
def _min_sep(values):
    n = values.shape[0]
    best = np.inf
    for i in range(n):
        for j in range(i + 1, n):
            d = values[i] - values[j]
            sep = max(abs(d.real), abs(d.imag))
            if sep < best:
                best = sep
    return best


@njit(cache=True)
def _collision_status(system, y):
    n = y.shape[0] // 2
    if system == SYS_CALOGERO:
        if _min_sep(y[:n]) < COLLISION_TOL:
            return STATUS_COLLISION_C
        return STATUS_OK
    if _min_sep(y[:n]) < COLLISION_TOL:
        return STATUS_COLLISION_Z
    if system == SYS_NEWGOLD and _min_sep(elem_sym(y[:n])) < COLLISION_TOL:
        return STATUS_COLLISION_C
    return STATUS_OK


@njit(cache=True)
def integrate(system, y0, omega, t_eval, rtol, atol):
    m = t_eval.shape[0]
    dim = y0.shape[0]
    out = np.empty((m, dim), dtype=np.complex128)
    for i in range(m):
        for j in range(dim):
            out[i, j] = complex(np.nan, np.nan)

    t = t_eval[0]
    y = y0.astype(np.complex128)
    status = _collision_status(system, y)
    if status != STATUS_OK:
        return out, status, t
    out[0] = y
    if m == 1:
        return out, STATUS_OK, t

    span = t_eval[-1] - t_eval[0]
    h_floor = 1e-14 * span
    h = span * 1e-3
    k_next = 1
    f1 = _rhs_first_order(system, t, y, omega)
    ystage = np.empty(dim, dtype=np.complex128)
    y_new = np.empty(dim, dtype=np.complex128)

    for _ in range(MAX_STEPS):
        target = t_eval[k_next]
        landing = False
        if t + h >= target or (target - t) < 1.1 * h:
            h = target - t
            landing = True

        k1 = f1
        for i in range(dim):
            ystage[i] = y[i] + h * (A21 * k1[i])
        k2 = _rhs_first_order(system, t + C2 * h, ystage, omega)
        for i in range(dim):
            ystage[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i])
        k3 = _rhs_first_order(system, t + C3 * h, ystage, omega)
        for i in range(dim):
            ystage[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i])
        k4 = _rhs_first_order(system, t + C4 * h, ystage, omega)
        for i in range(dim):
            ystage[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i])
        k5 = _rhs_first_order(system, t + C5 * h, ystage, omega)
        for i in range(dim):
            ystage[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i])
        k6 = _rhs_first_order(system, t + h, ystage, omega)
        for i in range(dim):
            y_new[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i])
        k7 = _rhs_first_order(system, t + h, y_new, omega)

        err = 0.0
        for i in range(dim):
            e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i])
            scale = atol + rtol * max(abs(y[i]), abs(y_new[i]))
            r = abs(e) / scale
            if r > err:
                err = r
        if not math.isfinite(err):
            err = 10.0

        if err <= 1.0:
            t = target if landing else t + h
            for i in range(dim):
                y[i] = y_new[i]
            f1 = k7
            status = _collision_status(system, y)
            if status != STATUS_OK:
                return out, status, t
            if landing:
                out[k_next] = y
                k_next += 1
                if k_next == m:
                    return out, STATUS_OK, t

        factor = 0.9 * err ** -0.2 if err > 0.0 else 5.0
        h = h * min(5.0, max(0.2, factor))
        if h < h_floor:
            return out, STATUS_UNDERFLOW, t

    return out, STATUS_MAXSTEPS, t


def warmup():
    """Compile every jitted kernel on tiny inputs (or load the disk cache)."""
    z = np.array([0.1 + 0.2j, -0.3 + 0.1j])
    v = np.array([0.05 - 0.1j, 0.02 + 0.03j])
    elem_sym(z)
    elem_sym_dot(z, v)
    aberth(elem_sym(z), 0.4, 50)
    rhs_calogero(z, 1.0)
    rhs_isogold(z, v, 1.0)
    rhs_newgold(z, v, 1.0)
    t_eval = np.array([0.0, 0.05])
    y0 = np.concatenate((z, v))
    integrate(SYS_NEWGOLD, y0, 1.0, t_eval, 1e-8, 1e-10)
    integrate(SYS_CALOGERO, y0, 1.0, t_eval, 1e-8, 1e-10)
    integrate(SYS_ISOGOLD, y0, 1.0, t_eval, 1e-8, 1e-10)
