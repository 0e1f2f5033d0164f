"""Pure-numpy kernel implementations (fallback backend).

Same contracts as ``_kernels_numba``: vectorized where the shape allows,
plain Python stepping loops where it does not.  Selected by setting
``GOLDFISH_BACKEND=numpy`` or automatically when numba is unavailable.
"""

import numpy as np

from ._systems import (
    A21, A31, A32, A41, A42, A43, A51, A52, A53, A54, A61, A62, A63, A64, A65,
    B1, B3, B4, B5, B6, C2, C3, C4, C5,
    COLLISION_TOL, E1, E3, E4, E5, E6, E7, MAX_STEPS,
    STATUS_COLLISION_C, STATUS_COLLISION_Z, STATUS_MAXSTEPS, STATUS_OK,
    STATUS_UNDERFLOW, SYS_CALOGERO, SYS_ISOGOLD, SYS_NEWGOLD,
)


def elem_sym(z):
    """Trailing coefficients of prod_k (x - z[k]), by sequential factor
    multiplication: c[m-1] = (-1)^m e_m(z)."""
    n = z.shape[0]
    a = np.zeros(n + 1, dtype=np.complex128)
    a[0] = 1.0
    for k in range(n):
        a[1:k + 2] = a[1:k + 2] - z[k] * a[:k + 1]
    return a[1:]


def elem_sym_dot(z, v):
    """Time derivative of elem_sym along z(t) = z + t v at t = 0."""
    n = z.shape[0]
    a = np.zeros(n + 1, dtype=np.complex128)
    ad = np.zeros(n + 1, dtype=np.complex128)
    a[0] = 1.0
    for k in range(n):
        ad[1:k + 2] = ad[1:k + 2] - z[k] * ad[:k + 1] - v[k] * a[:k + 1]
        a[1:k + 2] = a[1:k + 2] - z[k] * a[:k + 1]
    return ad[1:]


def _horner_pair(full, x):
    """Vectorized Horner: values and derivatives of the polynomial with
    descending coefficients ``full`` at the points ``x``."""
    p = np.full_like(x, full[0])
    dp = np.zeros_like(x)
    for k in range(1, full.shape[0]):
        dp = dp * x + p
        p = p * x + full[k]
    return p, dp


def aberth(coeffs, rotation, max_iter):
    """Simultaneous root iteration for a monic polynomial.

    Parameters
    ----------
    coeffs : complex128[n]
        Trailing coefficients (leading 1 implicit).
    rotation : float
        Phase offset of the equally spaced initial circle.
    max_iter : int
        Iteration budget.

    Returns
    -------
    (roots, converged, iterations)
        ``converged`` is False when the per-root update criterion
        |delta| < 1e-13 (1 + |root|) was not met within the budget.
    """
    n = coeffs.shape[0]
    full = np.empty(n + 1, dtype=np.complex128)
    full[0] = 1.0
    full[1:] = coeffs

    radius = 1.0
    for m in range(1, n + 1):
        mag = abs(coeffs[m - 1]) ** (1.0 / m)
        if 1.0 + mag > radius:
            radius = 1.0 + mag
    angles = 2.0 * np.pi * np.arange(n) / n + rotation
    x = radius * np.exp(1j * angles)

    if n == 1:
        return np.array([-coeffs[0]]), True, 0

    for it in range(max_iter):
        p, dp = _horner_pair(full, x)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = p / dp
            diffs = x[:, None] - x[None, :]
            np.fill_diagonal(diffs, 1.0)
            inv = 1.0 / diffs
            np.fill_diagonal(inv, 0.0)
            s = inv.sum(axis=1)
            delta = w / (1.0 - w * s)
        # dp == 0 away from a root, or a vanishing Aberth denominator:
        # fall back to the plain Newton correction for that root.
        bad = ~np.isfinite(delta)
        if bad.any():
            delta = np.where(bad & np.isfinite(w), w, delta)
            delta = np.where(~np.isfinite(delta), 1e-3 + 0j, delta)
        x = x - delta
        if np.all(np.abs(delta) < 1e-13 * (1.0 + np.abs(x))):
            return x, True, it + 1
    return x, False, max_iter


def rhs_calogero(c, omega):
    """cdd[m] = -omega^2 c[m] + 2 sum_{l != m} (c[m]-c[l])^-3."""
    d = c[:, None] - c[None, :]
    np.fill_diagonal(d, 1.0)
    w = d ** -3
    np.fill_diagonal(w, 0.0)
    return -(omega * omega) * c + 2.0 * w.sum(axis=1)


def rhs_isogold(z, v, omega):
    """acc[n] = i omega v[n] + sum_{l != n} 2 v[n] v[l] / (z[n]-z[l])."""
    d = z[:, None] - z[None, :]
    np.fill_diagonal(d, 1.0)
    w = (v[:, None] * v[None, :]) / d
    np.fill_diagonal(w, 0.0)
    return 1j * omega * v + 2.0 * w.sum(axis=1)


def rhs_newgold(z, v, omega):
    """Goldfish velocity coupling plus the coefficient-space restoring force
    mapped back through the vandermonde-over-product factor."""
    n = z.shape[0]
    c = elem_sym(z)
    g = rhs_calogero(c, omega)  # bracket shared across bodies
    d = z[:, None] - z[None, :]
    np.fill_diagonal(d, 1.0)
    w = (v[:, None] * v[None, :]) / d
    np.fill_diagonal(w, 0.0)
    vel = 2.0 * w.sum(axis=1)
    prod = d.prod(axis=1)
    # s[n] = sum_m z[n]^(n-m) g[m] is the degree n-1 polynomial with
    # descending coefficients g evaluated at z[n].
    s = np.full_like(z, g[0])
    for m in range(1, n):
        s = s * z + g[m]
    return vel - s / prod


def _rhs_first_order(system, t, y, omega):
    n = y.shape[0] // 2
    out = np.empty_like(y)
    if system == SYS_CALOGERO:
        out[:n] = y[n:]
        out[n:] = rhs_calogero(y[:n], omega)
    elif system == SYS_ISOGOLD:
        out[:n] = y[n:]
        out[n:] = rhs_isogold(y[:n], y[n:], omega)
    else:
        out[:n] = y[n:]
        out[n:] = rhs_newgold(y[:n], y[n:], omega)
    return out


def _min_sep(values):
    n = values.shape[0]
    best = np.inf
    for i in range(n):
        d = values[i] - values[i + 1:]
        if d.size:
            best = min(best, np.maximum(np.abs(d.real), np.abs(d.imag)).min())
    return best


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


def integrate(system, y0, omega, t_eval, rtol, atol):
    """Adaptive Dormand-Prince 5(4) over the complex first-order system.

    Steps land exactly on every requested output time, so no interpolant is
    involved.  Returns ``(samples, status, t_last)`` where ``samples`` has
    one row per entry of ``t_eval``; on failure the rows from the first
    unreached time onward are left as NaN.
    """
    m = t_eval.shape[0]
    dim = y0.shape[0]
    out = np.full((m, dim), np.nan, dtype=np.complex128)

    t = t_eval[0]
    y = y0.astype(np.complex128).copy()
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

    # trial steps near a collision legitimately overflow and get rejected
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        return _step_loop(system, y, omega, t_eval, rtol, atol, out, t, h, h_floor, k_next, f1)


def _step_loop(system, y, omega, t_eval, rtol, atol, out, t, h, h_floor, k_next, f1):
    m = t_eval.shape[0]
    for _ in range(MAX_STEPS):
        target = t_eval[k_next]
        if t + h >= target or (target - t) < 1.1 * h:
            h = target - t
            landing = True
        else:
            landing = False

        k1 = f1
        k2 = _rhs_first_order(system, t + C2 * h, y + h * (A21 * k1), omega)
        k3 = _rhs_first_order(system, t + C3 * h, y + h * (A31 * k1 + A32 * k2), omega)
        k4 = _rhs_first_order(system, t + C4 * h, y + h * (A41 * k1 + A42 * k2 + A43 * k3), omega)
        k5 = _rhs_first_order(system, t + C5 * h, y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4), omega)
        k6 = _rhs_first_order(system, t + h, y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5), omega)
        y_new = y + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6)
        k7 = _rhs_first_order(system, t + h, y_new, omega)
        err_vec = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7)

        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        with np.errstate(invalid="ignore"):
            err = np.max(np.abs(err_vec) / scale)
        if not np.isfinite(err):
            err = 10.0

        if err <= 1.0:
            t = target if landing else t + h
            y = y_new
            f1 = k7  # FSAL
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
