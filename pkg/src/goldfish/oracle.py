"""Direct numerical integration of the three dynamical systems.

These right-hand sides and the adaptive Dormand-Prince 5(4) integrator are
the ground truth the closed-form solvers are checked against, so they share
no code with the spectral route.  Near-collision runs abort rather than
regularize: a trustworthy oracle beats a robust one here.
"""

from __future__ import annotations

import math

import numpy as np

from ._backend import kernels
from ._systems import (
    STATUS_COLLISION_C,
    STATUS_MAXSTEPS,
    STATUS_OK,
    STATUS_UNDERFLOW,
    SYS_CALOGERO,
    SYS_ISOGOLD,
    SYS_NEWGOLD,
)
from .model import (
    COLLISION_TOL,
    CoeffState,
    CollisionError,
    IntegrationError,
    Trajectory,
    as_complex_vector,
)
from .symmetry import coeffs_from_roots

SYSTEMS = {
    "newgold": SYS_NEWGOLD,
    "calogero": SYS_CALOGERO,
    "isogold": SYS_ISOGOLD,
}

DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-12


def _check_separation(values, family, what):
    values = np.asarray(values, dtype=np.complex128)
    n = values.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            d = values[i] - values[j]
            if max(abs(d.real), abs(d.imag)) < COLLISION_TOL:
                raise CollisionError(
                    f"{what}[{i}] and {what}[{j}] coincide within {COLLISION_TOL:g}",
                    family=family,
                    pair=(i, j),
                )


def rhs_newgold(z, v, omega) -> np.ndarray:
    """Accelerations of the position dynamics for any N.

    Velocity-coupling goldfish terms plus the coefficient-space restoring
    bracket, evaluated once and shared across bodies (O(N^2) total).

    Raises
    ------
    CollisionError
        Naming the offending pair and family when positions or derived
        coefficients coincide within the collision tolerance.
    """
    z = as_complex_vector("z", z)
    v = as_complex_vector("v", v, length=z.shape[0])
    if not (math.isfinite(omega)):
        raise ValueError("omega must be finite")
    _check_separation(z, "z", "z")
    _check_separation(coeffs_from_roots(z), "c", "c")
    return kernels.rhs_newgold(z, v, float(omega))


def rhs_newgold_n2(z, v) -> np.ndarray:
    """The hard-coded two-body form (omega = 1) of the position dynamics."""
    z = as_complex_vector("z", z, length=2)
    v = as_complex_vector("v", v, length=2)
    z1, z2 = z
    dz = z1 - z2
    if max(abs(dz.real), abs(dz.imag)) < COLLISION_TOL:
        raise CollisionError("z[0] and z[1] coincide", family="z", pair=(0, 1))
    q = z1 + z2 + z1 * z2
    if max(abs(q.real), abs(q.imag)) < COLLISION_TOL:
        raise CollisionError(
            "coefficient difference z1+z2+z1*z2 vanishes", family="c", pair=(0, 1)
        )
    cross = 2.0 * v[0] * v[1] / dz
    a1 = cross - (z1 * z1 - 2.0 * (z1 - 1.0) / q**3) / dz
    a2 = -cross + (z2 * z2 - 2.0 * (z2 - 1.0) / q**3) / dz
    return np.array([a1, a2])


def _n3_denominators(z):
    z1, z2, z3 = z
    s1 = z1 + z2 + z3
    s2 = z1 * z2 + z1 * z3 + z2 * z3
    s3 = z1 * z2 * z3
    return s1 - s3, s1 + s2, s2 + s3


def rhs_newgold_n3(z, v) -> np.ndarray:
    """The hard-coded three-body form (omega = 1) of the position dynamics."""
    z = as_complex_vector("z", z, length=3)
    v = as_complex_vector("v", v, length=3)
    z1, z2, z3 = z
    for (i, j) in ((0, 1), (0, 2), (1, 2)):
        d = z[i] - z[j]
        if max(abs(d.real), abs(d.imag)) < COLLISION_TOL:
            raise CollisionError(f"z[{i}] and z[{j}] coincide", family="z", pair=(i, j))
    d13, d12, d23 = _n3_denominators(z)
    for name, d, pair in (("s1-s3", d13, (0, 2)), ("s1+s2", d12, (0, 1)), ("s2+s3", d23, (1, 2))):
        if max(abs(d.real), abs(d.imag)) < COLLISION_TOL:
            raise CollisionError(
                f"coefficient difference {name} vanishes", family="c", pair=pair
            )
    s1 = z1 + z2 + z3
    s2 = z1 * z2 + z1 * z3 + z2 * z3
    s3 = z1 * z2 * z3
    f1 = s1 - 2.0 / d13**3 - 2.0 / d12**3
    f2 = -s2 + 2.0 / d12**3 + 2.0 / d23**3
    f3 = s3 + 2.0 / d13**3 - 2.0 / d23**3
    cross12 = 2.0 * v[0] * v[1] / (z1 - z2)
    cross13 = 2.0 * v[0] * v[2] / (z1 - z3)
    cross23 = 2.0 * v[1] * v[2] / (z2 - z3)
    a1 = cross12 + cross13 - (z1 * z1 * f1 + z1 * f2 + f3) / ((z1 - z2) * (z1 - z3))
    a2 = -cross12 + cross23 + (z2 * z2 * f1 + z2 * f2 + f3) / ((z1 - z2) * (z2 - z3))
    a3 = -cross13 - cross23 - (z3 * z3 * f1 + z3 * f2 + f3) / ((z1 - z3) * (z2 - z3))
    return np.array([a1, a2, a3])


def rhs_calogero(c, omega) -> np.ndarray:
    """Coefficient accelerations -omega^2 c_m + 2 sum_{l!=m} (c_m-c_l)^-3."""
    c = as_complex_vector("c", c)
    if not math.isfinite(omega):
        raise ValueError("omega must be finite")
    _check_separation(c, "c", "c")
    return kernels.rhs_calogero(c, float(omega))


def rhs_isogold(z, v, omega) -> np.ndarray:
    """Translation-invariant goldfish accelerations i omega v_n + velocity coupling."""
    z = as_complex_vector("z", z)
    v = as_complex_vector("v", v, length=z.shape[0])
    if not math.isfinite(omega):
        raise ValueError("omega must be finite")
    _check_separation(z, "z", "z")
    return kernels.rhs_isogold(z, v, float(omega))


def _unpack_state(state0):
    if isinstance(state0, CoeffState):
        return state0.c, state0.cdot
    pos, vel = state0
    pos = as_complex_vector("positions", pos)
    vel = as_complex_vector("velocities", vel, length=pos.shape[0])
    return pos, vel


def integrate_states(system, state0, omega, times, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL) -> np.ndarray:
    """Integrate and return the full complex state at each requested time.

    Parameters
    ----------
    system : {"newgold", "calogero", "isogold"}
    state0 : (positions, velocities) pair or CoeffState
    omega : float
    times : array-like of float
        Strictly increasing output times; integration starts at times[0].

    Returns
    -------
    complex128[len(times), 2n]
        Positions in columns :n, velocities in columns n:.

    Raises
    ------
    IntegrationError
        Step-size underflow or step budget exhaustion (with last good time).
    CollisionError
        A pairwise-difference family collapsed along the way.
    """
    if system not in SYSTEMS:
        raise ValueError(f"unknown system {system!r}; expected one of {sorted(SYSTEMS)}")
    pos, vel = _unpack_state(state0)
    times = np.asarray(times, dtype=np.float64)
    if times.ndim != 1 or times.shape[0] == 0:
        raise ValueError("times must be a non-empty 1-d array")
    if times.shape[0] > 1 and not np.all(np.diff(times) > 0):
        raise ValueError("times must be strictly increasing")
    if not math.isfinite(omega):
        raise ValueError("omega must be finite")
    y0 = np.concatenate((pos, vel))
    samples, status, t_last = kernels.integrate(
        SYSTEMS[system], y0, float(omega), times, float(rtol), float(atol)
    )
    if status == STATUS_OK:
        return samples
    if status == STATUS_UNDERFLOW:
        raise IntegrationError(
            f"step size underflow at t={t_last:.12g} (near-collision?); "
            f"last good time {t_last:.12g}",
            t_last=t_last,
        )
    if status == STATUS_MAXSTEPS:
        raise IntegrationError(
            f"step budget exhausted at t={t_last:.12g}", t_last=t_last
        )
    family = "c" if status == STATUS_COLLISION_C else "z"
    raise CollisionError(
        f"collision in family '{family}' at t={t_last:.12g}", family=family
    )


def integrate(system, state0, omega, t_span, samples) -> Trajectory:
    """Integrate and return the labeled positions on a uniform grid.

    ``samples`` counts intervals: the grid is ``samples + 1`` points from
    ``t_span[0]`` to ``t_span[1]``.  Labels are trivially continuous (the
    integrator follows each body), so no matching is involved.
    """
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not (math.isfinite(t0) and math.isfinite(t1)) or t1 <= t0:
        raise ValueError("t_span must be finite with t_span[1] > t_span[0]")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    times = np.linspace(t0, t1, int(samples) + 1)
    states = integrate_states(system, state0, omega, times)
    n = states.shape[1] // 2
    return Trajectory(times, states[:, :n])
