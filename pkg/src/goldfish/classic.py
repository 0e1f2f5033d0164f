"""The prototypical isochronous goldfish model: algebraic solution and
Hamiltonian evaluator.

The initial-value problem is solved by collecting the rational solution
identity over a common denominator: the positions at time t are the zeros
of

    sum_l v0_l prod_{m != l} (x - z0_m) - beta(t) prod_m (x - z0_m),
    beta(t) = i omega / (e^{i omega t} - 1),

a polynomial of exact degree N with leading coefficient -beta(t).  The sum
runs over all l.  This is the plain-goldfish root identity evaluated at the
transformed time tau = (e^{i omega t} - 1)/(i omega); it reproduces the
direct integration of the equations of motion to solver precision (see
tests), has the right t -> 0 limit, and as omega -> 0 degenerates to the
non-periodic beta = 1/t, which :func:`isogold_polynomial` accepts.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .model import (
    COLLISION_TOL,
    CollisionError,
    SystemConfig,
    Trajectory,
    as_complex_vector,
    period,
)
from .roots import chain_labels, match_labels, roots_of_monic
from .symmetry import coeffs_from_roots

# Below this |e^{i omega t} - 1| the assembled polynomial cancels
# catastrophically; the exact limit (the initial configuration, by
# periodicity) is returned instead.
DEGENERATE_TOL = 1e-8


def _full_coeffs(roots):
    """Descending coefficient array [1, c_1, ..., c_N] for given zeros."""
    c = coeffs_from_roots(roots)
    return np.concatenate(([1.0 + 0.0j], c))


def _deflate(full, root):
    """Synthetic division of a descending-coefficient polynomial by (x - root)."""
    out = np.empty(full.shape[0] - 1, dtype=np.complex128)
    acc = full[0]
    for k in range(out.shape[0]):
        out[k] = acc
        acc = acc * root + full[k + 1]
    return out


def isogold_polynomial(z0, v0, omega, t) -> np.ndarray:
    """Trailing coefficients of the monic solution polynomial at time t.

    ``omega = 0`` selects the non-periodic limit beta = 1/t.  Degenerate
    times (beta effectively infinite) are the caller's business; see
    :func:`solve_isogold`.
    """
    z0 = as_complex_vector("z0", z0)
    v0 = as_complex_vector("v0", v0, length=z0.shape[0])
    if omega == 0.0:
        if t == 0.0:
            raise ValueError("the omega=0 limit is singular at t=0")
        beta = 1.0 / t
    else:
        beta = 1j * omega / (cmath.exp(1j * omega * t) - 1.0)
    p_full = _full_coeffs(z0)
    total = -beta * p_full
    for l in range(z0.shape[0]):
        q = _deflate(p_full, z0[l])  # prod_{m != l} (x - z0_m), monic deg N-1
        total[1:] += v0[l] * q
    return total[1:] / total[0]


def solve_isogold(config: SystemConfig, t: float) -> np.ndarray:
    """Positions of the classic goldfish flow at time t, as a sorted multiset.

    Near t = 0 (mod the period), where |e^{i omega t} - 1| < 1e-8, the
    polynomial assembly cancels catastrophically and the exact limit -- the
    initial configuration -- is returned instead.

    Use :func:`solve_isogold_path` for labeled trajectories.
    """
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    omega = config.omega
    if abs(cmath.exp(1j * omega * t) - 1.0) < DEGENERATE_TOL:
        out = np.array(config.z0)
        order = np.lexsort((out.imag, out.real))
        return out[order]
    coeffs = isogold_polynomial(config.z0, config.v0, omega, t)
    return roots_of_monic(coeffs)


def solve_isogold_path(config: SystemConfig, times) -> Trajectory:
    """Labeled classic-goldfish trajectory on a strictly increasing grid.

    Labels are anchored to ``config.z0`` at t = 0 and continued by
    minimum-cost matching; ambiguous intervals are bisected using the exact
    evaluator.  The closure permutation at the base period is recorded when
    the grid contains it.
    """
    times = np.asarray(times, dtype=np.float64)
    if times.ndim != 1 or times.shape[0] == 0:
        raise ValueError("times must be a non-empty 1-d array")
    if times.shape[0] > 1 and not np.all(np.diff(times) > 0):
        raise ValueError("times must be strictly increasing")
    if abs(times[0]) > 1e-12:
        raise ValueError("times must start at 0")

    def sample_at(t):
        return solve_isogold(config, t)

    prev = np.array(config.z0)
    samples = np.empty((times.shape[0], config.n), dtype=np.complex128)
    samples[0] = prev
    t_prev = 0.0
    for k in range(1, times.shape[0]):
        samples[k] = chain_labels(t_prev, samples[k - 1], times[k], sample_at)
        t_prev = times[k]

    closure = None
    t_period = period(config)
    hits = np.nonzero(np.abs(times - t_period) <= 1e-12)[0]
    if hits.size:
        closure = match_labels(samples[hits[-1]], samples[0])
    return Trajectory(times, samples, closure)


def hamiltonian_isogold(zeta, z, omega) -> complex:
    """Hamiltonian sum_n [-i omega z_n + e^{zeta_n} prod_{l != n} (z_n - z_l)^-1].

    ``zeta`` are the canonical momenta conjugate to the positions ``z``.
    With the standard canonical equations (zdot = dH/dzeta,
    zetadot = -dH/dz) this generates exactly the accelerations of
    :func:`goldfish.rhs_isogold`; the opposite sign on the linear term
    would generate the time-reversed drift (checked by finite differences
    in the tests).
    """
    zeta = as_complex_vector("zeta", zeta)
    z = as_complex_vector("z", z, length=zeta.shape[0])
    if not math.isfinite(omega):
        raise ValueError("omega must be finite")
    n = z.shape[0]
    total = -1j * omega * z.sum()
    for i in range(n):
        prod = 1.0 + 0.0j
        for l in range(n):
            if l != i:
                d = z[i] - z[l]
                if max(abs(d.real), abs(d.imag)) < COLLISION_TOL:
                    raise CollisionError(
                        f"z[{i}] and z[{l}] coincide", family="z", pair=(i, l)
                    )
                prod *= d
        total += cmath.exp(complex(zeta[i])) / prod
    return complex(total)
