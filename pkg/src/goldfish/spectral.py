"""Exact solver: closed-form coefficient propagation plus root tracking.

The trailing polynomial coefficients evolve as the eigenvalues of

    C(t) = C(0) cos(omega t) + Cdot(0) sin(omega t) / omega,

with C(0) = diag(c(0)) and Cdot(0) = diag(cdot(0)) + i [M, C(0)].  M is
built from inverse-square coefficient differences, which makes the
commutator off-diagonal -i/(c_m - c_l): the standard pairing for the
coefficient equations of motion.  The literal position-difference variant
is available behind ``m_source="position"`` for diagnostics; it does not
reproduce the coefficient flow (see tests).
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from .model import (
    COLLISION_TOL,
    CollisionError,
    ConvergenceError,
    SystemConfig,
    Trajectory,
    _frozen,
    as_complex_vector,
    min_pairwise_separation,
    period,
    require_finite,
)
from .roots import chain_labels, track_roots
from .symmetry import coeff_velocities, coeffs_from_roots


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Frozen propagator state: diag of C(0), full Cdot(0), and omega."""

    c0_diag: np.ndarray
    cdot0: np.ndarray
    omega: float

    def __post_init__(self):
        c0 = as_complex_vector("c0_diag", self.c0_diag)
        if min_pairwise_separation(c0) < COLLISION_TOL:
            raise CollisionError(
                "c0_diag entries must be pairwise distinct (the construction "
                "divides by coefficient differences)",
                family="c",
            )
        cdot0 = np.asarray(self.cdot0, dtype=np.complex128)
        if cdot0.shape != (c0.shape[0], c0.shape[0]):
            raise ValueError("cdot0 must be square with side len(c0_diag)")
        require_finite("cdot0", cdot0)
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise ValueError("omega must be finite and > 0")
        object.__setattr__(self, "c0_diag", _frozen(c0))
        object.__setattr__(self, "cdot0", _frozen(cdot0))
        object.__setattr__(self, "omega", float(self.omega))

    @property
    def n(self):
        return int(self.c0_diag.shape[0])


def eigenvalues(m) -> np.ndarray:
    """All eigenvalues (with algebraic multiplicity) of a complex matrix.

    Backed by the LAPACK general eigensolver (balancing, Hessenberg
    reduction, shifted QR).  Output sorted by (re, im).
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    require_finite("matrix", m)
    try:
        vals = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigenvalue iteration failed: {exc}") from exc
    order = np.lexsort((vals.imag, vals.real))
    return vals[order]


def build_spectral(config: SystemConfig, m_source="coeff") -> SpectralData:
    """Assemble the propagator matrices from initial positions/velocities.

    Parameters
    ----------
    config : SystemConfig
    m_source : {"coeff", "position"}
        Which pairwise differences feed the commutator matrix M.  "coeff"
        is the supported construction; "position" exists only to examine
        the alternative reading and is not validated by the solver tests.

    Raises
    ------
    CollisionError
        When two initial coefficients coincide within the collision
        tolerance (the commutator divides by their difference).
    """
    c0 = coeffs_from_roots(config.z0)
    cdot_diag = coeff_velocities(config.z0, config.v0)
    n = config.n
    for i in range(n):
        for j in range(i + 1, n):
            d = c0[i] - c0[j]
            if max(abs(d.real), abs(d.imag)) < COLLISION_TOL:
                raise CollisionError(
                    f"initial coefficients c[{i}] and c[{j}] coincide within "
                    f"{COLLISION_TOL:g}; the spectral construction is singular",
                    family="c",
                    pair=(i, j),
                )
    if m_source == "coeff":
        base = c0
    elif m_source == "position":
        base = config.z0
    else:
        raise ValueError("m_source must be 'coeff' or 'position'")
    # Commutator with the diagonal C(0), written entrywise: the diagonal of
    # [M, C(0)] vanishes identically (M's own diagonal never enters), and
    # the off-diagonal is M_ml (c_l - c_m).  For coefficient-based M this
    # reduces to -1/(c_m - c_l).
    cdot0 = np.diag(cdot_diag).astype(np.complex128)
    for i in range(n):
        for j in range(n):
            if i != j:
                cdot0[i, j] = 1j * (base[i] - base[j]) ** -2.0 * (c0[j] - c0[i])
    return SpectralData(c0_diag=c0, cdot0=cdot0, omega=config.omega)


def propagator_matrix(sd: SpectralData, t: float) -> np.ndarray:
    """C(t) = diag(c(0)) cos(omega t) + Cdot(0) sin(omega t)/omega."""
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    wt = sd.omega * t
    return np.diag(sd.c0_diag) * math.cos(wt) + sd.cdot0 * (math.sin(wt) / sd.omega)


def coefficients_at(sd: SpectralData, t: float) -> np.ndarray:
    """Coefficient multiset at time t: eigenvalues of the propagator.

    Standalone calls return the (re, im)-sorted multiset; slot-consistent
    ordering along a path comes from :class:`CoefficientPath`.
    """
    return eigenvalues(propagator_matrix(sd, t))


class CoefficientPath:
    """Slot-consistent coefficient evaluator anchored at t = 0.

    Eigenvalues of C(t) arrive unordered; assembling the polynomial needs
    each one in its original slot.  Labels are continued from the known
    order at t = 0 by minimum-cost matching, bisecting any interval whose
    matched displacement is ambiguous.  Evaluations are memoized as anchors
    so later times chain from the nearest earlier anchor.
    """

    def __init__(self, sd: SpectralData):
        self.sd = sd
        self._times = [0.0]
        self._values = [np.asarray(sd.c0_diag)]

    def _sampler(self, t):
        return coefficients_at(self.sd, t)

    def at(self, t: float) -> np.ndarray:
        t = float(t)
        if t < 0.0:
            raise ValueError("coefficient path is anchored at t=0; t must be >= 0")
        i = bisect.bisect_right(self._times, t) - 1
        t0, c0 = self._times[i], self._values[i]
        if t == t0:
            return c0
        c = chain_labels(t0, c0, t, self._sampler)
        j = bisect.bisect_left(self._times, t)
        self._times.insert(j, t)
        self._values.insert(j, c)
        return c


def coefficient_path(sd: SpectralData, times) -> np.ndarray:
    """Slot-consistent coefficients at each requested time (>= 0, increasing)."""
    times = np.asarray(times, dtype=np.float64)
    path = CoefficientPath(sd)
    return np.array([path.at(t) for t in times])


def solve_newgold(config: SystemConfig, times) -> Trajectory:
    """Exact labeled solution of the position dynamics on a time grid.

    Pipeline: spectral build, slot-consistent coefficient propagation,
    per-time root extraction, continuity labeling matched to ``config.z0``
    at t = 0.  When the grid contains the base period T = 2 pi / omega
    (within 1e-12), the closure permutation at T is recorded.

    Parameters
    ----------
    config : SystemConfig
    times : array-like of float
        Strictly increasing, starting at 0.
    """
    traj, _ = solve_newgold_with_coeffs(config, times)
    return traj


def solve_newgold_with_coeffs(config: SystemConfig, times):
    """Like :func:`solve_newgold` but also returns the coefficient samples.

    Returns
    -------
    (Trajectory, complex128[len(times), n])
        The labeled positions and the slot-consistent coefficients used to
        produce them (useful for membership residuals).
    """
    times = np.asarray(times, dtype=np.float64)
    if times.ndim != 1 or times.shape[0] == 0:
        raise ValueError("times must be a non-empty 1-d array")
    if times.shape[0] > 1 and not np.all(np.diff(times) > 0):
        raise ValueError("times must be strictly increasing")
    if abs(times[0]) > 1e-12:
        raise ValueError("times must start at 0")
    require_finite("times", times)

    sd = build_spectral(config)
    path = CoefficientPath(sd)
    coeffs = [path.at(t) for t in times]
    traj = track_roots(
        zip(times, coeffs),
        coeff_eval=path.at,
        first_sample=config.z0,
        closure_time=period(config),
    )
    return traj, np.array(coeffs)
