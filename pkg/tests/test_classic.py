import cmath
import math

import numpy as np
import pytest

import goldfish
from goldfish import (
    SystemConfig,
    hamiltonian_isogold,
    integrate_states,
    rhs_isogold,
    solve_isogold,
    solve_isogold_path,
)
from goldfish.classic import isogold_polynomial

from helpers import multiset_dev, random_config

TWO_PI = 2.0 * math.pi


# --- solve_isogold ------------------------------------------------------------


def test_continuity_at_time_zero():
    rng = np.random.default_rng(71)
    cfg = random_config(rng, 3)
    got = solve_isogold(cfg, 1e-8)
    assert multiset_dev(got, cfg.z0) < 1e-6


def test_period_returns_initial_multiset():
    rng = np.random.default_rng(72)
    for omega in (1.0, 0.5):
        cfg = random_config(rng, 3, omega=omega)
        got = solve_isogold(cfg, TWO_PI / omega)
        assert multiset_dev(got, cfg.z0) < 1e-8


def test_matches_ode_oracle_n2():
    cfg = SystemConfig(
        n=2, omega=1.0,
        z0=np.array([1.0 + 0j, -1.0 + 0j]),
        v0=np.array([0.3 + 0j, -0.2j]),
    )
    times = np.linspace(0.0, TWO_PI, 201)
    traj = solve_isogold_path(cfg, times)
    states = integrate_states("isogold", (cfg.z0, cfg.v0), 1.0, times)
    assert np.abs(traj.samples - states[:, :2]).max() < 1e-7


def test_matches_ode_oracle_random_corpus():
    rng = np.random.default_rng(73)
    for n in (2, 3, 4, 5):
        cfg = random_config(rng, n, vel_scale=0.3)
        times = np.linspace(0.0, TWO_PI, 101)
        traj = solve_isogold_path(cfg, times)
        states = integrate_states("isogold", (cfg.z0, cfg.v0), 1.0, times)
        assert np.abs(traj.samples - states[:, :n]).max() < 1e-7


def test_periodicity_random_corpus():
    rng = np.random.default_rng(74)
    for _ in range(20):
        n = int(rng.integers(2, 6))
        cfg = random_config(rng, n, vel_scale=0.3)
        got = solve_isogold(cfg, TWO_PI)
        assert multiset_dev(got, cfg.z0) < 1e-8


def test_tracked_path_closes_at_permutation_order():
    rng = np.random.default_rng(75)
    cfg = random_config(rng, 3, vel_scale=0.4)
    traj = solve_isogold_path(cfg, np.linspace(0.0, TWO_PI, 501))
    sigma = traj.closure_permutation
    assert sigma is not None
    k = goldfish.permutation_order(sigma)
    full = solve_isogold_path(cfg, np.linspace(0.0, k * TWO_PI, 501 * k))
    assert np.abs(full.samples[-1] - full.samples[0]).max() < 1e-7


def test_polynomial_degree_and_leading_coefficient():
    rng = np.random.default_rng(76)
    cfg = random_config(rng, 4)
    for t in (0.5, 1.0, 2.0, 5.0):
        beta = 1j * cfg.omega / (cmath.exp(1j * cfg.omega * t) - 1.0)
        coeffs = isogold_polynomial(cfg.z0, cfg.v0, cfg.omega, t)
        assert coeffs.shape == (4,)  # monic degree 4: exactly 4 trailing coeffs
        assert abs(beta) > 0.0
        assert np.all(np.isfinite(coeffs.view(np.float64)))


def test_omega_zero_limit_matches_ode():
    # the non-periodic limit: prefactor beta = 1/t
    z0 = np.array([1.0 + 0j, -1.0 + 0.5j])
    v0 = np.array([0.2 - 0.1j, -0.3 + 0.05j])
    times = np.linspace(0.0, 1.0, 11)
    states = integrate_states("isogold", (z0, v0), 0.0, times)
    for k, t in enumerate(times[1:], start=1):
        roots = goldfish.roots_of_monic(isogold_polynomial(z0, v0, 0.0, t))
        assert multiset_dev(roots, states[k, :2]) < 1e-7


def test_omega_zero_singular_at_zero():
    with pytest.raises(ValueError, match="singular"):
        isogold_polynomial(np.array([1.0 + 0j, 2.0 + 0j]), np.zeros(2, complex), 0.0, 0.0)


# --- hamiltonian_isogold --------------------------------------------------------


def grad_hamiltonian(zeta, z, omega, eps=1e-6):
    """Independent oracle: central-difference canonical gradients of H."""
    n = len(z)
    dz = np.empty(n, dtype=complex)  # dH/dzeta_n (= zdot_n)
    dzeta = np.empty(n, dtype=complex)  # dH/dz_n (= -zetadot_n)
    for k in range(n):
        e = np.zeros(n, dtype=complex)
        e[k] = eps
        dz[k] = (hamiltonian_isogold(zeta + e, z, omega) - hamiltonian_isogold(zeta - e, z, omega)) / (2 * eps)
        dzeta[k] = (hamiltonian_isogold(zeta, z + e, omega) - hamiltonian_isogold(zeta, z - e, omega)) / (2 * eps)
    return dz, dzeta


def log_momenta_for_velocity(z, v):
    """zeta with e^{zeta_n} = v_n prod_{l != n} (z_n - z_l)."""
    n = len(z)
    zeta = np.empty(n, dtype=complex)
    for k in range(n):
        prod = np.prod([z[k] - z[l] for l in range(n) if l != k])
        zeta[k] = np.log(v[k] * prod)
    return zeta


def test_unit_exponential_terms():
    rng = np.random.default_rng(81)
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    # zeta_n = log prod (z_n - z_l) makes each exponential term equal 1
    zeta = log_momenta_for_velocity(z, np.ones(4, complex))
    h = hamiltonian_isogold(zeta, z, 2.0)
    expect = -2.0j * z.sum() + 4.0
    assert abs(h - expect) < 1e-10


def test_canonical_velocity_by_finite_differences():
    rng = np.random.default_rng(82)
    z = rng.normal(size=3) + 1j * rng.normal(size=3)
    zeta = 0.3 * (rng.normal(size=3) + 1j * rng.normal(size=3))
    dz, _ = grad_hamiltonian(zeta, z, 1.0)
    for k in range(3):
        prod = np.prod([z[k] - z[l] for l in range(3) if l != k])
        expect = np.exp(zeta[k]) / prod
        assert abs(dz[k] - expect) < 1e-8


def canonical_rk4_step(zeta, z, omega, h):
    """One RK4 step of the canonical flow driven by FD gradients of H."""

    def f(state):
        zt, zz = state
        dz, dzeta = grad_hamiltonian(zt, zz, omega)
        return (-dzeta, dz)  # (zetadot, zdot)

    s0 = (zeta, z)
    k1 = f(s0)
    k2 = f((zeta + 0.5 * h * k1[0], z + 0.5 * h * k1[1]))
    k3 = f((zeta + 0.5 * h * k2[0], z + 0.5 * h * k2[1]))
    k4 = f((zeta + h * k3[0], z + h * k3[1]))
    zeta1 = zeta + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
    z1 = z + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
    return zeta1, z1


def test_canonical_flow_reproduces_accelerations():
    """Finite-difference second derivative of the canonically-integrated
    positions matches the Newtonian right-hand side (20 random phase
    points; 5-point stencil keeps the truncation error below tolerance)."""
    rng = np.random.default_rng(83)
    h = 1e-3
    for _ in range(20):
        n = int(rng.integers(2, 4))
        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        while goldfish.model.min_pairwise_separation(z) < 0.5:
            z = rng.normal(size=n) + 1j * rng.normal(size=n)
        v = 0.5 * (rng.normal(size=n) + 1j * rng.normal(size=n))
        v[np.abs(v) < 0.05] += 0.1  # keep log momenta well defined
        zeta = log_momenta_for_velocity(z, v)
        zs = {0: z}
        for direction in (1.0, -1.0):
            state = (zeta, z)
            for k in (1, 2):
                state = canonical_rk4_step(state[0], state[1], 1.0, direction * h)
                zs[int(direction * k)] = state[1]
        acc_fd = (
            -zs[2] + 16.0 * zs[1] - 30.0 * zs[0] + 16.0 * zs[-1] - zs[-2]
        ) / (12.0 * h**2)
        acc = rhs_isogold(z, v, 1.0)
        assert np.abs(acc_fd - acc).max() < 1e-6 * max(1.0, np.abs(acc).max())
