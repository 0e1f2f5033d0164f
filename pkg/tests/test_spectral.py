import math

import numpy as np
import pytest

import goldfish
from goldfish import (
    CollisionError,
    SystemConfig,
    build_spectral,
    coefficient_path,
    coefficients_at,
    eigenvalues,
    hermite_zeros,
    integrate_states,
    rhs_calogero,
    solve_newgold,
    solve_newgold_with_coeffs,
)
from goldfish.spectral import propagator_matrix
from goldfish.symmetry import eval_monic, polynomial_scale

from helpers import multiset_dev, random_config

TWO_PI = 2.0 * math.pi


def equilibrium_config_n2():
    z0 = np.array([0.353553 - 0.762959j, 0.353553 + 0.762959j])
    return SystemConfig(n=2, omega=1.0, z0=z0, v0=np.zeros(2, complex))


# --- build_spectral ---------------------------------------------------------


def test_build_at_equilibrium_pair():
    sd = build_spectral(equilibrium_config_n2())
    root_half = 1.0 / math.sqrt(2.0)
    assert abs(sd.c0_diag[0] - (-root_half)) < 1e-5
    assert abs(sd.c0_diag[1] - root_half) < 1e-5
    # zero initial velocities: exactly zero diagonal
    assert sd.cdot0[0, 0] == 0.0 and sd.cdot0[1, 1] == 0.0
    # off-diagonal pattern -i/(c_m - c_l), magnitude 1/sqrt(2)
    d = sd.c0_diag[0] - sd.c0_diag[1]
    assert abs(sd.cdot0[0, 1] - (-1j / d)) < 1e-12
    assert abs(sd.cdot0[1, 0] - (1j / d)) < 1e-12
    assert abs(abs(sd.cdot0[0, 1]) - root_half) < 1e-5


def test_zero_velocity_zero_diagonal():
    rng = np.random.default_rng(8)
    cfg = random_config(rng, 4, vel_scale=0.0)
    sd = build_spectral(cfg)
    assert np.all(np.diag(sd.cdot0) == 0.0)


def test_coefficient_collision_rejected():
    # roots of x^2 + x + 1 give c = (1, 1): the construction divides by c1-c2
    z = np.roots([1.0, 1.0, 1.0])
    cfg = SystemConfig(n=2, omega=1.0, z0=z, v0=np.zeros(2, complex))
    with pytest.raises(CollisionError) as info:
        build_spectral(cfg)
    assert info.value.family == "c"
    with pytest.raises(CollisionError):
        goldfish.SpectralData(
            c0_diag=np.array([1.0 + 0j, 1.0 + 0j]),
            cdot0=np.zeros((2, 2), complex),
            omega=1.0,
        )


def test_second_difference_matches_coefficient_ode():
    """Finite-difference oracle: d2c/dt2 from the propagated path equals the
    coefficient equations of motion."""
    rng = np.random.default_rng(31)
    cfg = random_config(rng, 3)
    sd = build_spectral(cfg)
    path = goldfish.spectral.CoefficientPath(sd)
    h = 1e-4
    for t in rng.uniform(0.3, 5.5, 10):
        c_m = path.at(t - h)
        c_0 = path.at(t)
        c_p = path.at(t + h)
        second = (c_p - 2.0 * c_0 + c_m) / h**2
        assert np.abs(second - rhs_calogero(c_0, cfg.omega)).max() < 1e-4


# --- coefficients_at --------------------------------------------------------


def test_coefficients_at_zero_is_exact():
    rng = np.random.default_rng(12)
    cfg = random_config(rng, 4)
    sd = build_spectral(cfg)
    got = coefficients_at(sd, 0.0)
    order = np.lexsort((sd.c0_diag.imag, sd.c0_diag.real))
    assert np.array_equal(got, sd.c0_diag[order])


def test_coefficients_at_period_multiset():
    rng = np.random.default_rng(13)
    cfg = random_config(rng, 3, omega=1.7)
    sd = build_spectral(cfg)
    got = coefficients_at(sd, TWO_PI / 1.7)
    assert multiset_dev(got, sd.c0_diag) < 1e-12


def test_equilibrium_seed_constant_coefficients():
    # coefficients at the Hermite zeros with zero velocity stay put
    zeros = hermite_zeros(3).astype(complex)
    z0 = goldfish.roots_of_monic(zeros)
    cfg = SystemConfig(n=3, omega=1.0, z0=z0, v0=np.zeros(3, complex))
    sd = build_spectral(cfg)
    for t in np.linspace(0.0, TWO_PI, 25):
        assert multiset_dev(coefficients_at(sd, t), zeros) < 1e-10


def test_matrix_periodicity():
    rng = np.random.default_rng(14)
    cfg = random_config(rng, 3, omega=0.8)
    sd = build_spectral(cfg)
    t_period = TWO_PI / 0.8
    for t in (0.1, 1.3, 4.0):
        a = propagator_matrix(sd, t)
        b = propagator_matrix(sd, t + t_period)
        assert np.abs(a - b).max() < 1e-12 * max(1.0, np.abs(a).max())


# --- eigenvalues ------------------------------------------------------------


def test_eigenvalues_diagonal():
    got = eigenvalues(np.diag([1.0 + 0j, 2.0j, -3.0 + 0j]))
    assert multiset_dev(got, [1.0, 2.0j, -3.0]) < 1e-13


def test_eigenvalues_symmetric_swap():
    got = eigenvalues(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
    assert multiset_dev(got, [1.0, -1.0]) < 1e-12


def test_eigenvalues_trace_determinant_oracle():
    rng = np.random.default_rng(99)
    for _ in range(10):
        m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        vals = eigenvalues(m)
        trace = np.trace(m)
        det = np.linalg.det(m)  # LU-based
        assert abs(vals.sum() - trace) < 1e-9 * max(1.0, abs(trace))
        assert abs(vals.prod() - det) < 1e-9 * max(1.0, abs(det))


def test_eigenvalue_residual_by_inverse_iteration():
    """For each eigenvalue, inverse iteration yields a vector with
    |m v - lambda v| <= 1e-10 ||m||."""
    rng = np.random.default_rng(55)
    m = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    norm = np.linalg.norm(m, 2)
    for lam in eigenvalues(m):
        shifted = m - (lam + 1e-12) * np.eye(5)
        v = rng.normal(size=5) + 1j * rng.normal(size=5)
        for _ in range(3):
            v = np.linalg.solve(shifted, v)
            v = v / np.linalg.norm(v)
        assert np.linalg.norm(m @ v - lam * v) <= 1e-10 * norm


def test_eigenvalues_rejects_non_square():
    with pytest.raises(ValueError):
        eigenvalues(np.ones((2, 3), dtype=complex))


# --- solve_newgold ----------------------------------------------------------


def test_time_zero_returns_initial_positions():
    rng = np.random.default_rng(21)
    cfg = random_config(rng, 4)
    traj = solve_newgold(cfg, [0.0])
    assert np.abs(traj.samples[0] - cfg.z0).max() < 1e-10


def test_spectral_matches_ode_oracle_n2a():
    cfg = goldfish.bundled_config("n2a")
    times = np.linspace(0.0, TWO_PI, 401)
    traj = solve_newgold(cfg, times)
    states = integrate_states("newgold", (cfg.z0, cfg.v0), cfg.omega, times)
    assert np.abs(traj.samples - states[:, :2]).max() < 1e-6


def test_period_closure_multiset():
    # this seed has trivial coefficient monodromy, so positions recur at T
    rng = np.random.default_rng(23)
    cfg = random_config(rng, 3, omega=2.0)
    t_period = TWO_PI / 2.0
    traj = solve_newgold(cfg, np.linspace(0.0, t_period, 201))
    assert multiset_dev(traj.samples[-1], traj.samples[0]) < 1e-8
    assert traj.closure_permutation is not None


def test_coefficient_monodromy_extends_period():
    """Coefficient branches may return to permuted slots after one period
    (their multiset is always T-periodic); the polynomial then only recurs
    after k_c periods, and so do the positions.  Confirmed independently by
    direct integration of the position dynamics."""
    rng = np.random.default_rng(777)
    random_config(rng, 2, omega=0.5)  # advance the stream to the known case
    cfg = random_config(rng, 3, omega=1.0)
    t_period = TWO_PI
    sd = build_spectral(cfg)
    path = goldfish.spectral.CoefficientPath(sd)
    sigma_c = goldfish.match_labels(path.at(t_period), sd.c0_diag)
    k_c = goldfish.permutation_order(sigma_c)
    assert k_c == 3
    assert multiset_dev(path.at(t_period), sd.c0_diag) < 1e-10  # multiset recurs

    probes = np.linspace(0.0, k_c * t_period, 3 * k_c + 1)
    states = integrate_states("newgold", (cfg.z0, cfg.v0), 1.0, probes)
    # positions do NOT recur at T ...
    assert multiset_dev(states[3, :3], cfg.z0) > 1e-2
    # ... but do at k_c * T, by both routes
    assert multiset_dev(states[-1, :3], cfg.z0) < 1e-7
    traj = solve_newgold(cfg, probes)
    assert multiset_dev(traj.samples[-1], traj.samples[0]) < 1e-8
    assert np.abs(traj.samples - states[:, :3]).max() < 1e-6


def test_position_m_matrix_variant_disagrees_with_dynamics():
    """Diagnostic: the literal position-difference commutator does not
    propagate the coefficient flow (the coefficient reading does)."""
    rng = np.random.default_rng(27)
    cfg = random_config(rng, 3)
    c0 = goldfish.coeffs_from_roots(cfg.z0)
    cdot0 = goldfish.coeff_velocities(cfg.z0, cfg.v0)
    times = np.linspace(0.0, 2.0, 41)
    states = integrate_states("calogero", (c0, cdot0), cfg.omega, times)

    sd_coeff = build_spectral(cfg, m_source="coeff")
    sd_pos = build_spectral(cfg, m_source="position")
    dev_coeff = max(
        multiset_dev(coefficients_at(sd_coeff, t), states[k, :3])
        for k, t in enumerate(times)
    )
    dev_pos = max(
        multiset_dev(coefficients_at(sd_pos, t), states[k, :3])
        for k, t in enumerate(times)
    )
    assert dev_coeff < 1e-8
    assert dev_pos > 1e-3


def test_coefficient_path_slots_match_ode_identity():
    """Slot-wise (not just multiset) agreement with the integrated flow."""
    rng = np.random.default_rng(29)
    cfg = random_config(rng, 4)
    c0 = goldfish.coeffs_from_roots(cfg.z0)
    cdot0 = goldfish.coeff_velocities(cfg.z0, cfg.v0)
    times = np.linspace(0.0, TWO_PI, 101)
    states = integrate_states("calogero", (c0, cdot0), 1.0, times)
    path = coefficient_path(build_spectral(cfg), times)
    assert np.abs(path - states[:, :4]).max() < 1e-7


def test_psi_membership_along_trajectory():
    rng = np.random.default_rng(33)
    cfg = random_config(rng, 3)
    times = np.linspace(0.0, TWO_PI, 101)
    traj, coeffs = solve_newgold_with_coeffs(cfg, times)
    for row, c in zip(traj.samples, coeffs):
        resid = np.abs(eval_monic(c, row)).max()
        assert resid <= 1e-8 * polynomial_scale(c)


def test_times_must_start_at_zero():
    rng = np.random.default_rng(35)
    cfg = random_config(rng, 2)
    with pytest.raises(ValueError, match="start at 0"):
        solve_newgold(cfg, [1.0, 2.0])
