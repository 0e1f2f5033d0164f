"""Shared test utilities: seeded config sampling and multiset comparison."""

import numpy as np

import goldfish
from goldfish.model import min_pairwise_separation


def random_config(rng, n, omega=1.0, vel_scale=0.5, min_sep=0.25, min_coeff_sep=0.2):
    """Well-separated random initial data in the unit disk.

    Rejection-samples until both the positions and the derived coefficients
    are separated enough that no route trips a collision guard.
    """
    for _ in range(1000):
        z0 = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
        v0 = vel_scale * (rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n))
        if min_pairwise_separation(z0) < min_sep:
            continue
        c0 = goldfish.coeffs_from_roots(z0)
        if min_pairwise_separation(c0) < min_coeff_sep:
            continue
        return goldfish.SystemConfig(n=n, omega=omega, z0=z0, v0=v0)
    raise RuntimeError("rejection sampling failed")


def multiset_dev(a, b):
    """Max displacement under optimal pairing (order-free comparison)."""
    return goldfish.multiset_distance(np.asarray(a), np.asarray(b))
