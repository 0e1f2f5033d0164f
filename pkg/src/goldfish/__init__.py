"""Solvers for an isochronous goldfish-type complex N-body problem.

Positions are the zeros of a monic polynomial whose coefficients follow a
harmonic inverse-cube many-body flow; that flow is solved in closed form by
eigenvalue propagation, cross-checked by direct adaptive integration, and
its stationary configurations are cataloged from Hermite polynomial zeros.
"""

__version__ = "0.1.0"

from ._backend import backend_name, warmup
from .classic import hamiltonian_isogold, isogold_polynomial, solve_isogold, solve_isogold_path
from .equilibria import (
    calogero_equilibria,
    catalog_from_json,
    catalog_to_json,
    hermite_zeros,
    multiset_distance,
    newgold_equilibria,
)
from .model import (
    COLLISION_TOL,
    CoeffState,
    CollisionError,
    ConfigError,
    ConvergenceError,
    EquilibriumCatalog,
    EquilibriumEntry,
    GoldfishError,
    IntegrationError,
    MonicPolynomial,
    SystemConfig,
    TrackingError,
    Trajectory,
    load_config,
    period,
    serialize_config,
)
from .oracle import (
    integrate,
    integrate_states,
    rhs_calogero,
    rhs_isogold,
    rhs_newgold,
    rhs_newgold_n2,
    rhs_newgold_n3,
)
from .presets import bundled_config, bundled_config_names
from .roots import match_labels, permutation_order, roots_of_monic, track_roots
from .spectral import (
    SpectralData,
    build_spectral,
    coefficient_path,
    coefficients_at,
    eigenvalues,
    solve_newgold,
    solve_newgold_with_coeffs,
)
from .symmetry import coeff_velocities, coeffs_from_roots, eval_monic

__all__ = [
    "COLLISION_TOL",
    "CoeffState",
    "CollisionError",
    "ConfigError",
    "ConvergenceError",
    "EquilibriumCatalog",
    "EquilibriumEntry",
    "GoldfishError",
    "IntegrationError",
    "MonicPolynomial",
    "SpectralData",
    "SystemConfig",
    "TrackingError",
    "Trajectory",
    "backend_name",
    "build_spectral",
    "bundled_config",
    "bundled_config_names",
    "calogero_equilibria",
    "catalog_from_json",
    "catalog_to_json",
    "coeff_velocities",
    "coefficient_path",
    "coefficients_at",
    "coeffs_from_roots",
    "eigenvalues",
    "eval_monic",
    "hamiltonian_isogold",
    "hermite_zeros",
    "integrate",
    "integrate_states",
    "isogold_polynomial",
    "load_config",
    "match_labels",
    "multiset_distance",
    "newgold_equilibria",
    "period",
    "permutation_order",
    "rhs_calogero",
    "rhs_isogold",
    "rhs_newgold",
    "rhs_newgold_n2",
    "rhs_newgold_n3",
    "roots_of_monic",
    "serialize_config",
    "solve_isogold",
    "solve_isogold_path",
    "solve_newgold",
    "solve_newgold_with_coeffs",
    "track_roots",
    "warmup",
]
