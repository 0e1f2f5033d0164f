"""Hermite-zero machinery and the equilibrium catalog of the position dynamics.

The stationary coefficient configurations (for omega = 1) are the zeros of
the degree-n physicists' Hermite polynomial and i times them; stationary
position configurations are the zeros of the monic polynomials obtained by
distributing either coefficient set over the n slots in every order.  Each
catalog entry is certified by evaluating the full equations of motion.
"""

from __future__ import annotations

import itertools
import json

import numpy as np

from .model import EquilibriumCatalog, EquilibriumEntry
from .oracle import rhs_calogero, rhs_newgold
from .roots import match_labels, roots_of_monic

CATALOG_RESIDUAL_TOL = 1e-6
CALOGERO_RESIDUAL_TOL = 1e-10
DEDUP_TOL = 1e-8


def hermite_value(n, x):
    """H_n(x) and H_n'(x) for the physicists' Hermite polynomial, by the
    three-term recurrence H_{k+1} = 2x H_k - 2k H_{k-1}."""
    x = np.asarray(x, dtype=np.float64)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev, np.zeros_like(x)
    h = 2.0 * x
    for k in range(1, n):
        h, h_prev = 2.0 * x * h - 2.0 * k * h_prev, h
    return h, 2.0 * n * h_prev


def hermite_coefficient_scale(n) -> float:
    """Largest coefficient magnitude of H_n (normalizes zero residuals)."""
    coeffs = np.zeros(n + 1)
    coeffs[0] = 1.0
    if n >= 1:
        prev = coeffs.copy()
        cur = np.zeros(n + 1)
        cur[1] = 2.0
        for k in range(1, n):
            nxt = np.zeros(n + 1)
            nxt[1:] = 2.0 * cur[:-1]
            nxt -= 2.0 * k * prev
            prev, cur = cur, nxt
        coeffs = cur
    return float(np.abs(coeffs).max())


def hermite_zeros(n) -> np.ndarray:
    """Ascending real zeros of the physicists' Hermite polynomial H_n.

    Eigenvalues of the symmetric tridiagonal recurrence (Jacobi) matrix with
    off-diagonal sqrt(k/2), polished with two Newton steps on H_n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return np.zeros(1)
    off = np.sqrt(np.arange(1, n) / 2.0)
    jac = np.diag(off, 1) + np.diag(off, -1)
    zeros = np.linalg.eigvalsh(jac)
    for _ in range(2):
        h, dh = hermite_value(n, zeros)
        zeros = zeros - h / dh
    # zeros of H_n are symmetric about 0; enforce it exactly
    zeros = 0.5 * (zeros - zeros[::-1])
    return np.sort(zeros)


def calogero_equilibria(n, omega=1.0):
    """The two stationary coefficient families for omega = 1.

    Returns ``[("real", zeros), ("imaginary", i*zeros)]`` with each family
    certified stationary to 1e-10.  Other omega values are rejected: the
    coefficient equilibria scale as omega^(-1/2), but the induced position
    configurations do not scale uniformly, so no catalog is offered there.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if omega != 1.0:
        raise ValueError(
            "equilibrium families are only cataloged for omega = 1; "
            "use rhs_calogero to certify candidates at other omega"
        )
    zeros = hermite_zeros(n).astype(np.complex128)
    families = [("real", zeros), ("imaginary", 1j * zeros)]
    for name, values in families:
        resid = float(np.abs(rhs_calogero(values, 1.0)).max())
        if resid > CALOGERO_RESIDUAL_TOL:
            raise ArithmeticError(
                f"{name} coefficient family fails certification: residual {resid:.3e}"
            )
    return families


def multiset_distance(a, b) -> float:
    """Max displacement under the optimal pairing of two equal-size multisets."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    sigma = match_labels(a, b)
    return float(np.abs(b[sigma] - a).max())


def newgold_equilibria(n, omega=1.0) -> EquilibriumCatalog:
    """Catalog of stationary position configurations derived from the
    Hermite construction (omega = 1).

    For each family and each of the n! slot orderings of its coefficient
    set, the zeros of the assembled monic polynomial form a candidate;
    candidates equal as multisets within 1e-8 are deduplicated (first
    occurrence wins, families in (real, imaginary) order, orderings in
    lexicographic order).  Every kept entry is certified stationary by the
    full equations of motion.

    The catalog claims only the configurations this construction yields;
    whether others exist is not decided here.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    families = calogero_equilibria(n, omega)
    entries = []
    for family, values in families:
        for perm_index, perm in enumerate(itertools.permutations(range(n))):
            coeffs = values[list(perm)]
            config = roots_of_monic(coeffs)
            if any(
                multiset_distance(config, e.configuration) < DEDUP_TOL for e in entries
            ):
                continue
            residual = float(np.abs(rhs_newgold(config, np.zeros(n), 1.0)).max())
            if residual > CATALOG_RESIDUAL_TOL:
                raise ArithmeticError(
                    f"candidate from family={family} perm={perm_index} fails "
                    f"certification: residual {residual:.3e}"
                )
            entries.append(
                EquilibriumEntry(
                    configuration=config,
                    family=family,
                    permutation_index=perm_index,
                    residual=residual,
                )
            )
    return EquilibriumCatalog(n=n, entries=tuple(entries))


def catalog_to_json(catalog: EquilibriumCatalog) -> str:
    """Export schema: list of {family, perm, z: [[re, im]*n], residual}."""
    doc = [
        {
            "family": e.family,
            "perm": e.permutation_index,
            "z": [[z.real, z.imag] for z in e.configuration],
            "residual": e.residual,
        }
        for e in catalog.entries
    ]
    return json.dumps(doc, indent=1)


def catalog_from_json(text) -> EquilibriumCatalog:
    doc = json.loads(text)
    if not isinstance(doc, list) or not doc:
        raise ValueError("catalog document must be a non-empty JSON list")
    entries = []
    for item in doc:
        z = np.array([complex(re, im) for re, im in item["z"]])
        entries.append(
            EquilibriumEntry(
                configuration=z,
                family=item["family"],
                permutation_index=int(item["perm"]),
                residual=float(item["residual"]),
            )
        )
    return EquilibriumCatalog(n=len(entries[0].configuration), entries=tuple(entries))
