"""The z <-> c dictionary: coefficient maps and monic polynomial evaluation.

For positions z the trailing coefficients of the monic polynomial with
those zeros are c[m-1] = (-1)^m e_m(z), where e_m is the m-th elementary
symmetric function.  Coefficients are built by multiplying out the linear
factors in sequence (O(N^2), numerically stable), never by subset sums.
"""

from __future__ import annotations

import numpy as np

from ._backend import kernels
from .model import as_complex_vector, monic_coeffs


def coeffs_from_roots(z) -> np.ndarray:
    """Trailing coefficients of the monic polynomial with zeros ``z``.

    Coincident entries are legal here; only the dynamics forbid them.

    Parameters
    ----------
    z : array-like of complex, length N

    Returns
    -------
    complex128[N]
        c with x^N + sum_m c[m-1] x^(N-m) = prod_k (x - z[k]).
    """
    z = as_complex_vector("z", z)
    return kernels.elem_sym(z)


def coeff_velocities(z, v) -> np.ndarray:
    """Time derivative of ``coeffs_from_roots`` along z(t) = z + t v at t=0.

    Computed by differentiating the factor-multiplication recurrence, so it
    is exactly linear in ``v``.
    """
    z = as_complex_vector("z", z)
    v = as_complex_vector("v", v, length=z.shape[0])
    return kernels.elem_sym_dot(z, v)


def eval_monic(p, x):
    """Horner evaluation of a monic polynomial at ``x`` (scalar or array).

    Parameters
    ----------
    p : MonicPolynomial or array-like
        Trailing coefficients, leading 1 implicit.
    x : complex scalar or array-like
    """
    c = monic_coeffs(p)
    scalar = np.isscalar(x) or getattr(x, "ndim", 0) == 0
    xv = np.asarray(x, dtype=np.complex128)
    if not np.all(np.isfinite(xv)):
        raise ValueError("x contains non-finite entries")
    out = np.ones_like(xv)
    for m in range(c.shape[0]):
        out = out * xv + c[m]
    return complex(out) if scalar else out


def polynomial_scale(p) -> float:
    """Residual normalization max(1, max_m |c_m|) for root acceptance."""
    c = monic_coeffs(p)
    return max(1.0, float(np.abs(c).max())) if c.size else 1.0
