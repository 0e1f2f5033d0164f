"""Monic root extraction and continuity-based root-label tracking.

Roots come from a simultaneous (Aberth-Ehrlich) iteration with a companion
matrix eigenvalue fallback when the iteration stalls (clustered or multiple
zeros).  Labels along a coefficient path are assigned by minimum-cost
matching between consecutive samples, with recursive interval bisection
when a matched displacement is too large relative to the root separation.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from ._backend import kernels
from .model import (
    COLLISION_TOL,
    ConvergenceError,
    Trajectory,
    TrackingError,
    as_complex_vector,
    min_pairwise_separation,
    monic_coeffs,
)
from .symmetry import eval_monic, polynomial_scale

ABERTH_ROTATION = 0.4
ABERTH_MAX_ITER = 500
RESIDUAL_FACTOR = 1e-10
TRACK_DEPTH_LIMIT = 20


def companion_matrix(p) -> np.ndarray:
    """Frobenius companion matrix whose characteristic polynomial is ``p``."""
    c = monic_coeffs(p)
    n = c.shape[0]
    m = np.zeros((n, n), dtype=np.complex128)
    m[0, :] = -c
    if n > 1:
        m[np.arange(1, n), np.arange(0, n - 1)] = 1.0
    return m


def _sorted_by_re_im(values):
    order = np.lexsort((values.imag, values.real))
    return values[order]


def _polish(c, roots):
    """One guarded Newton sweep; never moves a root that would not improve."""
    out = roots.copy()
    for i, r in enumerate(out):
        p = 1.0 + 0.0j
        dp = 0.0 + 0.0j
        for k in range(c.shape[0]):
            dp = dp * r + p
            p = p * r + c[k]
        if dp != 0:
            step = p / dp
            if np.isfinite(step) and abs(step) < 1e-3 * (1.0 + abs(r)):
                out[i] = r - step
    return out


def roots_of_monic(p, rotation=ABERTH_ROTATION) -> np.ndarray:
    """All zeros (with multiplicity) of a monic polynomial.

    Simultaneous iteration from points equally spaced on a circle of radius
    1 + max_m |c_m|^(1/m), rotated by ``rotation`` to dodge symmetry traps;
    convergence when every update falls below 1e-13 (1 + |root|) within 500
    sweeps.  On a stall the zeros are taken from the companion matrix
    eigenvalues and polished with one Newton sweep.

    Returns
    -------
    complex128[N]
        Zeros sorted by (re, im).

    Raises
    ------
    ConvergenceError
        If even the fallback leaves some |p(root)| above
        1e-10 * max(1, max_m |c_m|).  The bound presumes zeros of roughly
        unit magnitude (the regime the dynamics produce); far outside it,
        plain Horner evaluation cannot certify residuals that small in
        double precision.
    """
    c = monic_coeffs(p)
    scale = polynomial_scale(c)
    roots, converged, _ = kernels.aberth(c, rotation, ABERTH_MAX_ITER)
    if not converged:
        roots = np.linalg.eigvals(companion_matrix(c))
        roots = _polish(c, roots)
    resid = float(np.abs(eval_monic(c, roots)).max())
    if resid > RESIDUAL_FACTOR * scale:
        if converged:
            # Aberth "converged" to unacceptable points: retry via companion.
            roots = _polish(c, np.linalg.eigvals(companion_matrix(c)))
            resid = float(np.abs(eval_monic(c, roots)).max())
        if resid > RESIDUAL_FACTOR * scale:
            raise ConvergenceError(
                f"root finding residual {resid:.3e} exceeds "
                f"{RESIDUAL_FACTOR:.0e} * scale ({scale:.3e})",
                residual=resid,
            )
    return _sorted_by_re_im(roots)


@lru_cache(maxsize=None)
def _all_perms(n):
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp)


def _hungarian(cost):
    """Minimum-cost square assignment via potentials, O(n^3).

    Returns ``assign`` with ``assign[i] = j`` meaning row i takes column j.
    """
    n = cost.shape[0]
    inf = np.inf
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=np.intp)  # p[j] = row matched to column j (1-based)
    way = np.zeros(n + 1, dtype=np.intp)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = inf
            j1 = -1
            for j in range(1, n + 1):
                if not used[j]:
                    cur = cost[i0 - 1, j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    assign = np.empty(n, dtype=np.intp)
    for j in range(1, n + 1):
        assign[p[j] - 1] = j - 1
    return assign


def match_labels(prev, next_) -> np.ndarray:
    """Assignment sigma minimizing sum_i |next_[sigma[i]] - prev[i]|^2.

    Exhaustive search for up to 6 points (ties broken toward the
    lexicographically smallest sigma); the Hungarian method beyond that,
    where exact cost ties have measure zero.
    """
    prev = as_complex_vector("prev", prev)
    next_ = as_complex_vector("next", next_, length=prev.shape[0])
    n = prev.shape[0]
    cost = np.abs(next_[None, :] - prev[:, None]) ** 2
    if n <= 6:
        perms = _all_perms(n)
        totals = cost[np.arange(n)[None, :], perms].sum(axis=1)
        return perms[int(np.argmin(totals))].copy()
    return _hungarian(cost)


def permutation_order(sigma) -> int:
    """Multiplicative order of a permutation (lcm of its cycle lengths)."""
    sigma = np.asarray(sigma, dtype=np.intp)
    n = sigma.shape[0]
    seen = np.zeros(n, dtype=bool)
    order = 1
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = int(sigma[j])
            length += 1
        order = order * length // np.gcd(order, length)
    return int(order)


def tracking_threshold(sample) -> float:
    """Displacement bound 0.1 * min pairwise distance, floored at 1e-6."""
    sample = np.asarray(sample, dtype=np.complex128)
    n = sample.shape[0]
    if n < 2:
        return np.inf
    dmin = np.inf
    for i in range(n):
        d = np.abs(sample[i] - sample[i + 1:])
        if d.size:
            dmin = min(dmin, float(d.min()))
    return max(0.1 * dmin, 1e-6)


def chain_labels(t0, labeled0, t1, sample_at, depth=TRACK_DEPTH_LIMIT, _cache=None):
    """Continue a labeled configuration from t0 to t1 along a continuous path.

    ``sample_at(t)`` must return the unordered configuration at ``t``, or
    ``None`` where the path cannot be sampled (no refinement evaluator).
    The interval is bisected whenever the matched displacement exceeds the
    tracking threshold, down to ``depth`` levels.  A hop that passes the
    threshold is additionally confirmed through the interval midpoint when
    one can be sampled: a small endpoint displacement alone cannot rule out
    the configuration having wandered and nearly returned in between.

    Returns the configuration at t1 carrying the labels of ``labeled0``.

    Raises
    ------
    TrackingError
        On an exact collision in a sample, or when bisection cannot bring
        displacements below the threshold within the depth budget.
    """
    if _cache is None:
        _cache = {}

    def sample(t):
        if t not in _cache:
            _cache[t] = sample_at(t)
        return _cache[t]

    def hop(x0, t):
        raw = sample(t)
        raw = as_complex_vector("sample", raw, length=len(x0))
        if min_pairwise_separation(raw) < COLLISION_TOL:
            raise TrackingError(
                f"labels are not unique at t={t!r}: configuration has a collision"
            )
        matched = raw[match_labels(x0, raw)]
        disp = float(np.abs(matched - x0).max())
        return matched, disp <= tracking_threshold(x0)

    if sample(t1) is None:
        raise TrackingError(f"tracking needs a sample at t={t1!r} but none is available")
    x1, ok = hop(labeled0, t1)
    tm = 0.5 * (t0 + t1)
    splittable = t0 < tm < t1

    if ok:
        if depth <= 0 or not splittable or sample(tm) is None:
            return x1
        xm, ok_m = hop(labeled0, tm)
        if ok_m:
            x1_via, ok_via = hop(xm, t1)
            if ok_via and np.array_equal(x1_via, x1):
                return x1
        # midpoint disagreement: the direct hop was a spurious near-return

    if depth <= 0:
        raise TrackingError(
            f"tracking ambiguous near t={t1!r}: bisection depth exhausted"
        )
    if not splittable:
        raise TrackingError(f"tracking interval [{t0!r}, {t1!r}] cannot be split further")
    if sample(tm) is None:
        raise TrackingError(
            f"tracking ambiguous on [{t0!r}, {t1!r}] and no midpoint sampler is available"
        )
    mid = chain_labels(t0, labeled0, tm, sample_at, depth - 1, _cache)
    return chain_labels(tm, mid, t1, sample_at, depth - 1, _cache)


def track_roots(coeff_path, coeff_eval=None, first_sample=None, closure_time=None) -> Trajectory:
    """Extract and label the zeros of a monic polynomial along a path.

    Parameters
    ----------
    coeff_path : iterable of (time, coeffs)
        Strictly increasing times with the trailing coefficients at each.
    coeff_eval : callable t -> coeffs, optional
        Exact coefficient evaluator used to bisect intervals whose matched
        root displacement is ambiguous.  Without it, an ambiguous interval
        raises TrackingError.
    first_sample : array-like of complex, optional
        Reference configuration defining the labels at the first time
        (matched by minimum cost); default keeps (re, im)-sorted order.
    closure_time : float, optional
        Grid time (within 1e-12) at which to record the closure
        permutation sigma with samples[closure][j] ~ samples[0][sigma[j]].
    """
    pairs = [(float(t), as_complex_vector("coeffs", c)) for t, c in coeff_path]
    if not pairs:
        raise ValueError("coeff_path is empty")
    times = np.array([t for t, _ in pairs])
    if times.shape[0] > 1 and not np.all(np.diff(times) > 0):
        raise ValueError("coeff_path times must be strictly increasing")
    grid = {t: c for t, c in pairs}

    def sample_at(t):
        c = grid.get(t)
        if c is None:
            if coeff_eval is None:
                return None  # mid-interval refinement unavailable
            c = as_complex_vector("coeffs", coeff_eval(t))
        return roots_of_monic(c)

    r0 = sample_at(times[0])
    if min_pairwise_separation(r0) < COLLISION_TOL:
        raise TrackingError("labels are not unique at the first sample (collision)")
    if first_sample is not None:
        ref = as_complex_vector("first_sample", first_sample, length=r0.shape[0])
        r0 = r0[match_labels(ref, r0)]
    samples = np.empty((times.shape[0], r0.shape[0]), dtype=np.complex128)
    samples[0] = r0
    for k in range(1, times.shape[0]):
        samples[k] = chain_labels(times[k - 1], samples[k - 1], times[k], sample_at)

    closure = None
    if closure_time is not None:
        hits = np.nonzero(np.abs(times - closure_time) <= 1e-12)[0]
        if hits.size:
            closure = match_labels(samples[hits[-1]], samples[0])
    return Trajectory(times, samples, closure)
