"""Core domain types, configuration ingestion, and shared numeric conventions.

Complex numbers travel as (re, im) pairs in configuration documents and as
``complex128`` values in memory.  All container types are immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
import numpy as np

# Collision tolerance: two values are coincident when the max-norm of their
# componentwise difference falls below this.  Used uniformly for z and c
# collisions so that every pairwise-difference denominator in the dynamics
# fails reproducibly.
COLLISION_TOL = 1e-10


class GoldfishError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(GoldfishError):
    """Malformed or invalid configuration document."""


class CollisionError(GoldfishError):
    """Two values of a pairwise-difference denominator family coincide.

    Attributes
    ----------
    family : str
        Which family collided: ``"z"`` (positions) or ``"c"`` (coefficients).
    pair : tuple[int, int]
        Zero-based indices of the offending pair.
    """

    def __init__(self, message, family="z", pair=(0, 1)):
        super().__init__(message)
        self.family = family
        self.pair = tuple(pair)


class ConvergenceError(GoldfishError):
    """An iterative solver exhausted its budget.

    Attributes
    ----------
    residual : float | None
        Best residual achieved when the budget ran out, if known.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class TrackingError(GoldfishError):
    """Continuity-based label tracking is ambiguous (near or exact collision)."""


class IntegrationError(GoldfishError):
    """Adaptive integration aborted.

    Attributes
    ----------
    t_last : float
        Last time with a successfully accepted step.
    """

    def __init__(self, message, t_last=0.0):
        super().__init__(message)
        self.t_last = float(t_last)


def require_finite(name, values):
    """Reject NaN/Inf before they can propagate into any numeric kernel."""
    arr = np.asarray(values)
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def as_complex_vector(name, values, length=None):
    """Coerce to a finite complex128 vector, optionally of fixed length."""
    arr = np.atleast_1d(np.asarray(values, dtype=np.complex128))
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if length is not None and arr.shape[0] != length:
        raise ValueError(f"{name} must have length {length}, got {arr.shape[0]}")
    require_finite(name, arr)
    return arr


def min_pairwise_separation(values):
    """Smallest max-norm separation over all pairs; inf for fewer than 2 entries.

    The max-norm of a complex difference is max(|re|, |im|), matching the
    collision convention used by every denominator check in the package.
    """
    v = np.asarray(values, dtype=np.complex128)
    n = v.shape[0]
    best = math.inf
    for i in range(n):
        d = v[i] - v[i + 1:]
        if d.size:
            sep = np.maximum(np.abs(d.real), np.abs(d.imag)).min()
            best = min(best, float(sep))
    return best


def _coincident_pair(values, tol=COLLISION_TOL):
    """Return the first pair of indices closer than tol in max-norm, or None."""
    v = np.asarray(values, dtype=np.complex128)
    for i in range(v.shape[0]):
        for j in range(i + 1, v.shape[0]):
            d = v[i] - v[j]
            if max(abs(d.real), abs(d.imag)) < tol:
                return (i, j)
    return None


def _frozen(arr):
    out = np.array(arr)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class SystemConfig:
    """Validated problem definition: size, frequency, and initial data.

    Parameters
    ----------
    n : int
        Number of bodies, at least 2.
    omega : float
        Angular frequency, strictly positive.  The base period is 2*pi/omega.
    z0, v0 : array-like of complex, length n
        Initial positions and velocities.  Positions must be pairwise
        distinct beyond the collision tolerance.
    t_end : float, optional
        Default simulation horizon; ``None`` means one base period.
    samples : int
        Default number of output intervals for simulations.
    """

    n: int
    omega: float
    z0: np.ndarray
    v0: np.ndarray
    t_end: float | None = None
    samples: int = 1000

    def __post_init__(self):
        n = self.n
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
            raise ConfigError("n: must be an integer")
        if n < 2:
            raise ConfigError("n: n must be >= 2")
        omega = self.omega
        if not isinstance(omega, (int, float, np.floating)) or isinstance(omega, bool):
            raise ConfigError("omega: must be a number")
        omega = float(omega)
        if not math.isfinite(omega) or omega <= 0:
            raise ConfigError("omega: must be finite and > 0")
        try:
            z0 = as_complex_vector("z0", self.z0, length=n)
            v0 = as_complex_vector("v0", self.v0, length=n)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        pair = _coincident_pair(z0)
        if pair is not None:
            raise ConfigError(
                f"z0: coincident initial positions (z0[{pair[0]}], z0[{pair[1]}])"
            )
        if self.t_end is not None:
            t_end = float(self.t_end)
            if not math.isfinite(t_end) or t_end <= 0:
                raise ConfigError("t_end: must be finite and > 0")
            object.__setattr__(self, "t_end", t_end)
        if not isinstance(self.samples, (int, np.integer)) or isinstance(self.samples, bool) or self.samples < 1:
            raise ConfigError("samples: must be an integer >= 1")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "z0", _frozen(z0))
        object.__setattr__(self, "v0", _frozen(v0))
        object.__setattr__(self, "samples", int(self.samples))

    def __eq__(self, other):
        if not isinstance(other, SystemConfig):
            return NotImplemented
        return (
            self.n == other.n
            and self.omega == other.omega
            and np.array_equal(self.z0, other.z0)
            and np.array_equal(self.v0, other.v0)
            and self.t_end == other.t_end
            and self.samples == other.samples
        )

    @property
    def duration(self):
        """Simulation horizon: explicit t_end, or one base period."""
        return self.t_end if self.t_end is not None else period(self)


@dataclass(frozen=True, eq=False)
class CoeffState:
    """Coefficient-space state: values c and velocities cdot, equal length."""

    c: np.ndarray
    cdot: np.ndarray

    def __post_init__(self):
        c = as_complex_vector("c", self.c)
        cdot = as_complex_vector("cdot", self.cdot, length=c.shape[0])
        object.__setattr__(self, "c", _frozen(c))
        object.__setattr__(self, "cdot", _frozen(cdot))

    def __eq__(self, other):
        if not isinstance(other, CoeffState):
            return NotImplemented
        return np.array_equal(self.c, other.c) and np.array_equal(self.cdot, other.cdot)


@dataclass(frozen=True, eq=False)
class MonicPolynomial:
    """Monic polynomial x^N + sum_m coeffs[m-1] * x^(N-m).

    ``coeffs`` holds the N trailing coefficients in descending-power order;
    the leading coefficient is implicitly 1, so the degree is exactly
    ``len(coeffs)``.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = as_complex_vector("coeffs", self.coeffs)
        if coeffs.shape[0] < 1:
            raise ValueError("coeffs: a monic polynomial needs degree >= 1")
        object.__setattr__(self, "coeffs", _frozen(coeffs))

    @property
    def degree(self):
        return int(self.coeffs.shape[0])

    def __eq__(self, other):
        if not isinstance(other, MonicPolynomial):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)


def monic_coeffs(p):
    """Trailing coefficient vector of ``p`` (MonicPolynomial or array-like)."""
    if isinstance(p, MonicPolynomial):
        return p.coeffs
    return as_complex_vector("coeffs", p)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Labeled complex configurations on a strictly increasing time grid.

    ``samples[k, j]`` is the position of the body carrying label ``j`` at
    ``times[k]``.  Labels are persistent: consecutive samples are connected
    by continuity, so column j traces one body.  ``closure_permutation``,
    when present, maps each label to the label of the starting position it
    has moved onto at the recorded closure time: sigma[j] = m means body j
    sits on the initial position of body m.
    """

    times: np.ndarray
    samples: np.ndarray
    closure_permutation: np.ndarray | None = None

    def __post_init__(self):
        times = np.asarray(self.times, dtype=np.float64)
        samples = np.asarray(self.samples, dtype=np.complex128)
        if times.ndim != 1 or samples.ndim != 2 or samples.shape[0] != times.shape[0]:
            raise ValueError("times must be 1-d and samples (len(times), n)")
        if times.shape[0] > 1 and not np.all(np.diff(times) > 0):
            raise ValueError("times must be strictly increasing")
        require_finite("times", times)
        require_finite("samples", samples)
        perm = self.closure_permutation
        if perm is not None:
            perm = np.asarray(perm, dtype=np.intp)
            if sorted(perm.tolist()) != list(range(samples.shape[1])):
                raise ValueError("closure_permutation must be a permutation of 0..n-1")
            perm = _frozen(perm)
        object.__setattr__(self, "times", _frozen(times))
        object.__setattr__(self, "samples", _frozen(samples))
        object.__setattr__(self, "closure_permutation", perm)

    @property
    def n(self):
        return int(self.samples.shape[1])

    def with_closure(self, permutation):
        return Trajectory(self.times, self.samples, permutation)


@dataclass(frozen=True)
class EquilibriumEntry:
    """One certified stationary configuration and its provenance."""

    configuration: np.ndarray
    family: str  # "real" | "imaginary"
    permutation_index: int
    residual: float

    def __post_init__(self):
        object.__setattr__(
            self, "configuration", _frozen(as_complex_vector("configuration", self.configuration))
        )


@dataclass(frozen=True)
class EquilibriumCatalog:
    """Deduplicated equilibrium configurations with residual certificates."""

    n: int
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


# ---------------------------------------------------------------------------
# Configuration documents


_TOP_KEYS = {"n", "omega", "z0", "v0", "t_end", "samples"}


def _decode_complex_list(key, raw, n):
    if not isinstance(raw, list):
        raise ConfigError(f"{key}: expected a list of [re, im] pairs")
    if len(raw) != n:
        raise ConfigError(f"{key}: expected {n} entries, got {len(raw)}")
    out = np.empty(n, dtype=np.complex128)
    for i, item in enumerate(raw):
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in item)
        ):
            raise ConfigError(f"{key}[{i}]: expected a [re, im] pair of numbers")
        re, im = float(item[0]), float(item[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ConfigError(f"{key}[{i}]: components must be finite")
        out[i] = complex(re, im)
    return out


def load_config(source) -> SystemConfig:
    """Parse and validate a JSON configuration document.

    Parameters
    ----------
    source : bytes | str | file-like
        The document itself, or an open stream yielding it.

    Returns
    -------
    SystemConfig

    Raises
    ------
    ConfigError
        On malformed JSON or any validation failure, with the offending
        field path in the message.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8", errors="strict")
    try:
        doc = json.loads(source)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ConfigError(f"malformed configuration document: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("configuration document must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown key '{sorted(unknown)[0]}'")
    for key in ("n", "omega", "z0", "v0"):
        if key not in doc:
            raise ConfigError(f"{key}: missing required key")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ConfigError("n: must be an integer")
    if n < 2:
        raise ConfigError("n: n must be >= 2")
    omega = doc["omega"]
    if not isinstance(omega, (int, float)) or isinstance(omega, bool):
        raise ConfigError("omega: must be a number")
    z0 = _decode_complex_list("z0", doc["z0"], n)
    v0 = _decode_complex_list("v0", doc["v0"], n)
    t_end = doc.get("t_end")
    if t_end is not None and (not isinstance(t_end, (int, float)) or isinstance(t_end, bool)):
        raise ConfigError("t_end: must be a number")
    samples = doc.get("samples", 1000)
    if not isinstance(samples, int) or isinstance(samples, bool):
        raise ConfigError("samples: must be an integer")
    return SystemConfig(
        n=n,
        omega=float(omega),
        z0=z0,
        v0=v0,
        t_end=None if t_end is None else float(t_end),
        samples=samples,
    )


def serialize_config(config: SystemConfig) -> bytes:
    """Canonical byte serialization; load_config(serialize_config(c)) == c."""
    doc = {
        "n": config.n,
        "omega": config.omega,
        "z0": [[z.real, z.imag] for z in config.z0],
        "v0": [[v.real, v.imag] for v in config.v0],
    }
    if config.t_end is not None:
        doc["t_end"] = config.t_end
    doc["samples"] = config.samples
    return json.dumps(doc, separators=(",", ":")).encode("utf-8")


def period(config: SystemConfig) -> float:
    """Base period 2*pi/omega of the isochronous dynamics."""
    return 2.0 * math.pi / config.omega
