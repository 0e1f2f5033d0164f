"""Kernel backend selection.

The hot numeric kernels ship in two implementations: numba-jitted loops
(``_kernels_numba``) and a pure-numpy fallback (``_kernels_numpy``).  The
``GOLDFISH_BACKEND`` environment variable picks one:

    auto   -- numba when importable, numpy otherwise (default)
    numba  -- require the jitted kernels, fail loudly if numba is missing
    numpy  -- force the pure-numpy fallback

``benchmarks/bench_kernels.py`` compares the two.
"""

import os

_requested = os.environ.get("GOLDFISH_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise ImportError(
        f"GOLDFISH_BACKEND must be 'auto', 'numba' or 'numpy', got {_requested!r}"
    )

if _requested == "numpy":
    from . import _kernels_numpy as kernels
    BACKEND = "numpy"
elif _requested == "numba":
    from . import _kernels_numba as kernels
    BACKEND = "numba"
else:
    try:
        from . import _kernels_numba as kernels
        BACKEND = "numba"
    except ImportError:
        from . import _kernels_numpy as kernels
        BACKEND = "numpy"


def backend_name():
    """Name of the active kernel backend: 'numba' or 'numpy'."""
    return BACKEND


def warmup():
    """Trigger JIT compilation (no-op on the numpy backend)."""
    fn = getattr(kernels, "warmup", None)
    if fn is not None:
        fn()
