"""Numerical kernel backend selection.

Two interchangeable implementations of the hot kernels exist: a
compiled Cython extension (`_core`) and a pure-NumPy fallback (`_py`).
The Cython build is optional; when the extension is missing the package
silently uses the fallback.  Set the environment variable
QDCORR_BACKEND to "cython", "python", or "auto" (default) to override
the choice; requesting the Cython backend when it is not built raises
an ImportError.

The selected module is exposed as `impl` and provides:

    NAME                                   backend identifier
    rk4_lindblad(rho, mmat, jumps, h, n)   n fixed RK4 steps of the
                                           master-equation right-hand side
    discord_scan(rB, rA, S, thetas, phis)  grid minimum of the measured
                                           conditional entropy
    discord_objective(rB, rA, S, th, ph)   single-point objective
"""

import os

_requested = os.environ.get("QDCORR_BACKEND", "auto").strip().lower() or "auto"

if _requested == "auto":
    try:
        from . import _core as impl
    except ImportError:
        from . import _py as impl
elif _requested == "cython":
    from . import _core as impl
elif _requested in ("python", "numpy", "py"):
    from . import _py as impl
else:
    raise ImportError(
        f"QDCORR_BACKEND={_requested!r} not recognized; "
        "use 'auto', 'cython', or 'python'"
    )

NAME = impl.NAME

__all__ = ["impl", "NAME"]
