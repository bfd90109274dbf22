"""Hot numeric kernels with a numba backend and a pure-numpy fallback.

The backend is chosen once at import time from the KRONLIFT_BACKEND
environment variable:

  auto   (default) use numba if it imports, else fall back to numpy
  numba  require the jitted backend, raise if numba is missing
  numpy  force the pure-numpy fallback

Both backends expose identical functions over float64 arrays; see
benchmarks/bench_kernels.py for a side-by-side timing comparison and
tests/test_kernels.py for the equivalence checks.
"""

import os

_KERNEL_NAMES = (
    "pair_products",
    "triple_products",
    "pair_jacobian",
    "triple_jacobian",
    "quad_contract",
    "cubic_contract",
    "quad_jacobian",
    "cubic_jacobian",
)

_requested = os.environ.get("KRONLIFT_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"KRONLIFT_BACKEND must be 'auto', 'numba' or 'numpy', got {_requested!r}"
    )

if _requested == "numpy":
    from kronlift.kernels import _numpy as _impl

    BACKEND = "numpy"
else:
    try:
        from kronlift.kernels import _numba as _impl

        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        from kronlift.kernels import _numpy as _impl

        BACKEND = "numpy"

pair_products = _impl.pair_products
triple_products = _impl.triple_products
pair_jacobian = _impl.pair_jacobian
triple_jacobian = _impl.triple_jacobian
quad_contract = _impl.quad_contract
cubic_contract = _impl.cubic_contract
quad_jacobian = _impl.quad_jacobian
cubic_jacobian = _impl.cubic_jacobian


def warmup():
    """Run every kernel once so jit compilation cost is paid up front."""
    import numpy as np

    x = np.array([0.5, -1.0])
    G = np.arange(8.0).reshape(2, 4)
    R = np.arange(16.0).reshape(2, 8)
    pair_products(x)
    triple_products(x)
    pair_jacobian(x)
    triple_jacobian(x)
    quad_contract(G, x)
    cubic_contract(R, x)
    quad_jacobian(G, x)
    cubic_jacobian(R, x)


__all__ = list(_KERNEL_NAMES) + ["BACKEND", "warmup"]
