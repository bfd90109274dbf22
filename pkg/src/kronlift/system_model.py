"""Polynomial algebraic systems in Kronecker matrix form.

A system couples a linear block D (n x n), an optional quadratic block G
(n x n^2) acting on x kron x, an optional cubic block R (n x n^3) acting
on x kron x kron x, and a right-hand side b:

    D x + G (x kron x) + R (x kron x kron x) = b

Quadratic columns are indexed by (i-1)*n + j and cubic columns by
((i-1)*n + (j-1))*n + k, 1-based, matching the Kronecker ordering.
"""

from dataclasses import dataclass, field

import numpy as np

from kronlift import kernels
from kronlift.errors import DimensionError, DomainError


def _finite(a, name):
    if not np.all(np.isfinite(a)):
        raise DomainError(f"{name} contains non-finite entries")
    return a


def _as_vector(x, n, name="x"):
    x = np.ascontiguousarray(x, dtype=float)
    if x.shape != (n,):
        raise DimensionError(f"{name} must have length {n}, got shape {x.shape}")
    return _finite(x, name)


@dataclass(frozen=True)
class PolynomialSystem:
    """Immutable Kronecker-form system D x + G (x kron x) + R (x^3 term) = b."""

    D: np.ndarray
    b: np.ndarray
    G: np.ndarray = None
    R: np.ndarray = None
    meta: str = ""

    def __post_init__(self):
        D = np.ascontiguousarray(self.D, dtype=float)
        if D.ndim != 2 or D.shape[0] != D.shape[1]:
            raise DimensionError(f"D must be square, got shape {D.shape}")
        n = D.shape[0]
        b = np.ascontiguousarray(self.b, dtype=float)
        if b.shape != (n,):
            raise DimensionError(f"b must have length {n}, got shape {b.shape}")
        _finite(D, "D")
        _finite(b, "b")
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "b", b)
        for name, width in (("G", n * n), ("R", n**3)):
            block = getattr(self, name)
            if block is None:
                continue
            block = np.ascontiguousarray(block, dtype=float)
            if block.shape != (n, width):
                raise DimensionError(
                    f"{name} must have shape ({n}, {width}), got {block.shape}"
                )
            _finite(block, name)
            object.__setattr__(self, name, block)

    @property
    def n(self):
        return self.D.shape[0]

    @property
    def is_linear(self):
        return self.G is None and self.R is None


@dataclass(frozen=True)
class ResidualVector:
    """Residual F(x) of a system at some point, with its Euclidean norm."""

    values: np.ndarray
    norm: float = field(init=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "norm", float(np.linalg.norm(values)))


def eval_residual(sys, x):
    """Evaluate F(x) = D x + G (x kron x) + R (x kron x kron x) - b.

    Absent blocks contribute zero. Returns a ResidualVector.
    """
    x = _as_vector(x, sys.n)
    values = sys.D @ x - sys.b
    if sys.G is not None:
        values = values + kernels.quad_contract(sys.G, x)
    if sys.R is not None:
        values = values + kernels.cubic_contract(sys.R, x)
    return ResidualVector(values)


def eval_jacobian(sys, x):
    """Jacobian of the residual: D plus the derivative of each nonlinear block."""
    x = _as_vector(x, sys.n)
    J = sys.D.copy()
    if sys.G is not None:
        J += kernels.quad_jacobian(sys.G, x)
    if sys.R is not None:
        J += kernels.cubic_jacobian(sys.R, x)
    return J


def random_system(n, degree, seed, planted_root=None):
    """Generate a seeded random system of the given nonlinear degree.

    Entries are standard normal draws from numpy's default generator, so
    the same seed always reproduces the same system. degree=2 fills G,
    degree=3 fills R. When planted_root is given, b is constructed so that
    the root is exact.
    """
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    if degree not in (2, 3):
        raise DomainError(f"degree must be 2 or 3, got {degree}")
    rng = np.random.default_rng(seed)
    D = rng.standard_normal((n, n))
    G = rng.standard_normal((n, n * n)) if degree == 2 else None
    R = rng.standard_normal((n, n**3)) if degree == 3 else None
    meta = f"random(n={n}, degree={degree}, seed={seed})"
    if planted_root is None:
        b = rng.standard_normal(n)
    else:
        root = _as_vector(planted_root, n, "planted_root")
        b = D @ root
        if G is not None:
            b = b + kernels.quad_contract(G, root)
        if R is not None:
            b = b + kernels.cubic_contract(R, root)
        meta += " planted"
    return PolynomialSystem(D=D, b=b, G=G, R=R, meta=meta)


def symmetrize_quadratic(sys):
    """Replace G by its symmetric part in the pair indices.

    Columns (i, j) and (j, i) are averaged. Since x kron x is symmetric,
    the residual is unchanged for every x; only the symmetric part of G is
    observable.
    """
    if sys.G is None:
        raise DomainError("system has no quadratic block to symmetrize")
    n = sys.n
    G3 = sys.G.reshape(n, n, n)
    Gs = 0.5 * (G3 + G3.transpose(0, 2, 1))
    return PolynomialSystem(
        D=sys.D, b=sys.b, G=Gs.reshape(n, n * n), R=sys.R, meta=sys.meta
    )
