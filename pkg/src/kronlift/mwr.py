"""Collocation frontend: 1-D quadratic nonlinear differential problems
discretized into Kronecker-form polynomial systems.

The problem p(u) r(u) + L(u) = f is sampled at interior Chebyshev-Gauss
nodes (delta weighting), producing D from L, a rank-1-per-row G from the
p and r operator rows, and b from the forcing. Boundary conditions are
imposed as strong-form replacement rows appended after the interior rows:
a pure basis-evaluation row in D with a zero G row.
"""

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np
from numpy.polynomial import chebyshev as cheb
from numpy.polynomial import polynomial as poly

from kronlift.errors import DimensionError, DomainError
from kronlift.system_model import PolynomialSystem

MAX_DERIVATIVE_ORDER = 4

Forcing = Union[float, Sequence[float], np.ndarray, Callable[[float], float]]


@dataclass(frozen=True)
class LinearOperatorSpec:
    """Linear differential operator sum_t c_t(x) d^{k_t}u/dx^{k_t}.

    Each term is (derivative_order, coeffs) where coeffs are the ascending
    polynomial coefficients of c_t(x). No terms means the zero operator.
    """

    terms: tuple

    def __post_init__(self):
        terms = []
        for term in self.terms:
            order, coeffs = term
            order = int(order)
            if not (0 <= order <= MAX_DERIVATIVE_ORDER):
                raise DomainError(
                    f"derivative order {order} outside 0..{MAX_DERIVATIVE_ORDER}"
                )
            coeffs = tuple(float(c) for c in coeffs)
            if not all(np.isfinite(coeffs)):
                raise DomainError("operator coefficients must be finite")
            terms.append((order, coeffs))
        object.__setattr__(self, "terms", tuple(terms))

    @classmethod
    def identity(cls):
        return cls(terms=((0, (1.0,)),))

    @classmethod
    def zero(cls):
        return cls(terms=())

    @property
    def is_zero(self):
        return len(self.terms) == 0

    @property
    def max_order(self):
        return max((order for order, _ in self.terms), default=0)

    def apply_rows(self, points, basis_values):
        """Operator applied to every basis function at every point.

        basis_values[d] holds the d-th derivative matrix (points x basis);
        returns the (points x basis) matrix of the operator rows.
        """
        out = np.zeros_like(basis_values[0])
        for order, coeffs in self.terms:
            out += poly.polyval(points, coeffs)[:, None] * basis_values[order]
        return out


@dataclass(frozen=True)
class BoundaryCondition:
    endpoint: float
    kind: str  # "value" | "derivative"
    value: float

    def __post_init__(self):
        if self.kind not in ("value", "derivative"):
            raise DomainError(f"boundary kind must be value|derivative, got {self.kind!r}")


@dataclass(frozen=True)
class MwrProblem:
    """A 1-D problem p(u) r(u) + L(u) = f on [a, b] with endpoint conditions."""

    domain: tuple
    p: LinearOperatorSpec
    r: LinearOperatorSpec
    L: LinearOperatorSpec
    f: Forcing
    n_basis: int
    basis_kind: str = "chebyshev"
    bc: tuple = ()

    def __post_init__(self):
        a, b = (float(v) for v in self.domain)
        if not (np.isfinite(a) and np.isfinite(b) and a < b):
            raise DomainError(f"domain must be a finite interval [a, b] with a < b, got {self.domain}")
        object.__setattr__(self, "domain", (a, b))
        if self.basis_kind not in ("monomial", "chebyshev"):
            raise DomainError(f"basis must be monomial|chebyshev, got {self.basis_kind!r}")
        bc = tuple(self.bc)
        for cond in bc:
            if not np.isclose(cond.endpoint, a) and not np.isclose(cond.endpoint, b):
                raise DomainError(
                    f"boundary condition endpoint {cond.endpoint} is not a domain endpoint"
                )
        object.__setattr__(self, "bc", bc)
        if self.n_basis < len(bc) + 1:
            raise DomainError(
                f"n_basis={self.n_basis} too small for {len(bc)} boundary conditions"
            )

    @property
    def n_interior(self):
        return self.n_basis - len(self.bc)


@dataclass(frozen=True)
class BasisEvaluation:
    """Basis functions and derivatives tabulated at the interior nodes.

    values[d][j][k] is the d-th derivative of basis function k at node j.
    """

    nodes: np.ndarray
    values: np.ndarray  # shape (order + 1, n_nodes, n_basis)


def collocation_nodes(problem):
    """Interior Chebyshev-Gauss points mapped into (a, b), ascending.

    Open points: the endpoints stay free for boundary rows.
    """
    a, b = problem.domain
    m = problem.n_interior
    i = np.arange(1, m + 1)
    t = np.cos((2 * i - 1) * np.pi / (2 * m))
    return np.sort(a + (b - a) * (t + 1.0) / 2.0)


def basis_matrix(problem, points, order):
    """Matrix of the order-th derivative of every basis function at points."""
    if not (0 <= order <= MAX_DERIVATIVE_ORDER):
        raise DomainError(f"derivative order {order} outside 0..{MAX_DERIVATIVE_ORDER}")
    points = np.asarray(points, dtype=float)
    a, b = problem.domain
    n = problem.n_basis
    out = np.zeros((points.shape[0], n))
    if problem.basis_kind == "monomial":
        for k in range(n):
            coeffs = poly.polyder(np.eye(n)[k], order) if order else np.eye(n)[k]
            out[:, k] = poly.polyval(points, coeffs)
    else:
        # map to [-1, 1]; each derivative picks up a chain-rule factor
        t = (2.0 * points - (a + b)) / (b - a)
        factor = (2.0 / (b - a)) ** order
        for k in range(n):
            coeffs = cheb.chebder(np.eye(n)[k], order) if order else np.eye(n)[k]
            out[:, k] = factor * cheb.chebval(t, coeffs)
    return out


def basis_eval(problem, order):
    """Tabulate basis values and derivatives 0..order at the interior nodes."""
    nodes = collocation_nodes(problem)
    values = np.stack([basis_matrix(problem, nodes, d) for d in range(order + 1)])
    return BasisEvaluation(nodes=nodes, values=values)


def _forcing_at(problem, nodes):
    f = problem.f
    if callable(f):
        vals = np.asarray([f(x) for x in nodes], dtype=float)
    elif isinstance(f, np.ndarray):
        # ndarray means per-node samples; list/tuple means polynomial coeffs
        if f.shape != nodes.shape:
            raise DimensionError(
                f"forcing samples have shape {f.shape}, expected {nodes.shape}"
            )
        vals = f.astype(float)
    elif np.isscalar(f):
        vals = np.full(nodes.shape, float(f))
    else:
        vals = poly.polyval(nodes, np.asarray(f, dtype=float))
    if not np.all(np.isfinite(vals)):
        raise DomainError("forcing evaluated to non-finite values")
    return vals


def build_collocation_system(problem):
    """Discretize the problem into D x + G (x kron x) = b.

    Interior node j gives D[j] = L(phi)(x_j), G[j] = outer product of the
    p and r operator rows at x_j (so each interior G row has rank 1), and
    b[j] = f(x_j). Every boundary condition appends one replacement row:
    basis (or basis derivative) evaluations in D, zeros in G. A zero p or
    r operator drops G entirely and yields a purely linear system.
    """
    n = problem.n_basis
    max_order = max(problem.p.max_order, problem.r.max_order, problem.L.max_order)
    be = basis_eval(problem, max_order)
    nodes = be.nodes

    D = np.zeros((n, n))
    b = np.zeros(n)
    m = problem.n_interior
    D[:m] = problem.L.apply_rows(nodes, be.values)
    b[:m] = _forcing_at(problem, nodes)

    nonlinear = not (problem.p.is_zero or problem.r.is_zero)
    G = np.zeros((n, n * n)) if nonlinear else None
    if nonlinear:
        p_rows = problem.p.apply_rows(nodes, be.values)
        r_rows = problem.r.apply_rows(nodes, be.values)
        for j in range(m):
            G[j] = np.outer(p_rows[j], r_rows[j]).ravel()

    for idx, cond in enumerate(problem.bc):
        order = 0 if cond.kind == "value" else 1
        row = basis_matrix(problem, np.array([cond.endpoint]), order)[0]
        D[m + idx] = row
        b[m + idx] = cond.value

    meta = (
        f"collocation(n_basis={n}, basis={problem.basis_kind}, "
        f"domain=[{problem.domain[0]}, {problem.domain[1]}], bc={len(problem.bc)})"
    )
    return PolynomialSystem(D=D, b=b, G=G, meta=meta)


def evaluate_solution(problem, coeffs, points):
    """Evaluate the expansion sum_k c_k phi_k at the given points."""
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape != (problem.n_basis,):
        raise DimensionError(
            f"coefficients must have length {problem.n_basis}, got shape {coeffs.shape}"
        )
    points = np.atleast_1d(np.asarray(points, dtype=float))
    a, b = problem.domain
    pad = 1e-12 * (b - a)
    if np.any(points < a - pad) or np.any(points > b + pad):
        raise DomainError(f"evaluation points must lie in [{a}, {b}]")
    return basis_matrix(problem, points, 0) @ coeffs
