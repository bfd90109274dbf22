"""Linear-algebra engines for lifted systems plus the Newton baseline.

One SVD is the single source of truth for numerical rank, the
pseudoinverse solve, and the null-space basis, so the diagnostics these
routines report are mutually consistent.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from kronlift.errors import (
    DomainError,
    NumericalFailureError,
    SingularSystemError,
)
from kronlift.system_model import _as_vector, eval_jacobian, eval_residual

DEFAULT_RANK_RTOL = 1e-10


@dataclass(frozen=True)
class SvdReport:
    """Singular-value diagnostics of a lifted matrix."""

    singular_values: np.ndarray  # descending
    numerical_rank: int
    nullity: int
    rank_tolerance: float
    condition_estimate: float  # sigma_max / sigma_rank, inf when rank is 0


@dataclass(frozen=True)
class NewtonTrace:
    """Iterate history of a Newton run: (x, residual norm) per iterate."""

    iterates: tuple
    converged: bool
    iterations: int

    @property
    def final_x(self):
        return self.iterates[-1][0]

    @property
    def final_norm(self):
        return self.iterates[-1][1]


def _svd(P):
    try:
        return np.linalg.svd(P, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"SVD failed to converge: {exc}") from exc


def _as_P(target):
    P = getattr(target, "P", target)
    P = np.atleast_2d(np.asarray(P, dtype=float))
    if not np.all(np.isfinite(P)):
        raise DomainError("matrix contains non-finite entries")
    return P


def svd_analyze(P, rank_rtol=DEFAULT_RANK_RTOL):
    """Full SVD rank/nullity/conditioning report for P (or a lifted system).

    The numerical rank counts singular values above rank_rtol * sigma_max;
    a relative tolerance keeps the count stable under system scaling.
    """
    P = _as_P(P)
    _, s, _ = _svd(P)
    return _report_from_singular_values(s, P.shape[1], rank_rtol)


def _report_from_singular_values(s, ncols, rank_rtol):
    sigma_max = float(s[0]) if s.size else 0.0
    tol = rank_rtol * sigma_max
    rank = int(np.sum(s > tol))
    cond = float(s[0] / s[rank - 1]) if rank > 0 else float("inf")
    return SvdReport(
        singular_values=np.sort(s)[::-1],
        numerical_rank=rank,
        nullity=ncols - rank,
        rank_tolerance=float(tol),
        condition_estimate=cond,
    )


def pseudoinverse(P, rank_rtol=DEFAULT_RANK_RTOL):
    """Moore-Penrose pseudoinverse via truncated SVD at the report's tolerance."""
    P = _as_P(P)
    U, s, Vt = _svd(P)
    report = _report_from_singular_values(s, P.shape[1], rank_rtol)
    r = report.numerical_rank
    if r == 0:
        return np.zeros((P.shape[1], P.shape[0])), report
    return (Vt[:r].T / s[:r]) @ U[:, :r].T, report


def pinv_solve(lift, rank_rtol=DEFAULT_RANK_RTOL):
    """Minimum-norm least-squares solution of P y = b by truncated SVD.

    Returns (y, residual_norm) where residual_norm = ||P y - b||. Among
    all least-squares solutions, y has the smallest Euclidean norm.
    """
    P = _as_P(lift)
    b = np.asarray(lift.b, dtype=float)
    U, s, Vt = _svd(P)
    report = _report_from_singular_values(s, P.shape[1], rank_rtol)
    r = report.numerical_rank
    if r == 0:
        y = np.zeros(P.shape[1])
    else:
        y = Vt[:r].T @ ((U[:, :r].T @ b) / s[:r])
    residual = float(np.linalg.norm(P @ y - b))
    return y, residual


def normal_eq_solve(lift, ridge):
    """Solve the regularized normal equations (P^T P + ridge I) y = P^T b.

    P^T P is structurally singular whenever the lift has more unknowns
    than equations (always true for a genuine lift), so ridge must be
    positive there; ridge=0 raises SingularSystemError instead of
    returning garbage. As ridge -> 0 the solution converges to the
    pseudoinverse solution.
    """
    if ridge < 0:
        raise DomainError(f"ridge must be >= 0, got {ridge}")
    P = _as_P(lift)
    b = np.asarray(lift.b, dtype=float)
    nrows, ncols = P.shape
    if ridge == 0 and ncols > nrows:
        raise SingularSystemError(
            "normal matrix P^T P is singular: the lifted system has "
            f"{ncols} unknowns but only {nrows} equations; pass ridge > 0"
        )
    A = P.T @ P + ridge * np.eye(ncols)
    try:
        factor = cho_factor(A)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(
            f"normal matrix P^T P is numerically singular at ridge={ridge}"
        ) from exc
    return cho_solve(factor, P.T @ b)


def nullspace_basis(lift, rank_rtol=DEFAULT_RANK_RTOL):
    """Orthonormal basis of the numerical null space of P, shape (m, nullity)."""
    P = _as_P(lift)
    _, s, Vt = _svd(P)
    report = _report_from_singular_values(s, P.shape[1], rank_rtol)
    return Vt[report.numerical_rank :].T.copy()


def newton_solve(sys, x0, tol=1e-10, max_iter=50):
    """Newton-Raphson on the nonlinear system, with a Levenberg fallback.

    Iterates x <- x - J(x)^-1 F(x) until ||F|| <= tol * (1 + ||b||) or
    max_iter steps. A singular Jacobian is shifted to J + mu I with
    mu = 1e-8 * ||J||, doubling until the solve succeeds. Running out of
    iterations yields converged=False; non-finite iterates raise
    NumericalFailureError.
    """
    x = _as_vector(x0, sys.n, "x0")
    threshold = tol * (1.0 + float(np.linalg.norm(sys.b)))
    trace = []
    norm = eval_residual(sys, x).norm
    trace.append((x.copy(), norm))
    converged = norm <= threshold
    steps = 0
    while not converged and steps < max_iter:
        J = eval_jacobian(sys, x)
        F = eval_residual(sys, x).values
        step = _newton_step(J, F)
        x = x - step
        if not np.all(np.isfinite(x)):
            raise NumericalFailureError(
                f"Newton iterate became non-finite after {steps + 1} steps"
            )
        norm = eval_residual(sys, x).norm
        steps += 1
        trace.append((x.copy(), norm))
        converged = norm <= threshold
    return NewtonTrace(iterates=tuple(trace), converged=bool(converged), iterations=steps)


def _newton_step(J, F):
    try:
        step = np.linalg.solve(J, F)
        if np.all(np.isfinite(step)):
            return step
    except np.linalg.LinAlgError:
        pass
    # Levenberg shift for singular or broken Jacobians
    mu = 1e-8 * max(float(np.linalg.norm(J)), 1.0)
    eye = np.eye(J.shape[0])
    for _ in range(100):
        try:
            step = np.linalg.solve(J + mu * eye, F)
            if np.all(np.isfinite(step)):
                return step
        except np.linalg.LinAlgError:
            pass
        mu *= 2.0
    raise NumericalFailureError("could not regularize a singular Jacobian")
