"""Recover candidate roots x of the original nonlinear system from lifted
solutions y.

A lifted least-squares solution rarely sits on the monomial manifold
y = y(x); the consistency score measures that gap. The null-space search
walks the affine family of least-squares solutions y(t) = y_pinv + N t,
driving the consistency residual to zero with damped Gauss-Newton, which
lands exactly on embeddings of true roots whenever the original system is
consistent.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from kronlift.errors import DimensionError, DomainError
from kronlift.lift import (
    build_lifted,
    embed_nonlinear,
    embed_nonlinear_jacobian,
)
from kronlift.solvers import newton_solve, nullspace_basis, pinv_solve
from kronlift.system_model import eval_residual

DEDUP_DISTANCE = 1e-6

# Gaussian start scales cycled across search starts. Planted roots of
# random cubic systems routinely sit at null-coordinate norms 5-30, so
# unit draws alone miss their basins; cycling scales fixes the coverage.
SEARCH_SCALES = (0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0)


@dataclass(frozen=True)
class CandidateSolution:
    """One recovered root candidate with its quality measures.

    nonlinear_residual is always recomputed from the original system at x,
    never copied from a cache; consistency is zero exactly when parent_y
    agrees with the monomials of x on the nonlinear blocks.
    """

    x: np.ndarray
    consistency: float
    nonlinear_residual: float
    source: str  # direct | rank1 | nullsearch | polished
    parent_y: Optional[np.ndarray] = None

    def sort_key(self):
        return (self.nonlinear_residual, self.consistency, tuple(self.x))


def _nonlinear_part(lift, y):
    return y[lift.n_linear :]


def _consistency(lift, y_nl, x):
    gap = y_nl - embed_nonlinear(lift, x)
    return float(np.linalg.norm(gap) / (1.0 + np.linalg.norm(y_nl)))


def _require_origin(lift):
    if lift.origin is None:
        raise DomainError(
            "recovery needs the lifted system's source system (origin is None)"
        )
    return lift.origin


def _make_candidate(lift, x, y, source):
    x = np.asarray(x, dtype=float)
    sys = _require_origin(lift)
    return CandidateSolution(
        x=x,
        consistency=_consistency(lift, _nonlinear_part(lift, y), x),
        nonlinear_residual=eval_residual(sys, x).norm,
        source=source,
        parent_y=np.asarray(y, dtype=float),
    )


def consistency_score(lift, y):
    """Distance of y's nonlinear blocks from the monomials of its own
    linear block, relative to 1 + the nonlinear block norm. Zero exactly
    on genuine embeddings y(x)."""
    y = np.asarray(y, dtype=float)
    if y.shape != (lift.m,):
        raise DimensionError(f"y must have length {lift.m}, got shape {y.shape}")
    x = np.ascontiguousarray(y[: lift.n_linear])
    return _consistency(lift, _nonlinear_part(lift, y), x)


def extract_candidates(lift, y):
    """All cheap root candidates hiding in one lifted vector y.

    Emits the direct candidate x = y[linear block]; for quadratic blocks
    the two rank-1 candidates from the dominant eigenpair of the symmetric
    pair matrix; and the signed cube root for scalar pure-cubic blocks.
    Degenerate y just yields high-consistency candidates, never an error.
    """
    y = np.asarray(y, dtype=float)
    if y.shape != (lift.m,):
        raise DimensionError(f"y must have length {lift.m}, got shape {y.shape}")
    _require_origin(lift)
    n = lift.n_linear
    x_lin = np.ascontiguousarray(y[:n])
    out = [_make_candidate(lift, x_lin, y, "direct")]

    pair_slice = lift.block_slice(2)
    if pair_slice is not None:
        X = np.zeros((n, n))
        y_pair = y[pair_slice]
        pmap = lift.pair_map
        for p in range(1, pmap.size + 1):
            i, j = pmap.unindex(p)
            X[i - 1, j - 1] = X[j - 1, i - 1] = y_pair[p - 1]
        eigvals, eigvecs = np.linalg.eigh(X)
        lam, v = eigvals[-1], eigvecs[:, -1]
        scaled = np.sqrt(max(lam, 0.0)) * v
        if np.linalg.norm(-scaled - x_lin) < np.linalg.norm(scaled - x_lin):
            scaled = -scaled
        out.append(_make_candidate(lift, scaled, y, "rank1"))
        out.append(_make_candidate(lift, -scaled, y, "rank1"))

    triple_slice = lift.block_slice(3)
    if triple_slice is not None and n == 1:
        root = np.array([np.cbrt(y[triple_slice][0])])
        out.append(_make_candidate(lift, root, y, "rank1"))
    return out


def _gauss_newton(lift, y0, NS, t0, max_iter):
    """Damped Gauss-Newton on the consistency residual over null coordinates t.

    Returns (t, residual_norm). The Gauss-Newton step is halved up to 20
    times until the residual strictly decreases; when the whole line
    search stalls (ill-conditioned J far from a zero), a Levenberg
    regularized step is tried with increasing damping before giving up.
    """
    n = lift.n_linear
    N_lin, N_nl = NS[:n], NS[n:]
    y_lin, y_nl = y0[:n], y0[n:]
    target = 1e-13 * (1.0 + float(np.linalg.norm(y_nl)))

    def residual(t):
        x = y_lin + N_lin @ t
        return x, y_nl + N_nl @ t - embed_nonlinear(lift, x)

    def try_step(t, rnorm, delta):
        t_try = t + delta
        x_try, r_try = residual(t_try)
        rnorm_try = float(np.linalg.norm(r_try))
        if rnorm_try < rnorm:
            return t_try, x_try, r_try, rnorm_try
        return None

    t = t0.copy()
    x, r = residual(t)
    rnorm = float(np.linalg.norm(r))
    for _ in range(max_iter):
        if rnorm <= target:
            break
        J = N_nl - embed_nonlinear_jacobian(lift, x) @ N_lin
        moved = None
        delta = np.linalg.lstsq(J, -r, rcond=None)[0]
        if np.all(np.isfinite(delta)):
            alpha = 1.0
            for _ in range(20):
                moved = try_step(t, rnorm, alpha * delta)
                if moved is not None:
                    break
                alpha *= 0.5
        if moved is None:
            moved = _levenberg_step(J, r, t, rnorm, try_step)
        if moved is None:
            break
        t, x, r, rnorm = moved
    return t, rnorm


def _levenberg_step(J, r, t, rnorm, try_step):
    JtJ = J.T @ J
    g = J.T @ r
    scale = max(float(np.trace(JtJ)) / JtJ.shape[0], 1e-30)
    eye = np.eye(JtJ.shape[0])
    lam = 1e-6 * scale
    while lam <= 1e12 * scale:
        try:
            delta = np.linalg.solve(JtJ + lam * eye, -g)
        except np.linalg.LinAlgError:
            lam *= 10.0
            continue
        moved = try_step(t, rnorm, delta)
        if moved is not None:
            return moved
        lam *= 10.0
    return None


def nullspace_search(lift, starts=16, seed=0, max_iter=200):
    """Search the least-squares solution family y(t) = y_pinv + N t for
    monomial-consistent points and return the recovered candidates.

    Runs damped Gauss-Newton from `starts` seeded Gaussian initializations
    (scales cycled through SEARCH_SCALES for basin coverage), extracts
    candidates at every minimum, deduplicates them by x-distance, and
    returns them sorted by nonlinear residual (then consistency, then
    lexicographic x, so the ordering is total and seed-deterministic).
    """
    _require_origin(lift)
    y_pinv, _ = pinv_solve(lift)
    NS = nullspace_basis(lift)
    if NS.shape[1] == 0:
        return sorted(extract_candidates(lift, y_pinv), key=CandidateSolution.sort_key)

    rng = np.random.default_rng(seed)
    raw = []
    for k in range(starts):
        sigma = SEARCH_SCALES[k % len(SEARCH_SCALES)]
        t0 = sigma * rng.standard_normal(NS.shape[1])
        t, _ = _gauss_newton(lift, y_pinv, NS, t0, max_iter)
        y_star = y_pinv + NS @ t
        for cand in extract_candidates(lift, y_star):
            raw.append(
                CandidateSolution(
                    x=cand.x,
                    consistency=cand.consistency,
                    nonlinear_residual=cand.nonlinear_residual,
                    source="nullsearch",
                    parent_y=cand.parent_y,
                )
            )
    return _dedup_sorted(raw)


def _dedup_sorted(candidates):
    kept = []
    for cand in sorted(candidates, key=CandidateSolution.sort_key):
        if all(np.linalg.norm(cand.x - c.x) >= DEDUP_DISTANCE for c in kept):
            kept.append(cand)
    return kept


def polish(sys, cand, tol=1e-10, max_iter=50):
    """Newton-polish a candidate; returns the input unchanged when Newton
    fails to converge from it."""
    if not np.all(np.isfinite(cand.x)):
        raise DomainError("candidate x contains non-finite entries")
    trace = newton_solve(sys, cand.x, tol=tol, max_iter=max_iter)
    if not trace.converged:
        return cand
    x = trace.final_x
    consistency = 0.0
    if cand.parent_y is not None and not sys.is_linear:
        lift = build_lifted(sys)
        consistency = _consistency(lift, _nonlinear_part(lift, cand.parent_y), x)
    return CandidateSolution(
        x=x,
        consistency=consistency,
        nonlinear_residual=eval_residual(sys, x).norm,
        source="polished",
        parent_y=cand.parent_y,
    )
