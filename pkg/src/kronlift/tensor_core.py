"""Dense Hadamard and Kronecker products, selection matrices, and the
monomial index maps used by the lift.

Matrices are plain float64 numpy arrays. The index maps use 1-based
indices; everything else is ordinary 0-based numpy.
"""

from dataclasses import dataclass, field

import numpy as np

from kronlift.errors import CapacityError, DimensionError, DomainError

#: Refuse to build Kronecker products larger than this many entries.
DEFAULT_KRON_CAP = 10_000_000

_SYM_ATOL = 1e-12


def _as_matrix(a, name="matrix"):
    a = np.asarray(a, dtype=float)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2:
        raise DimensionError(f"{name} must be 2-dimensional, got ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise DomainError(f"{name} contains non-finite entries")
    return a


def _require_symmetric(a, name):
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if a.shape[0] != a.shape[1] or not np.allclose(a, a.T, rtol=0.0, atol=_SYM_ATOL * scale):
        raise DomainError(f"{name} must be symmetric")


def hadamard(a, b):
    """Entrywise product of two equally shaped matrices.

    Parameters
    ----------
    a, b : array_like
        Real matrices of identical shape.

    Returns
    -------
    numpy.ndarray
        The matrix with entries ``a[i, j] * b[i, j]``.
    """
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a * b


def kron(a, b, max_entries=DEFAULT_KRON_CAP):
    """Kronecker product of two matrices.

    The result has shape ``(a.rows * b.rows, a.cols * b.cols)`` with the
    block structure ``result[i*rb + k, j*cb + l] = a[i, j] * b[k, l]``.
    Requests whose result would exceed ``max_entries`` entries raise
    CapacityError instead of exhausting memory.
    """
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    entries = a.shape[0] * b.shape[0] * a.shape[1] * b.shape[1]
    if entries > max_entries:
        raise CapacityError(
            f"Kronecker product would hold {entries} entries, cap is {max_entries}"
        )
    return np.kron(a, b)


def selection_matrix(n):
    """The n^2 x n selection matrix whose k-th column is e_k kron e_k.

    Its columns are orthonormal, and conjugating a Kronecker product by
    selection matrices compresses it to the Hadamard product (see
    hadamard_via_kron).
    """
    if n < 1:
        raise DomainError(f"selection matrix needs n >= 1, got {n}")
    E = np.zeros((n * n, n))
    for k in range(n):
        E[k * n + k, k] = 1.0
    return E


def hadamard_via_kron(a, b):
    """Hadamard product computed as E_N^T (a kron b) E_M.

    Exercises the selection-matrix identity linking the two products; the
    result must match :func:`hadamard` up to rounding.
    """
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    rows, cols = a.shape
    en = selection_matrix(rows)
    em = selection_matrix(cols)
    return en.T @ kron(a, b) @ em


@dataclass(frozen=True)
class SpectralBoundReport:
    """Eigenvalue interval check for the Hadamard product of two PSD matrices."""

    lower: float
    upper: float
    eigenvalues: np.ndarray  # ascending
    passed: bool


@dataclass(frozen=True)
class DeterminantReport:
    """Determinant inequality check for the Hadamard product of two PSD matrices."""

    det_product: float
    det_hadamard: float
    passed: bool


def check_spectral_bounds(a, b, slack=1e-12):
    """Check that every eigenvalue of a∘b lies in the interval
    [lambda_min(a) * min(diag b), lambda_max(a) * max(diag b)].

    Both inputs must be symmetric; the bounds are meaningful for positive
    semidefinite pairs. Returns a SpectralBoundReport; nothing is raised
    when the bounds fail, only the pass flag reflects it.
    """
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    _require_symmetric(a, "a")
    _require_symmetric(b, "b")
    eig_a = np.linalg.eigvalsh(a)
    diag_b = np.diag(b)
    lower = eig_a[0] * diag_b.min()
    upper = eig_a[-1] * diag_b.max()
    eig_h = np.linalg.eigvalsh(a * b)
    passed = bool(eig_h[0] >= lower - slack and eig_h[-1] <= upper + slack)
    return SpectralBoundReport(float(lower), float(upper), eig_h, passed)


def check_det_inequality(a, b, slack=1e-12):
    """Check det(a) * det(b) <= det(a∘b) for a symmetric PSD pair."""
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    _require_symmetric(a, "a")
    _require_symmetric(b, "b")
    det_product = float(np.linalg.det(a) * np.linalg.det(b))
    det_hadamard = float(np.linalg.det(a * b))
    return DeterminantReport(det_product, det_hadamard, det_product <= det_hadamard + slack)


@dataclass(frozen=True)
class PairIndexMap:
    """Bijection between pairs (i, j), 1 <= i <= j <= n, and 1..n(n+1)/2.

    Pairs are enumerated lexicographically: (1,1), (1,2), ..., (1,n),
    (2,2), ..., (n,n).
    """

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"index map needs n >= 1, got {self.n}")

    @property
    def size(self):
        return self.n * (self.n + 1) // 2

    def index(self, i, j):
        if not (1 <= i <= j <= self.n):
            raise DomainError(f"pair ({i}, {j}) out of range for n={self.n}")
        return (i - 1) * (2 * self.n - i + 2) // 2 + (j - i + 1)

    def unindex(self, p):
        if not (1 <= p <= self.size):
            raise DomainError(f"pair position {p} out of range for n={self.n}")
        q = p
        for i in range(1, self.n + 1):
            block = self.n - i + 1
            if q <= block:
                return i, i + q - 1
            q -= block
        raise AssertionError("unreachable")  # pragma: no cover


@dataclass(frozen=True)
class TripleIndexMap:
    """Bijection between triples (i, j, k), 1 <= i <= j <= k <= n, and
    1..n(n+1)(n+2)/6, enumerated lexicographically."""

    n: int
    _pair: PairIndexMap = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"index map needs n >= 1, got {self.n}")
        object.__setattr__(self, "_pair", PairIndexMap(self.n))

    @property
    def size(self):
        return self.n * (self.n + 1) * (self.n + 2) // 6

    def index(self, i, j, k):
        if not (1 <= i <= j <= k <= self.n):
            raise DomainError(f"triple ({i}, {j}, {k}) out of range for n={self.n}")
        offset = 0
        for a in range(1, i):
            m = self.n - a + 1
            offset += m * (m + 1) // 2
        tail = PairIndexMap(self.n - i + 1)
        return offset + tail.index(j - i + 1, k - i + 1)

    def unindex(self, p):
        if not (1 <= p <= self.size):
            raise DomainError(f"triple position {p} out of range for n={self.n}")
        q = p
        for i in range(1, self.n + 1):
            m = self.n - i + 1
            block = m * (m + 1) // 2
            if q <= block:
                j, k = PairIndexMap(m).unindex(q)
                return i, j + i - 1, k + i - 1
            q -= block
        raise AssertionError("unreachable")  # pragma: no cover
