"""Vectorized numpy implementations of the hot kernels.

Same signatures as kernels._numba; selected when the numba backend is
disabled or unavailable. Index arrays are cached per dimension since the
search loops call these thousands of times on tiny vectors.
"""

from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np


@lru_cache(maxsize=64)
def _pair_idx(n):
    i, j = np.triu_indices(n)
    return i, j


@lru_cache(maxsize=64)
def _triple_idx(n):
    idx = np.array(list(combinations_with_replacement(range(n), 3)), dtype=np.intp)
    if idx.size == 0:
        idx = idx.reshape(0, 3)
    return idx[:, 0], idx[:, 1], idx[:, 2]


def pair_products(x):
    """All products x_i*x_j with i <= j, lexicographic order."""
    i, j = _pair_idx(x.shape[0])
    return x[i] * x[j]


def triple_products(x):
    """All products x_i*x_j*x_k with i <= j <= k, lexicographic order."""
    i, j, k = _triple_idx(x.shape[0])
    return x[i] * x[j] * x[k]


def pair_jacobian(x):
    """Jacobian of pair_products wrt x, shape (n(n+1)/2, n)."""
    n = x.shape[0]
    i, j = _pair_idx(n)
    rows = np.arange(i.shape[0])
    out = np.zeros((i.shape[0], n))
    # i == j rows accumulate to 2*x_i, as they should
    np.add.at(out, (rows, i), x[j])
    np.add.at(out, (rows, j), x[i])
    return out


def triple_jacobian(x):
    """Jacobian of triple_products wrt x, shape (n(n+1)(n+2)/6, n)."""
    n = x.shape[0]
    i, j, k = _triple_idx(n)
    rows = np.arange(i.shape[0])
    out = np.zeros((i.shape[0], n))
    np.add.at(out, (rows, i), x[j] * x[k])
    np.add.at(out, (rows, j), x[i] * x[k])
    np.add.at(out, (rows, k), x[i] * x[j])
    return out


def quad_contract(G, x):
    """G @ (x kron x) without forming the Kronecker vector."""
    n = x.shape[0]
    return G.reshape(n, n, n) @ x @ x


def cubic_contract(R, x):
    """R @ (x kron x kron x)."""
    n = x.shape[0]
    return R.reshape(n, n, n, n) @ x @ x @ x


def quad_jacobian(G, x):
    """Jacobian of quad_contract wrt x, shape (n, n)."""
    n = x.shape[0]
    G3 = G.reshape(n, n, n)
    return np.einsum("aij,i->aj", G3, x) + np.einsum("aij,j->ai", G3, x)


def cubic_jacobian(R, x):
    """Jacobian of cubic_contract wrt x, shape (n, n)."""
    n = x.shape[0]
    R4 = R.reshape(n, n, n, n)
    return (
        np.einsum("acjk,j,k->ac", R4, x, x)
        + np.einsum("aick,i,k->ac", R4, x, x)
        + np.einsum("aijc,i,j->ac", R4, x, x)
    )
