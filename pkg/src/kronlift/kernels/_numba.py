"""Numba-jitted implementations of the hot kernels.

Loop formulations beat vectorized numpy at the desk-scale sizes the search
loops run on (n <= ~16). Compiled lazily on first call; cache=True persists
the machine code across processes.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def pair_products(x):
    n = x.shape[0]
    out = np.empty(n * (n + 1) // 2)
    p = 0
    for i in range(n):
        for j in range(i, n):
            out[p] = x[i] * x[j]
            p += 1
    return out


@njit(cache=True)
def triple_products(x):
    n = x.shape[0]
    out = np.empty(n * (n + 1) * (n + 2) // 6)
    p = 0
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                out[p] = x[i] * x[j] * x[k]
                p += 1
    return out


@njit(cache=True)
def pair_jacobian(x):
    n = x.shape[0]
    out = np.zeros((n * (n + 1) // 2, n))
    p = 0
    for i in range(n):
        for j in range(i, n):
            out[p, i] += x[j]
            out[p, j] += x[i]
            p += 1
    return out


@njit(cache=True)
def triple_jacobian(x):
    n = x.shape[0]
    out = np.zeros((n * (n + 1) * (n + 2) // 6, n))
    p = 0
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                out[p, i] += x[j] * x[k]
                out[p, j] += x[i] * x[k]
                out[p, k] += x[i] * x[j]
                p += 1
    return out


@njit(cache=True)
def quad_contract(G, x):
    n = x.shape[0]
    out = np.zeros(n)
    for a in range(n):
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += G[a, i * n + j] * x[j]
            out[a] += acc * x[i]
    return out


@njit(cache=True)
def cubic_contract(R, x):
    n = x.shape[0]
    out = np.zeros(n)
    for a in range(n):
        for i in range(n):
            for j in range(n):
                acc = 0.0
                for k in range(n):
                    acc += R[a, (i * n + j) * n + k] * x[k]
                out[a] += acc * x[i] * x[j]
    return out


@njit(cache=True)
def quad_jacobian(G, x):
    n = x.shape[0]
    out = np.zeros((n, n))
    for a in range(n):
        for i in range(n):
            for j in range(n):
                g = G[a, i * n + j]
                out[a, j] += g * x[i]
                out[a, i] += g * x[j]
    return out


@njit(cache=True)
def cubic_jacobian(R, x):
    n = x.shape[0]
    out = np.zeros((n, n))
    for a in range(n):
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    r = R[a, (i * n + j) * n + k]
                    out[a, k] += r * x[i] * x[j]
                    out[a, j] += r * x[i] * x[k]
                    out[a, i] += r * x[j] * x[k]
    return out
