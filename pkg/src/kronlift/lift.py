"""Monomial lifting: turn a polynomial system into an underdetermined
linear system P y = b by treating each monomial as an independent unknown.

The lifted vector y always starts with the degree-1 block (y_i = x_i),
followed by one block per nonlinear degree present: pair products
x_i x_j (i <= j) and triple products x_i x_j x_k (i <= j <= k), both in
lexicographic order. Symmetric compression removes the trivially
redundant columns of the raw Kronecker ordering, so a quadratic system
lifts to m = n + n(n+1)/2 unknowns.
"""

from dataclasses import dataclass
from itertools import permutations
from typing import NamedTuple, Optional

import numpy as np

from kronlift import kernels
from kronlift.errors import DegenerateLiftError, DimensionError, DomainError
from kronlift.system_model import PolynomialSystem, _as_vector
from kronlift.tensor_core import PairIndexMap, TripleIndexMap


class Block(NamedTuple):
    """One monomial block of the lifted vector: 1-based column offset."""

    degree: int
    offset: int
    length: int


@dataclass(frozen=True)
class LiftedSystem:
    """The lifted linear system P y = b plus its monomial block layout."""

    P: np.ndarray
    b: np.ndarray
    blocks: tuple
    pair_map: Optional[PairIndexMap] = None
    triple_map: Optional[TripleIndexMap] = None
    origin: Optional[PolynomialSystem] = None

    def __post_init__(self):
        P = np.ascontiguousarray(self.P, dtype=float)
        if P.ndim != 2:
            raise DimensionError(f"P must be 2-dimensional, got ndim={P.ndim}")
        b = np.ascontiguousarray(self.b, dtype=float)
        if b.shape != (P.shape[0],):
            raise DimensionError(
                f"b must have length {P.shape[0]}, got shape {b.shape}"
            )
        if not (np.all(np.isfinite(P)) and np.all(np.isfinite(b))):
            raise DomainError("lifted system contains non-finite entries")
        blocks = tuple(Block(*blk) for blk in self.blocks)
        covered = 0
        for blk in blocks:
            if blk.offset != covered + 1:
                raise DimensionError(f"block offsets must be contiguous, got {blocks}")
            covered += blk.length
        if covered != P.shape[1]:
            raise DimensionError(
                f"blocks cover {covered} columns but P has {P.shape[1]}"
            )
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_matrix(cls, P, b):
        """Wrap a raw matrix as a single-block system, for direct solver use."""
        P = np.atleast_2d(np.asarray(P, dtype=float))
        return cls(P=P, b=b, blocks=(Block(1, 1, P.shape[1]),))

    @property
    def m(self):
        return self.P.shape[1]

    @property
    def n_linear(self):
        for blk in self.blocks:
            if blk.degree == 1:
                return blk.length
        raise DomainError("lifted system has no degree-1 block")

    def block(self, degree):
        for blk in self.blocks:
            if blk.degree == degree:
                return blk
        return None

    def block_slice(self, degree):
        blk = self.block(degree)
        if blk is None:
            return None
        return slice(blk.offset - 1, blk.offset - 1 + blk.length)


def build_lifted(sys):
    """Build the lifted system P y = b from a polynomial system.

    Degree-1 columns are D. The column for pair (i, j) with i < j is the
    sum of G's (i,j) and (j,i) Kronecker columns, and G's (i,i) column for
    i = j; triple columns sum R's columns over all distinct orderings of
    (i, j, k). This makes P y(x) reproduce D x + G (x kron x) + R (x^3
    term) exactly for every x.
    """
    if sys.is_linear:
        raise DegenerateLiftError(
            "system has no nonlinear block; lifting a purely linear system is pointless"
        )
    n = sys.n
    columns = [sys.D]
    blocks = [Block(1, 1, n)]
    offset = n + 1
    pair_map = None
    triple_map = None
    if sys.G is not None:
        pair_map = PairIndexMap(n)
        cols = np.empty((n, pair_map.size))
        for p in range(1, pair_map.size + 1):
            i, j = pair_map.unindex(p)
            col = sys.G[:, (i - 1) * n + (j - 1)]
            if i != j:
                col = col + sys.G[:, (j - 1) * n + (i - 1)]
            cols[:, p - 1] = col
        columns.append(cols)
        blocks.append(Block(2, offset, pair_map.size))
        offset += pair_map.size
    if sys.R is not None:
        triple_map = TripleIndexMap(n)
        cols = np.zeros((n, triple_map.size))
        for t in range(1, triple_map.size + 1):
            ijk = triple_map.unindex(t)
            for p, q, r in set(permutations(ijk)):
                cols[:, t - 1] += sys.R[:, ((p - 1) * n + (q - 1)) * n + (r - 1)]
        columns.append(cols)
        blocks.append(Block(3, offset, triple_map.size))
    return LiftedSystem(
        P=np.hstack(columns),
        b=sys.b.copy(),
        blocks=tuple(blocks),
        pair_map=pair_map,
        triple_map=triple_map,
        origin=sys,
    )


def monomial_embedding(lift, x):
    """The exact lifted vector y(x): linear block x, then its monomials."""
    x = _as_vector(x, lift.n_linear)
    parts = []
    for blk in lift.blocks:
        if blk.degree == 1:
            parts.append(x)
        elif blk.degree == 2:
            parts.append(kernels.pair_products(x))
        elif blk.degree == 3:
            parts.append(kernels.triple_products(x))
        else:  # pragma: no cover
            raise DomainError(f"unsupported block degree {blk.degree}")
    y = np.concatenate(parts)
    if y.shape[0] != lift.m:
        raise DimensionError(
            f"embedding length {y.shape[0]} does not match m={lift.m}"
        )
    return y


def embed_nonlinear(lift, x):
    """Concatenated nonlinear blocks of the embedding y(x)."""
    parts = []
    for blk in lift.blocks:
        if blk.degree == 2:
            parts.append(kernels.pair_products(x))
        elif blk.degree == 3:
            parts.append(kernels.triple_products(x))
    if not parts:
        return np.empty(0)
    return np.concatenate(parts)


def embed_nonlinear_jacobian(lift, x):
    """Jacobian of embed_nonlinear wrt x, shape (m - n, n)."""
    parts = []
    for blk in lift.blocks:
        if blk.degree == 2:
            parts.append(kernels.pair_jacobian(x))
        elif blk.degree == 3:
            parts.append(kernels.triple_jacobian(x))
    if not parts:
        return np.empty((0, x.shape[0]))
    return np.vstack(parts)
