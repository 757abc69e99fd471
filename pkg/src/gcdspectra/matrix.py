"""GCD matrices over index sets, tensor products, rank-one structure.

A gcd matrix of f over the set S = {x_1 < ... < x_n} has entries
f(gcd(x_i, x_j)).  Entries are held as FnValue so the exact and float
views travel together; the float view is materialized once, on hand-off
to numerical code.  Matrices are immutable and symmetric by construction.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .arith import ArithFn, FnValue, composite, evaluate
from .errors import DiagonalGcdMatrix, HypothesisError
from .formatting import format_scalar

__all__ = [
    "IndexSet",
    "GcdMatrix",
    "OneRankPlusDiag",
    "build_gcd_matrix",
    "build_composite_matrix",
    "tensor_product_set",
    "kronecker",
    "as_one_rank_plus_diag",
]


@dataclass(frozen=True)
class IndexSet:
    """Strictly increasing positive integers indexing a gcd matrix."""

    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.elements:
            raise ValueError("index set must be nonempty")
        prev = 0
        for x in self.elements:
            if not isinstance(x, int):
                raise ValueError(f"index set elements must be ints, got {x!r}")
            if x <= prev:
                raise ValueError(
                    f"index set must be strictly increasing and positive, got {self.elements}"
                )
            prev = x

    @classmethod
    def of(cls, xs: Iterable[int]) -> "IndexSet":
        """Sort and de-duplicate, then validate."""
        return cls(tuple(sorted(set(xs))))

    @property
    def n(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def _coerce_set(S) -> IndexSet:
    return S if isinstance(S, IndexSet) else IndexSet.of(S)


@dataclass(frozen=True)
class GcdMatrix:
    """Symmetric matrix (f(gcd(x_i, x_j))) with dual-form entries."""

    index_set: IndexSet
    fn: ArithFn
    values: tuple[tuple[FnValue, ...], ...]

    @property
    def n(self) -> int:
        return self.index_set.n

    @property
    def is_exact(self) -> bool:
        return self.values[0][0].exact is not None

    def entry(self, i: int, j: int) -> FnValue:
        return self.values[i][j]

    def exact_rows(self) -> list[list[Fraction]]:
        if not self.is_exact:
            raise ValueError("matrix was built on the float path")
        return [[v.exact for v in row] for row in self.values]

    def float_array(self) -> np.ndarray:
        """The one sanctioned exact -> float conversion point."""
        return np.array([[v.approx for v in row] for row in self.values], dtype=np.float64)

    def trace(self):
        if self.is_exact:
            return sum(self.values[i][i].exact for i in range(self.n))
        return sum(self.values[i][i].approx for i in range(self.n))

    def to_csv(self) -> str:
        """Row-major CSV, exact entries as integer/rational strings."""
        fmt = (lambda v: format_scalar(v.exact)) if self.is_exact else (
            lambda v: format_scalar(v.approx)
        )
        return "\n".join(",".join(fmt(v) for v in row) for row in self.values) + "\n"

    def to_json(self) -> str:
        fmt = (lambda v: format_scalar(v.exact)) if self.is_exact else (
            lambda v: format_scalar(v.approx)
        )
        doc = {
            "elements": list(self.index_set.elements),
            "function": str(self.fn),
            "exact": self.is_exact,
            "entries": [[fmt(v) for v in row] for row in self.values],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def build_gcd_matrix(f: ArithFn, S) -> GcdMatrix:
    """(f(gcd(x_i, x_j))) over S; one evaluation per distinct gcd."""
    idx = _coerce_set(S)
    xs = idx.elements
    cache: dict[int, FnValue] = {}

    def val(m: int) -> FnValue:
        got = cache.get(m)
        if got is None:
            got = cache[m] = evaluate(f, m)
        return got

    rows = tuple(
        tuple(val(math.gcd(xi, xj)) for xj in xs) for xi in xs
    )
    return GcdMatrix(idx, f, rows)


def build_composite_matrix(fs: Sequence[tuple[ArithFn, int]], d: int, S) -> GcdMatrix:
    """gcd matrix of f1^(l1) * ... * fc^(lc) * mu^(d) over S."""
    return build_gcd_matrix(composite(fs, d), S)


def tensor_product_set(X, Y) -> tuple[IndexSet, tuple[int, ...]]:
    """Product set {x * y} and the permutation from x-major product order
    to sorted order.

    Every x must be coprime to every y (validated; the violating pair is
    named).  Under that hypothesis the products are automatically
    distinct.  perm[k] is the sorted position of the k-th product, so
    sorted_matrix[perm[a]][perm[b]] corresponds to product-order (a, b).
    """
    ix, iy = _coerce_set(X), _coerce_set(Y)
    for x in ix:
        for y in iy:
            if math.gcd(x, y) != 1:
                raise HypothesisError(
                    f"tensor product set needs cross-coprimality; gcd({x}, {y}) = {math.gcd(x, y)}"
                )
    products = [x * y for x in ix for y in iy]
    order = sorted(range(len(products)), key=lambda k: products[k])
    perm = [0] * len(products)
    for rank, k in enumerate(order):
        perm[k] = rank
    return IndexSet(tuple(products[k] for k in order)), tuple(perm)


def _as_grid(M) -> list[list]:
    if isinstance(M, GcdMatrix):
        if M.is_exact:
            return M.exact_rows()
        return [[v.approx for v in row] for row in M.values]
    if isinstance(M, np.ndarray):
        if M.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {M.shape}")
        return [list(row) for row in M.tolist()]
    grid = [list(row) for row in M]
    if grid and any(len(row) != len(grid[0]) for row in grid):
        raise ValueError("ragged matrix")
    return grid


def kronecker(A, B) -> list[list]:
    """Kronecker product of two matrices, exact when the inputs are exact.

    Accepts GcdMatrix, numpy arrays, or nested sequences; returns nested
    lists in the scalar type of the inputs (block (i,j) is A[i][j] * B).
    """
    ga, gb = _as_grid(A), _as_grid(B)
    if not ga or not gb:
        raise ValueError("kronecker wants nonempty matrices")
    ra, ca = len(ga), len(ga[0])
    rb, cb = len(gb), len(gb[0])
    out = [[None] * (ca * cb) for _ in range(ra * rb)]
    for i in range(ra):
        for k in range(rb):
            dest = out[i * rb + k]
            for j in range(ca):
                a = ga[i][j]
                rowb = gb[k]
                base = j * cb
                for l in range(cb):
                    dest[base + l] = a * rowb[l]
    return out


@dataclass(frozen=True)
class OneRankPlusDiag:
    """scale * (E_n + diag(r_i - 1)) where E_n is the all-ones matrix.

    The eigenvalue-bound routines require r ascending with r_1 >= 1; the
    type itself does not force that so it can carry general
    decompositions."""

    r: tuple
    scale: object = 1

    @property
    def n(self) -> int:
        return len(self.r)

    def materialize(self) -> list[list]:
        """E_n + diag(r - 1), without the scale factor."""
        one = 1.0 if isinstance(self.r[0], float) else 1
        return [
            [self.r[i] if i == j else one for j in range(self.n)]
            for i in range(self.n)
        ]

    def scaled(self) -> list[list]:
        return [[self.scale * v for v in row] for row in self.materialize()]


def as_one_rank_plus_diag(M: GcdMatrix, x: int) -> OneRankPlusDiag:
    """Factor a constant-gcd matrix as f(x) * (E_n + diag(f(x_i)/f(x) - 1)).

    Every off-diagonal gcd must equal x (else HypothesisError naming the
    first violating pair).  f(x) = 0 raises DiagonalGcdMatrix carrying the
    diagonal; f(x) < 0 is rejected.
    """
    xs = M.index_set.elements
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            g = math.gcd(xs[i], xs[j])
            if g != x:
                raise HypothesisError(
                    f"gcd({xs[i]}, {xs[j]}) = {g}, expected constant gcd {x}"
                )
    fx = evaluate(M.fn, x)
    exact = M.is_exact and fx.exact is not None
    fxv = fx.exact if exact else fx.approx
    if fxv == 0:
        raise DiagonalGcdMatrix(
            tuple(M.values[i][i].exact if exact else M.values[i][i].approx for i in range(M.n))
        )
    if fxv < 0:
        raise HypothesisError(f"f({x}) = {fxv} < 0; rank-one form needs f(x) > 0")
    if exact:
        r = tuple(M.values[i][i].exact / fxv for i in range(M.n))
    else:
        r = tuple(M.values[i][i].approx / fxv for i in range(M.n))
    return OneRankPlusDiag(r, fxv)
