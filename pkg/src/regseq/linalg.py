"""Exact and modular rank computation for sparse integer matrices.

Two routes, used as a pair throughout the decision engine:

* ``rank_modular`` -- Gaussian elimination over a prime field.  Full column
  rank modulo any prime is a valid certificate over the rationals (a nonzero
  maximal minor mod p is nonzero in Z); a modular deficiency proves nothing
  by itself.
* ``rank_exact`` -- fraction-free (Bareiss) elimination over the integers,
  the authoritative rank over Q.

Dense numpy int64 elimination is used when the matrix fits comfortably in
memory; otherwise a dict-based sparse elimination takes over.  Primes must
stay below 2^31 so that int64 products cannot overflow.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .arith import is_prime

#: Largest row*col product handled by the dense numpy path.
DENSE_CELL_LIMIT = 30_000_000

#: Modular primes are drawn from [2^30, 2^31): machine-word sized, and
#: products of two reduced entries fit in int64.
PRIME_LOW = 1 << 30
PRIME_HIGH = (1 << 31) - 1


@dataclass(frozen=True)
class SparseIntMatrix:
    """Rows of (column, value) pairs with nonzero integer values."""

    n_rows: int
    n_cols: int
    rows: tuple[tuple[tuple[int, int], ...], ...]

    @classmethod
    def from_rows(cls, n_rows: int, n_cols: int, rows) -> "SparseIntMatrix":
        packed = []
        for row in rows:
            items = tuple(sorted((int(c), int(v)) for c, v in row if v))
            for c, _ in items:
                if not 0 <= c < n_cols:
                    raise ValueError(f"column index {c} out of range")
            packed.append(items)
        if len(packed) != n_rows:
            raise ValueError("row count mismatch")
        return cls(n_rows, n_cols, tuple(packed))

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.n_cols for _ in range(self.n_rows)]
        for i, row in enumerate(self.rows):
            for c, v in row:
                out[i][c] = v
        return out

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def append_row(self, row) -> "SparseIntMatrix":
        items = tuple(sorted((int(c), int(v)) for c, v in row if v))
        return SparseIntMatrix(self.n_rows + 1, self.n_cols, self.rows + (items,))


def random_prime(rng: random.Random) -> int:
    """A uniform-ish random prime in [2^30, 2^31)."""
    while True:
        candidate = rng.randrange(PRIME_LOW, PRIME_HIGH) | 1
        while candidate < PRIME_HIGH and not is_prime(candidate):
            candidate += 2
        if candidate < PRIME_HIGH:
            return candidate


def rank_modular(matrix: SparseIntMatrix, p: int) -> int:
    """Rank of the matrix over GF(p); p an odd prime below 2^31."""
    if p <= 2 or p >= (1 << 31) or not is_prime(p):
        raise ValueError("p must be an odd prime below 2^31")
    if matrix.n_rows == 0 or matrix.n_cols == 0:
        return 0
    if matrix.n_rows * matrix.n_cols <= DENSE_CELL_LIMIT:
        return _rank_mod_dense(matrix, p)
    return _rank_mod_sparse(matrix, p)


def _rank_mod_dense(matrix: SparseIntMatrix, p: int) -> int:
    a = np.zeros((matrix.n_rows, matrix.n_cols), dtype=np.int64)
    for i, row in enumerate(matrix.rows):
        for c, v in row:
            a[i, c] = v % p
    r = 0
    n_rows, n_cols = a.shape
    for c in range(n_cols):
        if r == n_rows:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = a[r + 1:, c]
        hit = np.nonzero(below)[0]
        if hit.size:
            rows = r + 1 + hit
            a[rows, c:] = (a[rows, c:] - np.outer(a[rows, c], a[r, c:])) % p
        r += 1
    return r


def _rank_mod_sparse(matrix: SparseIntMatrix, p: int) -> int:
    """Insertion-based sparse elimination: reduce each row against the
    current pivots, then register its leading entry as a new pivot."""
    pivots: dict[int, dict[int, int]] = {}
    for row in matrix.rows:
        r = {c: v % p for c, v in row if v % p}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(r[c], -1, p)
                pivots[c] = {cc: vv * inv % p for cc, vv in r.items()}
                break
            f = r[c]
            for cc, vv in piv.items():
                nv = (r.get(cc, 0) - f * vv) % p
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
        # empty r: row is dependent, no pivot added
    return len(pivots)


def rank_exact(matrix: SparseIntMatrix) -> int:
    """Rank over the rationals via fraction-free (Bareiss) elimination.

    All intermediate entries are minors of the input, so the arithmetic is
    division-controlled and exact.
    """
    a = matrix.to_dense()
    n_rows, n_cols = matrix.n_rows, matrix.n_cols
    if n_rows == 0 or n_cols == 0:
        return 0
    rank = 0
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = None
        for i in range(r, n_rows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        pivot = a[r][c]
        row_r = a[r]
        for i in range(r + 1, n_rows):
            ai_c = a[i][c]
            row_i = a[i]
            # Bareiss update applies to every row below, including those with
            # a zero in the pivot column (they get rescaled by pivot/prev).
            for j in range(c + 1, n_cols):
                row_i[j] = (pivot * row_i[j] - ai_c * row_r[j]) // prev
            row_i[c] = 0
        prev = pivot
        r += 1
        rank += 1
    return rank
