"""
Exact linear algebra over Q(i, sqrt2) on object-dtype numpy arrays.

numpy supplies storage, reshaping, slicing and products (``@`` and
``np.kron`` work on object arrays through the Scalar operators); elimination
is written out here because numpy.linalg only handles floats.
"""

from typing import List, Sequence, Tuple

import numpy as np

from .scalar import ONE, ZERO, Scalar, as_scalar, zeros
from .types import RankError, ShapeError


def as_matrix(rows: Sequence[Sequence[object]]) -> np.ndarray:
    """Build a 2-D object array of Scalars from nested sequences."""
    if len(rows) == 0:
        return zeros((0, 0))
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ShapeError("ragged matrix rows")
    m = zeros((len(rows), width))
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            m[i, j] = as_scalar(value)
    return m


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    if a.shape[1] == 0:
        return zeros((a.shape[0], b.shape[1]))
    return a @ b


def kron_power(m: np.ndarray, k: int) -> np.ndarray:
    """k-fold Kronecker power; the 0-th power is the 1x1 identity."""
    out = zeros((1, 1))
    out[0, 0] = ONE
    for _ in range(k):
        out = np.kron(out, m)
    return out


def rref(m: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = m.copy()
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        p = next((k for k in range(r, rows) if not a[k, c].is_zero()), None)
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        inv = a[r, c].inverse()
        a[r] = [x * inv for x in a[r]]
        for k in range(rows):
            if k != r and not a[k, c].is_zero():
                f = a[k, c]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def exact_rank(m: np.ndarray) -> int:
    """Rank over Q(i, sqrt2) by exact Gaussian elimination.

    Eliminates along the shorter side, so wide matrix forms cost
    O(rows^2 * cols).
    """
    if m.size == 0:
        return 0
    a = m.copy() if m.shape[0] <= m.shape[1] else m.T.copy()
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        p = next((k for k in range(rank, rows) if not a[k, c].is_zero()), None)
        if p is None:
            continue
        if p != rank:
            a[[rank, p]] = a[[p, rank]]
        inv = a[rank, c].inverse()
        for k in range(rank + 1, rows):
            if not a[k, c].is_zero():
                f = a[k, c] * inv
                a[k, c:] = [x - f * y for x, y in zip(a[k, c:], a[rank, c:])]
        rank += 1
    return rank


def determinant(m: np.ndarray) -> Scalar:
    """Exact determinant by elimination with row swaps."""
    n, k = m.shape
    if n != k:
        raise ShapeError("determinant of a non-square matrix")
    a = m.copy()
    det = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if not a[r, c].is_zero()), None)
        if p is None:
            return ZERO
        if p != c:
            a[[c, p]] = a[[p, c]]
            det = -det
        det = det * a[c, c]
        inv = a[c, c].inverse()
        for r in range(c + 1, n):
            if not a[r, c].is_zero():
                f = a[r, c] * inv
                a[r, c:] = [x - f * y for x, y in zip(a[r, c:], a[c, c:])]
    return det


def inverse_matrix(m: np.ndarray) -> np.ndarray:
    n, k = m.shape
    if n != k:
        raise ShapeError("inverse of a non-square matrix")
    aug = np.concatenate([m, _identity(n)], axis=1)
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise RankError("matrix is singular")
    return reduced[:, n:]


def right_inverse_matrix(m: np.ndarray) -> np.ndarray:
    """A right inverse X with m @ X = I for a full-row-rank m.

    Picks the pivot columns of m, inverts that square submatrix and places
    the rows of the inverse at the pivot positions; all other rows are zero.
    """
    q, width = m.shape
    _, pivots = rref(m)
    if len(pivots) < q:
        raise RankError(f"matrix has rank {len(pivots)} < {q} rows; no right inverse")
    sub_inv = inverse_matrix(m[:, pivots])
    out = zeros((width, q))
    for k, c in enumerate(pivots):
        out[c, :] = sub_inv[k, :]
    return out


def is_zero_matrix(m: np.ndarray) -> bool:
    return all(x.is_zero() for x in m.flat)


def matrices_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def _identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for k in range(n):
        out[k, k] = ONE
    return out
