"""
Domain-[q] signatures and holographic transformations.

A :class:`DomainSignature` is a dense function [q]^n -> Q(i, sqrt2), indexed
with i_1 most significant. A :class:`TransformMatrix` M is q x 2^l; the
transform f M^{(x)n} is a Boolean signature of arity n*l whose blocks are
the l-bit column indices of M.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence, Tuple

import numpy as np

from .config import get_cap
from .linalg import as_matrix, exact_rank, kron_power, matmul, right_inverse_matrix
from .scalar import INV_SQRT2, ONE, ZERO, Scalar, ScalarLike, as_scalar, zeros
from .signatures import BlockView, BooleanSignature, MatrixForm
from .types import CapExceededError, PreconditionError, RankError, ShapeError


@dataclass(frozen=True)
class DomainSignature:
    """Function [q]^arity -> Scalar stored densely.

    Args:
        q: Domain size
        arity: Number of variables
        values: q**arity entries in row-major order
        symmetric: Declares the function symmetric; the claim is verified
    """
    q: int
    arity: int
    values: Tuple[Scalar, ...]
    symmetric: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ShapeError("domain size must be at least 1")
        if self.arity < 0:
            raise ShapeError("arity must be non-negative")
        size = self.q ** self.arity
        cap = get_cap('domain_entries')
        if size > cap:
            raise CapExceededError(f"dense signature with {size} entries exceeds cap {cap}")
        if len(self.values) != size:
            raise ShapeError(f"q={self.q}, arity={self.arity} needs {size} entries, got {len(self.values)}")
        object.__setattr__(self, "values", tuple(as_scalar(v) for v in self.values))
        if self.symmetric and not is_symmetric(self):
            raise ShapeError("signature declared symmetric but is not")

    def index_of(self, assignment: Sequence[int]) -> int:
        if len(assignment) != self.arity:
            raise ShapeError(f"expected {self.arity} indices, got {len(assignment)}")
        k = 0
        for x in assignment:
            if not 0 <= x < self.q:
                raise ShapeError(f"index {x} outside domain [0, {self.q})")
            k = k * self.q + x
        return k

    def __getitem__(self, assignment: Sequence[int]) -> Scalar:
        return self.values[self.index_of(tuple(assignment))]

    def to_tensor(self) -> np.ndarray:
        arr = np.empty(len(self.values), dtype=object)
        arr[:] = self.values
        return arr.reshape((self.q,) * self.arity)

    def nonzero_items(self):
        for k, assignment in enumerate(product(range(self.q), repeat=self.arity)):
            v = self.values[k]
            if not v.is_zero():
                yield assignment, v

    @classmethod
    def from_tensor(cls, tensor: np.ndarray, q: int, arity: int, symmetric: bool = False) -> "DomainSignature":
        return cls(q, arity, tuple(tensor.reshape(-1)), symmetric)


class TransformMatrix:
    """A q x 2^l basis-change matrix with an optional tracked global scale.

    The effective matrix is ``scale * matrix``; transforms work on the stored
    matrix and multiply by ``scale**arity`` at the end.

    Raises:
        ShapeError: Empty matrix or a column count that is not a power of two.
    """

    def __init__(self, matrix, scale: ScalarLike = 1):
        m = matrix if isinstance(matrix, np.ndarray) else as_matrix(matrix)
        if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
            raise ShapeError("transformation matrix must have positive dimensions")
        cols = m.shape[1]
        if cols & (cols - 1):
            raise ShapeError(f"column count {cols} is not a power of two")
        self.matrix = m
        self.scale = as_scalar(scale)
        if self.scale.is_zero():
            raise ShapeError("scale must be nonzero")
        self.rank = exact_rank(m)

    @property
    def q(self) -> int:
        return self.matrix.shape[0]

    @property
    def block_size(self) -> int:
        return self.matrix.shape[1].bit_length() - 1

    def effective(self) -> np.ndarray:
        if self.scale == ONE:
            return self.matrix
        return self.matrix * self.scale

    def __repr__(self) -> str:
        return f"TransformMatrix(q={self.q}, cols={self.matrix.shape[1]}, rank={self.rank}, scale={self.scale})"


def equality(q: int, n: int) -> DomainSignature:
    """(=_n) on domain [q]: 1 when all n variables agree."""
    if q < 1 or n < 1:
        raise ShapeError("equality needs q >= 1 and n >= 1")
    values = [ZERO] * (q ** n)
    step = sum(q ** k for k in range(n))
    for i in range(q):
        values[i * step] = ONE
    return DomainSignature(q, n, tuple(values), symmetric=True)


def is_symmetric(f: DomainSignature) -> bool:
    if f.arity < 2:
        return True
    tensor = f.to_tensor()
    for k in range(f.arity - 1):
        diff = tensor != np.swapaxes(tensor, k, k + 1)
        if np.asarray(diff, dtype=bool).any():
            return False
    return True


def domain_matrix_form(f: DomainSignature) -> np.ndarray:
    """q x q^(n-1) matrix: row i_1, column i_2..i_n."""
    if f.arity < 1:
        raise ShapeError("matrix form needs arity at least 1")
    arr = np.empty(len(f.values), dtype=object)
    arr[:] = f.values
    return arr.reshape(f.q, f.q ** (f.arity - 1))


def _contract_rows(f: DomainSignature, m: np.ndarray) -> np.ndarray:
    """sum_i f[i_1..i_n] m[i_1, a_1] ... m[i_n, a_n] as an (m.cols,)*n tensor."""
    tensor = f.to_tensor()
    for _ in range(f.arity):
        tensor = np.tensordot(tensor, m, axes=([0], [0]))
    return tensor


def transform_domain(f: DomainSignature, m: TransformMatrix, apply_scale: bool = True) -> DomainSignature:
    """f M^{(x)n} as a signature on domain [2^l]."""
    if f.q != m.q:
        raise ShapeError(f"signature domain {f.q} does not match matrix rows {m.q}")
    cols = m.matrix.shape[1]
    if f.arity == 0:
        values = f.values
    else:
        values = tuple(_contract_rows(f, m.matrix).reshape(-1))
    if apply_scale and m.scale != ONE:
        factor = m.scale ** f.arity
        values = tuple(v * factor for v in values)
    return DomainSignature(cols, f.arity, values)


def transform(f: DomainSignature, m: TransformMatrix) -> BlockView:
    """Holographic transform f M^{(x)n} as a Boolean signature of arity n*l.

    Raises:
        ShapeError: Domain size of ``f`` differs from the rows of ``m``.
    """
    g = transform_domain(f, m)
    return BlockView(BooleanSignature(f.arity * m.block_size, g.values), m.block_size)


def transform_dual(g: DomainSignature, mcheck: np.ndarray) -> DomainSignature:
    """(Mcheck)^{(x)n} g for a 2^l x q matrix, as a signature on domain [2^l]."""
    if g.q != mcheck.shape[1]:
        raise ShapeError(f"signature domain {g.q} does not match matrix columns {mcheck.shape[1]}")
    if g.arity == 0:
        return DomainSignature(mcheck.shape[0], 0, g.values)
    tensor = g.to_tensor()
    for _ in range(g.arity):
        tensor = np.tensordot(tensor, mcheck, axes=([0], [1]))
    return DomainSignature(mcheck.shape[0], g.arity, tuple(tensor.reshape(-1)))


def matrix_form_factored(f: DomainSignature, m: TransformMatrix) -> MatrixForm:
    """M^T M(f) M^{(x)(n-1)}, scaled by scale^n.

    Raises:
        PreconditionError: ``f`` is not symmetric.
    """
    if not is_symmetric(f):
        raise PreconditionError("factored matrix form needs a symmetric signature")
    if f.q != m.q:
        raise ShapeError(f"signature domain {f.q} does not match matrix rows {m.q}")
    out = matmul(matmul(m.matrix.T, domain_matrix_form(f)), kron_power(m.matrix, f.arity - 1))
    if m.scale != ONE:
        factor = m.scale ** f.arity
        out = np.vectorize(lambda x: x * factor, otypes=[object])(out)
    return MatrixForm(out, m.block_size, f.arity)


def right_inverse(m: TransformMatrix) -> np.ndarray:
    """A 2^l x q matrix Mcheck with (scale * M) Mcheck = I_q.

    Raises:
        RankError: ``m`` has rank below q.
    """
    if m.rank < m.q:
        raise RankError(f"matrix has rank {m.rank} < q = {m.q}")
    inv = right_inverse_matrix(m.matrix)
    if m.scale != ONE:
        s = m.scale.inverse()
        inv = np.vectorize(lambda x: x * s, otypes=[object])(inv)
    return inv


def hadamard(normalized: bool = True) -> TransformMatrix:
    """H_2 = (1/sqrt2) [[1, 1], [1, -1]].

    ``normalized=True`` stores the 1/sqrt2 entries; otherwise the integer
    matrix is stored and 1/sqrt2 is carried as the tracked scale.
    """
    base = [[1, 1], [1, -1]]
    if normalized:
        return TransformMatrix(as_matrix([[INV_SQRT2 * x for x in row] for row in base]))
    return TransformMatrix(as_matrix(base), scale=INV_SQRT2)
