"""
Boolean signatures and their algebra.

A :class:`BooleanSignature` of arity n is a dense vector of 2^n Scalars. Entry
indices are bitstrings i_1 i_2 ... i_n read with i_1 as the most significant
bit, so position p (1-based) corresponds to the integer bit ``1 << (n - p)``.

The checks here are the certificate used throughout holomatch for "this is a
matchgate signature": the parity condition plus the matchgate identities
(MGI). The block-structured operations (symmetry, matrix form, determinant
identities, minimum-weight row pairs) work on a :class:`BlockView` that splits
an arity n*l index into n blocks of l bits.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .config import get_cap
from .linalg import exact_rank
from .scalar import ONE, ZERO, Scalar, ScalarArray, ScalarLike, as_scalar
from .types import (
    Bits,
    DetVerdict,
    MGIVerdict,
    MinPair,
    ParityVerdict,
    ShapeError,
    SymmetryVerdict,
)

Index = Union[int, str]


# Bit helpers

def to_bits(index: int, width: int) -> Bits:
    return format(index, f"0{width}b") if width else ""


def from_bits(bits: str) -> int:
    if bits and set(bits) - {"0", "1"}:
        raise ShapeError(f"not a bitstring: {bits!r}")
    return int(bits, 2) if bits else 0


def weight(index: int) -> int:
    return bin(index).count("1")


def parity(index: int) -> int:
    return weight(index) & 1


def position_bit(position: int, width: int) -> int:
    """Integer mask of 1-based position ``position`` in a width-bit index."""
    return 1 << (width - position)


def positions_of(mask: int, width: int) -> Tuple[int, ...]:
    return tuple(p for p in range(1, width + 1) if mask & position_bit(p, width))


@dataclass(frozen=True)
class BooleanSignature:
    """Dense signature over {0,1}^arity.

    Example:
        >>> s = BooleanSignature(2, (Scalar(5), ZERO, ZERO, ONE))
        >>> s['00'], s['11']
        (Scalar('5'), Scalar('1'))
    """
    arity: int
    values: Tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if self.arity < 0:
            raise ShapeError("arity must be non-negative")
        if len(self.values) != 1 << self.arity:
            raise ShapeError(
                f"arity {self.arity} needs {1 << self.arity} entries, got {len(self.values)}"
            )
        object.__setattr__(self, "values", tuple(as_scalar(v) for v in self.values))

    @classmethod
    def from_entries(cls, arity: int, entries: Mapping[Index, ScalarLike]) -> "BooleanSignature":
        values = [ZERO] * (1 << arity)
        for key, value in entries.items():
            k = from_bits(key) if isinstance(key, str) else int(key)
            if isinstance(key, str) and len(key) != arity:
                raise ShapeError(f"index {key!r} does not have arity {arity}")
            values[k] = as_scalar(value)
        return cls(arity, tuple(values))

    @classmethod
    def zero(cls, arity: int) -> "BooleanSignature":
        return cls(arity, (ZERO,) * (1 << arity))

    def __getitem__(self, index: Index) -> Scalar:
        if isinstance(index, str):
            if len(index) != self.arity:
                raise ShapeError(f"index {index!r} does not have arity {self.arity}")
            index = from_bits(index)
        return self.values[index]

    def __len__(self) -> int:
        return len(self.values)

    def nonzero_items(self) -> Iterator[Tuple[Bits, Scalar]]:
        for k, v in enumerate(self.values):
            if not v.is_zero():
                yield to_bits(k, self.arity), v

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def __add__(self, other: "BooleanSignature") -> "BooleanSignature":
        if other.arity != self.arity:
            raise ShapeError("cannot add signatures of different arity")
        return BooleanSignature(self.arity, tuple(x + y for x, y in zip(self.values, other.values)))

    def scaled(self, factor: ScalarLike) -> "BooleanSignature":
        f = as_scalar(factor)
        return BooleanSignature(self.arity, tuple(f * v for v in self.values))

    def tensor(self, other: "BooleanSignature") -> "BooleanSignature":
        """Tensor product; ``self``'s bits come first."""
        return BooleanSignature(
            self.arity + other.arity,
            tuple(x * y for x in self.values for y in other.values),
        )

    def to_array(self) -> np.ndarray:
        arr = np.empty(len(self.values), dtype=object)
        arr[:] = self.values
        return arr

    def as_domain(self):
        """View as a domain-2 signature for Holant grids."""
        from .holographic import DomainSignature
        return DomainSignature(2, self.arity, self.values)


@dataclass(frozen=True)
class BlockView:
    """A signature of arity n*l seen as n blocks of l bits."""
    signature: BooleanSignature
    block_size: int

    def __post_init__(self) -> None:
        if self.block_size < 1:
            raise ShapeError("block size must be at least 1")
        if self.signature.arity % self.block_size:
            raise ShapeError(
                f"arity {self.signature.arity} is not a multiple of block size {self.block_size}"
            )

    @property
    def num_blocks(self) -> int:
        return self.signature.arity // self.block_size

    @property
    def arity(self) -> int:
        return self.signature.arity

    def bit(self, block: int, position: int) -> int:
        """Mask of bit ``position`` (1-based) inside block ``block`` (1-based)."""
        return position_bit((block - 1) * self.block_size + position, self.arity)

    def split(self, index: int) -> Tuple[int, ...]:
        l = self.block_size
        full = (1 << l) - 1
        return tuple((index >> (self.arity - k * l)) & full for k in range(1, self.num_blocks + 1))

    def join(self, blocks: Sequence[int]) -> int:
        if len(blocks) != self.num_blocks:
            raise ShapeError(f"expected {self.num_blocks} blocks, got {len(blocks)}")
        out = 0
        for b in blocks:
            if not 0 <= b < 1 << self.block_size:
                raise ShapeError(f"block value {b} does not fit in {self.block_size} bits")
            out = (out << self.block_size) | b
        return out


@dataclass(frozen=True)
class MatrixForm:
    """M(Gamma): rows indexed by block 1, columns by blocks 2..n concatenated."""
    matrix: np.ndarray
    block_size: int
    num_blocks: int

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.shape

    def rank(self) -> int:
        return exact_rank(self.matrix)

    def row(self, sigma: Index) -> np.ndarray:
        return self.matrix[from_bits(sigma) if isinstance(sigma, str) else sigma]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixForm):
            return NotImplemented
        return (self.matrix.shape == other.matrix.shape
                and all(x == y for x, y in zip(self.matrix.flat, other.matrix.flat)))

    __hash__ = None  # type: ignore[assignment]


# Parity

def check_parity(s: BooleanSignature) -> ParityVerdict:
    """Classify ``s`` by the parity condition."""
    first_even: Optional[int] = None
    first_odd: Optional[int] = None
    for k, v in enumerate(s.values):
        if v.is_zero():
            continue
        if parity(k):
            if first_odd is None:
                first_odd = k
        elif first_even is None:
            first_even = k
        if first_even is not None and first_odd is not None:
            return ParityVerdict('violated', to_bits(first_even, s.arity), to_bits(first_odd, s.arity))
    if first_even is None and first_odd is None:
        return ParityVerdict('zero')
    return ParityVerdict('even' if first_odd is None else 'odd')


def check_parity_same(view: BlockView) -> bool:
    """True if every block of every nonzero entry has one common parity."""
    seen: Optional[int] = None
    for k, v in enumerate(view.signature.values):
        if v.is_zero():
            continue
        for block in view.split(k):
            p = parity(block)
            if seen is None:
                seen = p
            elif p != seen:
                return False
    return True


# Matchgate identities

def _normalize_positions(positions: Sequence[int], arity: int) -> Tuple[int, ...]:
    pos = tuple(int(p) for p in positions)
    if not pos:
        raise ShapeError("position set must be nonempty")
    if any(b <= a for a, b in zip(pos, pos[1:])):
        raise ShapeError(f"positions must be strictly increasing: {pos}")
    if pos[0] < 1 or pos[-1] > arity:
        raise ShapeError(f"positions {pos} out of range 1..{arity}")
    return pos


def mgi_residual(s: BooleanSignature, alpha: Index, positions: Sequence[int]) -> Scalar:
    """Alternating sum sum_k (-1)^k G[alpha+e_pk] G[alpha+P+e_pk] (XOR indices)."""
    n = s.arity
    a = from_bits(alpha) if isinstance(alpha, str) else int(alpha)
    pos = _normalize_positions(positions, n)
    pmask = 0
    for p in pos:
        pmask |= position_bit(p, n)
    total = ZERO
    for k, p in enumerate(pos, start=1):
        e = position_bit(p, n)
        x = s.values[a ^ e]
        if x.is_zero():
            continue
        y = s.values[a ^ pmask ^ e]
        if y.is_zero():
            continue
        term = x * y
        total = total - term if k & 1 else total + term
    return total


def _witness_key(alpha: int, positions: Tuple[int, ...], n: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    return positions_of(alpha, n), positions


def check_mgi(
    s: BooleanSignature,
    cap: Optional[int] = None,
    samples: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> MGIVerdict:
    """Check the matchgate identities.

    Without ``samples`` every (alpha, P) is evaluated and the first failure is
    reported. Failures are ordered lexicographically by the 1-positions of
    alpha, then by the positions of P, both read as increasing tuples; under
    this order (=4) first fails at alpha = 1000, P = (1, 2, 3, 4). With
    ``samples`` set, that many random (alpha, P) pairs are drawn from ``rng``
    and the smallest failing one among them is reported.

    Raises:
        CapExceededError: Exhaustive mode with arity above ``cap``.
    """
    from .types import CapExceededError

    n = s.arity
    if samples is not None:
        return _check_mgi_sampled(s, samples, rng if rng is not None else np.random.default_rng(0))
    limit = get_cap('mgi_exhaustive_arity') if cap is None else cap
    if n > limit:
        raise CapExceededError(
            f"exhaustive MGI sweep at arity {n} exceeds cap {limit}; pass samples= for sampling mode"
        )
    size = 1 << n
    if n == 0:
        return MGIVerdict(True, evaluated=0)

    # P of odd size pairs entries of opposite parity, which vanish when the
    # parity condition holds.
    skip_odd = check_parity(s).passed
    arr = ScalarArray.from_scalars(s.values)
    idx = np.arange(size, dtype=np.int64)
    best: Optional[Tuple[int, Tuple[int, ...], Scalar]] = None
    evaluated = 0
    for pmask in range(1, size):
        if skip_odd and weight(pmask) & 1:
            continue
        evaluated += size
        pos = positions_of(pmask, n)
        h = arr * arr.take(idx ^ pmask)
        if not h.nonzero_mask().any():
            continue
        acc = ScalarArray.empty_like(h, h.denominator)
        for k, p in enumerate(pos, start=1):
            term = h.take(idx ^ position_bit(p, n))
            acc = acc.accumulate(term, -1 if k & 1 else 1)
        hits = np.flatnonzero(acc.nonzero_mask())
        if hits.size == 0:
            continue
        a = min((int(h) for h in hits), key=lambda h: positions_of(h, n))
        if best is None or _witness_key(a, pos, n) < _witness_key(best[0], best[1], n):
            best = (a, pos, acc.scalar_at(a))
    if best is None:
        return MGIVerdict(True, evaluated=evaluated)
    return MGIVerdict(False, to_bits(best[0], n), best[1], str(best[2]), evaluated=evaluated)


def _check_mgi_sampled(s: BooleanSignature, samples: int, rng: np.random.Generator) -> MGIVerdict:
    n = s.arity
    size = 1 << n
    if n == 0:
        return MGIVerdict(True, mode='sampled')
    best: Optional[Tuple[int, Tuple[int, ...], Scalar]] = None
    for _ in range(samples):
        a = int(rng.integers(size))
        pmask = int(rng.integers(1, size))
        pos = positions_of(pmask, n)
        r = mgi_residual(s, a, pos)
        if not r.is_zero() and (best is None or _witness_key(a, pos, n) < _witness_key(best[0], best[1], n)):
            best = (a, pos, r)
    if best is None:
        return MGIVerdict(True, mode='sampled', evaluated=samples)
    return MGIVerdict(False, to_bits(best[0], n), best[1], str(best[2]),
                      mode='sampled', evaluated=samples)


# Block structure

def _block_tensor(view: BlockView) -> np.ndarray:
    return view.signature.to_array().reshape((1 << view.block_size,) * view.num_blocks)


def is_blockwise_symmetric(view: BlockView) -> SymmetryVerdict:
    """Invariance under adjacent block transpositions.

    Adjacent transpositions generate the symmetric group, so checking them is
    enough. The counterexample is the first mismatching index for the first
    failing transposition.
    """
    n = view.num_blocks
    if n < 2:
        return SymmetryVerdict(True)
    tensor = _block_tensor(view)
    for k in range(n - 1):
        swapped = np.swapaxes(tensor, k, k + 1)
        diff = (tensor != swapped).reshape(-1)
        hits = np.flatnonzero(diff.astype(bool))
        if hits.size:
            return SymmetryVerdict(False, (k + 1, k + 2), to_bits(int(hits[0]), view.arity))
    return SymmetryVerdict(True)


def matrix_form(view: BlockView) -> MatrixForm:
    l, n = view.block_size, view.num_blocks
    rows = 1 << l
    cols = 1 << ((n - 1) * l)
    return MatrixForm(view.signature.to_array().reshape(rows, cols), l, n)


def check_det_identities(view: BlockView) -> DetVerdict:
    """Check that the 2x2 minors forced by the matchgate structure vanish.

    Rows of every minor are block-1 values a and a + e_i + e_j (i < j). For
    family A the columns flip e_s in block 2 and e_t in block 3; for family B
    they flip e_s + e_t (s < t) in block 2. Every base index is tried.

    Raises:
        ShapeError: Fewer than three blocks.
    """
    n, l = view.num_blocks, view.block_size
    if n < 3:
        raise ShapeError("determinant identities need at least 3 blocks")
    size = 1 << view.arity
    arr = ScalarArray.from_scalars(view.signature.values)
    idx = np.arange(size, dtype=np.int64)
    evaluated = 0

    def minors():
        for i, j in combinations(range(1, l + 1), 2):
            rows = view.bit(1, i) | view.bit(1, j)
            for s in range(1, l + 1):
                for t in range(1, l + 1):
                    yield 'A', i, j, s, t, rows, view.bit(2, s) | view.bit(3, t)
        for i, j in combinations(range(1, l + 1), 2):
            rows = view.bit(1, i) | view.bit(1, j)
            for s, t in combinations(range(1, l + 1), 2):
                yield 'B', i, j, s, t, rows, view.bit(2, s) | view.bit(2, t)

    for family, i, j, s, t, rmask, cmask in minors():
        evaluated += size
        main = arr * arr.take(idx ^ rmask ^ cmask)
        cross = arr.take(idx ^ cmask) * arr.take(idx ^ rmask)
        det = main.accumulate(cross, -1)
        hits = np.flatnonzero(det.nonzero_mask())
        if hits.size:
            base = int(hits[0])
            return DetVerdict(False, family, to_bits(base, view.arity), i, j, s, t,
                              str(det.scalar_at(base)), evaluated)
    return DetVerdict(True, evaluated=evaluated)


def rows_independent(u: Sequence[Scalar], v: Sequence[Scalar]) -> bool:
    """Exact test that two rows span a 2-dimensional space (some 2x2 minor is nonzero)."""
    pivot = next((c for c, x in enumerate(u) if not x.is_zero()), None)
    if pivot is None:
        return False
    up, vp = u[pivot], v[pivot]
    return any(not (up * y - x * vp).is_zero() for x, y in zip(u, v))


def find_min_weight_pair(view: BlockView, same_parity: bool = False) -> Optional[MinPair]:
    """Independent row pair of M(Gamma) minimizing wt(sigma + tau).

    Ties are broken by lexicographic (sigma, tau). Returns None when no
    independent pair exists.
    """
    m = matrix_form(view).matrix
    l = view.block_size
    best: Optional[MinPair] = None
    for sigma, tau in combinations(range(1 << l), 2):
        if same_parity and parity(sigma) != parity(tau):
            continue
        w = weight(sigma ^ tau)
        if best is not None and w >= best.weight:
            continue
        if rows_independent(list(m[sigma]), list(m[tau])):
            best = MinPair(to_bits(sigma, l), to_bits(tau, l), w)
    return best


def condense(s: BooleanSignature, odd: bool) -> Tuple[Scalar, ...]:
    """Condensed vector g_a = G[a b] of an arity-(l+1) signature.

    ``b`` is p(a) for even gates and 1 - p(a) for odd gates.
    """
    if s.arity < 1:
        raise ShapeError("condensed signature needs arity at least 1")
    l = s.arity - 1
    out: List[Scalar] = []
    for a in range(1 << l):
        b = parity(a) ^ (1 if odd else 0)
        out.append(s.values[(a << 1) | b])
    return tuple(out)
