"""
Structure of blockwise symmetric matchgate signatures.

For n >= 3 blocks the matrix form of such a signature has rank at most 2,
and the signature factors through a condensed vector g of length 2^l:

* rank 2: G[a_1..a_n] = c * g[a_1] ... g[a_n] * core[p(a_1) .. p(a_n)] with a
  bitwise symmetric arity-n core;
* rank 1: G[a_1..a_n] = c * g[a_1] ... g[a_n] * base, where ``base`` is the
  normalized entry at (beta_1, ..., beta_1).

``c`` is stored explicitly, so reconstruction is exact. The witness builders
turn the source matchgate into gates realizing g and the core by pendant
edges, length-2 paths and re-selection of external nodes.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .linalg import exact_rank
from .matchgate import Matchgate, closed_scale_gate, compose, signature
from .scalar import ONE, ZERO, Scalar, ScalarLike, as_scalar
from .signatures import (
    BlockView,
    BooleanSignature,
    check_mgi,
    check_parity,
    check_parity_same,
    condense,
    from_bits,
    is_blockwise_symmetric,
    matrix_form,
    parity,
    rows_independent,
    to_bits,
    weight,
)
from .types import Bits, MatchgateError, PreconditionError, RankError, ShapeError


@dataclass(frozen=True)
class CondensedSignature:
    """Vector g of 2^l Scalars indexed by a in {0,1}^l."""
    block_size: int
    values: Tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if len(self.values) != 1 << self.block_size:
            raise ShapeError(f"condensed signature of block size {self.block_size} needs "
                             f"{1 << self.block_size} entries")

    def __getitem__(self, a: Union[int, str]) -> Scalar:
        return self.values[from_bits(a) if isinstance(a, str) else a]


def condensed_signature(gate: Matchgate) -> CondensedSignature:
    """g_a = G[a b], b = p(a) for even gates and 1 - p(a) for odd gates."""
    if gate.arity < 1:
        raise ShapeError("condensed signature needs an arity-(l+1) gate with l >= 0")
    return CondensedSignature(gate.arity - 1, condense(signature(gate), gate.is_odd))


@dataclass(frozen=True)
class Decomposition:
    """Product form of a blockwise symmetric matchgate signature.

    Attributes:
        rank: Rank class of the matrix form (0, 1 or 2)
        block_size: l
        num_blocks: n
        scalar: Global normalization c
        g: Condensed vector (rank 1 and 2)
        core: Arity-n core indexed by block parities; for rank 1 it has one
            nonzero entry, ``base_value`` at p(beta_1)^n
        theta, eta: Rank-2 pivot rows, wt(theta + eta) = 1
        gamma: Rank-2 pivot column (blocks 2..n concatenated)
        shift: Rank-2 bit position t inside block 2 (1-based)
        ratio: Rank-2 r, normalized entry at (eta, gamma + e_t)
        base_index: Rank-1 nonzero entry beta_1..beta_n
        base_block: Rank-1 beta_1
        base_value: Rank-1 normalized entry at (beta_1, ..., beta_1)
    """
    rank: int
    block_size: int
    num_blocks: int
    scalar: Scalar = ONE
    g: Optional[CondensedSignature] = None
    core: Optional[BooleanSignature] = None
    theta: Optional[Bits] = None
    eta: Optional[Bits] = None
    gamma: Optional[Bits] = None
    shift: Optional[int] = None
    ratio: Optional[Scalar] = None
    base_index: Optional[Bits] = None
    base_block: Optional[Bits] = None
    base_value: Optional[Scalar] = None


def certify(view: BlockView, mgi_samples: Optional[int] = None) -> None:
    """Raise PreconditionError unless ``view`` passes parity, MGI and blockwise symmetry."""
    par = check_parity(view.signature)
    if not par.passed:
        raise PreconditionError(f"parity condition violated at {par.even_witness}/{par.odd_witness}")
    mgi = check_mgi(view.signature, samples=mgi_samples)
    if not mgi.passed:
        raise PreconditionError(
            f"matchgate identity fails at alpha={mgi.alpha}, P={list(mgi.positions or ())}"
        )
    sym = is_blockwise_symmetric(view)
    if not sym.passed:
        raise PreconditionError(f"not blockwise symmetric: swap {sym.swap} at {sym.index}")


def decompose(view: BlockView, check: bool = True, mgi_samples: Optional[int] = None) -> Decomposition:
    """Decompose a certified blockwise symmetric matchgate signature.

    Args:
        view: Signature with its block size
        check: Run the parity/MGI/symmetry certificate first
        mgi_samples: Use sampled MGI in the certificate

    Raises:
        PreconditionError: The certificate fails.
        RankError: Matrix-form rank is 3 or more.
        ShapeError: Fewer than three blocks.
    """
    if check:
        certify(view, mgi_samples)
    m = matrix_form(view).matrix
    rank = exact_rank(m)
    n, l = view.num_blocks, view.block_size
    if rank >= 3:
        hint = " (fewer than 3 blocks: the rank bound does not apply)" if n < 3 else ""
        raise RankError(f"matrix-form rank {rank} is not admissible for a decomposition{hint}")
    if n < 3:
        raise ShapeError("decomposition needs at least 3 blocks")
    if rank == 0:
        return Decomposition(0, l, n, scalar=ZERO)
    if rank == 1:
        return _decompose_rank1(view, m)
    return _decompose_rank2(view, m)


def _decompose_rank1(view: BlockView, m) -> Decomposition:
    n, l = view.num_blocks, view.block_size
    sig = view.signature
    beta = next(k for k, v in enumerate(sig.values) if not v.is_zero())
    c = sig.values[beta]
    inv = c.inverse()
    blocks = view.split(beta)
    col = beta & ((1 << ((n - 1) * l)) - 1)
    g = tuple(m[a, col] * inv for a in range(1 << l))
    b1 = blocks[0]
    base_value = sig.values[view.join([b1] * n)] * inv
    core_index = (1 << n) - 1 if parity(b1) else 0
    core = BooleanSignature.from_entries(n, {core_index: base_value})
    return Decomposition(
        1, l, n, scalar=c, g=CondensedSignature(l, g), core=core,
        base_index=to_bits(beta, view.arity), base_block=to_bits(b1, l), base_value=base_value,
    )


def _find_pivot(view: BlockView, m) -> Tuple[int, int, int, int]:
    """Lexicographically first (theta, eta, gamma, t) with a diagonal 2x2 pivot."""
    n, l = view.num_blocks, view.block_size
    width = (n - 1) * l
    rows = 1 << l
    for theta, eta in combinations(range(rows), 2):
        if weight(theta ^ eta) != 1:
            continue
        if not rows_independent(list(m[theta]), list(m[eta])):
            continue
        for gamma in range(1 << width):
            if m[theta, gamma].is_zero():
                continue
            for t in range(1, l + 1):
                if not m[eta, gamma ^ (1 << (width - t))].is_zero():
                    return theta, eta, gamma, t
    raise PreconditionError("no weight-1 pivot pair found; input is not a matchgate signature")


def _decompose_rank2(view: BlockView, m) -> Decomposition:
    n, l = view.num_blocks, view.block_size
    width = (n - 1) * l
    theta, eta, gamma, t = _find_pivot(view, m)
    shifted = gamma ^ (1 << (width - t))
    c = m[theta, gamma]
    inv = c.inverse()
    r = m[eta, shifted] * inv
    r_inv = r.inverse()
    g = []
    for a in range(1 << l):
        if parity(a) == parity(theta):
            g.append(m[a, gamma] * inv)
        else:
            g.append(m[a, shifted] * inv * r_inv)
    sig = view.signature
    core_values = []
    for j in range(1 << n):
        blocks = [theta if parity(theta) == (j >> (n - 1 - k)) & 1 else eta for k in range(n)]
        core_values.append(sig.values[view.join(blocks)] * inv)
    return Decomposition(
        2, l, n, scalar=c, g=CondensedSignature(l, tuple(g)),
        core=BooleanSignature(n, tuple(core_values)),
        theta=to_bits(theta, l), eta=to_bits(eta, l), gamma=to_bits(gamma, width),
        shift=t, ratio=r,
    )


def reconstruct(d: Decomposition, blocks: Sequence[Union[int, str]]) -> Scalar:
    """Evaluate the product form at one index given as its n blocks.

    Raises:
        ShapeError: Block count or block width does not match ``d``.
    """
    if len(blocks) != d.num_blocks:
        raise ShapeError(f"expected {d.num_blocks} blocks, got {len(blocks)}")
    vals = []
    for b in blocks:
        if isinstance(b, str):
            if len(b) != d.block_size:
                raise ShapeError(f"block {b!r} does not have width {d.block_size}")
            b = from_bits(b)
        elif not 0 <= b < 1 << d.block_size:
            raise ShapeError(f"block value {b} does not fit in {d.block_size} bits")
        vals.append(b)
    if d.rank == 0:
        return ZERO
    assert d.g is not None
    total = d.scalar
    for b in vals:
        x = d.g[b]
        if x.is_zero():
            return ZERO
        total = total * x
    if d.rank == 1:
        assert d.base_value is not None
        return total * d.base_value
    assert d.core is not None
    j = 0
    for b in vals:
        j = (j << 1) | parity(b)
    return total * d.core.values[j]


def reconstruct_signature(d: Decomposition) -> BooleanSignature:
    """Full sweep of ``reconstruct`` over {0,1}^(n*l)."""
    arity = d.num_blocks * d.block_size
    layout = BlockView(BooleanSignature.zero(arity), d.block_size)
    return BooleanSignature(arity, tuple(reconstruct(d, layout.split(k)) for k in range(1 << arity)))


def check_rank1_core(d: Decomposition, view: BlockView) -> bool:
    """Rank-1 shape check without extracting an n-th root.

    Every block of every nonzero entry has the parity of beta_1, each nonzero
    entry equals the g-product times the base value, and the core is
    supported on p(beta_1)^n only.
    """
    if d.rank != 1 or d.core is None or d.base_block is None:
        return False
    if not check_parity_same(view):
        return False
    p = parity(from_bits(d.base_block))
    expected_core = (1 << d.num_blocks) - 1 if p else 0
    if any(not v.is_zero() for k, v in enumerate(d.core.values) if k != expected_core):
        return False
    for k, v in enumerate(view.signature.values):
        if v.is_zero():
            continue
        blocks = view.split(k)
        if any(parity(b) != p for b in blocks):
            return False
        if reconstruct(d, blocks) != v:
            return False
    return True


def _require_realizes(gate: Matchgate, view: BlockView) -> List[int]:
    if gate.arity != view.arity or signature(gate) != view.signature:
        raise MatchgateError("gate does not realize the given signature")
    return list(gate.externals)


def condensed_witness(
    g_source: Matchgate,
    view: BlockView,
    d: Decomposition,
    mode: str = "rank2",
    check: bool = True,
) -> Matchgate:
    """Arity-(l+1) matchgate whose condensed signature is ``d.g``.

    ``mode='rank2'`` fixes blocks 2..n to the pivot column gamma (pendant
    edges on its 1-bits), replaces bit t of block 2 by a length-2 path with
    weights (r^-1, 1) or (1, r^-1), and keeps block 1 plus the path's far
    end as externals. ``mode='rank1'`` moves the external status of the
    1-bits of beta_2..beta_n onto pendant vertices and keeps block 1 plus
    the first external of block 2. A disjoint edge of weight 1/c absorbs the
    global scalar.

    Raises:
        PreconditionError: ``d`` has the wrong rank for ``mode``.
        MatchgateError: ``g_source`` does not realize ``view``.
    """
    l = view.block_size
    if mode == "rank2":
        if d.rank != 2:
            raise PreconditionError("rank-2 witness needs a rank-2 decomposition; use mode='rank1'")
    elif mode == "rank1":
        if d.rank != 1:
            raise PreconditionError("rank-1 witness needs a rank-1 decomposition")
    else:
        raise ValueError(f"unknown witness mode {mode!r}")
    ext = _require_realizes(g_source, view) if check else list(g_source.externals)

    gate = g_source
    if mode == "rank2":
        assert d.theta is not None and d.gamma is not None and d.shift is not None and d.ratio is not None
        ref = d.theta + d.gamma
        path_pos = l + d.shift
        for pos in range(l + 1, view.arity + 1):
            if pos != path_pos and ref[pos - 1] == "1":
                gate = gate.attach_pendant(ext[pos - 1], ONE, external="revoke")
        r_inv = d.ratio.inverse()
        w1, w2 = (r_inv, ONE) if ref[path_pos - 1] == "0" else (ONE, r_inv)
        gate = gate.attach_path2(ext[path_pos - 1], w1, w2, external="far")
        port = gate.num_vertices
    else:
        assert d.base_index is not None
        port = ext[l]
        for pos in range(l + 1, view.arity + 1):
            if d.base_index[pos - 1] == "1":
                gate = gate.attach_pendant(ext[pos - 1], ONE, external="transfer")
                if pos == l + 1:
                    port = gate.num_vertices
    gate = gate.with_externals(ext[:l] + [port])
    return compose(gate, closed_scale_gate(d.scalar.inverse()))


def core_witness(g_source: Matchgate, d: Decomposition, check: bool = True) -> Matchgate:
    """Arity-n matchgate whose signature is the rank-2 core ``d.core``.

    Pendant edges on the 1-bits of theta in every block pin each block to
    theta; the s-th external of each block, s the bit where theta and eta
    differ, stays external and toggles the block between theta and eta. When
    p(theta) = 1 one more pendant per kept external re-indexes the core by
    parity.

    Raises:
        PreconditionError: ``d`` is not rank 2.
    """
    if d.rank != 2:
        raise PreconditionError("core witness needs a rank-2 decomposition; rank-1 cores are "
                                "checked with check_rank1_core")
    assert d.theta is not None and d.eta is not None and d.core is not None
    l, n = d.block_size, d.num_blocks
    if check:
        arity = n * l
        if g_source.arity != arity:
            raise MatchgateError("gate does not realize the decomposed signature")
        ext = _require_realizes(g_source, BlockView(reconstruct_signature(d), l))
    else:
        ext = list(g_source.externals)
    theta = d.theta
    s = next(i for i in range(1, l + 1) if theta[i - 1] != d.eta[i - 1])
    gate = g_source
    kept: List[int] = []
    for k in range(n):
        keep = ext[k * l + s - 1]
        for i in range(1, l + 1):
            if theta[i - 1] == "1":
                gate = gate.attach_pendant(ext[k * l + i - 1], ONE, external="transfer")
                if i == s:
                    keep = gate.num_vertices
        kept.append(keep)
    gate = gate.with_externals(kept)
    if parity(from_bits(theta)):
        for v in kept:
            gate = gate.attach_pendant(v, ONE, external="transfer")
    return compose(gate, closed_scale_gate(d.scalar.inverse()))


def block_expand(core: Matchgate, gadget: Matchgate) -> Matchgate:
    """Attach one gadget copy to every core external via its last external (the port).

    The result's externals are copy 1's remaining externals, then copy 2's,
    and so on, so its signature is blockwise symmetric with block size
    ``gadget.arity - 1`` whenever the core is bitwise symmetric.

    Raises:
        MatchgateError: The gadget has no external besides its port.
        PlanarityError: A composition step breaks planarity.
    """
    if gadget.arity < 2:
        raise MatchgateError("gadget needs at least one external besides its port")
    port = gadget.externals[-1]
    gate = core
    blocks: List[int] = []
    for c in core.externals:
        offset = gate.num_vertices
        gate = compose(gate, gadget, [(c, port)])
        blocks += [x + offset for x in gadget.externals[:-1]]
    return gate.with_externals(blocks)


def pendant_core_gate(value_parity: int, n: int, weight: ScalarLike = 1) -> Matchgate:
    """Disjoint union of n one-external gadgets realizing (w, 0)^n or (0, w)^n.

    (w, 0) is an external node with one pendant edge of weight w; (0, w) is
    a path x - a - b with weights 1 and w, x external.
    """
    w = as_scalar(weight)
    if value_parity == 0:
        unit = Matchgate(2, [(1, 2, w)], [1], {1: (2,), 2: (1,)})
    elif value_parity == 1:
        unit = Matchgate(3, [(1, 2, ONE), (2, 3, w)], [1], {1: (2,), 2: (1, 3), 3: (2,)})
    else:
        raise ValueError("value_parity must be 0 or 1")
    gate = unit
    for _ in range(n - 1):
        gate = compose(gate, unit)
    return gate
