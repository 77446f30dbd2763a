"""
Tests for the decomposition of blockwise symmetric matchgate signatures and
the gadget surgeries that realize its factors.
"""

import numpy as np
import pytest

from holomatch.decompose import (
    CondensedSignature,
    block_expand,
    check_rank1_core,
    condensed_signature,
    condensed_witness,
    core_witness,
    decompose,
    pendant_core_gate,
    reconstruct,
    reconstruct_signature,
)
from holomatch.generators import CORE_RANKS, random_block_symmetric_gate, random_gadget, star_core
from holomatch.holographic import TransformMatrix, equality, transform
from holomatch.matchgate import Matchgate, signature
from holomatch.scalar import Scalar
from holomatch.signatures import BlockView, BooleanSignature
from holomatch.types import MatchgateError, PreconditionError, RankError, ShapeError

PLANTED = [[1, 0, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]]


def edge_gadget(w=3):
    return Matchgate(2, [(1, 2, w)], [1, 2], {1: (2,), 2: (1,)})


def expanded(core):
    gate = block_expand(core, edge_gadget())
    return gate, BlockView(signature(gate), 1)


def test_condensed_signature_of_small_gates():
    assert condensed_signature(edge_gadget(5)).values == (Scalar(5), Scalar(1))
    path = Matchgate(3, [(1, 2, 1), (2, 3, 1)], [1, 3], {1: (2,), 2: (1, 3), 3: (2,)})
    assert condensed_signature(path).values == (Scalar(1), Scalar(1))
    with pytest.raises(ShapeError):
        CondensedSignature(2, (1, 2))


def test_block_expand_of_star():
    """Each kept end contributes the gadget weight 3; the star contributes 2 on weight-2 inputs."""
    gate, view = expanded(star_core(3, 2))
    expected = BooleanSignature.from_entries(3, {"011": 6, "101": 6, "110": 6})
    assert view.signature == expected
    with pytest.raises(MatchgateError):
        block_expand(star_core(3), Matchgate(1, [], [1]))


def test_rank2_decomposition_fields():
    gate, view = expanded(star_core(3, 2))
    d = decompose(view)
    assert d.rank == 2
    assert d.scalar == 6
    assert (d.theta, d.eta, d.gamma, d.shift) == ("0", "1", "11", 1)
    assert d.ratio == 1
    assert d.g.values == (Scalar(1), Scalar(1))
    assert d.core == BooleanSignature.from_entries(3, {"011": 1, "101": 1, "110": 1})
    assert reconstruct_signature(d) == view.signature
    assert reconstruct(d, ["1", "1", "0"]) == 6


def test_rank2_witnesses():
    gate, view = expanded(star_core(3, 2))
    d = decompose(view)
    assert condensed_signature(condensed_witness(gate, view, d)).values == d.g.values
    assert signature(core_witness(gate, d)) == d.core


def test_rank1_decomposition():
    gate, view = expanded(pendant_core_gate(0, 3))
    assert view.signature == BooleanSignature.from_entries(3, {"000": 27})
    d = decompose(view)
    assert d.rank == 1
    assert d.scalar == 27
    assert (d.base_index, d.base_block, d.base_value) == ("000", "0", Scalar(1))
    assert d.g.values == (Scalar(1), Scalar(0))
    assert reconstruct_signature(d) == view.signature
    assert check_rank1_core(d, view)
    assert condensed_signature(condensed_witness(gate, view, d, mode="rank1")).values == d.g.values


def test_rank0_decomposition():
    d = decompose(BlockView(BooleanSignature.zero(6), 2))
    assert d.rank == 0
    assert reconstruct(d, [0, 1, 3]) == 0
    assert reconstruct_signature(d).is_zero()


def test_decompose_rejections():
    planted = transform(equality(3, 3), TransformMatrix(PLANTED))
    with pytest.raises(PreconditionError):
        decompose(planted)
    with pytest.raises(RankError):
        decompose(planted, check=False)
    eq4 = BlockView(BooleanSignature(4, equality(2, 4).values), 2)
    with pytest.raises(ShapeError):
        decompose(eq4, check=False)


def test_reconstruct_shape_errors():
    _, view = expanded(star_core(3, 2))
    d = decompose(view)
    with pytest.raises(ShapeError):
        reconstruct(d, ["1", "1"])
    with pytest.raises(ShapeError):
        reconstruct(d, ["10", "1", "1"])
    with pytest.raises(ShapeError):
        reconstruct(d, [2, 0, 0])


def test_witness_preconditions():
    gate, view = expanded(pendant_core_gate(0, 3))
    d1 = decompose(view)
    with pytest.raises(PreconditionError):
        condensed_witness(gate, view, d1, mode="rank2")
    with pytest.raises(PreconditionError):
        core_witness(gate, d1)
    with pytest.raises(ValueError):
        condensed_witness(gate, view, d1, mode="rank3")
    other, _ = expanded(star_core(3, 2))
    with pytest.raises(MatchgateError):
        condensed_witness(other, view, d1, mode="rank1")


def test_pendant_core_gate():
    assert signature(pendant_core_gate(1, 2, 5)).values == (0, 0, 0, 25)
    assert signature(pendant_core_gate(0, 2, 5)).values == (25, 0, 0, 0)
    with pytest.raises(ValueError):
        pendant_core_gate(2, 2)


@pytest.mark.parametrize("kind", ["star", "triangle", "pendant-even", "pendant-odd", "zero"])
def test_random_block_symmetric_gates_reconstruct(kind):
    """Every core kind expands to a signature the product form reproduces exactly."""
    rng = np.random.default_rng(11)
    for _ in range(3):
        gate, view = random_block_symmetric_gate(rng, 3, 2, kind=kind)
        d = decompose(view)
        assert d.rank == CORE_RANKS[kind]
        assert reconstruct_signature(d) == view.signature
        if d.rank == 2:
            assert condensed_signature(condensed_witness(gate, view, d)).values == d.g.values
        elif d.rank == 1:
            assert check_rank1_core(d, view)


def test_random_block_symmetric_gates_cover_both_nonzero_ranks():
    rng = np.random.default_rng(11)
    ranks = {0: 0, 1: 0, 2: 0}
    for trial in range(40):
        _, view = random_block_symmetric_gate(rng, 3 + trial % 2, 1)
        ranks[decompose(view).rank] += 1
    assert ranks[2] >= 8
    assert ranks[1] >= 6
    assert ranks[0] < ranks[1]


def test_random_gadget_is_nonzero_on_both_port_values():
    rng = np.random.default_rng(5)
    for block_size in (1, 2, 3):
        gadget = random_gadget(rng, block_size)
        ports = {bits[-1] for bits, _ in signature(gadget).nonzero_items()}
        assert ports == {"0", "1"}

