"""
Tests for signature certificates: parity, matchgate identities, block
symmetry, matrix forms, determinant identities and minimum-weight pairs.
"""

import numpy as np
import pytest

from holomatch.generators import GAMMA1_ORDERS, gamma1_gate, random_matchgate
from holomatch.holographic import TransformMatrix, equality, hadamard, transform
from holomatch.matchgate import signature
from holomatch.scalar import Scalar
from holomatch.signatures import (
    BlockView,
    BooleanSignature,
    check_det_identities,
    check_mgi,
    check_parity,
    check_parity_same,
    condense,
    find_min_weight_pair,
    from_bits,
    is_blockwise_symmetric,
    matrix_form,
    mgi_residual,
    positions_of,
    to_bits,
)
from holomatch.types import CapExceededError, ShapeError

PLANTED = [[1, 0, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]]


def eq4():
    return BooleanSignature(4, equality(2, 4).values)


def test_bit_helpers():
    """Position 1 is the most significant bit."""
    assert to_bits(8, 4) == "1000"
    assert from_bits("0101") == 5
    assert to_bits(0, 0) == ""
    assert positions_of(from_bits("1010"), 4) == (1, 3)
    with pytest.raises(ShapeError):
        from_bits("012")


def test_signature_construction():
    s = BooleanSignature.from_entries(2, {"00": 5, "11": 1})
    assert s["00"] == 5 and s[3] == 1 and s["01"] == 0
    assert list(s.nonzero_items()) == [("00", Scalar(5)), ("11", Scalar(1))]
    assert BooleanSignature.zero(3).is_zero()
    with pytest.raises(ShapeError):
        BooleanSignature(2, (1, 2, 3))
    with pytest.raises(ShapeError):
        s["000"]


def test_signature_algebra():
    s = BooleanSignature(1, (1, 2))
    assert (s + s).values == (Scalar(2), Scalar(4))
    assert s.scaled(3).values == (Scalar(3), Scalar(6))
    assert s.tensor(BooleanSignature(1, (0, 1))).values == (0, 1, 0, 2)
    with pytest.raises(ShapeError):
        s + BooleanSignature.zero(2)


def test_parity_kinds():
    assert check_parity(eq4()).kind == "even"
    assert check_parity(BooleanSignature(2, (0, 1, 1, 0))).kind == "odd"
    assert check_parity(BooleanSignature.zero(2)).kind == "zero"
    verdict = check_parity(BooleanSignature(2, (1, 1, 0, 0)))
    assert not verdict.passed
    assert (verdict.even_witness, verdict.odd_witness) == ("00", "01")
    assert verdict.to_dict()["kind"] == "violated"


def test_equality4_fails_mgi_at_first_witness():
    """(=4) first fails at alpha = 1000 on the full position set with residual -1."""
    verdict = check_mgi(eq4())
    assert not verdict.passed
    assert verdict.alpha == "1000"
    assert verdict.positions == (1, 2, 3, 4)
    assert verdict.residual == "-1"
    assert mgi_residual(eq4(), "1000", (1, 2, 3, 4)) == -1


def test_equality3_fails_and_hadamard_image_passes():
    """(=3) mixes parities; its Hadamard image is even and satisfies every identity."""
    eq3 = BooleanSignature(3, equality(2, 3).values)
    assert not check_parity(eq3).passed
    assert not check_mgi(eq3).passed
    image = transform(equality(2, 3), hadamard(normalized=False)).signature
    assert check_parity(image).kind == "even"
    assert check_mgi(image).passed


def test_mgi_on_matchgate_signatures():
    rng = np.random.default_rng(3)
    for arity in range(1, 6):
        gate = random_matchgate(rng, arity, max_vertices=8)
        assert check_mgi(signature(gate)).passed


def test_mgi_cap_and_sampling():
    s = BooleanSignature.zero(6)
    with pytest.raises(CapExceededError):
        check_mgi(s, cap=4)
    verdict = check_mgi(eq4(), samples=2000, rng=np.random.default_rng(0))
    assert verdict.mode == "sampled"
    assert not verdict.passed
    assert check_mgi(BooleanSignature.zero(0)).passed


def test_mgi_residual_position_errors():
    with pytest.raises(ShapeError):
        mgi_residual(eq4(), 0, ())
    with pytest.raises(ShapeError):
        mgi_residual(eq4(), 0, (2, 1))
    with pytest.raises(ShapeError):
        mgi_residual(eq4(), 0, (1, 5))


def test_block_view():
    view = BlockView(BooleanSignature.zero(6), 2)
    assert view.num_blocks == 3
    assert view.split(from_bits("100111")) == (2, 1, 3)
    assert view.join((2, 1, 3)) == from_bits("100111")
    assert view.bit(2, 1) == from_bits("001000")
    with pytest.raises(ShapeError):
        BlockView(BooleanSignature.zero(5), 2)
    with pytest.raises(ShapeError):
        view.join((4, 0, 0))


def test_blockwise_symmetry():
    assert is_blockwise_symmetric(BlockView(eq4(), 2)).passed
    asym = BooleanSignature.from_entries(4, {"0100": 1})
    verdict = is_blockwise_symmetric(BlockView(asym, 2))
    assert not verdict.passed
    assert verdict.swap == (1, 2)
    assert verdict.index == "0001"


def test_matrix_form_shape_and_rank():
    view = BlockView(eq4(), 2)
    m = matrix_form(view)
    assert m.shape == (4, 4)
    assert m.rank() == 2
    assert m.row("11")[3] == 1
    assert m == matrix_form(view)


def test_gamma1_reference_order_fails_mgi():
    """Reading order of the corners gives a vector that is not a matchgate signature."""
    face = signature(gamma1_gate())
    reading = signature(gamma1_gate(GAMMA1_ORDERS["reading"]))
    assert check_mgi(face).passed
    assert not check_mgi(reading).passed
    assert is_blockwise_symmetric(BlockView(face, 2)).passed
    assert matrix_form(BlockView(face, 2)).rank() == 4


def test_planted_rank3_transform_breaks_det_identities():
    view = transform(equality(3, 3), TransformMatrix(PLANTED))
    verdict = check_det_identities(view)
    assert not verdict.passed
    assert verdict.family == "A"
    assert verdict.base == "000000"
    assert (verdict.i, verdict.j, verdict.s, verdict.t) == (1, 2, 1, 1)
    assert verdict.determinant == "1"
    assert matrix_form(view).rank() == 3


def test_det_identities_hold_on_equality_image():
    view = BlockView(BooleanSignature(6, equality(2, 6).values), 2)
    assert check_det_identities(view).passed
    with pytest.raises(ShapeError):
        check_det_identities(BlockView(eq4(), 2))


def test_min_weight_pair_on_gamma1():
    view = BlockView(signature(gamma1_gate()), 2)
    pair = find_min_weight_pair(view)
    assert pair is not None and pair.weight == 1
    same = find_min_weight_pair(view, same_parity=True)
    assert same is not None and same.weight == 2
    assert find_min_weight_pair(BlockView(BooleanSignature.zero(4), 2)) is None


def test_parity_same_and_condense():
    assert check_parity_same(BlockView(eq4(), 2))
    assert not check_parity_same(BlockView(BooleanSignature.from_entries(4, {"0100": 1}), 2))
    s = BooleanSignature(2, (5, 0, 0, 1))
    assert condense(s, odd=False) == (Scalar(5), Scalar(1))
    assert condense(BooleanSignature(2, (0, 1, 1, 0)), odd=True) == (Scalar(1), Scalar(1))
