"""
Tests for the invariant checking system.
"""

import pytest

from holomatch.decompose import block_expand
from holomatch.generators import star_core
from holomatch.holographic import TransformMatrix, equality, transform
from holomatch.invariants import (
    InvariantChecker,
    blockwise_symmetry,
    create_invariant,
    determinant_identities,
    matchgate_identities,
    parity_condition,
    rank_at_most,
    standard_invariants,
)
from holomatch.matchgate import Matchgate, signature
from holomatch.signatures import BlockView, BooleanSignature

PLANTED = [[1, 0, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]]


def star_view():
    gadget = Matchgate(2, [(1, 2, 3)], [1, 2], {1: (2,), 2: (1,)})
    return BlockView(signature(block_expand(star_core(3, 2), gadget)), 1)


def test_standard_invariants_pass_on_matchgate():
    """A block-expanded star passes every built-in check."""
    checker = InvariantChecker(standard_invariants())
    assert checker.check(star_view()) == []
    summary = checker.get_summary()
    assert summary['total_checks'] == 5
    assert summary['total_violations'] == 0


def test_planted_transform_violations():
    """The rank-3 transform of (=3) breaks parity, the rank bound and the determinant identities."""
    view = transform(equality(3, 3), TransformMatrix(PLANTED))
    checker = InvariantChecker([parity_condition(), blockwise_symmetry(), rank_at_most(2),
                                determinant_identities()])
    violations = checker.check(view)
    assert violations == ['parity', 'rank_at_most_2', 'det_identities']


def test_mgi_invariant():
    checker = InvariantChecker([matchgate_identities()])
    eq4 = BlockView(BooleanSignature(4, equality(2, 4).values), 2)
    assert checker.check(eq4) == ['mgi']
    assert checker.invariants[0].violations == 1


def test_det_identities_vacuous_below_three_blocks():
    eq4 = BlockView(BooleanSignature(4, equality(2, 4).values), 2)
    assert InvariantChecker([determinant_identities()]).check(eq4) == []


def test_custom_invariant_and_summary():
    @create_invariant(name="nonzero", severity="warning")
    def nonzero(view):
        return not view.signature.is_zero()

    checker = InvariantChecker([nonzero])
    checker.check(star_view())
    checker.check(BlockView(BooleanSignature.zero(3), 1))
    summary = checker.get_summary()
    entry = summary['invariants'][0]
    assert entry['name'] == "nonzero"
    assert entry['checks'] == 2
    assert entry['violations'] == 1
    assert entry['violation_rate'] == 0.5

    checker.reset()
    assert checker.get_summary()['total_checks'] == 0


def test_raising_check_counts_as_violation():
    @create_invariant(name="explodes")
    def explodes(view):
        raise ValueError("boom")

    assert InvariantChecker([explodes]).check(star_view()) == ["explodes"]


def test_critical_invariant_raises():
    @create_invariant(name="never", severity="critical")
    def never(view):
        return False

    with pytest.raises(RuntimeError, match="never"):
        InvariantChecker([never]).check(star_view())
