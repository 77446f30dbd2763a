"""
Tests for signature grids, Holant evaluation and the #CSP reduction.
"""

import numpy as np
import pytest

from holomatch.generators import exact_one_cycle_grid, random_grid, random_matchgate_grid
from holomatch.holant import (
    CSPInstance,
    GridVertex,
    SignatureGrid,
    csp_bruteforce,
    csp_to_holant,
    cycle_grid,
    exact_one,
    holant_bruteforce,
    holant_fkt,
    verify_holant_theorem,
)
from holomatch.holographic import DomainSignature, TransformMatrix, equality, hadamard
from holomatch.matchgate import Matchgate
from holomatch.scalar import Scalar
from holomatch.types import CapExceededError, MatchgateError, ShapeError

PLANTED = [[1, 0, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]]
NEQ = DomainSignature(2, 2, (0, 1, 1, 0))


def test_cycle_grids():
    """A 4-cycle of Exact-One has the two alternating assignments; equality has q constant ones."""
    assert holant_bruteforce(cycle_grid([exact_one(2)] * 4)) == 2
    assert holant_bruteforce(cycle_grid([equality(2, 2)] * 4)) == 2
    assert holant_bruteforce(cycle_grid([equality(3, 2)] * 6)) == 3
    with pytest.raises(ShapeError):
        cycle_grid([exact_one(2)] * 3)


def test_grid_validation():
    u = GridVertex("u", "U", exact_one(1))
    v = GridVertex("v", "V", exact_one(1))
    with pytest.raises(ShapeError):
        SignatureGrid(2, [u, u], [])
    with pytest.raises(ShapeError):
        SignatureGrid(2, [GridVertex("w", "W", exact_one(1))], [])
    with pytest.raises(ShapeError):
        SignatureGrid(3, [u, v], [("u", "v")])
    with pytest.raises(ShapeError):
        SignatureGrid(2, [u, GridVertex("u2", "U", exact_one(1))], [("u", "u2")])
    with pytest.raises(ShapeError):
        SignatureGrid(2, [u, v], [("u", "x")])
    with pytest.raises(ShapeError):
        SignatureGrid(2, [u, v], [("u", "v"), ("u", "v")])
    with pytest.raises(ShapeError):
        SignatureGrid(2, [u, v], [("u", "v")], orders={"u": [1]})


def test_edges_are_stored_u_first():
    grid = SignatureGrid(2, [GridVertex("u", "U", exact_one(1)), GridVertex("v", "V", exact_one(1))],
                         [("v", "u")])
    assert grid.edges == (("u", "v"),)
    assert len(grid.side("U")) == 1
    assert holant_bruteforce(grid) == 1


def test_arity0_vertices_multiply_in():
    grid = SignatureGrid(2, [
        GridVertex("u", "U", DomainSignature(2, 0, (Scalar(5),))),
        GridVertex("a", "U", exact_one(1)),
        GridVertex("b", "V", exact_one(1)),
    ], [("a", "b")])
    assert holant_bruteforce(grid) == 5


def test_holant_cap():
    with pytest.raises(CapExceededError):
        holant_bruteforce(cycle_grid([exact_one(2)] * 4), cap=4)


def test_holant_fkt_on_exact_one_cycle():
    grid, gates = exact_one_cycle_grid()
    assert holant_fkt(grid, gates) == 2


def test_holant_fkt_rejections():
    grid, gates = exact_one_cycle_grid()
    with pytest.raises(MatchgateError):
        holant_fkt(grid, {k: v for k, v in gates.items() if k != "v0"})
    wrong = dict(gates)
    wrong["v0"] = Matchgate(2, [(1, 2, 1)], [1, 2], {1: (2,), 2: (1,)})
    with pytest.raises(MatchgateError):
        holant_fkt(grid, wrong)
    with pytest.raises(ShapeError):
        holant_fkt(cycle_grid([equality(3, 2)] * 4), {})


def test_holant_fkt_matches_bruteforce_on_matchgate_grids():
    rng = np.random.default_rng(5)
    for _ in range(6):
        grid, gates = random_matchgate_grid(rng)
        assert holant_fkt(grid, gates) == holant_bruteforce(grid)


def test_holant_theorem_planted_matrix():
    """A rank-3 matrix with its right inverse leaves the q = 3 Holant unchanged."""
    grid = cycle_grid([equality(3, 2)] * 4)
    verdict = verify_holant_theorem(grid, TransformMatrix(PLANTED))
    assert verdict.passed
    assert verdict.left == verdict.right == "3"


def test_holant_theorem_tracked_scale():
    grid = cycle_grid([exact_one(2)] * 4)
    verdict = verify_holant_theorem(grid, hadamard(normalized=False))
    assert verdict.passed
    assert verdict.scale_correction == "1"


def test_holant_theorem_random_grids():
    rng = np.random.default_rng(2)
    for _ in range(5):
        grid = random_grid(rng, 2, max_edges=6)
        assert verify_holant_theorem(grid, hadamard()).passed


def test_holant_theorem_domain_mismatch():
    with pytest.raises(ShapeError):
        verify_holant_theorem(cycle_grid([exact_one(2)] * 4), TransformMatrix(PLANTED))


def test_csp_reduction():
    """Two variables that must differ: two solutions; an unused variable doubles them."""
    instance = CSPInstance(2, 2, ((NEQ, (0, 1)),))
    assert csp_bruteforce(instance) == 2
    assert holant_bruteforce(csp_to_holant(instance)) == 2
    spare = CSPInstance(2, 3, ((NEQ, (0, 1)),))
    assert csp_bruteforce(spare) == 4
    assert holant_bruteforce(csp_to_holant(spare)) == 4


def test_csp_repeated_argument():
    instance = CSPInstance(3, 1, ((equality(3, 2), (0, 0)),))
    assert csp_bruteforce(instance) == 3
    assert holant_bruteforce(csp_to_holant(instance)) == 3


def test_csp_validation():
    with pytest.raises(ShapeError):
        CSPInstance(2, 2, ((NEQ, (0,)),))
    with pytest.raises(ShapeError):
        CSPInstance(3, 2, ((NEQ, (0, 1)),))
    with pytest.raises(ShapeError):
        CSPInstance(2, 2, ((NEQ, (0, 2)),))
    with pytest.raises(CapExceededError):
        csp_bruteforce(CSPInstance(2, 3, ((NEQ, (0, 1)),)), cap=4)
