"""
Tests for matchgate construction, faces, surgery and signatures.
"""

import pytest

from holomatch.generators import gamma1_gate, grid_graph, rotation_from_coordinates
from holomatch.matchgate import (
    Matchgate,
    closed_scale_gate,
    compose,
    perfmatch_bruteforce,
    signature,
)
from holomatch.scalar import Scalar
from holomatch.signatures import from_bits
from holomatch.types import CapExceededError, MatchgateError, PlanarityError


def edge_gate(w=5):
    return Matchgate(2, [(1, 2, w)], [1, 2], {1: [2], 2: [1]})


def path_gate():
    return Matchgate(3, [(1, 2, 1), (2, 3, 1)], [1, 3], {1: (2,), 2: (1, 3), 3: (2,)})


def k4(flip=False):
    coords = {1: (0, 0), 2: (4, 0), 3: (2, 4), 4: (2, 1)}
    pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    rotation = rotation_from_coordinates(coords, pairs)
    if flip:
        rotation[4] = tuple(reversed(rotation[4]))
    return Matchgate(4, [(u, v, 1) for u, v in pairs], (), rotation)


def test_single_edge_signature():
    assert signature(edge_gate()).values == (Scalar(5), Scalar(0), Scalar(0), Scalar(1))


def test_path_is_exact_one():
    """Deleting either end leaves one edge; both or neither leave an odd or lone vertex."""
    assert signature(path_gate()).values == (Scalar(0), Scalar(1), Scalar(1), Scalar(0))


def test_constructor_rejects_malformed_graphs():
    with pytest.raises(MatchgateError):
        Matchgate(2, [(1, 1, 1)])
    with pytest.raises(MatchgateError):
        Matchgate(2, [(1, 2, 1), (2, 1, 3)])
    with pytest.raises(MatchgateError):
        Matchgate(2, [(1, 3, 1)])
    with pytest.raises(MatchgateError):
        Matchgate(2, [(1, 2, 1)], [1, 1])
    with pytest.raises(MatchgateError):
        Matchgate(2, [(1, 2, 1)], [4])
    with pytest.raises(MatchgateError):
        Matchgate(3, [(1, 2, 1), (2, 3, 1)], [], {1: (2,), 2: (1,), 3: (2,)})
    with pytest.raises(MatchgateError):
        Matchgate(-1, [])


def test_basic_queries():
    g = path_gate()
    assert g.arity == 2
    assert g.is_odd
    assert g.num_edges == 2
    assert g.degree(2) == 2
    assert g.weight(1, 3) == 0
    assert g.edges() == [(1, 2, Scalar(1)), (2, 3, Scalar(1))]
    assert "externals=[1, 3]" in repr(g)


def test_perfmatch_grids():
    """The 2 x 3 grid has 3 perfect matchings; a -1 middle rung leaves net 1."""
    assert perfmatch_bruteforce(grid_graph(2, 2)) == 2
    assert perfmatch_bruteforce(grid_graph(3, 2)) == 3
    assert perfmatch_bruteforce(grid_graph(3, 2, weights={(3, 4): -1})) == 1


def test_perfmatch_edge_cases():
    assert perfmatch_bruteforce(Matchgate(0, [])) == 1
    assert perfmatch_bruteforce(path_gate()) == 0
    assert perfmatch_bruteforce(Matchgate(2, [])) == 0
    assert perfmatch_bruteforce(closed_scale_gate("2 + 3i")) == Scalar.parse("2 + 3i")


def test_perfmatch_cap():
    with pytest.raises(CapExceededError):
        perfmatch_bruteforce(grid_graph(2, 2), cap=2)


def test_faces_and_euler():
    square = grid_graph(2, 2)
    faces = square.faces()
    assert len(faces) == 2
    assert sorted(len(f) for f in faces) == [4, 4]
    assert square.euler_characteristic() == 2
    assert square.is_plane()


def test_nonplanar_rotation_detected():
    assert k4().is_plane()
    bad = k4(flip=True)
    assert not bad.is_plane()
    with pytest.raises(PlanarityError):
        bad.check_planar()


def test_rotation_required_for_faces():
    with pytest.raises(MatchgateError):
        Matchgate(2, [(1, 2, 1)]).faces()


def test_components():
    g = Matchgate(4, [(1, 2, 1), (3, 4, 1)])
    assert g.components() == [frozenset({1, 2}), frozenset({3, 4})]


def test_external_cycle_order():
    g = grid_graph(3, 2, externals=[1, 2, 5, 6])
    order = g.external_cycle_order()
    assert sorted(order) == [1, 2, 5, 6]
    # consecutive corners along the boundary, never the diagonal pairs
    k = order.index(1)
    assert {order[(k + 1) % 4], order[(k - 1) % 4]} == {2, 5}


def test_attach_pendant_swaps_the_position():
    """A transferring pendant of weight w maps s to s'(0.) = w s(1.), s'(1.) = s(0.)."""
    g = edge_gate().attach_pendant(1, 3)
    assert g.externals == (3, 2)
    assert g.is_plane()
    assert signature(g).values == (Scalar(0), Scalar(3), Scalar(5), Scalar(0))


def test_attach_pendant_revoke():
    g = edge_gate().attach_pendant(1, 2, external="revoke")
    assert g.externals == (2,)
    assert signature(g).values == (Scalar(0), Scalar(2))


def test_attach_pendant_errors():
    with pytest.raises(MatchgateError):
        path_gate().attach_pendant(2)
    with pytest.raises(MatchgateError):
        path_gate().attach_pendant(1, external="sideways")


def test_delete_vertex_undoes_pendant():
    g = edge_gate()
    back = g.attach_pendant(1, 3).delete_vertex(3)
    assert back.externals == g.externals
    assert signature(back) == signature(g)
    with pytest.raises(MatchgateError):
        g.delete_vertex(9)


def test_attach_path2():
    g = edge_gate().attach_path2(1, 2, 3)
    assert g.num_vertices == 4
    assert g.externals == (4, 2)
    assert g.is_plane()
    # path 4-3-1-2 with weights 3, 2, 5: kept ends pick up w2, deleted ends w1
    assert signature(g).values == (Scalar(15), Scalar(0), Scalar(0), Scalar(2))
    internal = edge_gate().attach_path2(1, 1, 1, external="none")
    assert internal.arity == 1


def test_without_vertices_and_with_externals():
    g = grid_graph(2, 2, externals=[1, 2])
    sub = g.without_vertices([1])
    assert sub.num_vertices == 3
    assert sub.arity == 0
    assert g.with_externals([4, 3]).externals == (4, 3)


def test_mirrored_keeps_signature():
    g = gamma1_gate()
    m = g.mirrored()
    assert m.is_plane()
    assert signature(m) == signature(g)


def test_compose_two_edges():
    """Bridging two weight-5 edges gives a path whose full entry is 25."""
    g = compose(edge_gate(), edge_gate(), [(2, 1)])
    assert g.externals == (1, 4)
    assert g.is_plane()
    assert signature(g).values == (Scalar(25), Scalar(0), Scalar(0), Scalar(1))


def test_compose_without_pairs_is_tensor():
    a, b = edge_gate(2), edge_gate(3)
    g = compose(a, b)
    assert g.arity == 4
    assert signature(g) == signature(a).tensor(signature(b))


def test_compose_errors():
    with pytest.raises(MatchgateError):
        compose(edge_gate(), edge_gate(), [(1, 1), (1, 2)])
    with pytest.raises(MatchgateError):
        compose(path_gate(), edge_gate(), [(2, 1)])


def test_gamma1_face_order_signature():
    """Corners in face order: nonzero exactly on 0000, 0101, 1010 and 1111."""
    sig = signature(gamma1_gate())
    expected = {"0000": 1, "0101": 1, "1010": 1, "1111": -1}
    for alpha in range(16):
        bits = format(alpha, "04b")
        assert sig[alpha] == expected.get(bits, 0), bits
    assert sig[from_bits("1111")] == -1


def test_signature_methods_agree():
    g = gamma1_gate()
    assert signature(g, method="fkt") == signature(g)
    with pytest.raises(ValueError):
        signature(g, method="guess")


def test_closed_scale_gate():
    sig = signature(closed_scale_gate(7))
    assert sig.arity == 0
    assert sig.values == (Scalar(7),)
