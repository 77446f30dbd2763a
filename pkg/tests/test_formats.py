"""
Tests for the line-based text formats.
"""

import pytest

from holomatch.decompose import block_expand, decompose
from holomatch.formats import (
    dump_decomposition,
    dump_domain_signature,
    dump_matchgate,
    dump_matrix,
    dump_signature,
    load_grid,
    load_matchgate,
    parse_any_signature,
    parse_decomposition,
    parse_domain_signature,
    parse_grid,
    parse_matchgate,
    parse_matrix,
    parse_signature,
)
from holomatch.generators import gamma1_gate, star_core
from holomatch.holant import holant_bruteforce
from holomatch.holographic import hadamard
from holomatch.matchgate import Matchgate, signature
from holomatch.scalar import INV_SQRT2, Scalar
from holomatch.signatures import BlockView
from holomatch.types import MatchgateError, ShapeError

GATE_TEXT = """\
# one weighted edge
nodes 2
edge 1 2 1/2 - 3i
external 1 2
rot 1: 2
rot 2: 1
"""


def test_parse_matchgate():
    gate = parse_matchgate(GATE_TEXT)
    assert gate.num_vertices == 2
    assert gate.weight(1, 2) == Scalar.parse("1/2 - 3i")
    assert gate.externals == (1, 2)
    assert gate.has_rotation


def test_matchgate_dump_reads_back():
    gate = gamma1_gate()
    again = parse_matchgate(dump_matchgate(gate))
    assert again.edges() == gate.edges()
    assert again.externals == gate.externals
    assert again.rotation == gate.rotation


def test_matchgate_errors():
    with pytest.raises(ShapeError):
        parse_matchgate("edge 1 2 1\n")
    with pytest.raises(ShapeError):
        parse_matchgate("nodes 2\nvertex 1\n")
    with pytest.raises(ShapeError):
        parse_matchgate("nodes two\n")
    with pytest.raises(ShapeError):
        parse_matchgate("nodes 2\nedge 1 2\n")
    with pytest.raises(MatchgateError):
        parse_matchgate("nodes 2\nedge 1 1 1\n")


def test_parse_signature():
    s = parse_signature("arity 2\n00 5\n11 1 - 1ir2  # trailing comment\n")
    assert s["00"] == 5
    assert s["11"] == Scalar.parse("1 - 1ir2")
    assert s["01"] == 0
    assert parse_signature(dump_signature(s)) == s


def test_signature_errors():
    with pytest.raises(ShapeError):
        parse_signature("00 1\n")
    with pytest.raises(ShapeError):
        parse_signature("arity 2\n012 1\n")
    with pytest.raises(ShapeError):
        parse_signature("arity 2\n01\n")
    with pytest.raises(ShapeError):
        parse_signature("# nothing\n")


def test_domain_signature_files():
    f = parse_domain_signature("q 3\narity 2\n0,0 1\n2,1 -1/2\n")
    assert f[(0, 0)] == 1
    assert f[(2, 1)] == Scalar.parse("-1/2")
    assert parse_domain_signature(dump_domain_signature(f)) == f
    scalar = parse_domain_signature("q 2\narity 0\n() 7\n")
    assert scalar.values == (Scalar(7),)
    with pytest.raises(ShapeError):
        parse_domain_signature("q 2\narity 1\n2 1\n")
    with pytest.raises(ShapeError):
        parse_domain_signature("arity 1\n0 1\n")


def test_parse_any_signature():
    assert parse_any_signature("arity 1\n1 4\n").q == 2
    assert parse_any_signature("q 3\narity 1\n2 4\n").q == 3


def test_matrix_files():
    m = parse_matrix("rows 2\ncols 2\nscale 1r2\n1\n1\n1\n-1\n")
    assert m.scale == Scalar.parse("1r2")
    assert m.matrix[1, 1] == -1
    h = hadamard(normalized=False)
    assert parse_matrix(dump_matrix(h)).scale == INV_SQRT2
    assert dump_matrix(h.matrix).splitlines()[:2] == ["rows 2", "cols 2"]
    with pytest.raises(ShapeError):
        parse_matrix("rows 2\ncols 2\n1\n")
    with pytest.raises(ShapeError):
        parse_matrix("cols 2\n1\n1\n")


def test_parse_grid_with_files(tmp_path):
    (tmp_path / "one.sig").write_text("arity 2\n01 1\n10 1\n")
    grid_path = tmp_path / "cycle.grid"
    grid_path.write_text(
        "q 2\n"
        "sig ex one.sig\n"
        "uvertex a ex\nvvertex b ex\nuvertex c ex\nvvertex d ex\n"
        "edge a b\nedge b c\nedge c d\nedge d a\n"
        "order a: 3 0\norder b: 0 1\norder c: 1 2\norder d: 2 3\n"
    )
    grid = load_grid(grid_path)
    assert grid.num_edges == 4
    assert holant_bruteforce(grid) == 2


def test_parse_grid_equality_refs():
    grid = parse_grid("q 3\nuvertex a =2\nvvertex b =2\nedge a b\nedge a b\n")
    assert holant_bruteforce(grid) == 3


def test_grid_errors(tmp_path):
    with pytest.raises(ShapeError):
        parse_grid("uvertex a =1\n")
    with pytest.raises(ShapeError):
        parse_grid("q 2\nuvertex a missing.sig\n", base_dir=tmp_path)
    with pytest.raises(ShapeError):
        parse_grid("q 2\nbogus line here\n")


def test_decomposition_files():
    gadget = Matchgate(2, [(1, 2, 3)], [1, 2], {1: (2,), 2: (1,)})
    gate = block_expand(star_core(3, 2), gadget)
    d = decompose(BlockView(signature(gate), 1))
    assert parse_decomposition(dump_decomposition(d)) == d
    with pytest.raises(ShapeError):
        parse_decomposition("rank 1\n")


def test_load_matchgate(tmp_path):
    path = tmp_path / "edge.mg"
    path.write_text(GATE_TEXT)
    assert signature(load_matchgate(path))["00"] == Scalar.parse("1/2 - 3i")
