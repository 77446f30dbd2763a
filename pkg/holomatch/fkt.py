"""
Perfect-matching counting on plane graphs by the FKT method.

A Kasteleyn orientation makes every perfect-matching term of the Pfaffian of
the signed adjacency matrix carry the same sign. The sign itself is read off
one explicit perfect matching, so the result is the signed PerfMatch, not
only its magnitude.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from .matchgate import Matchgate
from .scalar import ONE, ZERO, Scalar, zeros
from .types import ShapeError

Edge = Tuple[int, int]


@dataclass
class KasteleynOrientation:
    """Direction of every edge, keyed by ``(min, max)``; value is ``(tail, head)``."""
    arcs: Dict[Edge, Edge] = field(default_factory=dict)

    def sign(self, u: int, v: int) -> int:
        """+1 if the edge is oriented u -> v, -1 if v -> u."""
        return 1 if self.arcs[(min(u, v), max(u, v))] == (u, v) else -1


def _face_components(gate: Matchgate) -> Tuple[List[frozenset], List[List[Tuple[int, int]]], List[int]]:
    comps = gate.components()
    comp_of = {v: k for k, comp in enumerate(comps) for v in comp}
    faces = gate.faces()
    return comps, faces, [comp_of[f[0][0]] for f in faces]


def orient(gate: Matchgate, edge_order: Optional[Sequence[Edge]] = None) -> KasteleynOrientation:
    """Build a Kasteleyn orientation.

    Tree edges of a BFS spanning forest point from the smaller to the larger
    vertex id. The remaining edges form a spanning tree of the dual rooted at
    each component's outer (longest) face; peeling its leaves fixes one edge
    per inner face so that the face ends up odd.

    Args:
        gate: Plane graph with a rotation system
        edge_order: Optional priority order of edges for the spanning forest

    Raises:
        PlanarityError: The rotation system fails the Euler check.
    """
    gate.check_planar()
    rank: Dict[Edge, int] = {}
    if edge_order is not None:
        for k, (u, v) in enumerate(edge_order):
            rank[(min(u, v), max(u, v))] = k

    def key(u: int, v: int) -> Tuple[int, int, int]:
        e = (min(u, v), max(u, v))
        return (rank.get(e, len(rank)), e[0], e[1])

    arcs: Dict[Edge, Edge] = {}
    comps, faces, face_comp = _face_components(gate)
    for comp in comps:
        root = min(comp)
        seen = {root}
        frontier = [root]
        while frontier:
            nxt = []
            for v in frontier:
                for u in sorted(gate.neighbors(v), key=lambda u: key(v, u)):
                    if u not in seen:
                        seen.add(u)
                        arcs[(min(u, v), max(u, v))] = (min(u, v), max(u, v))
                        nxt.append(u)
            frontier = nxt

    face_of: Dict[Tuple[int, int], int] = {}
    for f, face in enumerate(faces):
        for d in face:
            face_of[d] = f
    outer: Dict[int, int] = {}
    for f, face in enumerate(faces):
        c = face_comp[f]
        if c not in outer or len(face) > len(faces[outer[c]]):
            outer[c] = f
    outer_faces = set(outer.values())

    pending = [sum(1 for u, v in face if (min(u, v), max(u, v)) not in arcs) for face in faces]
    ready = sorted(f for f in range(len(faces)) if f not in outer_faces and pending[f] == 1)
    while ready:
        f = ready.pop(0)
        if pending[f] != 1:
            continue
        disagree = 0
        loose = None
        for u, v in faces[f]:
            e = (min(u, v), max(u, v))
            if e not in arcs:
                loose = (u, v)
            elif arcs[e] != (u, v):
                disagree += 1
        assert loose is not None
        u, v = loose
        e = (min(u, v), max(u, v))
        # the face needs an odd number of darts running against their edge
        arcs[e] = (v, u) if disagree % 2 == 0 else (u, v)
        pending[f] -= 1
        g = face_of[(v, u)]
        if g != f:
            pending[g] -= 1
            if g not in outer_faces and pending[g] == 1:
                ready.append(g)
                ready.sort()
    for u, v, _ in gate.edges():
        if (u, v) not in arcs:
            # unreachable on a plane graph
            arcs[(u, v)] = (u, v)
    return KasteleynOrientation(arcs)


def check_orientation(gate: Matchgate, orientation: KasteleynOrientation) -> bool:
    """Every face except each component's longest has an odd number of reversed darts."""
    comps, faces, face_comp = _face_components(gate)
    outer: Dict[int, int] = {}
    for f, face in enumerate(faces):
        c = face_comp[f]
        if c not in outer or len(face) > len(faces[outer[c]]):
            outer[c] = f
    for f, face in enumerate(faces):
        if f in outer.values():
            continue
        reversed_darts = sum(1 for u, v in face if orientation.sign(u, v) < 0)
        if reversed_darts % 2 == 0:
            return False
    return True


def pfaffian(m: np.ndarray) -> Scalar:
    """Exact Pfaffian by skew congruence elimination.

    Raises:
        ShapeError: ``m`` is not square and skew-symmetric.
    """
    n = m.shape[0]
    if m.ndim != 2 or m.shape[1] != n:
        raise ShapeError("Pfaffian needs a square matrix")
    for i in range(n):
        if not m[i, i].is_zero():
            raise ShapeError("matrix is not skew-symmetric (nonzero diagonal)")
        for j in range(i + 1, n):
            if m[i, j] != -m[j, i]:
                raise ShapeError("matrix is not skew-symmetric")
    if n % 2:
        return ZERO
    a = m.copy()
    result = ONE
    for k in range(0, n, 2):
        p = next((j for j in range(k + 1, n) if not a[k, j].is_zero()), None)
        if p is None:
            return ZERO
        if p != k + 1:
            a[[k + 1, p], :] = a[[p, k + 1], :]
            a[:, [k + 1, p]] = a[:, [p, k + 1]]
            result = -result
        piv = a[k, k + 1]
        result = result * piv
        inv = piv.inverse()
        for i in range(k + 2, n):
            if not a[k, i].is_zero():
                c = a[k, i] * inv
                a[i, :] = a[i, :] - c * a[k + 1, :]
                a[:, i] = a[:, i] - c * a[:, k + 1]
        for i in range(k + 2, n):
            if not a[k + 1, i].is_zero():
                c = a[k + 1, i] * inv
                a[i, :] = a[i, :] + c * a[k, :]
                a[:, i] = a[:, i] + c * a[:, k]
    return result


def _permutation_sign(seq: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(seq)
    for start in range(len(seq)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = seq[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def find_perfect_matching(vertices: Sequence[int], adjacency: Dict[int, Set[int]]) -> Optional[List[Edge]]:
    """One perfect matching of the induced graph, or None."""
    order = sorted(vertices)
    pos = {v: k for k, v in enumerate(order)}
    failed: Set[int] = set()

    def search(mask: int) -> Optional[List[Edge]]:
        if mask == 0:
            return []
        if mask in failed:
            return None
        low = (mask & -mask).bit_length() - 1
        v = order[low]
        for u in sorted(adjacency[v]):
            if u not in pos:
                continue
            bit = 1 << pos[u]
            if mask & bit:
                rest = search(mask & ~(1 << low) & ~bit)
                if rest is not None:
                    return [(v, u)] + rest
        failed.add(mask)
        return None

    return search((1 << len(order)) - 1)


def perfmatch_fkt(gate: Matchgate, edge_order: Optional[Sequence[Edge]] = None) -> Scalar:
    """Signed PerfMatch of a plane graph, component by component.

    Raises:
        PlanarityError: The rotation system fails the Euler check.
    """
    if gate.num_vertices == 0:
        return ONE
    if gate.num_vertices % 2:
        return ZERO
    orientation = orient(gate, edge_order)
    adjacency = {v: set(gate.neighbors(v)) for v in range(1, gate.num_vertices + 1)}
    total = ONE
    for comp in gate.components():
        verts = sorted(comp)
        if len(verts) % 2:
            return ZERO
        matching = find_perfect_matching(verts, adjacency)
        if matching is None:
            return ZERO
        index = {v: k for k, v in enumerate(verts)}
        a = zeros((len(verts), len(verts)))
        for v in verts:
            for u, w in gate.neighbors(v).items():
                a[index[v], index[u]] = w if orientation.sign(v, u) > 0 else -w
        # sign of the reference matching's term in the Pfaffian expansion
        seq: List[int] = []
        eps = 1
        for u, v in matching:
            i, j = sorted((index[u], index[v]))
            seq += [i, j]
            eps *= orientation.sign(verts[i], verts[j])
        eps *= _permutation_sign(seq)
        pf = pfaffian(a)
        total = total * (pf if eps > 0 else -pf)
        if total.is_zero():
            return ZERO
    return total
