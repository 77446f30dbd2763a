"""
Bipartite signature grids and their Holant values.

A :class:`SignatureGrid` joins U-vertices (row-vector side) to V-vertices
(column-vector side). Every vertex lists its incident edges counterclockwise;
that list is also the variable order of its signature. The Holant value is

    sum over sigma: E -> [q] of prod_v f_v(sigma restricted to E(v)).

Three evaluators are provided: an exhaustive sum, an FKT route that glues
matchgate realizations of the vertices into one closed plane graph, and the
holographic check that a basis change M leaves the value unchanged.
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .config import get_cap
from .fkt import perfmatch_fkt
from .holographic import (
    DomainSignature,
    TransformMatrix,
    equality,
    right_inverse,
    transform_domain,
    transform_dual,
)
from .matchgate import Matchgate, signature
from .scalar import ONE, ZERO, Scalar
from .types import CapExceededError, HolantVerdict, MatchgateError, PlanarityError, ShapeError


@dataclass(frozen=True)
class GridVertex:
    name: str
    side: str
    signature: DomainSignature


class SignatureGrid:
    """Planar bipartite signature grid.

    Args:
        q: Domain size shared by every signature
        vertices: Grid vertices; ``side`` is ``'U'`` or ``'V'``
        edges: Endpoint pairs; each must join a U-vertex to a V-vertex and
            parallel edges are allowed
        orders: Counterclockwise incident-edge indices per vertex; defaults
            to the order in which edges are listed

    Raises:
        ShapeError: Unknown vertices, same-side edges, bad orders, or a
            signature whose arity differs from its vertex degree.
    """

    def __init__(
        self,
        q: int,
        vertices: Sequence[GridVertex],
        edges: Sequence[Tuple[str, str]],
        orders: Optional[Mapping[str, Sequence[int]]] = None,
    ):
        self.q = q
        self.vertices: Dict[str, GridVertex] = {}
        for v in vertices:
            if v.name in self.vertices:
                raise ShapeError(f"duplicate grid vertex {v.name!r}")
            if v.side not in ("U", "V"):
                raise ShapeError(f"vertex {v.name!r} has side {v.side!r}; expected 'U' or 'V'")
            if v.signature.q != q:
                raise ShapeError(f"vertex {v.name!r} has domain {v.signature.q}, grid has {q}")
            self.vertices[v.name] = v

        normalized: List[Tuple[str, str]] = []
        incident: Dict[str, List[int]] = {name: [] for name in self.vertices}
        for k, (a, b) in enumerate(edges):
            for x in (a, b):
                if x not in self.vertices:
                    raise ShapeError(f"edge {k} uses unknown vertex {x!r}")
            if self.vertices[a].side == self.vertices[b].side:
                raise ShapeError(f"edge {k} joins two {self.vertices[a].side}-vertices")
            if self.vertices[a].side == "V":
                a, b = b, a
            normalized.append((a, b))
            incident[a].append(k)
            incident[b].append(k)
        self.edges: Tuple[Tuple[str, str], ...] = tuple(normalized)

        self.orders: Dict[str, Tuple[int, ...]] = {}
        for name, inc in incident.items():
            order = tuple(orders[name]) if orders and name in orders else tuple(inc)
            if sorted(order) != sorted(inc):
                raise ShapeError(f"order of {name!r} must list its incident edges {sorted(inc)}")
            arity = self.vertices[name].signature.arity
            if arity != len(order):
                raise ShapeError(f"vertex {name!r} has degree {len(order)} but signature arity {arity}")
            self.orders[name] = order

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def side(self, s: str) -> List[GridVertex]:
        return [v for v in self.vertices.values() if v.side == s]

    def with_signatures(self, q: int, signatures: Mapping[str, DomainSignature]) -> "SignatureGrid":
        """Same graph and orders with replacement signatures on domain ``q``."""
        vertices = [GridVertex(v.name, v.side, signatures.get(v.name, v.signature))
                    for v in self.vertices.values()]
        return SignatureGrid(q, vertices, self.edges, self.orders)

    def __repr__(self) -> str:
        return (f"SignatureGrid(q={self.q}, U={len(self.side('U'))}, V={len(self.side('V'))}, "
                f"edges={self.num_edges})")


def holant_bruteforce(grid: SignatureGrid, cap: Optional[int] = None) -> Scalar:
    """Exhaustive Holant sum.

    Edges are assigned in index order; a vertex's factor is multiplied in as
    soon as its last edge is assigned and zero partial products are pruned.

    Raises:
        CapExceededError: q^|E| exceeds ``cap`` (config ``holant_states``).
    """
    limit = get_cap('holant_states') if cap is None else cap
    states = grid.q ** grid.num_edges
    if states > limit:
        raise CapExceededError(f"{states} edge assignments exceed cap {limit}")

    constant = ONE
    closing: List[List[str]] = [[] for _ in range(grid.num_edges)]
    for name, order in grid.orders.items():
        if order:
            closing[max(order)].append(name)
        else:
            constant = constant * grid.vertices[name].signature.values[0]
    if constant.is_zero():
        return ZERO

    q = grid.q
    assignment = [0] * grid.num_edges

    def factor(name: str) -> Scalar:
        k = 0
        for e in grid.orders[name]:
            k = k * q + assignment[e]
        return grid.vertices[name].signature.values[k]

    def search(e: int, acc: Scalar) -> Scalar:
        if e == grid.num_edges:
            return acc
        total = ZERO
        for x in range(q):
            assignment[e] = x
            val = acc
            for name in closing[e]:
                val = val * factor(name)
                if val.is_zero():
                    break
            if not val.is_zero():
                total = total + search(e + 1, val)
        return total

    return search(0, constant)


def _is_rotation_of(seq: Sequence[int], target: Sequence[int]) -> bool:
    if len(seq) != len(target):
        return False
    if not seq:
        return True
    k = list(target).index(seq[0]) if seq[0] in target else -1
    return k >= 0 and list(target[k:]) + list(target[:k]) == list(seq)


def _orient_gate(gate: Matchgate, counterclockwise: bool) -> Matchgate:
    """Mirror ``gate`` if needed so its externals run the requested way round its outer face.

    The external-face walk goes clockwise around a gate, so counterclockwise
    order is the walk order reversed.
    """
    if gate.arity < 3 or len([c for c in gate.components() if c & set(gate.externals)]) > 1:
        return gate
    for candidate in (gate, gate.mirrored()):
        walk = candidate.external_cycle_order()
        want = tuple(reversed(walk)) if counterclockwise else walk
        if _is_rotation_of(candidate.externals, want):
            return candidate
    raise PlanarityError(f"externals {list(gate.externals)} are not in cyclic order on the outer face")


def merge_grid_gates(grid: SignatureGrid, gates: Mapping[str, Matchgate], counterclockwise: bool = True) -> Matchgate:
    """Glue per-vertex gates into one closed plane graph.

    Vertices are taken in grid order; grid edge k becomes a weight-1 bridge
    between the externals at the positions of k in its endpoints' orders,
    inserted at their external-face corners.

    Raises:
        PlanarityError: The merged rotation system fails the Euler check.
    """
    offsets: Dict[str, int] = {}
    oriented: Dict[str, Matchgate] = {}
    total = 0
    edges: List[Tuple[int, int, Scalar]] = []
    rotation: Dict[int, Tuple[int, ...]] = {}
    for name in grid.vertices:
        gate = _orient_gate(gates[name], counterclockwise)
        if gate.rotation is None:
            raise MatchgateError(f"gate for {name!r} needs a rotation system")
        oriented[name] = gate
        offsets[name] = total
        edges += [(u + total, v + total, w) for u, v, w in gate.edges()]
        rotation.update({u + total: tuple(x + total for x in order) for u, order in gate.rotation.items()})
        total += gate.num_vertices

    faces = {name: gate.external_faces() for name, gate in oriented.items()}
    for k, (a, b) in enumerate(grid.edges):
        xa = oriented[a].externals[grid.orders[a].index(k)]
        xb = oriented[b].externals[grid.orders[b].index(k)]
        ua, ub = xa + offsets[a], xb + offsets[b]
        edges.append((ua, ub, ONE))
        for name, x, u, other in ((a, xa, ua, ub), (b, xb, ub, ua)):
            off = offsets[name]
            local = oriented[name]._corner_rotation(x, 0, faces[name].get(x))
            rotation[u] = tuple(other if z == 0 else z + off for z in local)
    merged = Matchgate(total, edges, (), rotation)
    merged.check_planar()
    return merged


def holant_fkt(grid: SignatureGrid, gates: Mapping[str, Matchgate]) -> Scalar:
    """Holant of a Boolean grid whose vertices are realized by matchgates.

    Each gate must realize its vertex's signature with externals listed in
    the vertex's edge order. Gates are oriented counterclockwise and merged;
    if the merged graph is not plane the opposite orientation is tried.

    Raises:
        MatchgateError: A gate is missing or realizes a different signature.
        PlanarityError: Neither orientation gives a plane merged graph.
    """
    if grid.q != 2:
        raise ShapeError("matchgate evaluation needs a Boolean grid (q = 2)")
    for name, v in grid.vertices.items():
        if name not in gates:
            raise MatchgateError(f"no gate for vertex {name!r}")
        if signature(gates[name]).values != v.signature.values:
            raise MatchgateError(f"gate for {name!r} does not realize its signature")
    last: Optional[PlanarityError] = None
    for ccw in (True, False):
        try:
            merged = merge_grid_gates(grid, gates, ccw)
        except PlanarityError as exc:
            last = exc
            continue
        return perfmatch_fkt(merged)
    assert last is not None
    raise last


def verify_holant_theorem(grid: SignatureGrid, m: TransformMatrix, cap: Optional[int] = None) -> HolantVerdict:
    """Compare Holant(F | G) with Holant(F M | Mcheck G), both by brute force.

    The right side uses the stored matrix and its right inverse; the tracked
    scale contributes scale^(sum of U degrees) * scale^-(sum of V degrees),
    reported as ``scale_correction``.

    Raises:
        RankError: ``m`` has rank below q.
        ShapeError: Domain size of the grid differs from the rows of ``m``.
    """
    if grid.q != m.q:
        raise ShapeError(f"grid domain {grid.q} does not match matrix rows {m.q}")
    base = TransformMatrix(m.matrix)
    mcheck = right_inverse(base)
    left = holant_bruteforce(grid, cap)
    replaced: Dict[str, DomainSignature] = {}
    deg_u = deg_v = 0
    for name, v in grid.vertices.items():
        if v.side == "U":
            replaced[name] = transform_domain(v.signature, base)
            deg_u += v.signature.arity
        else:
            replaced[name] = transform_dual(v.signature, mcheck)
            deg_v += v.signature.arity
    right = holant_bruteforce(grid.with_signatures(m.matrix.shape[1], replaced), cap)
    correction = m.scale ** deg_u * m.scale.inverse() ** deg_v
    right = right * correction
    return HolantVerdict(left == right, str(left), str(right), str(correction))


# Counting CSP

@dataclass(frozen=True)
class CSPInstance:
    """Weighted #CSP over [q]: variables ``0..num_variables-1`` and constraint applications."""
    q: int
    num_variables: int
    constraints: Tuple[Tuple[DomainSignature, Tuple[int, ...]], ...]

    def __post_init__(self) -> None:
        for k, (f, args) in enumerate(self.constraints):
            if f.arity != len(args):
                raise ShapeError(f"constraint {k} has arity {f.arity} but {len(args)} arguments")
            if f.q != self.q:
                raise ShapeError(f"constraint {k} has domain {f.q}, instance has {self.q}")
            for x in args:
                if not 0 <= x < self.num_variables:
                    raise ShapeError(f"constraint {k} uses unknown variable {x}")


def csp_bruteforce(instance: CSPInstance, cap: Optional[int] = None) -> Scalar:
    """Direct sum over all variable assignments of the product of constraint values.

    Raises:
        CapExceededError: q^num_variables exceeds ``cap`` (config ``holant_states``).
    """
    limit = get_cap('holant_states') if cap is None else cap
    states = instance.q ** instance.num_variables
    if states > limit:
        raise CapExceededError(f"{states} variable assignments exceed cap {limit}")
    total = ZERO
    for x in product(range(instance.q), repeat=instance.num_variables):
        val = ONE
        for f, args in instance.constraints:
            val = val * f[[x[a] for a in args]]
            if val.is_zero():
                break
        total = total + val
    return total


def csp_to_holant(instance: CSPInstance) -> SignatureGrid:
    """Holant(EQ | F) grid of a #CSP instance.

    Variable ``i`` becomes U-vertex ``x<i>`` carrying (=_deg); constraint
    ``k`` becomes V-vertex ``c<k>`` whose edges follow its argument order. A
    variable used by no constraint carries the arity-0 value q.
    """
    q = instance.q
    edges: List[Tuple[str, str]] = []
    var_edges: Dict[int, List[int]] = {i: [] for i in range(instance.num_variables)}
    orders: Dict[str, List[int]] = {}
    for k, (_, args) in enumerate(instance.constraints):
        orders[f"c{k}"] = []
        for x in args:
            var_edges[x].append(len(edges))
            orders[f"c{k}"].append(len(edges))
            edges.append((f"x{x}", f"c{k}"))
    vertices: List[GridVertex] = []
    for i, inc in var_edges.items():
        f = equality(q, len(inc)) if inc else DomainSignature(q, 0, (Scalar(q),))
        vertices.append(GridVertex(f"x{i}", "U", f))
        orders[f"x{i}"] = inc
    for k, (f, _) in enumerate(instance.constraints):
        vertices.append(GridVertex(f"c{k}", "V", f))
    return SignatureGrid(q, vertices, edges, orders)


def exact_one(arity: int) -> DomainSignature:
    """Boolean Exact-One: 1 on inputs of Hamming weight one."""
    values = [ONE if bin(k).count("1") == 1 else ZERO for k in range(1 << arity)]
    return DomainSignature(2, arity, tuple(values), symmetric=True)


def cycle_grid(signatures: Iterable[DomainSignature]) -> SignatureGrid:
    """Even cycle alternating U and V, every vertex of arity 2.

    Vertex ``k`` owns edges ``k-1`` (previous) and ``k`` (next) in that order.
    """
    sigs = list(signatures)
    n = len(sigs)
    if n < 2 or n % 2:
        raise ShapeError("cycle grid needs an even number of at least 2 vertices")
    q = sigs[0].q
    vertices = [GridVertex(f"v{k}", "U" if k % 2 == 0 else "V", s) for k, s in enumerate(sigs)]
    edges = [(f"v{k}", f"v{(k + 1) % n}") for k in range(n)]
    orders = {f"v{k}": ((k - 1) % n, k) for k in range(n)}
    return SignatureGrid(q, vertices, edges, orders)
