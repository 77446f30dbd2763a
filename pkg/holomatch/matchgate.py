"""
Planar matchgates: weighted plane graphs with ordered external nodes.

A :class:`Matchgate` stores vertices ``1..k``, weighted simple edges, the
ordered external nodes and an optional rotation system (the counterclockwise
neighbor order of every vertex). The rotation system is only needed for face
traversal, surgery placement and FKT; brute-force PerfMatch ignores it.

Faces are traced with one rule: arriving at ``v`` along ``u -> v``, leave
along ``v -> w`` where ``w`` immediately precedes ``u`` in ``v``'s rotation.
For a geometric counterclockwise embedding this walks bounded faces
counterclockwise and the unbounded face clockwise.

Signature entries use external-node deletion: bit 1 at position p deletes the
p-th external node (with its edges) before counting perfect matchings.
"""

from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .config import get_cap
from .scalar import ONE, ZERO, Scalar, ScalarLike, as_scalar
from .signatures import BooleanSignature
from .types import CapExceededError, MatchgateError, PlanarityError

Dart = Tuple[int, int]
EdgeSpec = Tuple[int, int, ScalarLike]


class Matchgate:
    """Plane weighted graph with an ordered list of external nodes.

    Args:
        num_vertices: Vertex count k; vertices are ``1..k``
        edges: ``(u, v, weight)`` triples, no loops or parallel edges
        externals: Ordered external nodes
        rotation: Optional counterclockwise neighbor order per vertex

    Raises:
        MatchgateError: On malformed graphs or rotation systems.

    Example:
        >>> g = Matchgate(2, [(1, 2, 5)], [1, 2], {1: [2], 2: [1]})
        >>> signature(g).values
        (Scalar('5'), Scalar('0'), Scalar('0'), Scalar('1'))
    """

    def __init__(
        self,
        num_vertices: int,
        edges: Iterable[EdgeSpec],
        externals: Sequence[int] = (),
        rotation: Optional[Mapping[int, Sequence[int]]] = None,
    ):
        if num_vertices < 0:
            raise MatchgateError("vertex count must be non-negative")
        self.num_vertices = num_vertices
        self._adj: Dict[int, Dict[int, Scalar]] = {v: {} for v in range(1, num_vertices + 1)}
        for u, v, w in edges:
            u, v = int(u), int(v)
            if u == v:
                raise MatchgateError(f"loop at vertex {u}")
            if u not in self._adj or v not in self._adj:
                raise MatchgateError(f"edge ({u}, {v}) uses a vertex outside 1..{num_vertices}")
            if v in self._adj[u]:
                raise MatchgateError(f"parallel edge ({u}, {v}); merge parallel edges by summing weights")
            weight = as_scalar(w)
            self._adj[u][v] = weight
            self._adj[v][u] = weight

        ext = tuple(int(x) for x in externals)
        if len(set(ext)) != len(ext):
            raise MatchgateError(f"external nodes are not distinct: {ext}")
        for x in ext:
            if x not in self._adj:
                raise MatchgateError(f"external node {x} is not a vertex")
        self.externals: Tuple[int, ...] = ext

        self.rotation: Optional[Dict[int, Tuple[int, ...]]] = None
        if rotation is not None:
            rot = {v: tuple(int(x) for x in rotation.get(v, ())) for v in self._adj}
            for v, order in rot.items():
                if len(order) != len(set(order)) or set(order) != set(self._adj[v]):
                    raise MatchgateError(
                        f"rotation at vertex {v} must list each neighbor exactly once"
                    )
            self.rotation = rot

    # Basic queries

    @property
    def arity(self) -> int:
        return len(self.externals)

    @property
    def is_odd(self) -> bool:
        return self.num_vertices % 2 == 1

    @property
    def has_rotation(self) -> bool:
        return self.rotation is not None

    def neighbors(self, v: int) -> Dict[int, Scalar]:
        return dict(self._adj[v])

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def weight(self, u: int, v: int) -> Scalar:
        return self._adj[u].get(v, ZERO)

    def edges(self) -> List[Tuple[int, int, Scalar]]:
        return [(u, v, w) for u in sorted(self._adj) for v, w in sorted(self._adj[u].items()) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(n) for n in self._adj.values()) // 2

    def __repr__(self) -> str:
        return (f"Matchgate(vertices={self.num_vertices}, edges={self.num_edges}, "
                f"externals={list(self.externals)})")

    def _rebuild(self, num_vertices, edges, externals, rotation) -> "Matchgate":
        return Matchgate(num_vertices, edges, externals, rotation)

    # Components and faces

    def components(self) -> List[FrozenSet[int]]:
        seen = set()
        out = []
        for start in sorted(self._adj):
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for u in self._adj[v]:
                    if u not in comp:
                        comp.add(u)
                        queue.append(u)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def _require_rotation(self) -> Dict[int, Tuple[int, ...]]:
        if self.rotation is None:
            raise MatchgateError("operation needs a rotation system (add 'rot' lines)")
        return self.rotation

    def next_dart(self, dart: Dart) -> Dart:
        rot = self._require_rotation()
        u, v = dart
        order = rot[v]
        return (v, order[(order.index(u) - 1) % len(order)])

    def faces(self) -> List[List[Dart]]:
        """Trace every face as a list of darts; isolated vertices are omitted."""
        self._require_rotation()
        darts = sorted((u, v) for u in self._adj for v in self._adj[u])
        seen = set()
        faces: List[List[Dart]] = []
        for start in darts:
            if start in seen:
                continue
            face = []
            d = start
            while d not in seen:
                seen.add(d)
                face.append(d)
                d = self.next_dart(d)
            faces.append(face)
        return faces

    def euler_characteristic(self) -> int:
        """V - E + F, counting one face per isolated vertex."""
        isolated = sum(1 for v in self._adj if not self._adj[v])
        return self.num_vertices - self.num_edges + len(self.faces()) + isolated

    def is_plane(self) -> bool:
        return self.euler_characteristic() == 2 * len(self.components())

    def check_planar(self) -> None:
        if not self.is_plane():
            raise PlanarityError(
                f"rotation system is not planar: V - E + F = {self.euler_characteristic()}, "
                f"expected {2 * len(self.components())}"
            )

    def external_faces(self) -> Dict[int, List[Dart]]:
        """For every external node, the face its external-face corner lies on.

        Each component holding external nodes contributes the longest face
        that visits all of that component's external nodes.

        Raises:
            PlanarityError: Some component's external nodes share no face.
        """
        self._require_rotation()
        faces = self.faces()
        out: Dict[int, List[Dart]] = {}
        for comp in self.components():
            ext = [x for x in self.externals if x in comp and self._adj[x]]
            if not ext:
                continue
            best: Optional[List[Dart]] = None
            for face in faces:
                if face[0][0] not in comp:
                    continue
                tails = {d[0] for d in face}
                if all(x in tails for x in ext) and (best is None or len(face) > len(best)):
                    best = face
            if best is None:
                raise PlanarityError(f"external nodes {ext} do not lie on a common face")
            for x in ext:
                out[x] = best
        return out

    def external_cycle_order(self) -> Tuple[int, ...]:
        """External nodes of a connected gate in the order its external face visits them."""
        faces = self.external_faces()
        if not faces:
            return ()
        face = next(iter(faces.values()))
        order: List[int] = []
        for u, _ in face:
            if u in self.externals and u not in order:
                order.append(u)
        return tuple(order)

    def _corner_rotation(self, v: int, new: int, face: Optional[List[Dart]]) -> Tuple[int, ...]:
        """Rotation of ``v`` with ``new`` inserted into its corner on ``face``."""
        rot = self._require_rotation()
        order = list(rot[v])
        if not order:
            return (new,)
        assert face is not None
        k = next(i for i, d in enumerate(face) if d[0] == v)
        after = face[k][1]
        # after precedes the incoming neighbor in v's rotation; insert just after it
        pos = order.index(after)
        return tuple(order[: pos + 1] + [new] + order[pos + 1:])

    # Surgery

    def _check_external(self, v: int) -> None:
        if v not in self.externals:
            raise MatchgateError(f"vertex {v} is not an external node")

    def attach_pendant(self, v: int, w: ScalarLike = 1, external: str = "transfer") -> "Matchgate":
        """Join a new vertex to external node ``v`` with weight ``w``.

        Args:
            v: External node to extend
            w: Edge weight
            external: ``'transfer'`` makes the new vertex take ``v``'s place
                in the external list; ``'revoke'`` drops ``v`` from it.

        Raises:
            MatchgateError: ``v`` is not external, or unknown ``external`` mode.
        """
        self._check_external(v)
        if external not in ("transfer", "revoke"):
            raise MatchgateError(f"unknown external mode {external!r}")
        p = self.num_vertices + 1
        edges = [(a, b, c) for a, b, c in self.edges()] + [(v, p, as_scalar(w))]
        if external == "transfer":
            externals = [p if x == v else x for x in self.externals]
        else:
            externals = [x for x in self.externals if x != v]
        rotation = None
        if self.rotation is not None:
            faces = self.external_faces()
            rotation = dict(self.rotation)
            rotation[v] = self._corner_rotation(v, p, faces.get(v))
            rotation[p] = (v,)
        return self._rebuild(p, edges, externals, rotation)

    def attach_path2(self, v: int, w1: ScalarLike, w2: ScalarLike, external: str = "far") -> "Matchgate":
        """Hang a length-2 path v - v2 - v3 off external node ``v``.

        Args:
            v: External node to extend
            w1: Weight of (v, v2)
            w2: Weight of (v2, v3)
            external: ``'far'`` makes v3 take ``v``'s place in the external
                list; ``'none'`` leaves v, v2 and v3 all internal.
        """
        self._check_external(v)
        if external not in ("far", "none"):
            raise MatchgateError(f"unknown external mode {external!r}")
        v2, v3 = self.num_vertices + 1, self.num_vertices + 2
        edges = list(self.edges()) + [(v, v2, as_scalar(w1)), (v2, v3, as_scalar(w2))]
        if external == "far":
            externals = [v3 if x == v else x for x in self.externals]
        else:
            externals = [x for x in self.externals if x != v]
        rotation = None
        if self.rotation is not None:
            faces = self.external_faces()
            rotation = dict(self.rotation)
            rotation[v] = self._corner_rotation(v, v2, faces.get(v))
            rotation[v2] = (v, v3)
            rotation[v3] = (v2,)
        return self._rebuild(v3, edges, externals, rotation)

    def delete_vertex(self, v: int) -> "Matchgate":
        """Remove ``v`` and its edges; higher vertex ids shift down by one.

        Deleting an external pendant vertex whose neighbor is internal hands
        the external position back to that neighbor, undoing a transferring
        ``attach_pendant``.
        """
        if v not in self._adj:
            raise MatchgateError(f"no vertex {v}")
        externals = list(self.externals)
        if v in externals:
            k = externals.index(v)
            nbrs = list(self._adj[v])
            if len(nbrs) == 1 and nbrs[0] not in externals:
                externals[k] = nbrs[0]
            else:
                del externals[k]

        def shift(x: int) -> int:
            return x - 1 if x > v else x

        edges = [(shift(a), shift(b), w) for a, b, w in self.edges() if v not in (a, b)]
        rotation = None
        if self.rotation is not None:
            rotation = {shift(u): tuple(shift(x) for x in order if x != v)
                        for u, order in self.rotation.items() if u != v}
        return self._rebuild(self.num_vertices - 1, edges, [shift(x) for x in externals], rotation)

    def without_vertices(self, removed: Iterable[int]) -> "Matchgate":
        """Subgraph on the remaining vertices, renumbered in order, no externals."""
        gone = set(removed)
        keep = [v for v in sorted(self._adj) if v not in gone]
        new_id = {v: k + 1 for k, v in enumerate(keep)}
        edges = [(new_id[a], new_id[b], w) for a, b, w in self.edges() if a in new_id and b in new_id]
        rotation = None
        if self.rotation is not None:
            rotation = {new_id[u]: tuple(new_id[x] for x in self.rotation[u] if x in new_id)
                        for u in keep}
        return Matchgate(len(keep), edges, (), rotation)

    def with_externals(self, order: Sequence[int]) -> "Matchgate":
        """Same graph with a new ordered external list."""
        return self._rebuild(self.num_vertices, self.edges(), order, self.rotation)

    def mirrored(self) -> "Matchgate":
        """Mirror image: every rotation reversed."""
        rotation = None
        if self.rotation is not None:
            rotation = {v: tuple(reversed(order)) for v, order in self.rotation.items()}
        return self._rebuild(self.num_vertices, self.edges(), self.externals, rotation)


def compose(a: Matchgate, b: Matchgate, pairs: Sequence[Tuple[int, int]] = ()) -> Matchgate:
    """Join two matchgates with a weight-1 edge per (external of a, external of b) pair.

    ``b``'s vertices are renumbered after ``a``'s. Paired nodes become
    internal; the remaining externals are a's (in order) followed by b's.
    Each bridge is inserted at the external-face corners of its endpoints,
    then the result is Euler-checked.

    Raises:
        MatchgateError: A node is paired twice or is not external.
        PlanarityError: The assembled rotation system is not planar.
    """
    off = a.num_vertices
    used_a = [x for x, _ in pairs]
    used_b = [y for _, y in pairs]
    if len(set(used_a)) != len(used_a) or len(set(used_b)) != len(used_b):
        raise MatchgateError("an external node is paired more than once")
    for x in used_a:
        a._check_external(x)
    for y in used_b:
        b._check_external(y)

    edges = list(a.edges()) + [(u + off, v + off, w) for u, v, w in b.edges()]
    edges += [(x, y + off, ONE) for x, y in pairs]
    externals = [x for x in a.externals if x not in used_a]
    externals += [y + off for y in b.externals if y not in used_b]

    rotation = None
    if a.rotation is not None and b.rotation is not None:
        rotation = dict(a.rotation)
        rotation.update({u + off: tuple(x + off for x in order) for u, order in b.rotation.items()})
        if pairs:
            faces_a = a.external_faces()
            faces_b = b.external_faces()
            for x, y in pairs:
                rotation[x] = a._corner_rotation(x, y + off, faces_a.get(x))
                rotation[y + off] = tuple(
                    z + off if z != 0 else x
                    for z in b._corner_rotation(y, 0, faces_b.get(y))
                )
    gate = Matchgate(off + b.num_vertices, edges, externals, rotation)
    if rotation is not None:
        gate.check_planar()
    return gate


def closed_scale_gate(value: ScalarLike) -> Matchgate:
    """Single internal edge of weight ``value``: a closed gate whose PerfMatch is ``value``."""
    return Matchgate(2, [(1, 2, value)], (), {1: (2,), 2: (1,)})


# PerfMatch and signatures

def _deletion_table(gate: Matchgate) -> Dict[int, Scalar]:
    """PerfMatch of G minus every subset Z of external nodes, keyed by the bits of Z.

    Backtracks on the lowest remaining vertex, which is either matched to a
    remaining neighbor or, if external, deleted. Results are memoized on the
    set of remaining vertices.
    """
    k = gate.num_vertices
    n = gate.arity
    ext_bit = {v - 1: 1 << (n - 1 - i) for i, v in enumerate(gate.externals)}
    nbrs: List[List[Tuple[int, Scalar]]] = [
        [(u - 1, w) for u, w in sorted(gate._adj[v].items()) if not w.is_zero()]
        for v in range(1, k + 1)
    ]
    memo: Dict[int, Dict[int, Scalar]] = {}

    def solve(mask: int) -> Dict[int, Scalar]:
        if mask == 0:
            return {0: ONE}
        hit = memo.get(mask)
        if hit is not None:
            return hit
        v = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << v)
        out: Dict[int, Scalar] = {}
        bit = ext_bit.get(v)
        if bit is not None:
            for bits, val in solve(rest).items():
                key = bits | bit
                out[key] = out[key] + val if key in out else val
        for u, w in nbrs[v]:
            if rest >> u & 1:
                for bits, val in solve(rest ^ (1 << u)).items():
                    term = w * val
                    out[bits] = out[bits] + term if bits in out else term
        memo[mask] = out
        return out

    return solve((1 << k) - 1)


def perfmatch_bruteforce(gate: Matchgate, cap: Optional[int] = None) -> Scalar:
    """Sum over perfect matchings of the product of edge weights.

    The empty graph has PerfMatch 1. External nodes are treated as ordinary
    vertices.

    Raises:
        CapExceededError: More vertices than ``cap`` (config ``bruteforce_vertices``).
    """
    limit = get_cap('bruteforce_vertices') if cap is None else cap
    if gate.num_vertices > limit:
        raise CapExceededError(f"{gate.num_vertices} vertices exceeds brute-force cap {limit}")
    if gate.num_vertices % 2:
        return ZERO
    closed = Matchgate(gate.num_vertices, gate.edges(), ())
    return _deletion_table(closed).get(0, ZERO)


def signature(gate: Matchgate, method: str = "brute") -> BooleanSignature:
    """Signature of ``gate``: entry alpha is PerfMatch(G - Z) with chi_Z = alpha.

    Args:
        gate: The matchgate
        method: ``'brute'`` (one memoized sweep over all deletions) or
            ``'fkt'`` (one Pfaffian per entry; needs a planar rotation system)
    """
    n = gate.arity
    if method == "fkt":
        from .fkt import perfmatch_fkt
        values = []
        for alpha in range(1 << n):
            removed = [x for i, x in enumerate(gate.externals) if alpha >> (n - 1 - i) & 1]
            values.append(perfmatch_fkt(gate.without_vertices(removed)))
        return BooleanSignature(n, tuple(values))
    if method != "brute":
        raise ValueError(f"unknown signature method {method!r}")
    table = _deletion_table(gate)
    return BooleanSignature(n, tuple(table.get(a, ZERO) for a in range(1 << n)))
