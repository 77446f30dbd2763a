"""
Random and named instances for tests and the harness.

Plane graphs are drawn on small integer grids (axis edges plus at most one
diagonal per cell), so the counterclockwise rotation at every vertex follows
exactly from the coordinates. External nodes are picked on the bounding box,
which always lies on the outer face, and listed in the order the external
face walk visits them.
"""

from fractions import Fraction
from functools import cmp_to_key
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .decompose import block_expand, pendant_core_gate
from .holant import GridVertex, SignatureGrid, cycle_grid, exact_one
from .holographic import DomainSignature, TransformMatrix
from .linalg import as_matrix, exact_rank
from .matchgate import Matchgate, signature
from .scalar import ONE, Scalar, ScalarLike, as_scalar
from .signatures import BlockView
from .types import ShapeError

Point = Tuple[int, int]
WeightFn = Callable[[np.random.Generator], Scalar]

_SMALL = (-3, -2, -1, 1, 2, 3)


def random_rational(rng: np.random.Generator, allow_zero: bool = False) -> Scalar:
    """Small signed rational: numerator in +-{1,2,3} (or 0), denominator 1 or 2."""
    pool = _SMALL + ((0,) if allow_zero else ())
    return Scalar(Fraction(int(rng.choice(pool)), int(rng.choice((1, 1, 2)))))


def random_field_scalar(rng: np.random.Generator) -> Scalar:
    """Nonzero scalar with random rational, i, sqrt2 and i*sqrt2 parts."""
    while True:
        x = Scalar(*(int(v) for v in rng.integers(-2, 3, size=4)))
        if not x.is_zero():
            return x


def random_integer(rng: np.random.Generator) -> Scalar:
    return Scalar(int(rng.choice(_SMALL)))


# Plane embeddings from coordinates

def _angle_cmp(a: Point, b: Point) -> int:
    def half(p: Point) -> int:
        return 0 if p[1] > 0 or (p[1] == 0 and p[0] > 0) else 1

    ha, hb = half(a), half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def rotation_from_coordinates(coords: Dict[int, Point], edges: Sequence[Tuple[int, int]]) -> Dict[int, Tuple[int, ...]]:
    """Counterclockwise neighbor order at every vertex of a straight-line drawing."""
    nbrs: Dict[int, List[int]] = {v: [] for v in coords}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rotation = {}
    for v, ns in nbrs.items():
        x0, y0 = coords[v]
        rotation[v] = tuple(sorted(
            ns, key=cmp_to_key(lambda a, b: _angle_cmp((coords[a][0] - x0, coords[a][1] - y0),
                                                       (coords[b][0] - x0, coords[b][1] - y0)))
        ))
    return rotation


def walk_ordered(gate: Matchgate, start: Optional[int] = None) -> Matchgate:
    """Relist the externals of a connected gate in external-face walk order.

    ``start`` picks the first external; the default keeps the current first.
    """
    if gate.arity < 2:
        return gate
    order = list(gate.external_cycle_order())
    first = gate.externals[0] if start is None else start
    k = order.index(first)
    return gate.with_externals(order[k:] + order[:k])


def grid_graph(
    rows: int,
    cols: int,
    weights: Optional[Dict[Tuple[int, int], ScalarLike]] = None,
    diagonals: Sequence[Tuple[int, int, int]] = (),
    externals: Sequence[int] = (),
) -> Matchgate:
    """rows x cols grid, vertices numbered row-major from the bottom-left corner.

    Args:
        weights: Weight per edge ``(u, v)`` with u < v; missing edges weigh 1
        diagonals: ``(row, col, kind)`` adds the diagonal of the cell whose
            lower-left corner is (row, col); kind 0 is ``/`` and 1 is ``\\``
        externals: Ordered external nodes
    """
    coords = {r * cols + c + 1: (c, r) for r in range(rows) for c in range(cols)}
    pairs: List[Tuple[int, int]] = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c + 1
            if c + 1 < cols:
                pairs.append((v, v + 1))
            if r + 1 < rows:
                pairs.append((v, v + cols))
    for r, c, kind in diagonals:
        bl = r * cols + c + 1
        pairs.append((bl, bl + cols + 1) if kind == 0 else (bl + 1, bl + cols))
    w = weights or {}
    edges = [(u, v, w.get((u, v), ONE)) for u, v in pairs]
    return Matchgate(len(coords), edges, externals, rotation_from_coordinates(coords, pairs))


def _random_layout(rng: np.random.Generator, max_vertices: int, min_vertices: int = 2) -> Tuple[int, int]:
    shapes = [(r, c) for r in range(1, 5) for c in range(1, 7)
              if min_vertices <= r * c <= max_vertices and r <= c]
    r, c = shapes[int(rng.integers(len(shapes)))]
    return (r, c) if rng.random() < 0.5 else (c, r)


def random_plane_graph(
    rng: np.random.Generator,
    max_vertices: int = 12,
    weight: WeightFn = random_rational,
    keep: float = 0.6,
    min_vertices: int = 2,
) -> Tuple[Matchgate, Dict[int, Point]]:
    """Random connected straight-line plane graph with its coordinates.

    A random spanning tree of the grid-plus-diagonals graph is always kept;
    every other edge survives with probability ``keep``.
    """
    rows, cols = _random_layout(rng, max_vertices, min_vertices)
    coords = {r * cols + c + 1: (c, r) for r in range(rows) for c in range(cols)}
    candidates: List[Tuple[int, int]] = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c + 1
            if c + 1 < cols:
                candidates.append((v, v + 1))
            if r + 1 < rows:
                candidates.append((v, v + cols))
            if r + 1 < rows and c + 1 < cols and rng.random() < 0.5:
                candidates.append((v, v + cols + 1) if rng.random() < 0.5 else (v + 1, v + cols))
    order = list(rng.permutation(len(candidates)))
    parent = {v: v for v in coords}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for k in order:
        u, v = candidates[int(k)]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.append((u, v))
        elif rng.random() < keep:
            chosen.append((u, v))
    chosen.sort()
    edges = [(u, v, weight(rng)) for u, v in chosen]
    gate = Matchgate(len(coords), edges, (), rotation_from_coordinates(coords, chosen))
    return gate, coords


def _boundary(coords: Dict[int, Point]) -> List[int]:
    xs = [p[0] for p in coords.values()]
    ys = [p[1] for p in coords.values()]
    return sorted(v for v, (x, y) in coords.items()
                  if x in (min(xs), max(xs)) or y in (min(ys), max(ys)))


def random_matchgate(
    rng: np.random.Generator,
    arity: int,
    max_vertices: int = 8,
    weight: WeightFn = random_rational,
) -> Matchgate:
    """Random connected plane matchgate with ``arity`` externals in walk order."""
    if arity < 0:
        raise ShapeError("arity must be non-negative")
    for _ in range(100):
        gate, coords = random_plane_graph(rng, max(max_vertices, arity), weight,
                                          min_vertices=max(arity, 2))
        boundary = _boundary(coords)
        if len(boundary) < arity:
            continue
        picked = [boundary[int(k)] for k in rng.permutation(len(boundary))[:arity]]
        return walk_ordered(gate.with_externals(picked))
    raise ShapeError(f"could not place {arity} externals within {max_vertices} vertices")


def random_gadget(rng: np.random.Generator, block_size: int, max_vertices: int = 6,
                  weight: WeightFn = random_rational, both_ports: bool = True) -> Matchgate:
    """Arity-(l+1) gate; the last external is the port used by block_expand.

    With ``both_ports`` the signature is nonzero for port value 0 and for
    port value 1, so block_expand keeps the rank of the core.

    Raises:
        ShapeError: No such gadget was found in 100 draws.
    """
    for _ in range(100):
        gadget = random_matchgate(rng, block_size + 1, max(max_vertices, block_size + 1), weight)
        if not both_ports:
            return gadget
        ports = {bits[-1] for bits, _ in signature(gadget).nonzero_items()}
        if ports == {"0", "1"}:
            return gadget
    raise ShapeError(f"no gadget of block size {block_size} is nonzero on both port values")


# Symmetric cores

def star_core(n: int, w: ScalarLike = 1) -> Matchgate:
    """K_{1,n} with internal center and n external leaves; signature w on weight n-1 inputs."""
    center = 1
    leaves = list(range(2, n + 2))
    rotation = {center: tuple(leaves), **{x: (center,) for x in leaves}}
    gate = Matchgate(n + 1, [(center, x, as_scalar(w)) for x in leaves], leaves, rotation)
    return walk_ordered(gate)


def triangle_core(w: ScalarLike = 1) -> Matchgate:
    """Triangle with all three vertices external: symmetric [0, w, 0, 1]."""
    rotation = {1: (2, 3), 2: (3, 1), 3: (1, 2)}
    gate = Matchgate(3, [(1, 2, w), (2, 3, w), (1, 3, w)], [1, 2, 3], rotation)
    return walk_ordered(gate)


CORE_KINDS = ("star", "triangle", "pendant-even", "pendant-odd", "zero")

# draw weights for random cores; zero cores stay rare
CORE_WEIGHTS: Dict[str, int] = {"star": 4, "triangle": 4, "pendant-even": 2, "pendant-odd": 2, "zero": 1}

# rank of M(G) for block_expand of each core kind with a two-port gadget
CORE_RANKS: Dict[str, int] = {"star": 2, "triangle": 2, "pendant-even": 1, "pendant-odd": 1, "zero": 0}


def symmetric_core(kind: str, n: int, w: ScalarLike = 1) -> Matchgate:
    """Bitwise symmetric core gate of arity n.

    ``star`` and ``triangle`` (n = 3 only) give rank-2 expansions for
    generic gadgets; the pendant cores give rank 1; ``zero`` gives the zero
    signature.
    """
    if kind == "star":
        return star_core(n, w)
    if kind == "triangle":
        if n != 3:
            raise ShapeError("triangle core has arity 3")
        return triangle_core(w)
    if kind == "pendant-even":
        return pendant_core_gate(0, n, w)
    if kind == "pendant-odd":
        return pendant_core_gate(1, n, w)
    if kind == "zero":
        return star_core(n, 0)
    raise ValueError(f"unknown core kind {kind!r}")


def random_block_symmetric_gate(
    rng: np.random.Generator,
    num_blocks: int,
    block_size: int,
    kind: Optional[str] = None,
) -> Tuple[Matchgate, BlockView]:
    """block_expand of a symmetric core with a random gadget, plus its signature view.

    Without ``kind`` the core is drawn by CORE_WEIGHTS; the view's rank is
    then CORE_RANKS[kind].
    """
    if kind is None:
        kinds = [k for k in CORE_KINDS if k != "triangle" or num_blocks == 3]
        weights = np.array([CORE_WEIGHTS[k] for k in kinds], dtype=float)
        kind = kinds[int(rng.choice(len(kinds), p=weights / weights.sum()))]
    core = symmetric_core(kind, num_blocks, random_rational(rng))
    gadget = random_gadget(rng, block_size)
    gate = block_expand(core, gadget)
    return gate, BlockView(signature(gate), block_size)


# Matrices and domain signatures

def even_weight_columns(block_size: int) -> List[int]:
    """Column indices of {0,1}^l with an even number of ones."""
    return [c for c in range(1 << block_size) if not bin(c).count("1") & 1]


def random_full_rank_matrix(
    rng: np.random.Generator,
    q: int,
    cols: int,
    entries: Sequence[int] = (-2, -1, 0, 1, 2),
    support: Optional[Sequence[int]] = None,
) -> TransformMatrix:
    """Random integer q x cols matrix of rank q, zero outside the ``support`` columns."""
    allowed = set(range(cols)) if support is None else set(support)
    if len(allowed) < q:
        raise ShapeError(f"a {q} x {cols} matrix on {len(allowed)} columns cannot have rank {q}")
    while True:
        m = as_matrix([[int(rng.choice(entries)) if c in allowed else 0 for c in range(cols)]
                       for _ in range(q)])
        if exact_rank(m) == q:
            return TransformMatrix(m)


def random_domain_signature(rng: np.random.Generator, q: int, arity: int, density: float = 0.7) -> DomainSignature:
    values = [random_rational(rng) if rng.random() < density else Scalar(0) for _ in range(q ** arity)]
    return DomainSignature(q, arity, tuple(values))


def random_symmetric_signature(rng: np.random.Generator, q: int, arity: int) -> DomainSignature:
    """Symmetric signature: the value depends only on the multiset of inputs."""
    by_type: Dict[Tuple[int, ...], Scalar] = {}
    values = []
    for x in product(range(q), repeat=arity):
        key = tuple(sorted(x))
        if key not in by_type:
            by_type[key] = random_rational(rng, allow_zero=True)
        values.append(by_type[key])
    return DomainSignature(q, arity, tuple(values), symmetric=True)


# Grids

def random_grid(rng: np.random.Generator, q: int, max_edges: int = 8) -> SignatureGrid:
    """Random bipartite grid with 1-3 vertices per side and random dense signatures."""
    nu, nv = int(rng.integers(1, 4)), int(rng.integers(1, 4))
    m = int(rng.integers(1, max_edges + 1))
    edges = [(f"u{int(rng.integers(nu))}", f"v{int(rng.integers(nv))}") for _ in range(m)]
    degree: Dict[str, int] = {}
    for a, b in edges:
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
    vertices = [GridVertex(f"u{k}", "U", random_domain_signature(rng, q, degree.get(f"u{k}", 0)))
                for k in range(nu)]
    vertices += [GridVertex(f"v{k}", "V", random_domain_signature(rng, q, degree.get(f"v{k}", 0)))
                 for k in range(nv)]
    return SignatureGrid(q, vertices, edges)


GRID_SHAPES = ("cycle4", "cycle6", "star3", "star4", "ladder")


def _grid_skeleton(shape: str) -> Tuple[Dict[str, Point], List[Tuple[str, str]]]:
    if shape in ("cycle4", "cycle6"):
        pts = [(0, 0), (1, 0), (1, 1), (0, 1)] if shape == "cycle4" else \
              [(0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (0, 1)]
        coords = {f"g{k}": p for k, p in enumerate(pts)}
        n = len(pts)
        return coords, [(f"g{k}", f"g{(k + 1) % n}") for k in range(n)]
    if shape in ("star3", "star4"):
        arms = [(1, 0), (0, 1), (-1, 0), (0, -1)][: 3 if shape == "star3" else 4]
        coords = {"g0": (0, 0), **{f"g{k + 1}": p for k, p in enumerate(arms)}}
        return coords, [("g0", f"g{k + 1}") for k in range(len(arms))]
    if shape == "ladder":
        coords = {f"g{r * 3 + c}": (c, r) for r in range(2) for c in range(3)}
        edges = [("g0", "g1"), ("g1", "g2"), ("g3", "g4"), ("g4", "g5"),
                 ("g0", "g3"), ("g1", "g4"), ("g2", "g5")]
        return coords, edges
    raise ValueError(f"unknown grid shape {shape!r}")


def random_matchgate_grid(
    rng: np.random.Generator,
    shape: Optional[str] = None,
    max_vertices: int = 6,
) -> Tuple[SignatureGrid, Dict[str, Matchgate]]:
    """Boolean planar grid whose every vertex is a random matchgate.

    Vertex sides follow the coordinate parity, so every skeleton is
    bipartite; each vertex's edge order is counterclockwise in the drawing.
    """
    if shape is None:
        shape = GRID_SHAPES[int(rng.integers(len(GRID_SHAPES)))]
    coords, pairs = _grid_skeleton(shape)
    names = sorted(coords)
    index = {name: k for k, name in enumerate(names)}
    rotation = rotation_from_coordinates({index[n]: coords[n] for n in names},
                                         [(index[a], index[b]) for a, b in pairs])
    edge_of = {}
    for k, (a, b) in enumerate(pairs):
        edge_of[(index[a], index[b])] = k
        edge_of[(index[b], index[a])] = k
    orders = {name: [edge_of[(index[name], u)] for u in rotation[index[name]]] for name in names}
    gates: Dict[str, Matchgate] = {}
    vertices: List[GridVertex] = []
    for name in names:
        x, y = coords[name]
        gate = random_matchgate(rng, len(orders[name]), max_vertices)
        gates[name] = gate
        vertices.append(GridVertex(name, "U" if (x + y) % 2 == 0 else "V", signature(gate).as_domain()))
    return SignatureGrid(2, vertices, pairs, orders), gates


def exact_one_cycle_grid() -> Tuple[SignatureGrid, Dict[str, Matchgate]]:
    """4-cycle with Exact-One everywhere, each vertex realized by a 3-vertex path; Holant 2."""
    grid = cycle_grid([exact_one(2)] * 4)
    path = Matchgate(3, [(1, 2, 1), (2, 3, 1)], [1, 3], {1: (2,), 2: (1, 3), 3: (2,)})
    return grid, {name: path for name in grid.vertices}


# The 3 x 2 grid with externals at the corners

GAMMA1_ORDERS: Dict[str, Tuple[int, ...]] = {
    "reading": (1, 2, 5, 6),
    "face": (1, 2, 6, 5),
}


def gamma1_gate(externals: Sequence[int] = GAMMA1_ORDERS["face"]) -> Matchgate:
    """3 x 2 grid (vertices 1..6 row-major from the bottom) with middle rung weight -1.

    The four corners 1, 2, 5, 6 are external in the given order.
    """
    return grid_graph(3, 2, weights={(3, 4): -1}, externals=externals)


def corner_orderings() -> List[Tuple[str, Tuple[int, ...]]]:
    """Named orderings of the corners: the eight dihedral walks of the boundary, then reading order."""
    ring = [1, 2, 6, 5]
    out: List[Tuple[str, Tuple[int, ...]]] = []
    for start in range(4):
        cyc = tuple(ring[start:] + ring[:start])
        out.append((f"ccw-from-{cyc[0]}", cyc))
        rev = tuple([cyc[0]] + list(reversed(cyc[1:])))
        out.append((f"cw-from-{rev[0]}", rev))
    out.append(("reading", GAMMA1_ORDERS["reading"]))
    return out
