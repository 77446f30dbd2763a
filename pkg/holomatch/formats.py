"""
Line-based text formats for matchgates, signatures, matrices, grids and
decompositions.

Every format ignores blank lines and ``#`` comments. Scalars use the literal
grammar of :mod:`holomatch.scalar` and always take the rest of the line, so
they may contain spaces.
"""

from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple, Union

import numpy as np

from .decompose import CondensedSignature, Decomposition
from .holant import GridVertex, SignatureGrid
from .holographic import DomainSignature, TransformMatrix, equality
from .linalg import as_matrix
from .matchgate import Matchgate
from .scalar import ONE, ZERO, Scalar
from .signatures import BooleanSignature, to_bits
from .types import ShapeError

PathLike = Union[str, Path]


def _lines(text: str) -> Iterator[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _int(token: str, number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ShapeError(f"line {number}: expected an integer, got {token!r}") from None


def _split(line: str, number: int) -> Tuple[str, str]:
    parts = line.split(None, 1)
    if len(parts) < 2:
        raise ShapeError(f"line {number}: missing value after {parts[0]!r}")
    return parts[0], parts[1]


# Matchgates

def parse_matchgate(text: str) -> Matchgate:
    """Parse ``nodes``, ``edge u v w``, ``external ...`` and optional ``rot v: ...`` lines.

    Raises:
        ShapeError: Malformed lines or a missing ``nodes`` line.
        MatchgateError: The described graph is invalid.
    """
    nodes: Optional[int] = None
    edges: List[Tuple[int, int, Scalar]] = []
    externals: List[int] = []
    rotation: Dict[int, List[int]] = {}
    for number, line in _lines(text):
        key, rest = _split(line, number)
        if key == "nodes":
            nodes = _int(rest, number)
        elif key == "edge":
            parts = rest.split(None, 2)
            if len(parts) < 3:
                raise ShapeError(f"line {number}: edge needs 'u v weight'")
            edges.append((_int(parts[0], number), _int(parts[1], number), Scalar.parse(parts[2])))
        elif key == "external":
            externals += [_int(t, number) for t in rest.split()]
        elif key == "rot":
            head, _, tail = rest.partition(":")
            rotation[_int(head.strip(), number)] = [_int(t, number) for t in tail.split()]
        else:
            raise ShapeError(f"line {number}: unknown matchgate keyword {key!r}")
    if nodes is None:
        raise ShapeError("matchgate file needs a 'nodes <k>' line")
    return Matchgate(nodes, edges, externals, rotation if rotation else None)


def dump_matchgate(gate: Matchgate) -> str:
    out = [f"nodes {gate.num_vertices}"]
    out += [f"edge {u} {v} {w}" for u, v, w in gate.edges()]
    if gate.externals:
        out.append("external " + " ".join(str(x) for x in gate.externals))
    if gate.rotation is not None:
        for v in sorted(gate.rotation):
            out.append(f"rot {v}: " + " ".join(str(x) for x in gate.rotation[v]))
    return "\n".join(out) + "\n"


# Boolean signatures

def parse_signature(text: str) -> BooleanSignature:
    """Parse ``arity n`` followed by ``<bitstring> <scalar>`` lines; absent entries are 0."""
    arity: Optional[int] = None
    entries: Dict[str, Scalar] = {}
    for number, line in _lines(text):
        key, rest = line.split(None, 1) if " " in line or "\t" in line else (line, "")
        if key == "arity":
            arity = _int(rest, number)
            continue
        if arity is None:
            raise ShapeError(f"line {number}: entries before the 'arity' line")
        if len(key) != arity or set(key) - {"0", "1"}:
            raise ShapeError(f"line {number}: {key!r} is not a bitstring of length {arity}")
        if not rest:
            raise ShapeError(f"line {number}: missing value for {key}")
        entries[key] = Scalar.parse(rest)
    if arity is None:
        raise ShapeError("signature file needs an 'arity <n>' line")
    return BooleanSignature.from_entries(arity, entries)


def dump_signature(s: BooleanSignature) -> str:
    out = [f"arity {s.arity}"]
    out += [f"{bits} {value}" for bits, value in s.nonzero_items()]
    return "\n".join(out) + "\n"


# Domain signatures

def _index_tuple(token: str, number: int) -> Tuple[int, ...]:
    inner = token.strip().strip("()")
    if not inner:
        return ()
    return tuple(_int(t, number) for t in inner.split(","))


def parse_domain_signature(text: str) -> DomainSignature:
    """Parse ``q``, ``arity`` and ``<i1,i2,...> <scalar>`` lines (``()`` for arity 0)."""
    q: Optional[int] = None
    arity: Optional[int] = None
    entries: Dict[Tuple[int, ...], Scalar] = {}
    for number, line in _lines(text):
        key, rest = _split(line, number)
        if key == "q":
            q = _int(rest, number)
        elif key == "arity":
            arity = _int(rest, number)
        else:
            entries[_index_tuple(key, number)] = Scalar.parse(rest)
    if q is None or arity is None:
        raise ShapeError("domain signature file needs 'q' and 'arity' lines")
    values = [ZERO] * (q ** arity)
    for assignment, value in entries.items():
        if len(assignment) != arity or any(not 0 <= x < q for x in assignment):
            raise ShapeError(f"index {assignment} does not fit q={q}, arity={arity}")
        k = 0
        for x in assignment:
            k = k * q + x
        values[k] = value
    return DomainSignature(q, arity, tuple(values))


def dump_domain_signature(f: DomainSignature) -> str:
    out = [f"q {f.q}", f"arity {f.arity}"]
    for assignment, value in f.nonzero_items():
        token = ",".join(str(x) for x in assignment) if assignment else "()"
        out.append(f"{token} {value}")
    return "\n".join(out) + "\n"


def parse_any_signature(text: str) -> DomainSignature:
    """Domain signature file, or a Boolean signature file read as domain 2."""
    for _, line in _lines(text):
        if line.split()[0] == "q":
            return parse_domain_signature(text)
    return parse_signature(text).as_domain()


# Matrices

def parse_matrix(text: str) -> TransformMatrix:
    """Parse ``rows``, ``cols``, optional ``scale`` and one scalar per line in row-major order."""
    rows: Optional[int] = None
    cols: Optional[int] = None
    scale: Scalar = ONE
    values: List[Scalar] = []
    for number, line in _lines(text):
        key = line.split()[0]
        if key == "rows":
            rows = _int(_split(line, number)[1], number)
        elif key == "cols":
            cols = _int(_split(line, number)[1], number)
        elif key == "scale":
            scale = Scalar.parse(_split(line, number)[1])
        else:
            values.append(Scalar.parse(line))
    if rows is None or cols is None:
        raise ShapeError("matrix file needs 'rows' and 'cols' lines")
    if len(values) != rows * cols:
        raise ShapeError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(values)}")
    m = as_matrix([values[r * cols:(r + 1) * cols] for r in range(rows)])
    return TransformMatrix(m, scale)


def dump_matrix(m: Union[TransformMatrix, np.ndarray]) -> str:
    """Matrix file text; a TransformMatrix with a tracked scale gets a ``scale`` line."""
    matrix = m.matrix if isinstance(m, TransformMatrix) else m
    rows, cols = matrix.shape
    out = [f"rows {rows}", f"cols {cols}"]
    if isinstance(m, TransformMatrix) and m.scale != ONE:
        out.append(f"scale {m.scale}")
    out += [str(x) for x in matrix.reshape(-1)]
    return "\n".join(out) + "\n"


# Grids

def parse_grid(text: str, base_dir: Optional[PathLike] = None) -> SignatureGrid:
    """Parse a signature-grid file.

    Lines: ``q <q>``; ``sig <name> <path>`` (signature file relative to
    ``base_dir``) or ``sig <name> =<n>`` (equality of arity n);
    ``uvertex <id> <sigref>`` / ``vvertex <id> <sigref>`` where ``sigref``
    is a declared name or ``=<n>``; ``edge <u> <v>``; and
    ``order <id>: <edge indices ccw>`` with 0-based edge indices.
    """
    q: Optional[int] = None
    declared: Dict[str, str] = {}
    raw_vertices: List[Tuple[str, str, str, int]] = []
    edges: List[Tuple[str, str]] = []
    orders: Dict[str, List[int]] = {}
    for number, line in _lines(text):
        key, rest = _split(line, number)
        parts = rest.split()
        if key == "q":
            q = _int(rest, number)
        elif key == "sig" and len(parts) == 2:
            declared[parts[0]] = parts[1]
        elif key in ("uvertex", "vvertex") and len(parts) == 2:
            raw_vertices.append((parts[0], "U" if key == "uvertex" else "V", parts[1], number))
        elif key == "edge" and len(parts) == 2:
            edges.append((parts[0], parts[1]))
        elif key == "order":
            head, _, tail = rest.partition(":")
            orders[head.strip()] = [_int(t, number) for t in tail.split()]
        else:
            raise ShapeError(f"line {number}: cannot parse {line!r}")
    if q is None:
        raise ShapeError("grid file needs a 'q <q>' line")

    base = Path(base_dir) if base_dir is not None else Path.cwd()
    cache: Dict[str, DomainSignature] = {}

    def resolve(ref: str, number: int) -> DomainSignature:
        target = declared.get(ref, ref)
        if target.startswith("="):
            return equality(q, _int(target[1:], number))
        if target not in cache:
            path = base / target
            if not path.exists():
                raise ShapeError(f"line {number}: signature {ref!r} not found at {path}")
            cache[target] = parse_any_signature(path.read_text())
        return cache[target]

    vertices = [GridVertex(name, side, resolve(ref, number)) for name, side, ref, number in raw_vertices]
    return SignatureGrid(q, vertices, edges, orders)


# Decompositions

def dump_decomposition(d: Decomposition) -> str:
    out = [f"rank {d.rank}", f"block {d.block_size}", f"blocks {d.num_blocks}", f"scalar {d.scalar}"]
    for name in ("theta", "eta", "gamma", "shift", "ratio", "base_index", "base_block", "base_value"):
        value = getattr(d, name)
        if value is not None:
            out.append(f"{name} {value}")
    if d.g is not None:
        out += [f"g {to_bits(a, d.block_size)} {v}" for a, v in enumerate(d.g.values)]
    if d.core is not None:
        out += [f"core {bits} {v}" for bits, v in d.core.nonzero_items()]
    return "\n".join(out) + "\n"


def parse_decomposition(text: str) -> Decomposition:
    fields: Dict[str, str] = {}
    g: Dict[str, Scalar] = {}
    core: Dict[str, Scalar] = {}
    for number, line in _lines(text):
        key, rest = _split(line, number)
        if key in ("g", "core"):
            bits, value = _split(rest, number)
            (g if key == "g" else core)[bits] = Scalar.parse(value)
        else:
            fields[key] = rest
    try:
        rank = int(fields["rank"])
        l = int(fields["block"])
        n = int(fields["blocks"])
    except KeyError as exc:
        raise ShapeError(f"decomposition file is missing {exc.args[0]!r}") from None
    condensed = None
    if rank > 0:
        values = [g.get(to_bits(a, l), ZERO) for a in range(1 << l)]
        condensed = CondensedSignature(l, tuple(values))
    core_sig = BooleanSignature.from_entries(n, core) if rank > 0 else None

    def opt_scalar(name: str) -> Optional[Scalar]:
        return Scalar.parse(fields[name]) if name in fields else None

    return Decomposition(
        rank, l, n,
        scalar=Scalar.parse(fields.get("scalar", "1")),
        g=condensed,
        core=core_sig,
        theta=fields.get("theta"),
        eta=fields.get("eta"),
        gamma=fields.get("gamma"),
        shift=int(fields["shift"]) if "shift" in fields else None,
        ratio=opt_scalar("ratio"),
        base_index=fields.get("base_index"),
        base_block=fields.get("base_block"),
        base_value=opt_scalar("base_value"),
    )


# Files

def load_matchgate(path: PathLike) -> Matchgate:
    return parse_matchgate(Path(path).read_text())


def load_signature(path: PathLike) -> BooleanSignature:
    return parse_signature(Path(path).read_text())


def load_domain_signature(path: PathLike) -> DomainSignature:
    return parse_any_signature(Path(path).read_text())


def load_matrix(path: PathLike) -> TransformMatrix:
    return parse_matrix(Path(path).read_text())


def load_grid(path: PathLike) -> SignatureGrid:
    p = Path(path)
    return parse_grid(p.read_text(), base_dir=p.parent)


def load_decomposition(path: PathLike) -> Decomposition:
    return parse_decomposition(Path(path).read_text())
