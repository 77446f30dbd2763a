"""
holomatch: exact matchgate signatures, holographic transformations and
Holant evaluation.

- Planar matchgates with rotation systems, brute-force and FKT PerfMatch
- Signature certificates: parity, matchgate identities, blockwise symmetry,
  matrix-form rank and determinant identities
- Holographic transformations over any domain size, with right inverses
- Decomposition of blockwise symmetric matchgate signatures and the gadget
  surgeries that realize their factors
- Bipartite Holant and #CSP evaluation, brute force and through FKT
- A seeded harness that writes evidence packs

All arithmetic is exact over Q(i, sqrt2).
"""

__version__ = "0.1.0"

from .scalar import Scalar, as_scalar
from .matchgate import Matchgate, compose, perfmatch_bruteforce, signature
from .fkt import perfmatch_fkt
from .signatures import (
    BlockView,
    BooleanSignature,
    check_det_identities,
    check_mgi,
    check_parity,
    find_min_weight_pair,
    is_blockwise_symmetric,
    matrix_form,
)
from .holographic import (
    DomainSignature,
    TransformMatrix,
    equality,
    hadamard,
    matrix_form_factored,
    right_inverse,
    transform,
)
from .decompose import (
    Decomposition,
    condensed_signature,
    condensed_witness,
    core_witness,
    decompose,
    reconstruct,
)
from .holant import CSPInstance, SignatureGrid, holant_bruteforce, holant_fkt, verify_holant_theorem
from .invariants import InvariantCheck, InvariantChecker, create_invariant
from .harness import run_harness
from .types import (
    CapExceededError,
    HarnessReport,
    HolomatchError,
    MatchgateError,
    PlanarityError,
    PreconditionError,
    RankError,
    ScalarParseError,
    ShapeError,
)

__all__ = [
    "Scalar",
    "as_scalar",
    "Matchgate",
    "compose",
    "perfmatch_bruteforce",
    "perfmatch_fkt",
    "signature",
    "BlockView",
    "BooleanSignature",
    "check_det_identities",
    "check_mgi",
    "check_parity",
    "find_min_weight_pair",
    "is_blockwise_symmetric",
    "matrix_form",
    "DomainSignature",
    "TransformMatrix",
    "equality",
    "hadamard",
    "matrix_form_factored",
    "right_inverse",
    "transform",
    "Decomposition",
    "condensed_signature",
    "condensed_witness",
    "core_witness",
    "decompose",
    "reconstruct",
    "CSPInstance",
    "SignatureGrid",
    "holant_bruteforce",
    "holant_fkt",
    "verify_holant_theorem",
    "InvariantCheck",
    "InvariantChecker",
    "create_invariant",
    "run_harness",
    "HarnessReport",
    "HolomatchError",
    "ScalarParseError",
    "MatchgateError",
    "PlanarityError",
    "ShapeError",
    "RankError",
    "CapExceededError",
    "PreconditionError",
]
