"""
Core type definitions for holomatch.

This module defines the exception hierarchy, the verdict values returned by
the signature checks, and the record types used by the invariant checker and
the theorem harness.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Literal, Optional, Tuple


# Exceptions

class HolomatchError(Exception):
    """Base class for every error raised by holomatch."""


class ScalarParseError(HolomatchError, ValueError):
    """A scalar literal does not follow the ``R [i|r2|ir2]`` grammar."""


class MatchgateError(HolomatchError, ValueError):
    """Invalid matchgate graph, or surgery applied to an invalid vertex."""


class PlanarityError(MatchgateError):
    """Rotation system fails the Euler check or externals share no face."""


class ShapeError(HolomatchError, ValueError):
    """Dimension or arity mismatch."""


class RankError(HolomatchError, ValueError):
    """Rank deficiency, or a rank the operation cannot accept."""


class CapExceededError(HolomatchError, RuntimeError):
    """An exhaustive enumeration would exceed its configured cap."""


class PreconditionError(HolomatchError, ValueError):
    """A certificate required before an operation did not pass."""


class ConfigError(HolomatchError, ValueError):
    """A configuration file cannot be read or is not valid TOML."""


# Type aliases

Bits = str
"""A bitstring such as ``'0110'``; the first character is the most significant bit."""

Severity = Literal['warning', 'error', 'critical']


# Verdicts

@dataclass(frozen=True)
class ParityVerdict:
    """Classification of a signature by the parity condition.

    Attributes:
        kind: ``'even'``, ``'odd'``, ``'zero'`` or ``'violated'``
        even_witness: First nonzero entry of even weight (only when violated)
        odd_witness: First nonzero entry of odd weight (only when violated)
    """
    kind: Literal['even', 'odd', 'zero', 'violated']
    even_witness: Optional[Bits] = None
    odd_witness: Optional[Bits] = None

    @property
    def passed(self) -> bool:
        return self.kind != 'violated'

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {'kind': self.kind, 'passed': self.passed}
        if self.kind == 'violated':
            out['even_witness'] = self.even_witness
            out['odd_witness'] = self.odd_witness
        return out


@dataclass(frozen=True)
class MGIVerdict:
    """Result of a matchgate-identity sweep.

    ``positions`` are 1-based and strictly increasing. ``residual`` is the
    scalar literal of the failing alternating sum.
    """
    passed: bool
    alpha: Optional[Bits] = None
    positions: Optional[Tuple[int, ...]] = None
    residual: Optional[str] = None
    mode: Literal['exhaustive', 'sampled'] = 'exhaustive'
    evaluated: int = 0

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {'passed': self.passed, 'mode': self.mode,
                               'evaluated': self.evaluated}
        if not self.passed:
            out.update(alpha=self.alpha, positions=list(self.positions or ()),
                       residual=self.residual)
        return out


@dataclass(frozen=True)
class SymmetryVerdict:
    """Blockwise symmetry verdict.

    On failure, swapping blocks ``swap`` (1-based, adjacent) of ``index``
    gives an index whose entry differs.
    """
    passed: bool
    swap: Optional[Tuple[int, int]] = None
    index: Optional[Bits] = None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {'passed': self.passed}
        if not self.passed:
            out.update(swap=list(self.swap or ()), index=self.index)
        return out


@dataclass(frozen=True)
class DetVerdict:
    """Determinant-identity verdict.

    ``family`` is ``'A'`` (flip e_s in block 2 and e_t in block 3) or ``'B'``
    (flip e_s + e_t in block 2); rows always flip e_i + e_j in block 1.
    """
    passed: bool
    family: Optional[str] = None
    base: Optional[Bits] = None
    i: Optional[int] = None
    j: Optional[int] = None
    s: Optional[int] = None
    t: Optional[int] = None
    determinant: Optional[str] = None
    evaluated: int = 0

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {'passed': self.passed, 'evaluated': self.evaluated}
        if not self.passed:
            out.update(family=self.family, base=self.base, i=self.i, j=self.j,
                       s=self.s, t=self.t, determinant=self.determinant)
        return out


@dataclass(frozen=True)
class MinPair:
    """Pair of linearly independent matrix-form rows minimizing wt(sigma + tau)."""
    sigma: Bits
    tau: Bits
    weight: int

    def to_dict(self) -> Dict[str, Any]:
        return {'sigma': self.sigma, 'tau': self.tau, 'weight': self.weight}


@dataclass(frozen=True)
class HolantVerdict:
    """Both sides of a holographic-transformation identity."""
    passed: bool
    left: str
    right: str
    scale_correction: str = "1"

    def to_dict(self) -> Dict[str, Any]:
        return {'passed': self.passed, 'left': self.left, 'right': self.right,
                'scale_correction': self.scale_correction}


# Invariant checks

InvariantFunc = Callable[..., bool]
"""Function signature for invariant checks: ``func(view) -> bool``."""


@dataclass
class InvariantCheck:
    """Represents a single invariant check configuration.

    Attributes:
        name: Human-readable name for the invariant
        func: Function that performs the check on a BlockView
        severity: How to handle violations ('warning', 'error', 'critical')
        total_checks: Number of times this invariant has been checked
        violations: Number of times this invariant has been violated
    """
    name: str
    func: InvariantFunc
    severity: Severity = 'warning'
    total_checks: int = 0
    violations: int = 0


# Harness

@dataclass
class HarnessReport:
    """Outcome of one named harness check.

    Attributes:
        check: Check name, e.g. ``'verify-rank-bound'``
        claim: One-line statement of the property being checked
        passed: Whether every trial passed
        witness: Deterministic payload (counts, ranks, failing indices)
        seed: RNG seed, or None for deterministic checks
        duration: Wall-clock seconds; excluded from ``to_dict`` by default
    """
    check: str
    claim: str
    passed: bool
    witness: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    duration: float = 0.0

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            'check': self.check,
            'claim': self.claim,
            'passed': self.passed,
            'seed': self.seed,
            'witness': self.witness,
        }
        if include_timing:
            out['duration'] = round(self.duration, 6)
        return out


def summarize_reports(reports: List[HarnessReport]) -> Dict[str, Any]:
    return {
        'total': len(reports),
        'passed': sum(1 for r in reports if r.passed),
        'failed': [r.check for r in reports if not r.passed],
    }
