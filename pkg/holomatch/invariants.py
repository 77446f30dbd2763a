"""
Invariant checking for generated signatures.

The harness runs a fixed set of named checks over every signature it builds
(parity, matchgate identities, blockwise symmetry, the rank bound and the
determinant identities) and records how often each one fails.

IMPORTANT: These checks certify properties of concrete signatures.
- A passing MGI + parity certificate is how holomatch recognizes matchgate
  signatures; no realizing graph is searched for
- A failing check on a generated gate points at a generator or algorithm bug
"""

from typing import Any, Dict, List

from .signatures import (
    BlockView,
    check_det_identities,
    check_mgi,
    check_parity,
    is_blockwise_symmetric,
    matrix_form,
)
from .types import InvariantCheck, InvariantFunc, Severity


class InvariantChecker:
    """Manages and executes invariant checks over block views.

    Example:
        >>> checker = InvariantChecker([parity_condition(), rank_at_most(2)])
        >>> violations = checker.check(view)
        >>> summary = checker.get_summary()
    """

    def __init__(self, invariants: List[InvariantCheck]):
        self.invariants = invariants

    def check(self, view: BlockView) -> List[str]:
        """Run every invariant on ``view``.

        A check that raises counts as violated.

        Returns:
            Names of the violated invariants

        Raises:
            RuntimeError: A ``critical`` invariant was violated.
        """
        violations: List[str] = []
        for inv in self.invariants:
            inv.total_checks += 1
            try:
                ok = bool(inv.func(view))
            except Exception:
                ok = False
            if not ok:
                inv.violations += 1
                violations.append(inv.name)
                if inv.severity == 'critical':
                    raise RuntimeError(f"Critical invariant '{inv.name}' violated")
        return violations

    def get_summary(self) -> Dict[str, Any]:
        """Totals plus per-invariant checks, violations and violation rate."""
        summary: Dict[str, Any] = {
            'total_checks': sum(inv.total_checks for inv in self.invariants),
            'total_violations': sum(inv.violations for inv in self.invariants),
            'invariants': [],
        }
        for inv in self.invariants:
            summary['invariants'].append({
                'name': inv.name,
                'severity': inv.severity,
                'checks': inv.total_checks,
                'violations': inv.violations,
                'violation_rate': inv.violations / inv.total_checks if inv.total_checks else 0.0,
            })
        return summary

    def reset(self) -> None:
        for inv in self.invariants:
            inv.total_checks = 0
            inv.violations = 0


def create_invariant(name: str, severity: Severity = 'warning'):
    """Decorator turning ``func(view) -> bool`` into an InvariantCheck.

    Example:
        >>> @create_invariant(name="nonzero", severity="error")
        ... def nonzero(view):
        ...     return not view.signature.is_zero()
    """
    def decorator(func: InvariantFunc) -> InvariantCheck:
        return InvariantCheck(name=name, func=func, severity=severity)
    return decorator


# Built-in invariant factories

def parity_condition(severity: Severity = 'error') -> InvariantCheck:
    return InvariantCheck("parity", lambda view: check_parity(view.signature).passed, severity)


def matchgate_identities(severity: Severity = 'error') -> InvariantCheck:
    """Exhaustive MGI sweep (arity up to the configured cap)."""
    return InvariantCheck("mgi", lambda view: check_mgi(view.signature).passed, severity)


def blockwise_symmetry(severity: Severity = 'error') -> InvariantCheck:
    return InvariantCheck("blockwise_symmetric", lambda view: is_blockwise_symmetric(view).passed, severity)


def rank_at_most(k: int, severity: Severity = 'error') -> InvariantCheck:
    """rank(M(G)) <= k."""
    return InvariantCheck(f"rank_at_most_{k}", lambda view: matrix_form(view).rank() <= k, severity)


def determinant_identities(severity: Severity = 'error') -> InvariantCheck:
    """2x2 determinant identities; views with fewer than three blocks pass vacuously."""
    def check_func(view: BlockView) -> bool:
        return view.num_blocks < 3 or check_det_identities(view).passed
    return InvariantCheck("det_identities", check_func, severity)


def standard_invariants() -> List[InvariantCheck]:
    """Checks every generated blockwise symmetric matchgate signature must pass."""
    return [
        parity_condition(),
        matchgate_identities(),
        blockwise_symmetry(),
        rank_at_most(2),
        determinant_identities(),
    ]
