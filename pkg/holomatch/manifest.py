"""
Manifest generation for harness runs.

The manifest holds everything that may legitimately differ between two runs
with the same seed (run id, timestamps, environment, durations); the
deterministic results go to report.json instead.
"""

import uuid
from typing import Any, Dict, List, Optional

import numpy as np

from .config import load_config
from .types import HarnessReport, summarize_reports


def create_manifest(
    reports: List[HarnessReport],
    seed: Optional[int],
    environment: Dict[str, Any],
    params: Optional[Dict[str, Any]] = None,
    seeds: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """Create manifest dictionary with complete run metadata.

    Args:
        reports: Harness reports of the run
        seed: Seed shared by the randomized checks
        environment: Output of ``capture_environment()``
        params: Command parameters (trial counts, q, n, ...)
        seeds: Global seeding results from ``set_global_seeds()``

    Returns:
        Dictionary with run id, timestamp, environment, seed, parameters,
        enumeration caps, per-check durations and the pass/fail summary

    Example:
        >>> manifest = create_manifest(reports, 42, capture_environment(),
        ...                            params={'trials': 100})
    """
    config = load_config()
    return {
        'run_id': str(uuid.uuid4()),
        'timestamp': environment.get('timestamp', ''),
        'environment': environment,
        'seed': seed,
        'seeds': seeds or {},
        'params': _make_serializable(params or {}),
        'caps': dict(config.get('caps', {})),
        'checks': [
            {'check': r.check, 'passed': r.passed, 'duration': round(r.duration, 6)}
            for r in reports
        ],
        'summary': summarize_reports(reports),
    }


def _make_serializable(obj: Any) -> Any:
    """Convert numpy values, tuples and scalars to JSON-serializable form.

    Anything not recognized is stringified, which covers field Scalars.
    """
    if isinstance(obj, (int, float, str, bool, type(None))):
        return obj
    elif isinstance(obj, np.ndarray):
        return [_make_serializable(x) for x in obj.tolist()]
    elif isinstance(obj, (list, tuple)):
        return [_make_serializable(item) for item in obj]
    elif isinstance(obj, dict):
        return {str(key): _make_serializable(value) for key, value in obj.items()}
    elif isinstance(obj, (np.integer, np.floating)):
        return obj.item()
    else:
        return str(obj)
