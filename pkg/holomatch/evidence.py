"""
Evidence packs for harness runs.

A pack is a directory holding everything needed to reproduce and audit a
run:

- manifest.json: run id, environment, seed, parameters, caps and durations
- report.json: the deterministic report list (byte-identical for a seed)
- run_log.txt: timestamped human-readable log
- report.md: summary table
"""

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Union

from .config import get_config_value
from .types import HarnessReport, summarize_reports

REQUIRED_FILES = ('manifest.json', 'report.json', 'run_log.txt')


def report_json(reports: List[HarnessReport]) -> str:
    """Canonical JSON of the reports: sorted keys, no timing."""
    payload = {
        'summary': summarize_reports(reports),
        'reports': [r.to_dict() for r in reports],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def create_evidence_pack(
    reports: List[HarnessReport],
    evidence_dir: Union[str, Path],
    manifest: Dict[str, Any],
) -> Path:
    """Write an evidence pack for ``reports``.

    Args:
        reports: Harness reports of the run
        evidence_dir: Target directory (created if missing)
        manifest: Output of ``create_manifest``

    Returns:
        Path to the evidence pack directory

    Example:
        >>> reports = run_harness(['demo-gamma1'])
        >>> manifest = create_manifest(reports, None, capture_environment())
        >>> create_evidence_pack(reports, './evidence/run_001', manifest)
    """
    evidence_path = Path(evidence_dir)
    evidence_path.mkdir(parents=True, exist_ok=True)

    with open(evidence_path / 'manifest.json', 'w') as f:
        json.dump(manifest, f, indent=2, default=str)

    (evidence_path / 'report.json').write_text(report_json(reports))

    _write_run_log(evidence_path / 'run_log.txt', reports, manifest)

    if get_config_value('evidence', 'write_markdown', True):
        _write_report(evidence_path / 'report.md', reports, manifest)

    return evidence_path


def _write_run_log(log_path: Path, reports: List[HarnessReport], manifest: Dict[str, Any]) -> None:
    """Write timestamped run log."""
    with open(log_path, 'w') as f:
        f.write("Harness Run Log\n")
        f.write(f"{'=' * 50}\n\n")
        f.write(f"Timestamp: {manifest.get('timestamp', 'unknown')}\n")
        f.write(f"Run ID: {manifest.get('run_id', 'unknown')}\n")
        f.write(f"Seed: {manifest.get('seed')}\n\n")
        for r in reports:
            stamp = datetime.now(timezone.utc).isoformat(timespec='seconds')
            status = "PASS" if r.passed else "FAIL"
            f.write(f"[{stamp}] {r.check}: {status} ({r.duration:.3f} s)\n")
            f.write(f"    {r.claim}\n")
            if not r.passed:
                f.write(f"    witness: {json.dumps(r.witness, sort_keys=True, default=str)}\n")
        summary = summarize_reports(reports)
        f.write(f"\n{summary['passed']}/{summary['total']} checks passed\n")


def _write_report(report_path: Path, reports: List[HarnessReport], manifest: Dict[str, Any]) -> None:
    """Write human-readable markdown report."""
    with open(report_path, 'w') as f:
        f.write("# Harness Evidence Report\n\n")

        f.write("## Summary\n\n")
        summary = summarize_reports(reports)
        f.write(f"- **Run ID**: `{manifest.get('run_id', 'unknown')}`\n")
        f.write(f"- **Timestamp**: {manifest.get('timestamp', 'unknown')}\n")
        f.write(f"- **Seed**: {manifest.get('seed')}\n")
        f.write(f"- **Checks passed**: {summary['passed']}/{summary['total']}\n\n")

        f.write("## Environment\n\n")
        env = manifest.get('environment', {})
        python_info = env.get('python', {})
        f.write(f"- **Python**: {python_info.get('version', 'unknown')} "
                f"({python_info.get('implementation', 'unknown')})\n")
        platform_info = env.get('platform', {})
        f.write(f"- **Platform**: {platform_info.get('system', 'unknown')} "
                f"{platform_info.get('release', '')} on {platform_info.get('machine', 'unknown')}\n")
        git_info = env.get('git')
        if git_info:
            f.write(f"- **Git**: {git_info.get('branch', 'unknown')} @ "
                    f"{str(git_info.get('commit', 'unknown'))[:8]}\n")
        f.write("\n")

        f.write("## Checks\n\n")
        f.write("| Check | Claim | Result | Seed | Duration |\n")
        f.write("|-------|-------|--------|------|----------|\n")
        for r in reports:
            result = "✓ pass" if r.passed else "✗ fail"
            seed = "-" if r.seed is None else str(r.seed)
            f.write(f"| {r.check} | {r.claim} | {result} | {seed} | {r.duration:.2f} s |\n")
        f.write("\n")

        failed = [r for r in reports if not r.passed]
        if failed:
            f.write("## Witnesses\n\n")
            for r in failed:
                f.write(f"### {r.check}\n\n```json\n")
                f.write(json.dumps(r.witness, indent=2, sort_keys=True, default=str))
                f.write("\n```\n\n")

        f.write("## Evidence Pack Contents\n\n")
        f.write("- `manifest.json`: Run metadata, environment and caps\n")
        f.write("- `report.json`: Deterministic check reports\n")
        f.write("- `run_log.txt`: Execution log\n")


def validate_evidence_pack(evidence_dir: Union[str, Path]) -> Dict[str, Any]:
    """Check an evidence pack for completeness.

    Checks the required files, JSON validity, environment and seed presence
    in the manifest, and that report.json carries a report list whose
    summary matches it.

    Returns:
        ``{'valid', 'issues', 'warnings', 'checks', 'summary'}``
    """
    evidence_path = Path(evidence_dir)
    issues: List[str] = []
    warnings: List[str] = []
    checks: Dict[str, bool] = {}

    for name in REQUIRED_FILES:
        exists = (evidence_path / name).exists()
        checks[f"file_{name}"] = exists
        if not exists:
            issues.append(f"Missing required file: {name}")
    if not (evidence_path / 'report.md').exists():
        warnings.append("report.md not present")

    manifest = _load_json(evidence_path / 'manifest.json', 'manifest.json', issues, checks)
    if manifest is not None:
        if 'environment' not in manifest:
            issues.append("Missing environment information in manifest")
        else:
            checks['has_environment'] = True
            env = manifest['environment'] or {}
            if 'python' not in env:
                warnings.append("Python version not captured in environment")
            if 'packages' not in env:
                warnings.append("Package versions not captured in environment")
        if 'seed' not in manifest:
            issues.append("Missing seed information in manifest")
        else:
            checks['has_seed'] = True
        if 'caps' not in manifest:
            warnings.append("Enumeration caps not recorded in manifest")

    report = _load_json(evidence_path / 'report.json', 'report.json', issues, checks)
    if report is not None:
        entries = report.get('reports') if isinstance(report, dict) else None
        if not isinstance(entries, list):
            issues.append("report.json has no report list")
            checks['has_reports'] = False
        else:
            checks['has_reports'] = True
            if not entries:
                warnings.append("report.json lists no checks")
            missing = [k for k in ('check', 'passed', 'witness')
                       if any(k not in e for e in entries)]
            if missing:
                issues.append(f"Reports missing fields: {', '.join(missing)}")
            failing_bare = [e.get('check') for e in entries
                                if not e.get('passed', True) and e.get('witness') in (None, {})]
            if failing_bare:
                issues.append(f"Failing reports without witness: {', '.join(map(str, failing_bare))}")
            total = (report.get('summary') or {}).get('total')
            checks['summary_consistent'] = total == len(entries)
            if total != len(entries):
                issues.append(f"report.json summary counts {total} checks, list has {len(entries)}")

    return {
        'valid': not issues,
        'issues': issues,
        'warnings': warnings,
        'checks': checks,
        'summary': {
            'total_issues': len(issues),
            'total_warnings': len(warnings),
            'checks_passed': sum(1 for v in checks.values() if v),
            'checks_total': len(checks),
        },
    }


def _load_json(path: Path, name: str, issues: List[str], checks: Dict[str, bool]) -> Any:
    if not path.exists():
        return None
    try:
        with open(path) as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        issues.append(f"Invalid JSON in {name}: {e}")
        checks[f"json_valid_{name}"] = False
        return None
    checks[f"json_valid_{name}"] = True
    return data
