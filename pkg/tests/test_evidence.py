"""
Tests for manifests and evidence pack generation.
"""

import json

import pytest

from holomatch.config import clear_overrides, set_override
from holomatch.environment import capture_environment
from holomatch.evidence import create_evidence_pack, report_json, validate_evidence_pack
from holomatch.harness import demo_gamma1, verify_fkt
from holomatch.manifest import create_manifest
from holomatch.types import HarnessReport


@pytest.fixture(autouse=True)
def _reset_config():
    clear_overrides()
    yield
    clear_overrides()


@pytest.fixture
def reports():
    return [demo_gamma1(), verify_fkt(trials=3, seed=5)]


def write_pack(tmp_path, reports, seed=5):
    manifest = create_manifest(reports, seed, capture_environment(), params={'trials': 3})
    return create_evidence_pack(reports, tmp_path / "evidence", manifest)


def test_manifest_fields(reports):
    """Manifest carries run metadata, caps and per-check durations."""
    manifest = create_manifest(reports, 5, capture_environment(), params={'trials': 3, 'order': (1, 2)})
    for key in ('run_id', 'timestamp', 'environment', 'seed', 'seeds', 'params', 'caps',
                'checks', 'summary'):
        assert key in manifest
    assert manifest['params'] == {'trials': 3, 'order': [1, 2]}
    assert manifest['caps']['bruteforce_vertices'] == 24
    assert [c['check'] for c in manifest['checks']] == ['demo-gamma1', 'verify-fkt']
    assert manifest['summary'] == {'total': 2, 'passed': 2, 'failed': []}
    env = manifest['environment']
    assert 'python' in env
    assert 'platform' in env


def test_manifest_records_cap_overrides(reports):
    set_override('caps', 'bruteforce_vertices', 10)
    manifest = create_manifest(reports, 5, {})
    assert manifest['caps']['bruteforce_vertices'] == 10


def test_pack_contents(tmp_path, reports):
    pack = write_pack(tmp_path, reports)
    for name in ('manifest.json', 'report.json', 'run_log.txt', 'report.md'):
        assert (pack / name).exists()
    log = (pack / 'run_log.txt').read_text()
    assert "demo-gamma1: PASS" in log
    assert "2/2 checks passed" in log
    assert "| verify-fkt |" in (pack / 'report.md').read_text()


def test_report_json_is_deterministic(tmp_path, reports):
    """report.json holds no timing, so reruns with one seed are byte-identical."""
    pack = write_pack(tmp_path, reports)
    rerun = [demo_gamma1(), verify_fkt(trials=3, seed=5)]
    assert (pack / 'report.json').read_text() == report_json(rerun)
    data = json.loads(report_json(reports))
    assert 'duration' not in data['reports'][0]
    assert data['summary']['total'] == 2


def test_markdown_can_be_disabled(tmp_path, reports):
    set_override('evidence', 'write_markdown', False)
    pack = write_pack(tmp_path, reports)
    assert not (pack / 'report.md').exists()
    result = validate_evidence_pack(pack)
    assert result['valid']
    assert "report.md not present" in result['warnings']


def test_validate_complete_pack(tmp_path, reports):
    result = validate_evidence_pack(write_pack(tmp_path, reports))
    assert result['valid'], result['issues']
    assert result['checks']['has_seed']
    assert result['checks']['summary_consistent']
    assert result['summary']['total_issues'] == 0


def test_validate_missing_file(tmp_path, reports):
    pack = write_pack(tmp_path, reports)
    (pack / 'run_log.txt').unlink()
    result = validate_evidence_pack(pack)
    assert not result['valid']
    assert "Missing required file: run_log.txt" in result['issues']


def test_validate_bad_json(tmp_path, reports):
    pack = write_pack(tmp_path, reports)
    (pack / 'manifest.json').write_text("{not json")
    result = validate_evidence_pack(pack)
    assert not result['valid']
    assert not result['checks']['json_valid_manifest.json']


def test_validate_failing_report_needs_witness(tmp_path):
    bare = HarnessReport('verify-fkt', "claim", passed=False)
    pack = write_pack(tmp_path, [bare])
    result = validate_evidence_pack(pack)
    assert not result['valid']
    assert any("without witness" in issue for issue in result['issues'])
    assert "witness:" in (pack / 'run_log.txt').read_text()


def test_validate_summary_mismatch(tmp_path, reports):
    pack = write_pack(tmp_path, reports)
    data = json.loads((pack / 'report.json').read_text())
    data['reports'].pop()
    (pack / 'report.json').write_text(json.dumps(data))
    result = validate_evidence_pack(pack)
    assert not result['valid']
    assert not result['checks']['summary_consistent']
