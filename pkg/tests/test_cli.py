"""
Tests for the command-line interface.
"""

import json

import pytest
from click.testing import CliRunner

from holomatch.cli import cli
from holomatch.config import clear_overrides
from holomatch.decompose import block_expand, decompose
from holomatch.formats import (
    dump_decomposition,
    dump_matchgate,
    dump_signature,
    parse_domain_signature,
    parse_signature,
)
from holomatch.generators import GAMMA1_ORDERS, gamma1_gate, star_core
from holomatch.holographic import equality
from holomatch.matchgate import Matchgate, signature
from holomatch.scalar import Scalar
from holomatch.signatures import BlockView

GATE_TEXT = """\
nodes 2
edge 1 2 1/2 - 3i
external 1 2
rot 1: 2
rot 2: 1
"""

EQ4_TEXT = "arity 4\n0000 1\n1111 1\n"


@pytest.fixture(autouse=True)
def _reset_config():
    clear_overrides()
    yield
    clear_overrides()


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def gate_file(tmp_path):
    path = tmp_path / "edge.mg"
    path.write_text(GATE_TEXT)
    return str(path)


@pytest.fixture
def eq4_file(tmp_path):
    path = tmp_path / "eq4.sig"
    path.write_text(EQ4_TEXT)
    return str(path)


@pytest.fixture
def gamma1_file(tmp_path):
    path = tmp_path / "gamma1.sig"
    path.write_text(dump_signature(signature(gamma1_gate(GAMMA1_ORDERS["face"]))))
    return str(path)


def test_info(runner):
    result = runner.invoke(cli, ['info'])
    assert result.exit_code == 0
    assert "[caps]" in result.output
    assert "mgi_exhaustive_arity = 12" in result.output


def test_perfmatch_both_methods(runner, gate_file):
    result = runner.invoke(cli, ['perfmatch', gate_file])
    assert result.exit_code == 0
    assert str(Scalar.parse("1/2 - 3i")) in result.output


def test_perfmatch_json(runner, gate_file):
    result = runner.invoke(cli, ['--json', 'perfmatch', '--method', 'fkt', gate_file])
    assert result.exit_code == 0
    assert json.loads(result.output) == {'fkt': str(Scalar.parse("1/2 - 3i"))}


def test_signature_command(runner, gate_file):
    result = runner.invoke(cli, ['signature', gate_file])
    assert result.exit_code == 0
    s = parse_signature(result.output)
    assert s["00"] == Scalar.parse("1/2 - 3i")
    assert s["11"] == 1
    assert s["01"] == 0


def test_parity_passes_on_equality(runner, eq4_file):
    result = runner.invoke(cli, ['parity', eq4_file])
    assert result.exit_code == 0


def test_mgi_failure_prints_witness(runner, eq4_file):
    result = runner.invoke(cli, ['mgi', eq4_file])
    assert result.exit_code == 1
    assert result.output.startswith("WITNESS mgi")
    assert 'alpha="1000"' in result.output


def test_mgi_failure_json(runner, eq4_file):
    result = runner.invoke(cli, ['--json', 'mgi', eq4_file])
    assert result.exit_code == 1
    payload = json.loads(result.output)
    assert payload['check'] == 'mgi'
    assert payload['passed'] is False


def test_rank_of_gamma1(runner, gamma1_file):
    result = runner.invoke(cli, ['rank', gamma1_file, '--block', '2'])
    assert result.exit_code == 0
    assert result.output.strip() == "4"


def test_matform_json(runner, gamma1_file):
    result = runner.invoke(cli, ['--json', 'matform', gamma1_file, '-l', '2'])
    assert result.exit_code == 0
    rows = json.loads(result.output)['rows']
    assert len(rows) == 4 and all(len(row) == 4 for row in rows)


def test_library_error_becomes_click_error(runner, eq4_file):
    """A block size that does not divide the arity is reported, not raised."""
    result = runner.invoke(cli, ['rank', eq4_file, '--block', '3'])
    assert result.exit_code == 1
    assert "Error" in result.output


def test_malformed_input_is_reported_without_traceback(runner, tmp_path):
    path = tmp_path / "bad.dec"
    path.write_text("rank 0\nblock 1\nblocks 3\nshift two\n")
    result = runner.invoke(cli, ['reconstruct', str(path)])
    assert result.exit_code == 1
    assert "Error: malformed input (ValueError)" in result.output
    assert "Traceback" not in result.output


def test_malformed_config_file_is_reported(runner, tmp_path):
    path = tmp_path / "broken.toml"
    path.write_text("[caps\nnot toml")
    result = runner.invoke(cli, ['--config', str(path), 'info'])
    assert result.exit_code == 1
    assert "invalid TOML" in result.output


def test_eq_command(runner):
    result = runner.invoke(cli, ['eq', '--q', '3', '--n', '2'])
    assert result.exit_code == 0
    assert parse_domain_signature(result.output) == equality(3, 2)


def test_cap_validation(runner):
    result = runner.invoke(cli, ['--cap', 'nonsense=3', 'info'])
    assert result.exit_code == 2
    assert "NAME=VALUE" in result.output

    result = runner.invoke(cli, ['--cap', 'mgi_exhaustive_arity=many', 'info'])
    assert result.exit_code == 2


def test_cap_override_applies(runner):
    result = runner.invoke(cli, ['--cap', 'mgi_exhaustive_arity=14', 'info'])
    assert result.exit_code == 0
    assert "mgi_exhaustive_arity = 14" in result.output


def test_demo_gamma1_with_evidence(runner, tmp_path):
    evidence = tmp_path / "evidence"
    result = runner.invoke(cli, ['--seed', '7', 'demo-gamma1', '--evidence-dir', str(evidence)])
    assert result.exit_code == 0
    assert (evidence / "manifest.json").exists()
    assert (evidence / "report.json").exists()

    result = runner.invoke(cli, ['validate', str(evidence)])
    assert result.exit_code == 0
    assert "valid" in result.output


def test_verify_fkt_json(runner):
    result = runner.invoke(cli, ['--json', '--seed', '3', 'verify-fkt', '--trials', '3'])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload['summary'] == {'total': 1, 'passed': 1, 'failed': []}
    assert payload['reports'][0]['check'] == 'verify-fkt'


def test_verify_all_only(runner):
    result = runner.invoke(cli, ['verify-all', '--only', 'verify-min-pair'])
    assert result.exit_code == 0
    assert "verify-min-pair" in result.output


def test_validate_rejects_empty_dir(runner, tmp_path):
    result = runner.invoke(cli, ['validate', str(tmp_path)])
    assert result.exit_code == 1
    assert "Validation failed" in result.output


def test_reconstruct_round_trip(runner, tmp_path):
    gadget = Matchgate(2, [(1, 2, 3)], [1, 2], {1: (2,), 2: (1,)})
    s = signature(block_expand(star_core(3, 2), gadget))
    path = tmp_path / "star.dec"
    path.write_text(dump_decomposition(decompose(BlockView(s, 1))))
    result = runner.invoke(cli, ['reconstruct', str(path)])
    assert result.exit_code == 0
    assert parse_signature(result.output) == s


def test_matchgate_file_roundtrip_via_cli(runner, tmp_path):
    path = tmp_path / "gamma1.mg"
    path.write_text(dump_matchgate(gamma1_gate()))
    result = runner.invoke(cli, ['perfmatch', '--method', 'brute', str(path)])
    assert result.exit_code == 0
    assert result.output.strip() == "1"
