"""
Tests for configuration loading, seeds and console helpers.
"""

import os
import random

import numpy as np
import pytest

from holomatch.config import (
    DEFAULT_CONFIG,
    _read_toml,
    clear_overrides,
    get_cap,
    get_default_seed,
    get_evidence_dir,
    get_trials,
    load_config,
    set_override,
    use_config_file,
)
from holomatch.environment import capture_environment
from holomatch.seeds import make_rng, set_global_seeds, trial_rng
from holomatch.types import ConfigError
from holomatch.utils import format_error, format_failure, format_success, format_warning, format_witness


@pytest.fixture(autouse=True)
def _reset_config(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    clear_overrides()
    yield
    clear_overrides()


def test_defaults():
    config = load_config()
    assert config == DEFAULT_CONFIG
    assert get_cap('mgi_exhaustive_arity') == 12
    assert get_trials() == 100
    assert get_trials('fkt_trials') == 500
    assert get_default_seed() == 42
    assert get_evidence_dir() == './evidence'


def test_toml_file(tmp_path):
    path = tmp_path / "custom.toml"
    path.write_text("[caps]\nbruteforce_vertices = 16\n\n[harness]\ndefault_seed = 7\n")
    use_config_file(path)
    assert get_cap('bruteforce_vertices') == 16
    assert get_default_seed() == 7
    assert get_cap('mgi_exhaustive_arity') == 12


def test_discovered_toml(tmp_path):
    (tmp_path / "holomatch.toml").write_text("[harness]\ntrials = 3\n")
    assert get_trials() == 3


def test_malformed_toml_is_reported(tmp_path):
    path = tmp_path / "broken.toml"
    path.write_text("[caps\nnot toml")
    with pytest.raises(ConfigError, match="invalid TOML"):
        load_config(path)
    use_config_file(path)
    with pytest.raises(ConfigError):
        get_cap("mgi_samples")


def test_parsed_file_is_cached_until_it_changes(tmp_path):
    path = tmp_path / "custom.toml"
    path.write_text("[harness]\ntrials = 3\n")
    use_config_file(path)
    _read_toml.cache_clear()
    assert get_trials() == 3
    assert get_cap("mgi_samples") == 4096
    info = _read_toml.cache_info()
    assert info.misses == 1 and info.hits == 1

    mtime = path.stat().st_mtime_ns
    path.write_text("[harness]\ntrials = 5\n")
    os.utime(path, ns=(mtime + 10**9, mtime + 10**9))
    assert get_trials() == 5


def test_environment_variables(monkeypatch):
    monkeypatch.setenv("HOLOMATCH_CAPS_HOLANT_STATES", "1000")
    monkeypatch.setenv("HOLOMATCH_EVIDENCE_WRITE_MARKDOWN", "no")
    monkeypatch.setenv("HOLOMATCH_HARNESS_TRIALS", "many")
    config = load_config()
    assert config['caps']['holant_states'] == 1000
    assert config['evidence']['write_markdown'] is False
    assert config['harness']['trials'] == 100


def test_overrides_win(monkeypatch):
    monkeypatch.setenv("HOLOMATCH_CAPS_BRUTEFORCE_VERTICES", "20")
    set_override('caps', 'bruteforce_vertices', 8)
    assert get_cap('bruteforce_vertices') == 8
    clear_overrides()
    assert get_cap('bruteforce_vertices') == 20


def test_trial_rng_is_reproducible():
    a = trial_rng(42, 3).integers(1000, size=5)
    b = trial_rng(42, 3).integers(1000, size=5)
    c = trial_rng(42, 4).integers(1000, size=5)
    assert list(a) == list(b)
    assert list(a) != list(c)
    assert make_rng(1).random() == make_rng(1).random()


def test_set_global_seeds_is_reproducible():
    assert set_global_seeds(99) == {"numpy": True, "random": True}
    first = (np.random.random(), random.random())
    set_global_seeds(99)
    assert (np.random.random(), random.random()) == first


def test_format_helpers():
    assert "Error: bad input" in format_error("bad input")
    assert "Suggestion: try again" in format_error("bad input", "try again")
    assert "✓ done" in format_success("done")
    assert "✗ broken" in format_failure("broken")
    assert "Warning: slow" in format_warning("slow")
    assert "-> raise the cap" in format_warning("slow", "raise the cap")


def test_format_witness():
    line = format_witness("mgi", {'alpha': "1000", 'positions': [1, 2, 3, 4], 'residual': "-1"})
    assert line == 'WITNESS mgi alpha="1000" positions=[1,2,3,4] residual="-1"'
    assert format_witness("empty", {}) == "WITNESS empty"


def test_capture_environment():
    env = capture_environment()
    assert env['timestamp']
    assert 'version' in env['python']
    assert 'numpy' in env['packages']


def test_environment_records_config_file(tmp_path, monkeypatch):
    (tmp_path / "holomatch.toml").write_text("[harness]\ntrials = 7\n")
    monkeypatch.setenv("HOLOMATCH_HARNESS_TRIALS", "9")
    env = capture_environment()
    assert env['holomatch']['config_file'] == str(tmp_path / "holomatch.toml")
    assert env['holomatch']['env_overrides'] == ["HOLOMATCH_HARNESS_TRIALS"]
    assert get_trials() == 9
