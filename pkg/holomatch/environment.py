"""
Environment capture for evidence packs.

Records interpreter, platform, package, config and git state of a harness
run. Each section is captured independently; a failing section stores its
error string and the rest of the record is still written.
"""

import datetime
import os
import platform
import socket
import sys
from importlib.metadata import PackageNotFoundError, version
from typing import Any, Callable, Dict, Optional

try:
    import git
    GIT_AVAILABLE = True
except ImportError:
    GIT_AVAILABLE = False

from .config import find_config_file

KEY_PACKAGES = ('holomatch', 'numpy', 'click', 'tomli', 'rich', 'colorama', 'gitpython')


def _python() -> Dict[str, Any]:
    return {
        'version': platform.python_version(),
        'implementation': platform.python_implementation(),
        'executable': sys.executable,
        'int_bits_per_digit': sys.int_info.bits_per_digit,
        'hash_seed': os.environ.get('PYTHONHASHSEED'),
    }


def _platform() -> Dict[str, Any]:
    return {
        'system': platform.system(),
        'release': platform.release(),
        'machine': platform.machine(),
        'hostname': socket.gethostname(),
        'cpu_count': os.cpu_count(),
    }


def _packages() -> Dict[str, str]:
    found = {}
    for name in KEY_PACKAGES:
        try:
            found[name] = version(name)
        except PackageNotFoundError:
            continue
    return found


def _holomatch() -> Dict[str, Any]:
    path = find_config_file()
    return {
        'config_file': str(path) if path is not None else None,
        'env_overrides': sorted(k for k in os.environ if k.startswith('HOLOMATCH_')),
    }


def _capture(section: Callable[[], Any]) -> Any:
    try:
        return section()
    except Exception as e:
        return {'error': str(e)}


def capture_environment() -> Dict[str, Any]:
    """Capture the current execution environment.

    Returns a dictionary with ``timestamp``, ``python``, ``platform``,
    ``packages`` (versions of the packages holomatch runs on), ``holomatch``
    (config file in use and ``HOLOMATCH_*`` variables set) and ``git``
    (None outside a repository or without gitpython).
    """
    return {
        'timestamp': datetime.datetime.now(datetime.timezone.utc).isoformat(),
        'python': _capture(_python),
        'platform': _capture(_platform),
        'packages': _capture(_packages),
        'holomatch': _capture(_holomatch),
        'git': _git(),
    }


def _git() -> Optional[Dict[str, Any]]:
    """Commit, branch and dirty flag of the enclosing repository."""
    if not GIT_AVAILABLE:
        return None
    try:
        repo = git.Repo(search_parent_directories=True)
    except Exception:
        return None
    if repo.bare:
        return None
    try:
        return {
            'commit': repo.head.commit.hexsha[:8],
            'branch': None if repo.head.is_detached else repo.active_branch.name,
            'dirty': repo.is_dirty(untracked_files=False),
            'remote_url': repo.remotes[0].url if repo.remotes else None,
        }
    except Exception:
        # fresh repository without commits
        return None
