"""
Command-line interface for holomatch.

Signature tools (``perfmatch``, ``mgi``, ``transform``, ``decompose`` ...)
read the line formats of :mod:`holomatch.formats`; the ``verify-*`` and
``demo-*`` commands run harness checks and can write evidence packs.

Check commands exit with code 0 on pass and 1 on a violation, printing one
``WITNESS`` line (or a JSON object with ``--json``).
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import click

try:
    from rich.console import Console
    from rich.table import Table
    RICH_AVAILABLE = True
except ImportError:
    RICH_AVAILABLE = False

from .config import DEFAULT_CONFIG, get_default_seed, get_evidence_dir, load_config, set_override, use_config_file
from .decompose import decompose as decompose_view
from .decompose import reconstruct, reconstruct_signature
from .environment import capture_environment
from .evidence import create_evidence_pack, report_json, validate_evidence_pack
from .fkt import perfmatch_fkt
from .formats import (
    dump_decomposition,
    dump_domain_signature,
    dump_matrix,
    dump_signature,
    load_decomposition,
    load_domain_signature,
    load_grid,
    load_matchgate,
    load_matrix,
    load_signature,
)
from .harness import (
    CHECKS,
    demo_gamma1,
    run_harness,
    verify_csp_reduction,
    verify_decomposition,
    verify_equality_theorem,
    verify_factorization,
    verify_fkt,
    verify_holant_grids,
    verify_holant_theorem_sweep,
    verify_mgi_characterization,
    verify_min_pair,
    verify_rank_bound,
)
from .holant import holant_bruteforce, holant_fkt, verify_holant_theorem
from .holographic import equality, right_inverse, transform
from .manifest import create_manifest
from .matchgate import perfmatch_bruteforce, signature
from .seeds import make_rng, set_global_seeds
from .signatures import (
    BlockView,
    check_det_identities,
    check_mgi,
    check_parity,
    find_min_weight_pair,
    from_bits,
    matrix_form,
)
from .types import HarnessReport, HolomatchError
from .utils import format_error, format_failure, format_success, format_warning, format_witness

console = Console() if RICH_AVAILABLE else None


@dataclass
class CliState:
    seed: Optional[int] = None
    as_json: bool = False


class HolomatchClickError(click.ClickException):
    """ClickException printed with the colourised error format."""

    def show(self, file: Any = None) -> None:
        click.echo(format_error(self.format_message()), file=file, err=True)


class HolomatchGroup(click.Group):
    """Group that turns library and malformed-input errors into ClickExceptions."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except HolomatchError as exc:
            raise HolomatchClickError(str(exc)) from exc
        except (ValueError, ArithmeticError, LookupError) as exc:
            # numpy.linalg.LinAlgError is a ValueError
            raise HolomatchClickError(f"malformed input ({type(exc).__name__}): {exc}") from exc


def _parse_cap(ctx: click.Context, param: click.Parameter, values: Sequence[str]) -> Dict[str, int]:
    caps: Dict[str, int] = {}
    for item in values:
        name, sep, value = item.partition("=")
        if not sep or name not in DEFAULT_CONFIG['caps']:
            known = ", ".join(DEFAULT_CONFIG['caps'])
            raise click.BadParameter(f"expected NAME=VALUE with NAME in: {known}", param=param)
        try:
            caps[name] = int(value)
        except ValueError:
            raise click.BadParameter(f"cap {name} needs an integer, got {value!r}", param=param) from None
    return caps


@click.group(cls=HolomatchGroup)
@click.option('--seed', type=int, default=None, help='Seed for randomized checks (default from config).')
@click.option('--json', 'as_json', is_flag=True, help='Machine-readable output.')
@click.option('--cap', 'caps', multiple=True, callback=_parse_cap, metavar='NAME=VALUE',
              help='Override an enumeration cap, e.g. mgi_exhaustive_arity=14.')
@click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False),
              default=None, help='Configuration file (default: holomatch.toml discovery).')
@click.pass_context
def cli(ctx: click.Context, seed: Optional[int], as_json: bool, caps: Dict[str, int],
        config_path: Optional[str]):
    """holomatch: matchgates, holographic transformations and Holant evaluation."""
    if config_path is not None:
        use_config_file(Path(config_path))
    for name, value in caps.items():
        set_override('caps', name, value)
    ctx.obj = CliState(seed=seed, as_json=as_json)


# Output helpers

def _state(ctx: click.Context) -> CliState:
    return ctx.find_object(CliState) or CliState()


def _emit(ctx: click.Context, payload: Dict[str, Any], text: str) -> None:
    if _state(ctx).as_json:
        click.echo(json.dumps(payload, sort_keys=True))
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _verdict(ctx: click.Context, kind: str, passed: bool, payload: Dict[str, Any], message: str) -> None:
    """Print a check verdict; exit 1 with a witness line when it failed."""
    if _state(ctx).as_json:
        click.echo(json.dumps({'check': kind, **payload}, sort_keys=True))
    elif passed:
        click.echo(format_success(message))
    else:
        click.echo(format_witness(kind, {k: v for k, v in payload.items() if k != 'passed'}))
    if not passed:
        ctx.exit(1)


def _block_view(path: str, block: int) -> BlockView:
    return BlockView(load_signature(path), block)


block_option = click.option('--block', '-l', 'block', type=int, required=True, help='Block size l.')


# Matchgates

@cli.command()
@click.argument('matchgate_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--method', type=click.Choice(['brute', 'fkt', 'both']), default='both', show_default=True)
@click.pass_context
def perfmatch(ctx: click.Context, matchgate_file: str, method: str):
    """PerfMatch of the whole graph (externals kept)."""
    gate = load_matchgate(matchgate_file)
    if method == 'brute':
        value = perfmatch_bruteforce(gate)
        _emit(ctx, {'brute': str(value)}, str(value))
    elif method == 'fkt':
        value = perfmatch_fkt(gate)
        _emit(ctx, {'fkt': str(value)}, str(value))
    else:
        brute, fkt = perfmatch_bruteforce(gate), perfmatch_fkt(gate)
        payload = {'passed': brute == fkt, 'brute': str(brute), 'fkt': str(fkt)}
        _verdict(ctx, 'perfmatch', brute == fkt, payload, f"brute = fkt = {brute}")


@cli.command('signature')
@click.argument('matchgate_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--method', type=click.Choice(['brute', 'fkt']), default='brute', show_default=True)
@click.pass_context
def signature_cmd(ctx: click.Context, matchgate_file: str, method: str):
    """Signature of a matchgate in signature-file format."""
    s = signature(load_matchgate(matchgate_file), method=method)
    _emit(ctx, {'arity': s.arity, 'entries': {b: str(v) for b, v in s.nonzero_items()}},
          dump_signature(s))


# Signature checks

@cli.command()
@click.argument('sig_file', type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def parity(ctx: click.Context, sig_file: str):
    """Check the parity condition."""
    verdict = check_parity(load_signature(sig_file))
    _verdict(ctx, 'parity', verdict.passed, verdict.to_dict(), f"parity: {verdict.kind}")


@cli.command()
@click.argument('sig_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--samples', type=int, default=None, help='Sample this many (alpha, P) pairs instead of sweeping.')
@click.pass_context
def mgi(ctx: click.Context, sig_file: str, samples: Optional[int]):
    """Check the matchgate identities."""
    rng = make_rng(_state(ctx).seed) if samples is not None else None
    verdict = check_mgi(load_signature(sig_file), samples=samples, rng=rng)
    _verdict(ctx, 'mgi', verdict.passed, verdict.to_dict(),
             f"matchgate identities hold ({verdict.mode}, {verdict.evaluated} evaluated)")


@cli.command()
@click.argument('sig_file', type=click.Path(exists=True, dir_okay=False))
@block_option
@click.pass_context
def matform(ctx: click.Context, sig_file: str, block: int):
    """Matrix form M(G): rows block 1, columns blocks 2..n."""
    m = matrix_form(_block_view(sig_file, block)).matrix
    rows = [[str(x) for x in row] for row in m]
    if _state(ctx).as_json:
        click.echo(json.dumps({'rows': rows}))
    elif RICH_AVAILABLE and console is not None:
        table = Table(show_header=False)
        for _ in range(m.shape[1]):
            table.add_column()
        for row in rows:
            table.add_row(*row)
        console.print(table)
    else:
        for row in rows:
            click.echo("\t".join(row))


@cli.command()
@click.argument('sig_file', type=click.Path(exists=True, dir_okay=False))
@block_option
@click.pass_context
def rank(ctx: click.Context, sig_file: str, block: int):
    """Exact rank of the matrix form."""
    r = matrix_form(_block_view(sig_file, block)).rank()
    _emit(ctx, {'rank': r}, str(r))


@cli.command()
@click.argument('sig_file', type=click.Path(exists=True, dir_okay=False))
@block_option
@click.pass_context
def detcheck(ctx: click.Context, sig_file: str, block: int):
    """Check the 2 x 2 determinant identities (needs at least three blocks)."""
    verdict = check_det_identities(_block_view(sig_file, block))
    _verdict(ctx, 'detcheck', verdict.passed, verdict.to_dict(),
             f"determinant identities hold ({verdict.evaluated} evaluated)")


@cli.command()
@click.argument('sig_file', type=click.Path(exists=True, dir_okay=False))
@block_option
@click.option('--same-parity', is_flag=True, help='Restrict to rows of equal parity.')
@click.pass_context
def minpair(ctx: click.Context, sig_file: str, block: int, same_parity: bool):
    """Independent row pair of M(G) with minimum wt(sigma + tau)."""
    pair = find_min_weight_pair(_block_view(sig_file, block), same_parity=same_parity)
    if pair is None:
        _emit(ctx, {'pair': None}, "none")
    else:
        _emit(ctx, {'pair': pair.to_dict()}, f"{pair.sigma} {pair.tau} weight {pair.weight}")


# Holographic transformations

@cli.command('transform')
@click.argument('sig_file', type=click.Path(exists=True, dir_okay=False))
@click.argument('matrix_file', type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def transform_cmd(ctx: click.Context, sig_file: str, matrix_file: str):
    """f M^(x)n as a Boolean signature file."""
    view = transform(load_domain_signature(sig_file), load_matrix(matrix_file))
    s = view.signature
    _emit(ctx, {'arity': s.arity, 'block_size': view.block_size,
                'entries': {b: str(v) for b, v in s.nonzero_items()}}, dump_signature(s))


@cli.command()
@click.argument('matrix_file', type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def rightinv(ctx: click.Context, matrix_file: str):
    """Right inverse Mcheck with M Mcheck = I."""
    inv = right_inverse(load_matrix(matrix_file))
    _emit(ctx, {'rows': [[str(x) for x in row] for row in inv]}, dump_matrix(inv))


@cli.command()
@click.option('--q', 'q', type=int, required=True, help='Domain size.')
@click.option('--n', 'n', type=int, required=True, help='Arity.')
@click.pass_context
def eq(ctx: click.Context, q: int, n: int):
    """Equality signature (=n) on domain [q]."""
    f = equality(q, n)
    _emit(ctx, {'q': q, 'arity': n}, dump_domain_signature(f))


# Decomposition

@cli.command('decompose')
@click.argument('sig_file', type=click.Path(exists=True, dir_okay=False))
@block_option
@click.option('--samples', type=int, default=None, help='Sample the identities in the certificate.')
@click.option('--no-check', is_flag=True, help='Skip the parity/MGI/symmetry certificate.')
@click.pass_context
def decompose_cmd(ctx: click.Context, sig_file: str, block: int, samples: Optional[int], no_check: bool):
    """Decompose a blockwise symmetric matchgate signature."""
    d = decompose_view(_block_view(sig_file, block), check=not no_check, mgi_samples=samples)
    text = dump_decomposition(d)
    _emit(ctx, {'decomposition': text, 'rank': d.rank}, text)


@cli.command('reconstruct')
@click.argument('decomposition_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--index', default=None, help='Evaluate one entry (bitstring) instead of the full signature.')
@click.pass_context
def reconstruct_cmd(ctx: click.Context, decomposition_file: str, index: Optional[str]):
    """Re-emit the signature described by a decomposition file."""
    d = load_decomposition(decomposition_file)
    if index is None:
        s = reconstruct_signature(d)
        _emit(ctx, {'arity': s.arity, 'entries': {b: str(v) for b, v in s.nonzero_items()}},
              dump_signature(s))
        return
    l = d.block_size
    if len(index) != d.num_blocks * l:
        raise click.BadParameter(f"index needs {d.num_blocks * l} bits", param_hint='--index')
    value = reconstruct(d, [from_bits(index[k:k + l]) for k in range(0, len(index), l)])
    _emit(ctx, {'index': index, 'value': str(value)}, str(value))


# Holant

def _parse_gate_options(values: Sequence[str]) -> Dict[str, Any]:
    gates = {}
    for item in values:
        name, sep, path = item.partition("=")
        if not sep:
            raise click.BadParameter(f"expected NAME=PATH, got {item!r}", param_hint='--gate')
        gates[name] = load_matchgate(path)
    return gates


@cli.command()
@click.argument('grid_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--method', type=click.Choice(['brute', 'fkt', 'both']), default='brute', show_default=True)
@click.option('--gate', 'gate_specs', multiple=True, metavar='NAME=PATH',
              help='Matchgate realizing vertex NAME (needed for fkt).')
@click.pass_context
def holant(ctx: click.Context, grid_file: str, method: str, gate_specs: Sequence[str]):
    """Holant value of a signature grid."""
    grid = load_grid(grid_file)
    gates = _parse_gate_options(gate_specs)
    if method == 'brute':
        value = holant_bruteforce(grid)
        _emit(ctx, {'brute': str(value)}, str(value))
    elif method == 'fkt':
        value = holant_fkt(grid, gates)
        _emit(ctx, {'fkt': str(value)}, str(value))
    else:
        brute, fkt = holant_bruteforce(grid), holant_fkt(grid, gates)
        payload = {'passed': brute == fkt, 'brute': str(brute), 'fkt': str(fkt)}
        _verdict(ctx, 'holant', brute == fkt, payload, f"brute = fkt = {brute}")


@cli.command('verify-holant')
@click.argument('grid_file', type=click.Path(exists=True, dir_okay=False))
@click.argument('matrix_file', type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def verify_holant(ctx: click.Context, grid_file: str, matrix_file: str):
    """Holant(F | G) against Holant(F M | Mcheck G)."""
    verdict = verify_holant_theorem(load_grid(grid_file), load_matrix(matrix_file))
    _verdict(ctx, 'verify-holant', verdict.passed, verdict.to_dict(),
             f"both sides equal {verdict.left}")


# Harness

def _report_harness(ctx: click.Context, reports: List[HarnessReport], params: Dict[str, Any],
                    evidence_dir: Optional[str]) -> None:
    state = _state(ctx)
    if evidence_dir is not None:
        seed = get_default_seed() if state.seed is None else state.seed
        manifest = create_manifest(reports, seed, capture_environment(), params, set_global_seeds(seed))
        create_evidence_pack(reports, evidence_dir, manifest)
    if state.as_json:
        click.echo(report_json(reports), nl=False)
    else:
        for r in reports:
            if r.passed:
                click.echo(format_success(f"{r.check}: {r.claim} ({r.duration:.2f} s)"))
            else:
                click.echo(format_failure(f"{r.check}: {r.claim}"))
                detail = r.witness.get('first_failure', r.witness)
                click.echo(format_witness(r.check, {'seed': r.seed, **detail}))
        if evidence_dir is not None:
            click.echo(f"Evidence pack: {evidence_dir}")
    if not all(r.passed for r in reports):
        ctx.exit(1)


def harness_command(name: str, trial_help: bool = True):
    """Register a harness check as ``name`` with --trials and --evidence-dir options.

    Options declared on ``f`` itself are kept.
    """
    def decorator(f: Callable[..., List[HarnessReport]]):
        def command(evidence_dir: Optional[str], **kwargs: Any):
            ctx = click.get_current_context()
            reports = f(_state(ctx).seed, **kwargs)
            params = {'check': name, **kwargs}
            _report_harness(ctx, reports, params, evidence_dir)

        command.__doc__ = f.__doc__
        command.__click_params__ = list(getattr(f, '__click_params__', []))  # type: ignore[attr-defined]
        command = click.option('--evidence-dir', type=click.Path(file_okay=False), default=None,
                               help='Write an evidence pack here.')(command)
        if trial_help:
            command = click.option('--trials', type=int, default=None,
                                   help='Number of trials (default from config).')(command)
        return cli.command(name)(command)
    return decorator


@harness_command('demo-gamma1', trial_help=False)
def demo_gamma1_cmd(seed: Optional[int]) -> List[HarnessReport]:
    """Reproduce Gamma_1: the corner-external 3 x 2 grid with rank(M) = 4."""
    return [demo_gamma1()]


@harness_command('verify-min-pair', trial_help=False)
def verify_min_pair_cmd(seed: Optional[int]) -> List[HarnessReport]:
    """Minimum-weight independent row pairs of Gamma_1."""
    return [verify_min_pair()]


@harness_command('verify-eq-theorem')
@click.option('--q', 'q', type=int, default=3, show_default=True)
@click.option('--n', 'n', type=int, default=3, show_default=True)
@click.option('--block', '-l', 'block', type=int, default=2, show_default=True)
def verify_eq_theorem_cmd(seed: Optional[int], trials: Optional[int], q: int, n: int,
                          block: int) -> List[HarnessReport]:
    """(=n) M^(x)n is not a matchgate signature for random rank-q M, q >= 3."""
    return [verify_equality_theorem(q, n, block, trials=trials, seed=seed)]


@harness_command('verify-rank-bound')
def verify_rank_bound_cmd(seed: Optional[int], trials: Optional[int]) -> List[HarnessReport]:
    """rank(M(G)) <= 2 on generated blockwise symmetric matchgates."""
    return [verify_rank_bound(trials=trials, seed=seed)]


@harness_command('verify-decomposition')
def verify_decomposition_cmd(seed: Optional[int], trials: Optional[int]) -> List[HarnessReport]:
    """Decomposition round trip and witness gates on generated matchgates."""
    return [verify_decomposition(trials=trials, seed=seed)]


@harness_command('verify-fkt')
def verify_fkt_cmd(seed: Optional[int], trials: Optional[int]) -> List[HarnessReport]:
    """FKT against brute-force PerfMatch on random plane graphs."""
    return [verify_fkt(trials=trials, seed=seed)]


@harness_command('verify-mgi')
def verify_mgi_cmd(seed: Optional[int], trials: Optional[int]) -> List[HarnessReport]:
    """Parity and the identities on random matchgate signatures; (=4) fails."""
    return [verify_mgi_characterization(trials=trials, seed=seed)]


@harness_command('verify-holant-sweep')
def verify_holant_sweep_cmd(seed: Optional[int], trials: Optional[int]) -> List[HarnessReport]:
    """Holant invariance under holographic transformations, q in {2, 3}."""
    return [verify_holant_theorem_sweep(trials=trials, seed=seed)]


@harness_command('verify-factorization')
def verify_factorization_cmd(seed: Optional[int], trials: Optional[int]) -> List[HarnessReport]:
    """M(f M^(x)n) = M^T M(f) M^(x)(n-1) on random symmetric f."""
    return [verify_factorization(trials=trials, seed=seed)]


@harness_command('verify-holant-grids')
def verify_holant_grids_cmd(seed: Optional[int], trials: Optional[int]) -> List[HarnessReport]:
    """FKT Holant against brute force on planar matchgate grids."""
    return [verify_holant_grids(trials=trials, seed=seed)]


@harness_command('verify-csp')
def verify_csp_cmd(seed: Optional[int], trials: Optional[int]) -> List[HarnessReport]:
    """#CSP against its Holant(EQ | F) grid."""
    return [verify_csp_reduction(trials=trials, seed=seed)]


@harness_command('verify-all', trial_help=False)
@click.option('--only', 'only', multiple=True, type=click.Choice(sorted(CHECKS)),
              help='Run only these checks (repeatable).')
def verify_all_cmd(seed: Optional[int], only: Sequence[str]) -> List[HarnessReport]:
    """Run the full default harness."""
    return run_harness(list(only) or None, seed=seed)


# Evidence packs

@cli.command()
@click.argument('evidence_dir', type=click.Path(exists=True, file_okay=False))
@click.pass_context
def validate(ctx: click.Context, evidence_dir: str):
    """Validate an evidence pack.

    Checks the required files, JSON validity, environment and seed presence
    in the manifest, and the report list.
    """
    result = validate_evidence_pack(evidence_dir)
    issues, warnings = result['issues'], result['warnings']
    if _state(ctx).as_json:
        click.echo(json.dumps(result, indent=2))
    elif issues:
        click.echo(format_failure("Validation failed. Issues found:"))
        for issue in issues:
            click.echo(f"  - {issue}")
    else:
        click.echo(format_success("Evidence pack is valid and complete"))
    if not _state(ctx).as_json:
        for warning in warnings:
            click.echo(format_warning(warning))
    if issues:
        raise click.ClickException(f"Validation failed with {len(issues)} issues")


@cli.command()
def info():
    """Show the effective configuration."""
    click.echo(f"Evidence directory: {get_evidence_dir()}")
    for section, values in load_config().items():
        if not isinstance(values, dict):
            continue
        click.echo(f"[{section}]")
        for key, value in values.items():
            click.echo(f"  {key} = {value}")


def main():
    """Entry point for CLI."""
    cli()


if __name__ == '__main__':
    main()
