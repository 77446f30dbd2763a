"""
Scripted checks that reproduce the desk-scale claims about matchgates.

Every check returns a :class:`~holomatch.types.HarnessReport`. Randomized
checks derive one Generator per trial from ``(seed, trial)``, so a failing
trial is reproduced from the two numbers in its witness, and the report
payload never depends on timing.

Example:
    >>> report = verify_rank_bound(trials=10, seed=1)
    >>> report.passed
    True
"""

import time
from functools import lru_cache, wraps
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import get_cap, get_default_seed, get_trials
from .decompose import (
    check_rank1_core,
    condensed_signature,
    condensed_witness,
    core_witness,
    decompose,
    reconstruct_signature,
)
from .fkt import perfmatch_fkt
from .generators import (
    GAMMA1_ORDERS,
    corner_orderings,
    even_weight_columns,
    exact_one_cycle_grid,
    gamma1_gate,
    grid_graph,
    random_block_symmetric_gate,
    random_domain_signature,
    random_full_rank_matrix,
    random_grid,
    random_matchgate,
    random_matchgate_grid,
    random_plane_graph,
    random_symmetric_signature,
)
from .holant import CSPInstance, csp_bruteforce, csp_to_holant, holant_bruteforce, holant_fkt, verify_holant_theorem
from .holographic import equality, hadamard, matrix_form_factored, transform
from .invariants import (
    InvariantChecker,
    blockwise_symmetry,
    determinant_identities,
    parity_condition,
    rank_at_most,
)
from .linalg import matrices_equal
from .matchgate import Matchgate, perfmatch_bruteforce, signature
from .scalar import Scalar
from .seeds import trial_rng
from .signatures import (
    BlockView,
    BooleanSignature,
    check_mgi,
    check_parity,
    find_min_weight_pair,
    is_blockwise_symmetric,
    matrix_form,
)
from .types import HarnessReport, PreconditionError

GAMMA1_REFERENCE = {"0000": 1, "1001": 1, "0110": 1, "1111": -1}

# (n, l) pairs cycled by trial index
BLOCK_SHAPES: Tuple[Tuple[int, int], ...] = ((3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3))


def _entries(s: BooleanSignature) -> Dict[str, str]:
    return {bits: str(v) for bits, v in s.nonzero_items()}


def _reference_gamma1() -> BooleanSignature:
    return BooleanSignature.from_entries(4, GAMMA1_REFERENCE)


class _Trials:
    """Failure bookkeeping shared by the randomized checks."""

    def __init__(self, seed: int):
        self.seed = seed
        self.count = 0
        self.failures: List[Dict[str, Any]] = []

    def record(self, trial: int, ok: bool, **detail: Any) -> None:
        self.count += 1
        if not ok:
            self.failures.append({'trial': trial, 'seed': self.seed, **detail})

    @property
    def passed(self) -> bool:
        return not self.failures

    def witness(self, **extra: Any) -> Dict[str, Any]:
        out: Dict[str, Any] = {'trials': self.count, 'failures': len(self.failures)}
        out.update(extra)
        if self.failures:
            out['first_failure'] = self.failures[0]
        return out


def _timed(check: Callable[..., HarnessReport]) -> Callable[..., HarnessReport]:
    @wraps(check)
    def wrapper(*args: Any, **kwargs: Any) -> HarnessReport:
        start = time.perf_counter()
        report = check(*args, **kwargs)
        report.duration = time.perf_counter() - start
        return report
    return wrapper


# Gamma_1

@_timed
def demo_gamma1() -> HarnessReport:
    """The 3 x 2 grid with middle rung -1 and its four corners external.

    Every corner ordering is tried; the report lists those reproducing the
    reference entries. Blockwise symmetry (l = 2, n = 2), the identities and
    rank 4 are asserted for the boundary-walk ordering, whose signature is a
    matchgate signature in the strict sense; the reference vector is checked
    for symmetry and rank as well.
    """
    reference = _reference_gamma1()
    matching = [name for name, order in corner_orderings()
                if signature(gamma1_gate(order)) == reference]

    face = signature(gamma1_gate(GAMMA1_ORDERS["face"]))
    face_view = BlockView(face, 2)
    face_sym = is_blockwise_symmetric(face_view)
    face_mgi = check_mgi(face)
    face_rank = matrix_form(face_view).rank()

    pub_view = BlockView(reference, 2)
    pub_sym = is_blockwise_symmetric(pub_view)
    pub_rank = matrix_form(pub_view).rank()
    pub_mgi = check_mgi(reference)

    passed = (bool(matching) and face_sym.passed and face_mgi.passed and face_rank == 4
              and pub_sym.passed and pub_rank == 4)
    witness = {
        'reference_entries': {k: str(v) for k, v in GAMMA1_REFERENCE.items()},
        'orderings_reproducing_reference': matching,
        'face_order': list(GAMMA1_ORDERS["face"]),
        'face_entries': _entries(face),
        'face_blockwise_symmetric': face_sym.passed,
        'face_mgi': face_mgi.to_dict(),
        'face_rank': face_rank,
        'reference_blockwise_symmetric': pub_sym.passed,
        'reference_rank': pub_rank,
        'reference_mgi': pub_mgi.to_dict(),
    }
    return HarnessReport('demo-gamma1', "Gamma_1 is blockwise symmetric with rank(M) = 4",
                         passed, witness)


@_timed
def verify_min_pair() -> HarnessReport:
    """Minimum-weight independent row pairs of Gamma_1: weight 1, and 2 within a parity class."""
    view = BlockView(signature(gamma1_gate()), 2)
    any_pair = find_min_weight_pair(view)
    same = find_min_weight_pair(view, same_parity=True)
    passed = (any_pair is not None and any_pair.weight == 1
              and same is not None and same.weight == 2)
    witness = {
        'unrestricted': any_pair.to_dict() if any_pair else None,
        'same_parity': same.to_dict() if same else None,
    }
    return HarnessReport('verify-min-pair', "Gamma_1 min pair weights are 1 and 2 (same parity)",
                         passed, witness)


# Equality non-realizability

@_timed
def verify_equality_theorem(
    q: int = 3,
    n: int = 3,
    block_size: int = 2,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    even_trials: Optional[int] = None,
) -> HarnessReport:
    """(=_n) M^{(x)n} is never a matchgate signature for rank-q M with q >= 3.

    Each trial draws a rank-q q x 2^l integer matrix, asserts rank(M(G)) = q
    and that parity or some matchgate identity fails. Random matrices almost
    always break parity, so ``even_trials`` further matrices (default a fifth
    of ``trials``, at least one) are drawn on the even-weight columns of the
    smallest block size with q of them. Those transforms satisfy parity and
    must be certified by an identity witness. The Boolean control
    (=_3) H_2^{(x)3}, with H_2 unnormalized and its scale tracked, must pass.

    Raises:
        PreconditionError: q < 3, n < 3 or 2^l < q.
    """
    if q < 3:
        raise PreconditionError(f"q = {q}: the equality theorem needs q >= 3")
    if n < 3:
        raise PreconditionError(f"n = {n}: the equality theorem needs n >= 3")
    if (1 << block_size) < q:
        raise PreconditionError(f"2^{block_size} < q = {q}: no rank-q matrix exists")
    trials = get_trials('eq_trials') if trials is None else trials
    seed = get_default_seed() if seed is None else seed

    eq = equality(q, n)
    tally = _Trials(seed)
    by_parity = by_mgi = 0
    first_mgi: Optional[Dict[str, Any]] = None
    for t in range(trials):
        rng = trial_rng(seed, t)
        m = random_full_rank_matrix(rng, q, 1 << block_size)
        view = transform(eq, m)
        rank = matrix_form(view).rank()
        par = check_parity(view.signature)
        if not par.passed:
            by_parity += 1
            certified = True
        else:
            mgi = check_mgi(view.signature)
            certified = not mgi.passed
            if certified:
                by_mgi += 1
                if first_mgi is None:
                    first_mgi = {'trial': t, **mgi.to_dict()}
        tally.record(t, rank == q and certified, rank=rank, parity=par.kind)

    if even_trials is None:
        even_trials = max(1, trials // 5) if trials else 0
    even_block = max(block_size, (q - 1).bit_length() + 1)
    support = even_weight_columns(even_block)
    even_by_mgi = 0
    for t in range(trials, trials + even_trials):
        m = random_full_rank_matrix(trial_rng(seed, t), q, 1 << even_block, support=support)
        view = transform(eq, m)
        rank = matrix_form(view).rank()
        par = check_parity(view.signature)
        mgi = check_mgi(view.signature)
        certified = par.passed and not mgi.passed
        if certified:
            even_by_mgi += 1
            if first_mgi is None:
                first_mgi = {'trial': t, 'block_size': even_block, **mgi.to_dict()}
        tally.record(t, rank == q and certified, rank=rank, parity=par.kind,
                     block_size=even_block, mgi=mgi.passed)
    by_mgi += even_by_mgi

    control = transform(equality(2, 3), hadamard(normalized=False))
    control_par = check_parity(control.signature)
    control_mgi = check_mgi(control.signature)
    control_ok = control_par.passed and control_mgi.passed

    witness = tally.witness(
        q=q, n=n, block_size=block_size,
        certified_by_parity=by_parity, certified_by_mgi=by_mgi,
        even_support_trials=even_trials, even_block_size=even_block,
        first_mgi_witness=first_mgi,
        control={'parity': control_par.kind, 'mgi': control_mgi.to_dict(),
                 'entries': _entries(control.signature)},
    )
    return HarnessReport('verify-eq-theorem',
                         f"(={n}) M^(x){n} is not a matchgate signature for rank-{q} M",
                         tally.passed and control_ok, witness, seed)


# Blockwise symmetric matchgates

@lru_cache(maxsize=512)
def block_symmetric_trial(seed: int, trial: int) -> Tuple[int, int, Matchgate, BlockView]:
    """The generated gate of one trial; rank-bound and decomposition checks share it."""
    n, l = BLOCK_SHAPES[trial % len(BLOCK_SHAPES)]
    gate, view = random_block_symmetric_gate(trial_rng(seed, trial), n, l)
    return n, l, gate, view


def _rank_coverage(ranks: Dict[str, int], trials: int) -> Tuple[bool, int]:
    """Both nonzero ranks must each occur in at least a tenth of the trials."""
    need = trials // 10
    return all(ranks.get(r, 0) >= need for r in ("1", "2")), need


def rank_bound_invariants() -> InvariantChecker:
    return InvariantChecker([
        parity_condition(),
        blockwise_symmetry(),
        rank_at_most(2),
        determinant_identities(),
    ])


@_timed
def verify_rank_bound(trials: Optional[int] = None, seed: Optional[int] = None) -> HarnessReport:
    """rank(M(G)) <= 2 and the determinant identities on generated gates (n in {3, 4}, l in {1, 2, 3}).

    Gamma_1 (n = 2, rank 4) is recorded as the boundary case.
    """
    trials = get_trials('trials') if trials is None else trials
    seed = get_default_seed() if seed is None else seed
    checker = rank_bound_invariants()
    tally = _Trials(seed)
    ranks: Dict[str, int] = {}
    for t in range(trials):
        n, l, _, view = block_symmetric_trial(seed, t)
        rank = matrix_form(view).rank()
        ranks[str(rank)] = ranks.get(str(rank), 0) + 1
        violated = checker.check(view)
        tally.record(t, not violated, n=n, block_size=l, rank=rank, violated=violated)
    covered, need = _rank_coverage(ranks, trials)

    gamma1 = BlockView(signature(gamma1_gate()), 2)
    witness = tally.witness(
        rank_counts=dict(sorted(ranks.items())),
        min_rank_count=need,
        invariants=checker.get_summary(),
        boundary_case={'gate': 'Gamma_1', 'num_blocks': 2, 'block_size': 2,
                       'rank': matrix_form(gamma1).rank()},
    )
    return HarnessReport('verify-rank-bound', "rank(M(G)) <= 2 for blockwise symmetric matchgates, n >= 3",
                         tally.passed and covered, witness, seed)


def _decomposition_trial(gate: Matchgate, view: BlockView) -> Tuple[bool, Dict[str, Any]]:
    samples = get_cap('mgi_samples') if view.arity > get_cap('mgi_exhaustive_arity') else None
    d = decompose(view, mgi_samples=samples)
    detail: Dict[str, Any] = {'rank': d.rank}
    if reconstruct_signature(d) != view.signature:
        return False, {**detail, 'stage': 'reconstruct'}
    if d.rank == 0:
        return True, detail
    mode = "rank2" if d.rank == 2 else "rank1"
    w = condensed_witness(gate, view, d, mode=mode, check=False)
    assert d.g is not None
    if condensed_signature(w).values != d.g.values:
        return False, {**detail, 'stage': 'condensed_witness'}
    if d.rank == 2:
        if signature(core_witness(gate, d, check=False)) != d.core:
            return False, {**detail, 'stage': 'core_witness'}
    elif not check_rank1_core(d, view):
        return False, {**detail, 'stage': 'rank1_core'}
    return True, detail


@_timed
def verify_decomposition(trials: Optional[int] = None, seed: Optional[int] = None) -> HarnessReport:
    """Decompose, reconstruct every entry, and realize g and the core by surgery on the source gate."""
    trials = get_trials('trials') if trials is None else trials
    seed = get_default_seed() if seed is None else seed
    tally = _Trials(seed)
    ranks: Dict[str, int] = {}
    for t in range(trials):
        n, l, gate, view = block_symmetric_trial(seed, t)
        try:
            ok, detail = _decomposition_trial(gate, view)
        except Exception as exc:
            ok, detail = False, {'error': f"{type(exc).__name__}: {exc}"}
        if 'rank' in detail:
            key = str(detail['rank'])
            ranks[key] = ranks.get(key, 0) + 1
        tally.record(t, ok, n=n, block_size=l, **detail)
    covered, need = _rank_coverage(ranks, trials)
    witness = tally.witness(rank_counts=dict(sorted(ranks.items())), min_rank_count=need)
    return HarnessReport('verify-decomposition', "decomposition reproduces G exactly; witnesses realize g and the core",
                         tally.passed and covered, witness, seed)


# FKT and the identities

@_timed
def verify_fkt(trials: Optional[int] = None, seed: Optional[int] = None) -> HarnessReport:
    """perfmatch_fkt equals perfmatch_bruteforce on random plane graphs and the 2 x 3 grids."""
    trials = get_trials('fkt_trials') if trials is None else trials
    seed = get_default_seed() if seed is None else seed
    tally = _Trials(seed)
    for t in range(trials):
        gate, _ = random_plane_graph(trial_rng(seed, t), max_vertices=12)
        brute = perfmatch_bruteforce(gate)
        fkt = perfmatch_fkt(gate)
        tally.record(t, brute == fkt, vertices=gate.num_vertices, brute=str(brute), fkt=str(fkt))

    grids = {
        'all_ones': (grid_graph(3, 2), Scalar(3)),
        'middle_minus_one': (grid_graph(3, 2, weights={(3, 4): -1}), Scalar(1)),
    }
    named: Dict[str, Dict[str, str]] = {}
    named_ok = True
    for name, (gate, expected) in grids.items():
        brute, fkt = perfmatch_bruteforce(gate), perfmatch_fkt(gate)
        named[name] = {'expected': str(expected), 'brute': str(brute), 'fkt': str(fkt)}
        named_ok = named_ok and brute == fkt == expected
    return HarnessReport('verify-fkt', "FKT Pfaffian equals brute-force PerfMatch on plane graphs",
                         tally.passed and named_ok, tally.witness(grids=named), seed)


@_timed
def verify_mgi_characterization(trials: Optional[int] = None, seed: Optional[int] = None) -> HarnessReport:
    """Matchgate signatures (arity 1..8) pass parity and every identity; Boolean (=_4) fails."""
    trials = get_trials('mgi_trials') if trials is None else trials
    seed = get_default_seed() if seed is None else seed
    tally = _Trials(seed)
    for t in range(trials):
        arity = 1 + t % 8
        gate = random_matchgate(trial_rng(seed, t), arity, max_vertices=10)
        s = signature(gate)
        par = check_parity(s)
        mgi = check_mgi(s)
        tally.record(t, par.passed and mgi.passed, arity=arity, parity=par.kind, mgi=mgi.to_dict())

    eq4 = check_mgi(BooleanSignature(4, equality(2, 4).values))
    eq4_ok = (not eq4.passed and eq4.alpha == "1000"
              and eq4.positions == (1, 2, 3, 4) and eq4.residual == "-1")
    return HarnessReport('verify-mgi', "matchgate signatures satisfy parity and the identities; (=4) does not",
                         tally.passed and eq4_ok, tally.witness(equality4=eq4.to_dict()), seed)


# Holographic transformations and Holant

@_timed
def verify_holant_theorem_sweep(trials: Optional[int] = None, seed: Optional[int] = None) -> HarnessReport:
    """Holant(F | G) = Holant(F M | Mcheck G) on random grids, alternating q = 2 and q = 3.

    Every tenth Boolean trial uses the unnormalized H_2 with its tracked scale.
    """
    trials = get_trials('holant_trials') if trials is None else trials
    seed = get_default_seed() if seed is None else seed
    tally = _Trials(seed)
    for t in range(trials):
        rng = trial_rng(seed, t)
        if t % 2 == 0:
            m = hadamard(normalized=False) if t % 20 == 0 else random_full_rank_matrix(rng, 2, 2)
            grid = random_grid(rng, 2, max_edges=8)
        else:
            m = random_full_rank_matrix(rng, 3, 4)
            grid = random_grid(rng, 3, max_edges=6)
        verdict = verify_holant_theorem(grid, m)
        tally.record(t, verdict.passed, q=grid.q, edges=grid.num_edges, **verdict.to_dict())
    return HarnessReport('verify-holant-sweep', "holographic transformations preserve the Holant value",
                         tally.passed, tally.witness(), seed)


@_timed
def verify_factorization(trials: Optional[int] = None, seed: Optional[int] = None) -> HarnessReport:
    """M(f M^{(x)3}) = M^T M(f) M^{(x)2} for random symmetric f with q <= 3 and l <= 2."""
    trials = get_trials('factor_trials') if trials is None else trials
    seed = get_default_seed() if seed is None else seed
    tally = _Trials(seed)
    for t in range(trials):
        rng = trial_rng(seed, t)
        q = 2 + t % 2
        l = 2 if q == 3 else int(rng.integers(1, 3))
        f = random_symmetric_signature(rng, q, 3)
        m = random_full_rank_matrix(rng, q, 1 << l)
        direct = matrix_form(transform(f, m)).matrix
        factored = matrix_form_factored(f, m).matrix
        tally.record(t, matrices_equal(direct, factored), q=q, block_size=l)
    return HarnessReport('verify-factorization', "M(f M^(x)n) factors as M^T M(f) M^(x)(n-1)",
                         tally.passed, tally.witness(), seed)


@_timed
def verify_holant_grids(trials: Optional[int] = None, seed: Optional[int] = None) -> HarnessReport:
    """holant_fkt agrees with holant_bruteforce on the Exact-One 4-cycle and random matchgate grids."""
    trials = get_trials('grid_trials') if trials is None else trials
    seed = get_default_seed() if seed is None else seed
    grid, gates = exact_one_cycle_grid()
    c4_brute, c4_fkt = holant_bruteforce(grid), holant_fkt(grid, gates)
    c4_ok = c4_brute == c4_fkt == Scalar(2)

    tally = _Trials(seed)
    for t in range(trials):
        grid, gates = random_matchgate_grid(trial_rng(seed, t))
        brute, fkt = holant_bruteforce(grid), holant_fkt(grid, gates)
        tally.record(t, brute == fkt, brute=str(brute), fkt=str(fkt))
    witness = tally.witness(cycle4={'brute': str(c4_brute), 'fkt': str(c4_fkt), 'expected': '2'})
    return HarnessReport('verify-holant-grids', "planar matchgate grids: FKT Holant equals brute force",
                         tally.passed and c4_ok, witness, seed)


def random_csp(rng: np.random.Generator) -> CSPInstance:
    """1-3 variables over q in {2, 3} with 1-3 constraints of arity 1 or 2."""
    q = int(rng.integers(2, 4))
    num_vars = int(rng.integers(1, 4))
    constraints = []
    for _ in range(int(rng.integers(1, 4))):
        arity = int(rng.integers(1, 3))
        args = tuple(int(x) for x in rng.integers(num_vars, size=arity))
        constraints.append((random_domain_signature(rng, q, arity), args))
    return CSPInstance(q, num_vars, tuple(constraints))


@_timed
def verify_csp_reduction(trials: Optional[int] = None, seed: Optional[int] = None) -> HarnessReport:
    """#CSP(F) equals Holant(EQ | F) on random small instances."""
    trials = get_trials('trials') if trials is None else trials
    seed = get_default_seed() if seed is None else seed
    tally = _Trials(seed)
    for t in range(trials):
        instance = random_csp(trial_rng(seed, t))
        direct = csp_bruteforce(instance)
        holant = holant_bruteforce(csp_to_holant(instance))
        tally.record(t, direct == holant, direct=str(direct), holant=str(holant))
    return HarnessReport('verify-csp', "#CSP(F) equals Holant(EQ | F)", tally.passed, tally.witness(), seed)


# Suite

CheckFunc = Callable[[int], HarnessReport]

CHECKS: Dict[str, CheckFunc] = {
    'demo-gamma1': lambda seed: demo_gamma1(),
    'verify-min-pair': lambda seed: verify_min_pair(),
    'verify-fkt': lambda seed: verify_fkt(seed=seed),
    'verify-mgi': lambda seed: verify_mgi_characterization(seed=seed),
    'verify-rank-bound': lambda seed: verify_rank_bound(seed=seed),
    'verify-decomposition': lambda seed: verify_decomposition(seed=seed),
    'verify-eq-theorem': lambda seed: verify_equality_theorem(seed=seed),
    'verify-holant-sweep': lambda seed: verify_holant_theorem_sweep(seed=seed),
    'verify-factorization': lambda seed: verify_factorization(seed=seed),
    'verify-holant-grids': lambda seed: verify_holant_grids(seed=seed),
    'verify-csp': lambda seed: verify_csp_reduction(seed=seed),
}


def run_harness(names: Optional[Sequence[str]] = None, seed: Optional[int] = None) -> List[HarnessReport]:
    """Run the named checks (default: all, in registry order) with one seed.

    Raises:
        KeyError: Unknown check name.
    """
    seed = get_default_seed() if seed is None else seed
    selected = list(CHECKS) if names is None else list(names)
    unknown = [n for n in selected if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown harness checks: {', '.join(unknown)}")
    return [CHECKS[name](seed) for name in selected]
