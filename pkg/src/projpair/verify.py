# src/projpair/verify.py
"""Numeric checks for the projection-pair norm identities.

Every check returns a TrialReport with the measured quantities, a single
residual, and the verdict residual <= tol; violated mathematics is reported,
never raised. The randomized campaign driver run_trials stitches the checks
into a reproducible aggregate whose JSON form is byte-stable.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .linalg import adjoint, mat_poly_eval, spectral_norm
from .polynomials import poly_F, poly_PQ_recursive, poly_eval_real
from .projections import (
    AngleSpec,
    ProjectionPair,
    Provenance,
    halmos_decompose,
    pair_from_angles,
    random_pair,
    random_projection,
    validate_projection,
)

DEFAULT_TOL = 1e-8
# Slack for floating-point comparisons of analytically tight bounds (the
# sandwich degenerates to equalities at ||fg|| = 1, where measured norms
# carry rounding of either sign).
BOUND_EPS = 1e-12


@dataclass(frozen=True)
class TrialReport:
    """Outcome of one check on one pair."""

    check_name: str
    pair_provenance: Provenance
    quantities: dict[str, float]
    residual: float
    tol: float
    passed: bool


def _report(name: str, pair: ProjectionPair, quantities: dict, residual: float,
            tol: float) -> TrialReport:
    residual = float(residual)
    return TrialReport(name, pair.provenance, {k: float(v) for k, v in quantities.items()},
                       residual, tol, residual <= tol)


def check_theorem(pair: ProjectionPair, tol: float = DEFAULT_TOL) -> TrialReport:
    """Anticommutator norm formula: ||fg + gf|| = ||fg|| + ||fg||^2."""
    fg = pair.f @ pair.g
    gf = pair.g @ pair.f
    a = spectral_norm(fg)
    anti = spectral_norm(fg + gf)
    predicted = a + a * a
    return _report(
        "theorem", pair,
        {"norm_fg": a, "norm_anti": anti, "predicted": predicted},
        abs(anti - predicted), tol,
    )


def check_corollary(pair: ProjectionPair, tol: float = DEFAULT_TOL) -> TrialReport:
    """Commutator norm bounds: ||fg|| - ||fg||^2 <= ||fg - gf|| <= ||fg||."""
    fg = pair.f @ pair.g
    gf = pair.g @ pair.f
    a = spectral_norm(fg)
    comm = spectral_norm(fg - gf)
    lower = a - a * a
    residual = max(0.0, lower - comm, comm - a)
    return _report(
        "corollary", pair,
        {"norm_fg": a, "norm_comm": comm, "lower": lower, "upper": a},
        residual, tol,
    )


def check_lemma_product_power(pair: ProjectionPair, m_max: int = 8,
                              tol: float = DEFAULT_TOL) -> TrialReport:
    """Product powers: ||(fg)^m|| <= ||fg||^(2m-1) for m = 1..m_max.

    Also verifies the two algebraic stepping stones: ||fgf|| = ||fg||^2 and
    (fg)^m = (fgf)^(m-1) (fg).
    """
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max}")
    fg = pair.f @ pair.g
    fgf = fg @ pair.f
    a = spectral_norm(fg)
    residual = abs(spectral_norm(fgf) - a * a)
    power = fg
    prefix = np.eye(pair.dim, dtype=np.complex128)
    for m in range(1, m_max + 1):
        if m > 1:
            power = power @ fg
            prefix = prefix @ fgf
        residual = max(residual, spectral_norm(power) - a ** (2 * m - 1))
        residual = max(residual, spectral_norm(power - prefix @ fg))
    return _report(
        "lemma_product_power", pair,
        {"norm_fg": a, "norm_fgf": spectral_norm(fgf), "m_max": m_max},
        max(residual, 0.0), tol,
    )


def check_lemma_commutator(pair: ProjectionPair, tol: float = DEFAULT_TOL) -> TrialReport:
    """Commutator norm identity: ||fg - gf|| = ||fg(1-f)||.

    The proof's decomposition is checked too: with u = fg(1-f), the positive
    operators u u* and u* u are mutually orthogonal and sum to
    (fg - gf)* (fg - gf).
    """
    f, g = pair.f, pair.g
    eye = np.eye(pair.dim, dtype=np.complex128)
    fg = f @ g
    comm = fg - g @ f
    u = fg @ (eye - f)
    uu = u @ adjoint(u)
    u_u = adjoint(u) @ u
    comm_norm = spectral_norm(comm)
    u_norm = spectral_norm(u)
    residual = max(
        abs(comm_norm - u_norm),
        max(0.0, comm_norm - spectral_norm(fg)),
        spectral_norm(adjoint(comm) @ comm - (uu + u_u)),
        spectral_norm(uu @ u_u),
    )
    return _report(
        "lemma_commutator", pair,
        {"norm_comm": comm_norm, "norm_u": u_norm, "norm_fg": spectral_norm(fg)},
        residual, tol,
    )


def check_power_expansion(pair: ProjectionPair, n_max: int = 8,
                          tol: float = DEFAULT_TOL) -> TrialReport:
    """Power expansion: (fg+gf)^n = P_n(fg) + P_n(gf) + Q_n(fgf) + Q_n(gfg).

    Powers are built by repeated multiplication and compared against the exact
    integer polynomial pair; residuals are scaled by max(1, ||fg+gf||^n).
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    f, g = pair.f, pair.g
    fg, gf = f @ g, g @ f
    fgf, gfg = fg @ f, gf @ g
    anti = fg + gf
    anti_norm = spectral_norm(anti)
    power = anti
    residual = 0.0
    for n in range(1, n_max + 1):
        if n > 1:
            power = power @ anti
        p, q = poly_PQ_recursive(n)
        rhs = (
            mat_poly_eval(p, fg)
            + mat_poly_eval(p, gf)
            + mat_poly_eval(q, fgf)
            + mat_poly_eval(q, gfg)
        )
        scale = max(1.0, anti_norm**n)
        residual = max(residual, spectral_norm(power - rhs) / scale)
    return _report(
        "power_expansion", pair,
        {"norm_anti": anti_norm, "n_max": n_max},
        residual, tol,
    )


def check_nw_block(pair: ProjectionPair, n_max: int = 8,
                   tol: float = DEFAULT_TOL) -> TrialReport:
    """Leading blocks of anticommutator powers in the two-subspace basis.

    In a basis splitting range(f) from its complement, (fg+gf)^n must carry
    F_n(D) in its northwest block and F_{n-1}(D) V in its northeast block.
    Sample-point monotonicity of each F_n on [0, 1] is checked alongside,
    since the norm argument leans on it.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    blocks = halmos_decompose(pair, tol=max(tol, 1e-9))
    r = blocks.D.shape[0]
    anti = pair.f @ pair.g + pair.g @ pair.f
    anti_norm = spectral_norm(anti)
    w = adjoint(blocks.basis) @ anti @ blocks.basis
    power = w
    residual = 0.0
    grid = np.linspace(0.0, 1.0, 100)
    for n in range(1, n_max + 1):
        if n > 1:
            power = power @ w
        f_n = poly_F(n)
        f_prev = poly_F(n - 1)
        scale = max(1.0, anti_norm**n)
        nw = power[:r, :r] - mat_poly_eval(f_n, blocks.D)
        ne = power[:r, r:] - mat_poly_eval(f_prev, blocks.D) @ blocks.V
        residual = max(residual, spectral_norm(nw) / scale, spectral_norm(ne) / scale)
        values = [poly_eval_real(f_n, x) for x in grid]
        drop = max(values[i] - values[i + 1] for i in range(len(values) - 1))
        residual = max(residual, drop / scale)
    return _report(
        "nw_block", pair,
        {"norm_anti": anti_norm, "rank_f": r, "n_max": n_max},
        residual, tol,
    )


@dataclass(frozen=True)
class BoundRow:
    N: int
    upper: float
    lower: float


@dataclass(frozen=True)
class BoundTable:
    """Pre-limit upper/lower bound sequences pinching ||fg+gf|| towards a + a^2."""

    a: float
    rows: tuple[BoundRow, ...]
    limit: float

    @property
    def final_gap(self) -> float:
        return self.rows[-1].upper - self.limit if self.rows else 0.0


def bound_sequences(a: float, N_max: int) -> BoundTable:
    """Bound sequences at a = ||fg||:

    upper_N = 2^(1/2N) a (1+a)^(1 - 1/2N)   (even-power root estimate),
    lower_N = 2^(-1/N) a (1+a)^(1 + 1/N) [1 - ((a-1)/(a+1))^(N+1)]^(1/N)
              (leading-block root estimate).

    Both converge to a + a^2; every upper row sits at or above the limit and
    every lower row at or below it, which is enforced here.
    """
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a must lie in [0, 1] (a norm of a projection product), got {a}")
    if N_max < 1:
        raise ValueError(f"N_max must be >= 1, got {N_max}")
    limit = a + a * a
    c = (a - 1.0) / (a + 1.0)
    rows = []
    for n in range(1, N_max + 1):
        upper = 2.0 ** (1.0 / (2 * n)) * a * (1.0 + a) ** (1.0 - 1.0 / (2 * n))
        bracket = 1.0 - c ** (n + 1)
        lower = 2.0 ** (-1.0 / n) * a * (1.0 + a) ** (1.0 + 1.0 / n) * bracket ** (1.0 / n)
        if upper < limit - BOUND_EPS or lower > limit + BOUND_EPS:
            raise ArithmeticError(
                f"bound row N={n} fails to straddle the limit: "
                f"upper={upper!r}, lower={lower!r}, limit={limit!r}"
            )
        rows.append(BoundRow(n, upper, lower))
    return BoundTable(a, tuple(rows), limit)


def check_bound_sandwich(pair: ProjectionPair, N_max: int = 50,
                         tol: float = BOUND_EPS) -> TrialReport:
    """Measured ||fg+gf|| sits between lower_N and upper_N for every N."""
    fg = pair.f @ pair.g
    gf = pair.g @ pair.f
    # measured norms can exceed 1 by rounding only; clamp for the bound domain
    a = min(spectral_norm(fg), 1.0)
    anti = spectral_norm(fg + gf)
    table = bound_sequences(a, N_max)
    residual = 0.0
    for row in table.rows:
        residual = max(residual, row.lower - anti, anti - row.upper)
    return _report(
        "bound_sandwich", pair,
        {"norm_fg": a, "norm_anti": anti, "N_max": N_max},
        max(residual, 0.0), tol,
    )


def _identity_violation(pair: ProjectionPair) -> tuple[float, float, float]:
    fg = pair.f @ pair.g
    gf = pair.g @ pair.f
    a = spectral_norm(fg)
    comm = spectral_norm(fg - gf)
    return abs(comm**2 - a**2 * (1.0 - a**2)), a, comm


def check_dim2_commutator_identity(pair: ProjectionPair,
                                   tol: float = DEFAULT_TOL) -> TrialReport:
    """||fg - gf||^2 = ||fg||^2 (1 - ||fg||^2), an identity special to dim 2.

    It holds empirically for every 2x2 projection pair yet fails from dim 4
    up, so requesting it for any other dimension is an error.
    """
    if pair.dim != 2:
        raise ValueError(f"identity check is defined for dim 2 only, got {pair.dim}")
    violation, a, comm = _identity_violation(pair)
    return _report(
        "dim2_commutator_identity", pair,
        {"norm_fg": a, "norm_comm": comm},
        violation, tol,
    )


def find_commutator_identity_counterexample(
    dim: int, mode: str = "deterministic", budget: int = 1000, seed: int = 0
) -> tuple[ProjectionPair, float]:
    """Produce a pair of dimension >= 4 violating the dim-2 commutator identity.

    Deterministic mode direct-sums the angle cells (0, pi/4, pi/4, ...): the
    zero cell drives ||fg|| to 1 while the pi/4 cells keep the commutator norm
    at 1/2, giving violation 1/4 at dim 4. Random mode samples `budget`
    rank-dim/2 pairs and returns the worst violator found.
    """
    if dim < 4 or dim % 2:
        raise ValueError(f"counterexamples require even dim >= 4, got {dim}")
    if mode == "deterministic":
        angles = (0.0,) + (math.pi / 4,) * (dim // 2 - 1)
        pair = pair_from_angles(AngleSpec(angles))
        violation, _, _ = _identity_violation(pair)
        return pair, violation
    if mode == "random":
        if budget < 1:
            raise ValueError(f"budget must be >= 1, got {budget}")
        rng = np.random.Generator(np.random.PCG64(seed))
        best_pair = None
        best_violation = -1.0
        for _ in range(budget):
            f = random_projection(dim, dim // 2, int(rng.integers(0, 2**63)))
            g = random_projection(dim, dim // 2, int(rng.integers(0, 2**63)))
            pair = ProjectionPair(f, g, dim, Provenance("random", {"seed": seed}))
            violation, _, _ = _identity_violation(pair)
            if violation > best_violation:
                best_pair, best_violation = pair, violation
        return best_pair, best_violation
    raise ValueError(f"mode must be 'deterministic' or 'random', got {mode!r}")


# --- randomized campaign driver ----------------------------------------------

CHECKS = {
    "theorem": lambda pair, cfg: check_theorem(pair, cfg.tol),
    "corollary": lambda pair, cfg: check_corollary(pair, cfg.tol),
    "lemma_product_power": lambda pair, cfg: check_lemma_product_power(pair, cfg.m_max, cfg.tol),
    "lemma_commutator": lambda pair, cfg: check_lemma_commutator(pair, cfg.tol),
    "power_expansion": lambda pair, cfg: check_power_expansion(pair, cfg.n_max, cfg.tol),
    "nw_block": lambda pair, cfg: check_nw_block(pair, cfg.n_max, cfg.tol),
}

ALL_CHECKS = tuple(CHECKS)


@dataclass(frozen=True)
class TrialConfig:
    """Campaign shape: `trials` pairs per entry of `dims`, checked at `tol`."""

    dims: tuple[int, ...] = (2, 4, 8, 16)
    trials: int = 200
    base_seed: int = 0
    tol: float = DEFAULT_TOL
    checks: tuple[str, ...] = ALL_CHECKS
    m_max: int = 8
    n_max: int = 8
    threads: int | None = None  # None: PROJPAIR_THREADS if set, else 1

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "checks", tuple(self.checks))
        for d in self.dims:
            if d < 2:
                raise ValueError(f"campaign dims must be >= 2, got {d}")
        if self.trials < 0:
            raise ValueError(f"trials must be >= 0, got {self.trials}")
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        unknown = [c for c in self.checks if c not in CHECKS]
        if unknown:
            raise ValueError(f"unknown checks {unknown}; available: {sorted(CHECKS)}")


@dataclass
class CheckSummary:
    name: str
    trials: int = 0
    max_residual: float = 0.0
    failures: list[int] = field(default_factory=list)


@dataclass
class AggregateReport:
    """Campaign outcome; to_json() is byte-stable for identical configs."""

    config: TrialConfig
    per_check: list[CheckSummary]
    errors: list[dict]
    verdict: str

    def to_payload(self) -> dict:
        # thread count is execution detail, not outcome: keep it out so the
        # report is identical under any PROJPAIR_THREADS setting
        return {
            "config": {
                "dims": list(self.config.dims),
                "trials": self.config.trials,
                "base_seed": self.config.base_seed,
                "tol": self.config.tol,
                "checks": list(self.config.checks),
                "m_max": self.config.m_max,
                "n_max": self.config.n_max,
            },
            "per_check": [
                {
                    "name": s.name,
                    "trials": s.trials,
                    "max_residual": s.max_residual,
                    "failures": s.failures,
                }
                for s in self.per_check
            ],
            "errors": self.errors,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), indent=2, sort_keys=True)


def _resolve_threads(requested: int | None) -> int:
    if requested is None:
        env = os.environ.get("PROJPAIR_THREADS")
        if env is None:
            return 1
        try:
            requested = int(env)
        except ValueError:
            raise ValueError(f"PROJPAIR_THREADS must be a positive integer, got {env!r}")
    if requested < 1:
        raise ValueError(f"thread count must be >= 1, got {requested}")
    return requested


def _run_one_trial(config: TrialConfig, index: int):
    dim = config.dims[index // config.trials]
    seed = config.base_seed + index
    try:
        pair = random_pair(dim, seed)
        for member, name in ((pair.f, "f"), (pair.g, "g")):
            report = validate_projection(member)
            if not report.ok:
                raise ArithmeticError(
                    f"constructed {name} fails projection validation: "
                    f"idempotency {report.idempotency_residual:.3e}, "
                    f"hermiticity {report.hermiticity_residual:.3e}"
                )
        results = {name: CHECKS[name](pair, config) for name in config.checks}
        return index, dim, results, None
    except Exception as exc:  # trial isolation: record, never kill the campaign
        return index, dim, None, f"{type(exc).__name__}: {exc}"


def run_trials(config: TrialConfig) -> AggregateReport:
    """Run the configured checks over seeded random pairs.

    Trial i (numbered across the whole campaign) always uses base_seed + i, so
    the aggregate is independent of execution order and thread count; results
    are folded in trial-index order.
    """
    threads = _resolve_threads(config.threads)
    total = len(config.dims) * config.trials
    if threads == 1 or total == 0:
        outcomes = [_run_one_trial(config, i) for i in range(total)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(lambda i: _run_one_trial(config, i), range(total)))
    summaries = {name: CheckSummary(name) for name in config.checks}
    errors = []
    for index, dim, results, error in outcomes:
        if error is not None:
            errors.append({"trial": index, "dim": dim, "message": error})
            continue
        for name, report in results.items():
            summary = summaries[name]
            summary.trials += 1
            summary.max_residual = max(summary.max_residual, report.residual)
            if not report.passed:
                summary.failures.append(index)
    ordered = [summaries[name] for name in config.checks]
    ok = not errors and all(not s.failures for s in ordered)
    return AggregateReport(config, ordered, errors, "pass" if ok else "fail")
