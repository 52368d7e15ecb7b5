"""Randomized checks of every inequality, constant and bound in the package.

Each check draws its inputs from its own seeded stream, so outcomes depend
only on the config and never on which other checks ran. All reductions are
sums, counts and maxima, so the results are deterministic.

A check's ``worst_violation`` is the largest signed excess over the allowed
slack, normalized the same way the pass/fail test is. A check fails when it
exceeds ``tolerance``; a negative value means every trial had room to spare.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .bounds import (
    CHAINS,
    SHARPNESS_PAIRS,
    TIE_TOLERANCE,
    general_bound_value,
    symmetric_bound_value,
)
from .classification import _averaged_divergence_kernel, _bayes_error_kernel
from .divergence import (
    ERRATA,
    PUBLISHED_F_INFINITY,
    GeneratorKind,
    _conjugate_unchecked,
    _GENERATORS,
    conjugate_value,
    constants,
    f_infinity,
    generator_value,
)
from .means import MEAN_ORDER, MeanDiffKind, mean, mean_difference

__all__ = [
    "VerificationConfig",
    "VerificationOutcome",
    "DIFFERENCE_CHAINS",
    "sample_log_uniform",
    "sample_simplex",
    "sample_problems",
    "check_mean_ordering",
    "check_difference_inequalities",
    "check_convexity",
    "check_constants",
    "check_bound_validity",
    "check_bound_identities",
    "run_all",
    "render_table",
    "render_json",
]

LOG_RANGE = (1e-6, 1e6)

#: Point at which slope-at-infinity and value-at-zero limits are probed.
LIMIT_PROBE = 1e12
LIMIT_TOL_INFINITY = 1e-5
LIMIT_TOL_ZERO = 1e-3
PUBLISHED_RTOL = 1e-15

#: Divergence above which a sharpness margin must be strictly positive.
SHARPNESS_FLOOR = 1e-9

_D = MeanDiffKind
#: Weighted chains c_0 M_0 <= c_1 M_1 <= ... among the mean differences.
DIFFERENCE_CHAINS = (
    ((_D.SA, 1.0), (_D.SH, 1 / 3), (_D.AH, 1 / 2), (_D.SG, 1 / 2), (_D.AG, 1.0)),
    ((_D.AH, 1 / 8), (_D.N2N1, 1.0), (_D.N2G, 1 / 3), (_D.AG, 1 / 4), (_D.AN2, 1.0)),
    ((_D.SA, 1 / 4), (_D.SN2, 1 / 5), (_D.AN2, 1.0)),
    ((_D.SH, 1 / 2), (_D.SN1, 1.0), (_D.SG, 3 / 4)),
    ((_D.SA, 1.0), (_D.SN3, 3 / 4), (_D.SN1, 2 / 3)),
)

# Stream ids keep each check's random inputs independent of the others.
_STREAM_MEANS = 1
_STREAM_DIFFS = 2
_STREAM_CONVEX = 3
_STREAM_PROBLEMS = 4


@dataclass(frozen=True)
class VerificationConfig:
    samples: int = 100_000
    seed: int = 42
    tolerance: float = 1e-12
    alphabet_sizes: tuple[int, ...] = (2, 3, 4, 8, 16)
    #: random problems per alphabet size; defaults to samples // 10
    problems: int | None = None
    #: absolute slack added to every relative comparison
    abs_floor: float = 1e-15

    def __post_init__(self):
        if int(self.samples) < 1:
            raise ValueError("samples must be at least 1")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        sizes = tuple(int(k) for k in self.alphabet_sizes)
        if not sizes or min(sizes) < 2:
            raise ValueError("alphabet sizes must all be at least 2")
        object.__setattr__(self, "alphabet_sizes", sizes)
        if self.problems is not None and int(self.problems) < 1:
            raise ValueError("problems must be at least 1")

    @property
    def problem_count(self) -> int:
        if self.problems is not None:
            return int(self.problems)
        return max(1, int(self.samples) // 10)

    def rng(self, stream: int, sub: int = 0) -> np.random.Generator:
        return np.random.default_rng([int(self.seed), stream, sub])


@dataclass(frozen=True)
class VerificationOutcome:
    check_name: str
    trials: int
    failures: int
    worst_violation: float
    witness: dict | None = None
    status: str = ""   # "pass", "fail" or "erratum"; derived when left empty
    note: str = ""

    def __post_init__(self):
        if not self.status:
            object.__setattr__(self, "status", "fail" if self.failures else "pass")

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_record(self) -> dict:
        return asdict(self)


# --- sampling ----------------------------------------------------------------

def sample_log_uniform(rng: np.random.Generator, size, low=LOG_RANGE[0], high=LOG_RANGE[1]):
    return np.exp(rng.uniform(math.log(low), math.log(high), size=size))


def sample_simplex(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    """``n`` points uniform on the (k-1)-simplex, via sorted uniform spacings."""
    cuts = np.sort(rng.uniform(size=(n, k - 1)), axis=1)
    edges = np.concatenate([np.zeros((n, 1)), cuts, np.ones((n, 1))], axis=1)
    return np.diff(edges, axis=1)


def sample_problems(config: VerificationConfig, k: int):
    """Random problems over an alphabet of size ``k``.

    Returns ``(prior1, cond1, cond2)`` with shapes ``(n,)``, ``(n, k)``,
    ``(n, k)``.
    """
    rng = config.rng(_STREAM_PROBLEMS, k)
    n = config.problem_count
    prior1 = rng.uniform(size=n)
    prior1[prior1 == 0] = 0.5
    cond1 = sample_simplex(rng, n, k)
    cond2 = sample_simplex(rng, n, k)
    return prior1, cond1, cond2


def _problem_witness(prior1, cond1, cond2, i) -> dict:
    return {
        "priors": [float(prior1[i]), float(1 - prior1[i])],
        "conditionals": [cond1[i].tolist(), cond2[i].tolist()],
    }


# --- shared reduction ---------------------------------------------------------

def _excess_outcome(name, excess, tol, witness_fn, note="",
                    strict=False) -> VerificationOutcome:
    """Summarize per-trial excess values of shape (trials,) or (trials, m).

    A trial fails when its excess is above ``tol`` (or at it, if ``strict``).
    """
    excess = np.asarray(excess, dtype=float)
    per_trial = excess.max(axis=1) if excess.ndim == 2 else excess
    bad = per_trial >= tol if strict else per_trial > tol
    failures = int(np.count_nonzero(bad))
    worst_i = int(np.argmax(per_trial))
    return VerificationOutcome(
        check_name=name,
        trials=int(per_trial.size),
        failures=failures,
        worst_violation=float(per_trial[worst_i]),
        witness=witness_fn(worst_i) if failures else None,
        note=note,
    )


def _ordered_excess(lower, upper, scale, config):
    """(lower - upper - abs_floor) / scale, the normalized signed violation."""
    return (lower - upper - config.abs_floor) / scale


# --- checks --------------------------------------------------------------------

def check_mean_ordering(config: VerificationConfig) -> VerificationOutcome:
    rng = config.rng(_STREAM_MEANS)
    a = sample_log_uniform(rng, config.samples)
    b = sample_log_uniform(rng, config.samples)
    values = [np.atleast_1d(mean(k, a, b)) for k in MEAN_ORDER]
    links = [
        _ordered_excess(lo, hi, np.abs(hi), config)
        for lo, hi in zip(values[:-1], values[1:])
    ]
    return _excess_outcome(
        "mean ordering H<=G<=N1<=N3<=N2<=A<=S",
        np.stack(links, axis=1),
        config.tolerance,
        lambda i: {"a": float(a[i]), "b": float(b[i])},
    )


def _chain_name(chain) -> str:
    def term(kind, c):
        if c == 1:
            return f"M_{kind}"
        return f"{_fraction(c)}*M_{kind}"
    return " <= ".join(term(k, c) for k, c in chain)


def _fraction(c: float) -> str:
    for den in range(1, 9):
        num = round(c * den)
        if abs(num / den - c) < 1e-15:
            return f"{num}/{den}" if den > 1 else str(num)
    return repr(c)


def check_difference_inequalities(config: VerificationConfig) -> list[VerificationOutcome]:
    rng = config.rng(_STREAM_DIFFS)
    a = sample_log_uniform(rng, config.samples)
    b = sample_log_uniform(rng, config.samples)
    # Differences cancel the leading order of two means of size ~max(a, b),
    # so rounding error scales with max(a, b) rather than with the difference.
    scale = np.maximum(a, b)
    diffs = {k: np.atleast_1d(mean_difference(k, a, b)) for k in MeanDiffKind}
    outcomes = []
    for chain in DIFFERENCE_CHAINS:
        links = []
        for (k0, c0), (k1, c1) in zip(chain[:-1], chain[1:]):
            links.append(_ordered_excess(c0 * diffs[k0], c1 * diffs[k1], scale, config))
        excess = np.stack(links, axis=1)
        worst_link = int(np.argmax(excess.max(axis=0)))
        lo, hi = chain[worst_link], chain[worst_link + 1]
        outcomes.append(_excess_outcome(
            _chain_name(chain),
            excess,
            config.tolerance,
            lambda i: {"a": float(a[i]), "b": float(b[i])},
            note=f"tightest link {lo[0]}->{hi[0]}",
        ))
    return outcomes


def check_convexity(kinds, config: VerificationConfig) -> list[VerificationOutcome]:
    """Midpoint convexity of each generator on (0, inf) and conjugate on [0, 1]."""
    kinds = list(GeneratorKind) if kinds is None else [GeneratorKind(k) for k in kinds]
    outcomes = []
    for kind in kinds:
        rng = config.rng(_STREAM_CONVEX, list(GeneratorKind).index(kind))
        x1 = sample_log_uniform(rng, config.samples)
        x2 = sample_log_uniform(rng, config.samples)
        f = _GENERATORS[kind]
        gap = f((x1 + x2) / 2) - (f(x1) + f(x2)) / 2
        scale = np.maximum(1.0, np.maximum(x1, x2))
        outcomes.append(_excess_outcome(
            f"convexity f_{kind}",
            (gap - config.abs_floor) / scale,
            config.tolerance,
            lambda i: {"x1": float(x1[i]), "x2": float(x2[i])},
        ))
        u1 = rng.uniform(size=config.samples)
        u2 = rng.uniform(size=config.samples)
        gap = (_conjugate_unchecked(kind, (u1 + u2) / 2)
               - (_conjugate_unchecked(kind, u1) + _conjugate_unchecked(kind, u2)) / 2)
        outcomes.append(_excess_outcome(
            f"convexity f*_{kind}",
            gap - config.abs_floor,
            config.tolerance,
            lambda i: {"u1": float(u1[i]), "u2": float(u2[i])},
        ))
    return outcomes


def check_constants(kinds=None) -> list[VerificationOutcome]:
    """Zero point, both limits and the closed-form endpoint of every generator.

    A published constant that disagrees with the computed one is reported
    with status ``"erratum"`` when the kind is listed in ``ERRATA`` and as a
    failure otherwise.
    """
    kinds = list(GeneratorKind) if kinds is None else [GeneratorKind(k) for k in kinds]
    X = LIMIT_PROBE
    outcomes = []
    for kind in kinds:
        finf = f_infinity(kind)
        # (label, deviation, allowance)
        probes = [
            ("f(1)", abs(generator_value(kind, 1.0)), 0.0),
            ("f(X)/X", abs(generator_value(kind, X) / X - finf), LIMIT_TOL_INFINITY),
            ("f(1/X)", abs(generator_value(kind, 1 / X) - finf), LIMIT_TOL_ZERO),
            ("f*(0)", abs(conjugate_value(kind, 0.0) - finf), 0.0),
            ("f(0)", abs(constants(kind).f_zero - finf), 0.0),
        ]
        excess = [dev - allow for _, dev, allow in probes]
        failed = [label for (label, _, _), e in zip(probes, excess) if e > 0]

        published = PUBLISHED_F_INFINITY[kind]
        pub_dev = abs(finf - published) / abs(published)
        status, note = "", ""
        if pub_dev > PUBLISHED_RTOL:
            if kind in ERRATA:
                status = "erratum" if not failed else "fail"
                note = f"published {published:.6f} vs derived {finf:.6f}: {ERRATA[kind]}"
            else:
                failed.append("published")
                note = f"published {published!r} vs computed {finf!r}"
        elif kind in ERRATA:
            failed.append("published")
            note = "listed as an erratum but matches the published value"
        if failed and not note:
            note = "failed: " + ", ".join(failed)
        outcomes.append(VerificationOutcome(
            check_name=f"constants {kind}",
            trials=len(probes) + 1,
            failures=len(failed),
            worst_violation=float(max(excess)),
            witness={"kind": kind.value, "failed": failed} if failed else None,
            status=status,
            note=note,
        ))
    return outcomes


def _problem_batches(config):
    for k in config.alphabet_sizes:
        prior1, cond1, cond2 = sample_problems(config, k)
        joint1 = prior1[:, None] * cond1
        joint2 = (1 - prior1)[:, None] * cond2
        yield k, prior1, cond1, cond2, joint1, joint2


def _concat_outcome(name, parts, tol, note="", strict=False) -> VerificationOutcome:
    """Merge per-alphabet-size excess arrays into one outcome."""
    witnesses = []
    excess = []
    for ex, wfn in parts:
        excess.append(ex.max(axis=1) if ex.ndim == 2 else ex)
        witnesses.append((ex.shape[0], wfn))
    flat = np.concatenate(excess)

    def witness(i):
        for n, wfn in witnesses:
            if i < n:
                return wfn(i)
            i -= n
        return None
    return _excess_outcome(name, flat, tol, witness, note, strict)


def check_bound_validity(config: VerificationConfig) -> VerificationOutcome:
    """Bayes error <= every direct bound, and every direct bound <= its chained
    counterpart, on random problems across the configured alphabet sizes."""
    parts = []
    for k, prior1, cond1, cond2, j1, j2 in _problem_batches(config):
        exact = _bayes_error_kernel(j1, j2)
        cols = []
        divs = {}
        for kind in GeneratorKind:
            divs[kind] = _averaged_divergence_kernel(kind, j1, j2)
            bound = np.clip(symmetric_bound_value(divs[kind], f_infinity(kind)), 0.0, 0.5)
            cols.append(exact - bound)
        for kind, mult in SHARPNESS_PAIRS:
            direct = symmetric_bound_value(divs[kind], f_infinity(kind))
            chained = (1 - mult * divs[kind]) / 2
            cols.append(direct - chained)
        parts.append((np.stack(cols, axis=1),
                      lambda i, p=prior1, c1=cond1, c2=cond2: _problem_witness(p, c1, c2, i)))
    return _concat_outcome("bound validity", parts, config.tolerance,
                           note=f"{len(GeneratorKind)} kinds + {len(SHARPNESS_PAIRS)} sharpness pairs")


def check_bound_identities(config: VerificationConfig) -> list[VerificationOutcome]:
    """Independent-path identities on the same random problems as
    ``check_bound_validity``."""
    bhatt, reduction, margin, chains = [], [], [], []
    for k, prior1, cond1, cond2, j1, j2 in _problem_batches(config):
        wfn = lambda i, p=prior1, c1=cond1, c2=cond2: _problem_witness(p, c1, c2, i)
        divs = {kind: _averaged_divergence_kernel(kind, j1, j2) for kind in GeneratorKind}

        ag = symmetric_bound_value(divs[GeneratorKind.AG], f_infinity(GeneratorKind.AG))
        coefficient = np.sum(np.sqrt(j1 * j2), axis=1)
        bhatt.append((np.abs(ag - coefficient), wfn))

        cols = []
        for kind in GeneratorKind:
            c = constants(kind)
            general = general_bound_value(divs[kind], prior1, 1 - prior1,
                                          c.f_zero, c.f_one, c.f_infinity)
            cols.append(np.abs(general - symmetric_bound_value(divs[kind], c.f_infinity)))
        reduction.append((np.stack(cols, axis=1), wfn))

        # Margin per unit divergence, negated; must be strictly negative
        # wherever the divergence is non-negligible. Elsewhere the exact
        # value (c_direct - c_chained)/2 stands in.
        cols = []
        for kind, mult in SHARPNESS_PAIRS:
            d = divs[kind]
            m = (1 - mult * d) / 2 - symmetric_bound_value(d, f_infinity(kind))
            live = d > SHARPNESS_FLOOR
            fallback = -(1 / f_infinity(kind) - mult) / 2
            cols.append(np.where(live, -m / np.where(live, d, 1.0), fallback))
        margin.append((np.stack(cols, axis=1), wfn))

        cols = []
        for chain in CHAINS.values():
            bounds = [(1 - mult * divs[kind]) / 2 for kind, mult in chain]
            cols.extend(lo - hi for lo, hi in zip(bounds[:-1], bounds[1:]))
        chains.append((np.stack(cols, axis=1), wfn))

    tol = config.tolerance
    return [
        _concat_outcome("AG bound == Bhattacharyya coefficient", bhatt, tol),
        _concat_outcome("general bound == symmetric bound", reduction, tol),
        _concat_outcome("sharpness margin > 0", margin, 0.0, strict=True,
                        note=f"required where divergence > {SHARPNESS_FLOOR:g}"),
        _concat_outcome("chained bounds nondecreasing", chains, max(tol, TIE_TOLERANCE)),
    ]


def run_all(config: VerificationConfig) -> list[VerificationOutcome]:
    outcomes = [check_mean_ordering(config)]
    outcomes += check_difference_inequalities(config)
    outcomes += check_convexity(None, config)
    outcomes += check_constants()
    outcomes.append(check_bound_validity(config))
    outcomes += check_bound_identities(config)
    return outcomes


# --- rendering -------------------------------------------------------------------

def render_table(outcomes) -> str:
    width = max(len(o.check_name) for o in outcomes)
    lines = [f"{'check':<{width}}  {'status':<7}  {'trials':>8}  {'failures':>8}  "
             f"{'worst':>16}  note"]
    for o in outcomes:
        lines.append(
            f"{o.check_name:<{width}}  {o.status.upper():<7}  {o.trials:>8d}  "
            f"{o.failures:>8d}  {o.worst_violation:>16.9g}  {o.note}".rstrip()
        )
    n_fail = sum(not o.passed for o in outcomes)
    n_err = sum(o.status == "erratum" for o in outcomes)
    lines.append(f"{len(outcomes)} checks, {n_fail} failed, {n_err} errata")
    return "\n".join(lines) + "\n"


def render_json(outcomes, config: VerificationConfig | None = None) -> str:
    doc = {"checks": [o.to_record() for o in outcomes]}
    if config is not None:
        cfg = asdict(config)
        cfg["alphabet_sizes"] = list(config.alphabet_sizes)
        cfg["problems"] = config.problem_count
        doc = {"config": cfg, **doc}
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
