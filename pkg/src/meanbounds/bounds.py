"""Upper bounds on the two-class Bayes error from averaged divergences.

For a convex generator ``f`` with ``f(1) = 0``, finite slope at infinity and
a conjugate symmetric about 1/2, the Bayes error obeys

    P_e <= (1/2) * (1 - D / f_inf)

where ``D`` is the averaged divergence of the problem. ``general_bound``
evaluates the unsymmetrized form, which must reduce to the same number for
every generator in this package.

Chained bounds replace one averaged divergence by a smaller multiple of
another using the pointwise mean-difference inequalities; they are valid but
never sharper than the direct bound for the divergence they start from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classification import TwoClassProblem, averaged_divergence, bayes_error
from .divergence import GeneratorKind, constants, f_infinity

__all__ = [
    "BoundReport",
    "ChainedBoundReport",
    "SharpnessResult",
    "CHAINS",
    "SHARPNESS_PAIRS",
    "TIE_TOLERANCE",
    "coefficient",
    "symmetric_bound_value",
    "general_bound_value",
    "symmetric_bound",
    "general_bound",
    "all_bounds",
    "chained_bounds",
    "sharpness_check",
]

#: Absolute tolerance for bound comparisons.
TIE_TOLERANCE = 1e-12

_SQRT2 = math.sqrt(2.0)

#: Chained coefficients, in order from sharpest to loosest. Each chain is a
#: list of (kind whose divergence is evaluated, multiplier) pairs and each
#: entry is the bound 1/2 * (1 - multiplier * D_kind).
CHAINS = {
    # M_SA <= M_SH/3 <= M_AH/2 <= M_SG/2 <= M_AG, starting from the AG bound
    "AG": (
        (GeneratorKind.AG, 2.0),
        (GeneratorKind.SG, 1.0),
        (GeneratorKind.AH, 1.0),
        (GeneratorKind.SH, 2 / 3),
        (GeneratorKind.SA, 2.0),
    ),
    # M_SH/2 <= M_SN1 <= 3 M_SG/4, starting from the SG bound
    "SG": (
        (GeneratorKind.SG, 2 / _SQRT2),
        (GeneratorKind.SN1, 8 / (3 * _SQRT2)),
        (GeneratorKind.SH, 4 / (3 * _SQRT2)),
    ),
}

#: Kinds whose direct bound is compared against a chained one, with the
#: chained multiplier for that same divergence.
SHARPNESS_PAIRS = (
    (GeneratorKind.SG, 1.0),
    (GeneratorKind.AH, 1.0),
    (GeneratorKind.SN1, 8 / (3 * _SQRT2)),
    (GeneratorKind.SH, 4 / (3 * _SQRT2)),
)


@dataclass(frozen=True)
class BoundReport:
    kind: GeneratorKind
    divergence: float
    coefficient: float  # 1 / f_inf
    bound: float        # clamped to [0, 1/2]
    exact_error: float
    slack: float        # bound - exact_error
    raw_bound: float

    @property
    def valid(self) -> bool:
        return self.slack >= -TIE_TOLERANCE


@dataclass(frozen=True)
class ChainedBoundReport:
    chain: str
    source_kind: GeneratorKind
    chain_coefficient: float
    chained_bound: float
    direct_bound: float

    @property
    def margin(self) -> float:
        return self.chained_bound - self.direct_bound


@dataclass(frozen=True)
class SharpnessResult:
    kind: GeneratorKind
    direct_coefficient: float
    chained_coefficient: float
    direct_bound: float
    chained_bound: float
    margin: float   # chained - direct
    holds: bool     # direct <= chained within TIE_TOLERANCE


def coefficient(kind: GeneratorKind | str, published: bool = False) -> float:
    """Multiplier ``1/f_inf`` of the averaged divergence in the bound."""
    return 1 / f_infinity(kind, published=published)


def symmetric_bound_value(divergence, f_inf: float, f_one: float = 0.0):
    """``(f_inf - D) / (2 f_inf - f_one)``; works elementwise on arrays.

    With ``f_one = 0`` this is ``(1 - D/f_inf)/2``.
    """
    if f_one == 0.0:
        return (1 - divergence / f_inf) / 2
    return (f_inf - divergence) / (2 * f_inf - f_one)


def general_bound_value(divergence, prior1, prior2, f_zero: float, f_one: float,
                        f_inf: float):
    """``(f0 P(C2) + f_inf P(C1) - D) / (f2 - f1)`` with ``f2 = f0 + f_inf``."""
    f_two = f_zero + f_inf
    if not math.isfinite(f_two):
        raise ValueError("the general bound needs f(0) + f_inf to be finite")
    return (f_zero * prior2 + f_inf * prior1 - divergence) / (f_two - f_one)


def _clamp(value):
    return np.clip(value, 0.0, 0.5)


def symmetric_bound(kind: GeneratorKind | str, problem: TwoClassProblem,
                    published: bool = False) -> BoundReport:
    """Direct error bound for one generator.

    ``published=True`` uses the printed table constant instead of the true
    slope at infinity; this only matters for N2N1, where it gives a looser
    (still valid) bound.
    """
    kind = GeneratorKind(kind)
    div = averaged_divergence(kind, problem)
    raw = float(symmetric_bound_value(div, f_infinity(kind, published=published)))
    bound = float(_clamp(raw))
    exact = bayes_error(problem)
    return BoundReport(
        kind=kind,
        divergence=div,
        coefficient=coefficient(kind, published=published),
        bound=bound,
        exact_error=exact,
        slack=bound - exact,
        raw_bound=raw,
    )


def general_bound(kind: GeneratorKind | str, problem: TwoClassProblem) -> float:
    kind = GeneratorKind(kind)
    c = constants(kind)
    div = averaged_divergence(kind, problem)
    return float(general_bound_value(div, problem.prior1, problem.prior2,
                                     c.f_zero, c.f_one, c.f_infinity))


def all_bounds(problem: TwoClassProblem, kinds=None,
               published: bool = False) -> list[BoundReport]:
    kinds = list(GeneratorKind) if kinds is None else [GeneratorKind(k) for k in kinds]
    return [symmetric_bound(k, problem, published=published) for k in kinds]


def chained_bounds(problem: TwoClassProblem) -> list[ChainedBoundReport]:
    """Every chained bound, paired with the direct bound of the same divergence."""
    divs = {k: averaged_divergence(k, problem) for k in GeneratorKind}
    rows = []
    for name, chain in CHAINS.items():
        for kind, mult in chain:
            rows.append(ChainedBoundReport(
                chain=name,
                source_kind=kind,
                chain_coefficient=mult,
                chained_bound=(1 - mult * divs[kind]) / 2,
                direct_bound=float(symmetric_bound_value(divs[kind], f_infinity(kind))),
            ))
    return rows


def sharpness_check(problem: TwoClassProblem) -> list[SharpnessResult]:
    out = []
    for kind, chained_mult in SHARPNESS_PAIRS:
        div = averaged_divergence(kind, problem)
        direct = float(symmetric_bound_value(div, f_infinity(kind)))
        chained = (1 - chained_mult * div) / 2
        out.append(SharpnessResult(
            kind=kind,
            direct_coefficient=coefficient(kind),
            chained_coefficient=chained_mult,
            direct_bound=direct,
            chained_bound=chained,
            margin=chained - direct,
            holds=direct <= chained + TIE_TOLERANCE,
        ))
    return out
