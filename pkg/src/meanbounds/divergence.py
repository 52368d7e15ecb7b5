"""Convex generators built from mean differences and their f-divergences.

Each generator is ``f(x) = M(x, 1)`` for one of the eleven mean differences
``M``. Its conjugate ``f*(u) = u f((1 - u)/u) = M(1 - u, u)`` is symmetric
about ``u = 1/2``, and ``f(0) = f*(1) = f*(0) = lim f(x)/x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validate import as_pmf
from .errors import DomainError, ShapeError
from .means import MeanDiffKind

__all__ = [
    "GeneratorKind",
    "GeneratorConstants",
    "F_INFINITY",
    "PUBLISHED_F_INFINITY",
    "ERRATA",
    "generator_value",
    "conjugate_value",
    "f_infinity",
    "constants",
    "csiszar_divergence",
]

# Generators are in one-to-one correspondence with mean differences.
GeneratorKind = MeanDiffKind

_SQRT2 = math.sqrt(2.0)

#: Slope at infinity, ``lim f(x)/x``, for each generator. Each expression is
#: arranged so it is bit-for-bit equal to ``conjugate_value(kind, 0)``.
F_INFINITY = {
    GeneratorKind.SA: math.sqrt(0.5) - 0.5,
    GeneratorKind.SN2: math.sqrt(0.5) - (math.sqrt(0.5) / 2),
    GeneratorKind.SN3: math.sqrt(0.5) - 1 / 3,
    GeneratorKind.SN1: math.sqrt(0.5) - 0.25,
    GeneratorKind.SG: math.sqrt(0.5),
    GeneratorKind.SH: math.sqrt(0.5),
    GeneratorKind.AN2: 0.5 - (math.sqrt(0.5) / 2),
    GeneratorKind.AG: 0.5,
    GeneratorKind.AH: 0.5,
    GeneratorKind.N2N1: (math.sqrt(0.5) / 2) - 0.25,
    GeneratorKind.N2G: math.sqrt(0.5) / 2,
}

#: The constants as they appear in the published tables, in their printed
#: algebraic form. The N2N1 entry is a misprint; see ``ERRATA``.
PUBLISHED_F_INFINITY = {
    GeneratorKind.SA: (_SQRT2 - 1) / 2,
    GeneratorKind.SN2: _SQRT2 / 4,
    GeneratorKind.SN3: (3 * _SQRT2 - 2) / 6,
    GeneratorKind.SN1: (2 * _SQRT2 - 1) / 4,
    GeneratorKind.SG: _SQRT2 / 2,
    GeneratorKind.SH: _SQRT2 / 2,
    GeneratorKind.AN2: (2 - _SQRT2) / 4,
    GeneratorKind.AG: 0.5,
    GeneratorKind.AH: 0.5,
    GeneratorKind.N2N1: (2 * _SQRT2 - 1) / 4,
    GeneratorKind.N2G: _SQRT2 / 4,
}

#: Kinds whose published constant disagrees with the limit of f(x)/x.
ERRATA = {
    GeneratorKind.N2N1: (
        "published slope at infinity (2*sqrt(2) - 1)/4 ~ 0.457107 contradicts "
        "lim f(x)/x = f*(0) = (sqrt(2) - 1)/4 ~ 0.103553"
    ),
}


@dataclass(frozen=True)
class GeneratorConstants:
    f_one: float       # f(1)
    f_infinity: float  # lim_{x->inf} f(x)/x
    f_zero: float      # lim_{x->0+} f(x)


# --- generator f(x) = M(x, 1) --------------------------------------------

def _s_term(x):
    # sqrt((x^2 + 1)/2), rearranged for x > 1 so that huge x cannot overflow
    big = x > 1
    xb = np.where(big, x, 1.0)
    xs = np.where(big, 1.0, x)
    return np.where(big, xb * np.sqrt((1 + (1 / xb) ** 2) / 2), np.sqrt((xs * xs + 1) / 2))


def _a_term(x):
    return (x + 1) / 2


def _g_term(x):
    return np.sqrt(x)


def _h_term(x):
    return 2 * x / (x + 1)


def _n1_term(x):
    return ((np.sqrt(x) + 1) / 2) ** 2


def _n2_term(x):
    return ((np.sqrt(x) + 1) / 2) * np.sqrt((x + 1) / 2)


def _n3_term(x):
    return (x + np.sqrt(x) + 1) / 3


_GENERATORS = {
    GeneratorKind.SA: lambda x: _s_term(x) - _a_term(x),
    GeneratorKind.SN2: lambda x: _s_term(x) - _n2_term(x),
    GeneratorKind.SN3: lambda x: _s_term(x) - _n3_term(x),
    GeneratorKind.SN1: lambda x: _s_term(x) - _n1_term(x),
    GeneratorKind.SG: lambda x: _s_term(x) - _g_term(x),
    GeneratorKind.SH: lambda x: _s_term(x) - _h_term(x),
    GeneratorKind.AN2: lambda x: _a_term(x) - _n2_term(x),
    GeneratorKind.AG: lambda x: _a_term(x) - _g_term(x),
    GeneratorKind.AH: lambda x: _a_term(x) - _h_term(x),
    GeneratorKind.N2N1: lambda x: _n2_term(x) - _n1_term(x),
    GeneratorKind.N2G: lambda x: _n2_term(x) - _g_term(x),
}


def _out(value):
    return float(value) if np.ndim(value) == 0 else value


def generator_value(kind: GeneratorKind | str, x):
    """Evaluate the generator ``f_kind`` at ``x > 0`` (scalar or array)."""
    kind = GeneratorKind(kind)
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or not np.all(x > 0):
        raise DomainError(f"generator argument must be finite and > 0, got {x}")
    return _out(_GENERATORS[kind](x))


# --- conjugate f*(u) = M(1 - u, u) ----------------------------------------
# Closed forms that stay finite on the closed interval [0, 1]. Every piece
# equals exactly 1/2 at u = 1/2 so that f*(1/2) evaluates to exactly zero.

def _conj_s(u, v):
    return np.sqrt((u * u + v * v) / 2)


def _conj_g(u, v):
    return np.sqrt(u * v)


def _conj_n1(u, v):
    return (1 + 2 * np.sqrt(u * v)) / 4


def _conj_n2(u, v):
    return (np.sqrt(u / 2) + np.sqrt(v / 2)) / 2


def _conj_n3(u, v):
    return (1 + np.sqrt(u * v)) / 3


def _conj_h(u, v):
    return 2 * u * v


_CONJUGATES = {
    GeneratorKind.SA: lambda u, v: _conj_s(u, v) - 0.5,
    GeneratorKind.SN2: lambda u, v: _conj_s(u, v) - _conj_n2(u, v),
    GeneratorKind.SN3: lambda u, v: _conj_s(u, v) - _conj_n3(u, v),
    GeneratorKind.SN1: lambda u, v: _conj_s(u, v) - _conj_n1(u, v),
    GeneratorKind.SG: lambda u, v: _conj_s(u, v) - _conj_g(u, v),
    GeneratorKind.SH: lambda u, v: _conj_s(u, v) - _conj_h(u, v),
    GeneratorKind.AN2: lambda u, v: 0.5 - _conj_n2(u, v),
    GeneratorKind.AG: lambda u, v: 0.5 - _conj_g(u, v),
    GeneratorKind.AH: lambda u, v: (2 * u - 1) ** 2 / 2,
    GeneratorKind.N2N1: lambda u, v: _conj_n2(u, v) - _conj_n1(u, v),
    GeneratorKind.N2G: lambda u, v: _conj_n2(u, v) - _conj_g(u, v),
}


def conjugate_value(kind: GeneratorKind | str, u):
    """Evaluate the conjugate ``f*_kind(u)`` for ``u`` in ``[0, 1]``."""
    kind = GeneratorKind(kind)
    u = np.asarray(u, dtype=float)
    if not np.all((u >= 0) & (u <= 1)):
        raise DomainError(f"conjugate argument must lie in [0, 1], got {u}")
    return _out(_CONJUGATES[kind](u, 1 - u))


def _conjugate_unchecked(kind: GeneratorKind, u):
    # Hot path for batched callers that already guarantee 0 <= u <= 1.
    return _CONJUGATES[kind](u, 1 - u)


def f_infinity(kind: GeneratorKind | str, published: bool = False) -> float:
    """``lim f(x)/x``; with ``published=True`` return the printed table value."""
    kind = GeneratorKind(kind)
    return (PUBLISHED_F_INFINITY if published else F_INFINITY)[kind]


def constants(kind: GeneratorKind | str) -> GeneratorConstants:
    kind = GeneratorKind(kind)
    f = _GENERATORS[kind]
    # The closed forms are finite at x = 0, which gives lim_{x->0+} f(x).
    return GeneratorConstants(
        f_one=float(f(np.float64(1.0))),
        f_infinity=F_INFINITY[kind],
        f_zero=float(f(np.float64(0.0))),
    )


def csiszar_divergence(kind: GeneratorKind | str, p, q) -> float:
    """Discrete f-divergence ``sum_x q(x) f(p(x)/q(x))``.

    Zero cells follow the usual conventions: a symbol with ``q = 0 < p``
    contributes ``p * f_infinity``, one with ``p = 0 < q`` contributes
    ``q * f(0)``, and one with ``p = q = 0`` contributes nothing.
    """
    kind = GeneratorKind(kind)
    p = as_pmf(p, "p")
    q = as_pmf(q, "q")
    if p.shape != q.shape:
        raise ShapeError(f"p has {p.size} symbols but q has {q.size}")
    c = constants(kind)
    both = (p > 0) & (q > 0)
    ratio = p[both] / q[both]
    total = float(np.sum(q[both] * _GENERATORS[kind](ratio)))
    total += float(np.sum(p[(q == 0) & (p > 0)])) * c.f_infinity
    total += float(np.sum(q[(p == 0) & (q > 0)])) * c.f_zero
    return total
