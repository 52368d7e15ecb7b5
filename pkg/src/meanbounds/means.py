"""Seven classical means of two positive numbers and their differences.

The means satisfy the ordering

    H <= G <= N1 <= N3 <= N2 <= A <= S

on (0, inf)^2, and the eleven differences below are nonnegative and convex.
All functions accept scalars or numpy arrays (broadcast elementwise); scalar
input gives a Python float back.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import DomainError

__all__ = [
    "MeanKind",
    "MeanDiffKind",
    "MEAN_ORDER",
    "mean",
    "mean_difference",
    "all_means",
    "all_differences",
]


class MeanKind(str, Enum):
    A = "A"    # arithmetic
    G = "G"    # geometric
    H = "H"    # harmonic
    N1 = "N1"  # square-root mean
    N2 = "N2"
    N3 = "N3"
    S = "S"    # root-square

    def __str__(self) -> str:
        return self.value


#: Ascending order of the means for every (a, b).
MEAN_ORDER = (
    MeanKind.H,
    MeanKind.G,
    MeanKind.N1,
    MeanKind.N3,
    MeanKind.N2,
    MeanKind.A,
    MeanKind.S,
)


class MeanDiffKind(str, Enum):
    """The eleven convex mean differences, larger mean first.

    N2 - N3 is deliberately missing: it is not convex.
    """

    SA = "SA"
    SN2 = "SN2"
    SN3 = "SN3"
    SN1 = "SN1"
    SG = "SG"
    SH = "SH"
    AN2 = "AN2"
    AG = "AG"
    AH = "AH"
    N2N1 = "N2N1"
    N2G = "N2G"

    def __str__(self) -> str:
        return self.value

    @property
    def larger(self) -> MeanKind:
        return _DIFF_PAIRS[self][0]

    @property
    def smaller(self) -> MeanKind:
        return _DIFF_PAIRS[self][1]

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str):
            return cls.__members__.get(value.strip().upper())
        return None

    @classmethod
    def parse(cls, name: str) -> "MeanDiffKind":
        """Look up a kind by name, case-insensitively (``"n2g"`` -> N2G)."""
        try:
            return cls(name)
        except ValueError:
            valid = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown kind {name!r}; expected one of {valid}") from None


_DIFF_PAIRS = {
    MeanDiffKind.SA: (MeanKind.S, MeanKind.A),
    MeanDiffKind.SN2: (MeanKind.S, MeanKind.N2),
    MeanDiffKind.SN3: (MeanKind.S, MeanKind.N3),
    MeanDiffKind.SN1: (MeanKind.S, MeanKind.N1),
    MeanDiffKind.SG: (MeanKind.S, MeanKind.G),
    MeanDiffKind.SH: (MeanKind.S, MeanKind.H),
    MeanDiffKind.AN2: (MeanKind.A, MeanKind.N2),
    MeanDiffKind.AG: (MeanKind.A, MeanKind.G),
    MeanDiffKind.AH: (MeanKind.A, MeanKind.H),
    MeanDiffKind.N2N1: (MeanKind.N2, MeanKind.N1),
    MeanDiffKind.N2G: (MeanKind.N2, MeanKind.G),
}


def _check_positive(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    for name, v in (("a", a), ("b", b)):
        if not np.all(np.isfinite(v)):
            raise DomainError(f"{name} must be finite, got {v}")
        if not np.all(v > 0):
            raise DomainError(f"{name} must be strictly positive, got {v}")
    return a, b


def _unit_mean(kind: MeanKind, t, s):
    # t, s in (0, 1]; every expression is written so that swapping t and s
    # performs the same floating point operations.
    if kind is MeanKind.A:
        return (t + s) / 2
    if kind is MeanKind.G:
        return np.sqrt(t * s)
    if kind is MeanKind.H:
        return 2 * t * s / (t + s)
    if kind is MeanKind.N1:
        return ((np.sqrt(t) + np.sqrt(s)) / 2) ** 2
    if kind is MeanKind.N2:
        return ((np.sqrt(t) + np.sqrt(s)) / 2) * np.sqrt((t + s) / 2)
    if kind is MeanKind.N3:
        return (t + s + np.sqrt(t * s)) / 3
    if kind is MeanKind.S:
        return np.sqrt((t * t + s * s) / 2)
    raise DomainError(f"unknown mean kind {kind!r}")


def _scalar_or_array(value):
    return float(value) if np.ndim(value) == 0 else value


def mean(kind: MeanKind | str, a, b):
    """Evaluate one of the seven means at ``(a, b)``.

    Both arguments are divided by ``max(a, b)`` before evaluation and the
    result is scaled back, so squares and products cannot overflow or
    underflow for inputs anywhere in the positive floating point range.
    """
    kind = MeanKind(kind)
    a, b = _check_positive(a, b)
    m = np.maximum(a, b)
    return _scalar_or_array(m * _unit_mean(kind, a / m, b / m))


def mean_difference(kind: MeanDiffKind | str, a, b):
    """Difference of two means, e.g. ``S(a,b) - A(a,b)`` for ``SA``.

    Nonnegative up to rounding, symmetric, homogeneous of degree one and
    zero on the diagonal ``a == b``.
    """
    kind = MeanDiffKind(kind)
    a, b = _check_positive(a, b)
    m = np.maximum(a, b)
    t, s = a / m, b / m
    return _scalar_or_array(m * (_unit_mean(kind.larger, t, s) - _unit_mean(kind.smaller, t, s)))


def all_means(a: float, b: float) -> list[tuple[MeanKind, float]]:
    """All seven means at ``(a, b)`` in ascending order H, G, N1, N3, N2, A, S."""
    return [(k, mean(k, a, b)) for k in MEAN_ORDER]


def all_differences(a: float, b: float) -> list[tuple[MeanDiffKind, float]]:
    return [(k, mean_difference(k, a, b)) for k in MeanDiffKind]
