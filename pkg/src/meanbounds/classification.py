"""Two-class discrete decision problems.

A problem is a pair of priors plus one class-conditional pmf per class over
a shared finite alphabet. Everything here reduces to the joint masses
``joint_i(x) = prior_i * cond_i(x)``; the batched kernels at the bottom take
arrays of shape ``(..., n)`` so that the verification sweeps and the
single-problem API run through the same arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._validate import SUM_TOLERANCE, as_pmf
from .divergence import GeneratorKind, _conjugate_unchecked
from .errors import ShapeError, ValidationError

__all__ = [
    "DiscreteDistribution",
    "TwoClassProblem",
    "PosteriorField",
    "posteriors",
    "bayes_error",
    "averaged_divergence",
    "load_problem",
]


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """A pmf over a finite alphabet, validated and renormalized on creation."""

    mass: np.ndarray

    def __post_init__(self):
        arr = as_pmf(self.mass, "mass")
        arr.setflags(write=False)
        object.__setattr__(self, "mass", arr)

    def __len__(self) -> int:
        return self.mass.size

    def __array__(self, dtype=None, copy=None):
        return self.mass if dtype is None else self.mass.astype(dtype)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiscreteDistribution):
            return NotImplemented
        return np.array_equal(self.mass, other.mass)

    def __hash__(self) -> int:
        return hash(self.mass.tobytes())

    def tolist(self) -> list[float]:
        return self.mass.tolist()


def _coerce_dist(value, name: str) -> DiscreteDistribution:
    if isinstance(value, DiscreteDistribution):
        return value
    return DiscreteDistribution(as_pmf(value, name))


@dataclass(frozen=True)
class TwoClassProblem:
    prior1: float
    prior2: float
    cond1: DiscreteDistribution
    cond2: DiscreteDistribution

    def __post_init__(self):
        for name in ("prior1", "prior2"):
            v = getattr(self, name)
            try:
                v = float(v)
            except (TypeError, ValueError):
                raise ValidationError("must be a number", name) from None
            if not 0 < v < 1:
                raise ValidationError(f"must lie strictly between 0 and 1, got {v!r}", name)
            object.__setattr__(self, name, v)
        if abs(self.prior1 + self.prior2 - 1) > SUM_TOLERANCE:
            raise ValidationError(
                f"priors sum to {self.prior1 + self.prior2!r}, expected 1", "priors")
        total = self.prior1 + self.prior2
        object.__setattr__(self, "prior1", self.prior1 / total)
        object.__setattr__(self, "prior2", self.prior2 / total)
        object.__setattr__(self, "cond1", _coerce_dist(self.cond1, "cond1"))
        object.__setattr__(self, "cond2", _coerce_dist(self.cond2, "cond2"))
        if len(self.cond1) != len(self.cond2):
            raise ShapeError(
                f"conditionals have {len(self.cond1)} and {len(self.cond2)} symbols")
        if len(self.cond1) < 2:
            raise ValidationError("alphabet needs at least two symbols", "conditionals")

    @classmethod
    def from_dict(cls, doc) -> "TwoClassProblem":
        """Build from ``{"priors": [p1, p2], "conditionals": [[...], [...]]}``."""
        if not isinstance(doc, dict):
            raise ValidationError("problem must be a JSON object", "problem")
        for key in ("priors", "conditionals"):
            if key not in doc:
                raise ValidationError("missing field", key)
        priors, conds = doc["priors"], doc["conditionals"]
        if not isinstance(priors, list) or len(priors) != 2:
            raise ValidationError("must be an array of two numbers", "priors")
        if not isinstance(conds, list) or len(conds) != 2:
            raise ValidationError("must be an array of two arrays", "conditionals")
        for i, c in enumerate(conds):
            if not isinstance(c, list):
                raise ValidationError("must be an array of numbers", f"conditionals[{i}]")
        if len(conds[0]) != len(conds[1]):
            raise ValidationError(
                f"arrays have lengths {len(conds[0])} and {len(conds[1])}", "conditionals")
        return cls(
            prior1=_field_float(priors[0], "priors[0]"),
            prior2=_field_float(priors[1], "priors[1]"),
            cond1=_coerce_dist(conds[0], "conditionals[0]"),
            cond2=_coerce_dist(conds[1], "conditionals[1]"),
        )

    def to_dict(self) -> dict:
        return {
            "priors": [self.prior1, self.prior2],
            "conditionals": [self.cond1.tolist(), self.cond2.tolist()],
        }

    def swapped(self) -> "TwoClassProblem":
        """The same problem with the class labels exchanged."""
        return TwoClassProblem(self.prior2, self.prior1, self.cond2, self.cond1)

    @property
    def joint1(self) -> np.ndarray:
        return self.prior1 * self.cond1.mass

    @property
    def joint2(self) -> np.ndarray:
        return self.prior2 * self.cond2.mass


def _field_float(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError("must be a number", name)
    return float(value)


def load_problem(path: str | Path) -> TwoClassProblem:
    """Read a problem file (UTF-8 JSON)."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid JSON ({exc})", "problem") from None
    return TwoClassProblem.from_dict(doc)


@dataclass(frozen=True)
class PosteriorField:
    """Marginal p(x) and posterior P(C1|x) on the symbols with p(x) > 0."""

    marginal: np.ndarray
    posterior1: np.ndarray
    support: np.ndarray = field(repr=False)  # indices into the full alphabet

    @property
    def posterior2(self) -> np.ndarray:
        return 1 - self.posterior1


def posteriors(problem: TwoClassProblem) -> PosteriorField:
    j1, j2 = problem.joint1, problem.joint2
    marginal = j1 + j2
    support = np.flatnonzero(marginal > 0)
    return PosteriorField(
        marginal=marginal[support],
        posterior1=j1[support] / marginal[support],
        support=support,
    )


def bayes_error(problem: TwoClassProblem) -> float:
    """Minimum achievable error ``sum_x p(x) min(P(C1|x), P(C2|x))``."""
    return float(_bayes_error_kernel(problem.joint1, problem.joint2))


def averaged_divergence(kind: GeneratorKind | str, problem: TwoClassProblem) -> float:
    """Expected conjugate generator of the posterior, ``E_X f*(P(C1|X))``.

    Because every conjugate is symmetric about 1/2 the value does not depend
    on which class posterior is plugged in.
    """
    kind = GeneratorKind(kind)
    return float(_averaged_divergence_kernel(kind, problem.joint1, problem.joint2))


# --- batched kernels over joint masses of shape (..., n) -------------------

def _posterior_kernel(joint1, joint2):
    marginal = joint1 + joint2
    live = marginal > 0
    # Dead symbols get posterior 1/2 and zero weight; f*(1/2) = 0 anyway.
    post1 = np.divide(joint1, marginal, out=np.full_like(marginal, 0.5), where=live)
    return marginal, post1


def _bayes_error_kernel(joint1, joint2):
    marginal, post1 = _posterior_kernel(joint1, joint2)
    return np.sum(marginal * np.minimum(post1, 1 - post1), axis=-1)


def _averaged_divergence_kernel(kind: GeneratorKind, joint1, joint2):
    marginal, post1 = _posterior_kernel(joint1, joint2)
    return np.sum(marginal * _conjugate_unchecked(kind, post1), axis=-1)
