"""Mean-difference divergences and upper bounds on the two-class Bayes error."""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    ChainedBoundReport,
    SharpnessResult,
    all_bounds,
    chained_bounds,
    general_bound,
    sharpness_check,
    symmetric_bound,
)
from .classification import (
    DiscreteDistribution,
    PosteriorField,
    TwoClassProblem,
    averaged_divergence,
    bayes_error,
    load_problem,
    posteriors,
)
from .divergence import (
    GeneratorConstants,
    GeneratorKind,
    conjugate_value,
    constants,
    csiszar_divergence,
    f_infinity,
    generator_value,
)
from .errors import DomainError, ShapeError, ValidationError
from .means import MeanDiffKind, MeanKind, all_means, mean, mean_difference
from .verification import VerificationConfig, VerificationOutcome, run_all
