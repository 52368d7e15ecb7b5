import numpy as np

from .errors import ValidationError

#: Allowed deviation of a probability vector's total from one.
SUM_TOLERANCE = 1e-9


def as_pmf(values, field: str = "distribution") -> np.ndarray:
    """Return ``values`` as a float vector renormalized to sum exactly to one."""
    try:
        mass = np.array(values, dtype=float)
    except (TypeError, ValueError):
        raise ValidationError("must be a list of numbers", field) from None
    if mass.ndim != 1 or mass.size == 0:
        raise ValidationError("must be a non-empty one-dimensional list", field)
    if not np.all(np.isfinite(mass)):
        raise ValidationError("entries must be finite", field)
    if np.any(mass < 0):
        raise ValidationError("entries must be nonnegative", field)
    total = mass.sum()
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise ValidationError(f"entries sum to {total!r}, expected 1", field)
    return mass / total
