import sys

import mpmath
import numpy as np
import pytest

from meanbounds import TwoClassProblem

mpmath.mp.dps = 40


@pytest.fixture
def golden():
    """Equal priors, [0.8, 0.2] against [0.2, 0.8]."""
    return TwoClassProblem(0.5, 0.5, [0.8, 0.2], [0.2, 0.8])


def mp_means(a, b):
    """40-digit reference values of the seven means."""
    a, b = mpmath.mpf(a), mpmath.mpf(b)
    sq = mpmath.sqrt
    return {
        "A": (a + b) / 2,
        "G": sq(a * b),
        "H": 2 * a * b / (a + b),
        "N1": ((sq(a) + sq(b)) / 2) ** 2,
        "N2": ((sq(a) + sq(b)) / 2) * sq((a + b) / 2),
        "N3": (a + sq(a * b) + b) / 3,
        "S": sq((a * a + b * b) / 2),
    }


def mp_difference(kind, a, b):
    m = mp_means(a, b)
    return m[kind.larger.value] - m[kind.smaller.value]


def random_problem(rng, k):
    prior1 = rng.uniform(0.01, 0.99)
    cond1 = rng.dirichlet(np.ones(k))
    cond2 = rng.dirichlet(np.ones(k))
    return TwoClassProblem(prior1, 1 - prior1, cond1, cond2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
