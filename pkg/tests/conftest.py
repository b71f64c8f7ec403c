import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from sparse_residue.exact import RatFunc
from sparse_residue.grammar import parse_mpoly
from sparse_residue.laurent import LaurentPolynomial, SparseSystem

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

PARAMS = ("a1", "a2", "a3", "b1", "b2", "b3")
POINT = {"a1": 1, "a2": 1, "a3": 1, "b1": 1, "b2": 1, "b3": 2}
DATA = os.path.join(os.path.dirname(__file__), "..", "src", "sparse_residue", "data")

# Transcribed from the printed 15 x 17 matrix of the worked example.
WORKED_MATRIX = [
    "0 0 0 0 a2 0 0 0 0 0 b1 0 0 0 0 0 -a2*b1",
    "0 0 0 0 0 a2 0 0 0 0 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 a2 0 0 0 b2 0 0 0 0 0 -a2*b2",
    "0 0 0 0 a1 0 0 0 0 0 0 b1 0 0 0 0 0",
    "1 0 0 0 0 a1 0 0 0 0 0 0 b1 0 0 0 0",
    "0 1 0 0 0 0 a1 a2 0 0 0 b2 0 0 0 0 0",
    "0 0 1 0 0 0 0 0 a2 0 b3 0 b2 0 0 0 0",
    "0 0 0 0 0 0 0 a1 0 0 0 0 0 b1 0 0 0",
    "0 0 0 0 a3 0 0 0 a1 0 0 b3 0 0 b1 0 2*(a1*b3-a3*b1)",
    "0 0 0 1 0 a3 0 0 0 a2 0 0 b3 b2 0 0 0",
    "0 0 0 0 0 0 a3 0 0 0 0 0 0 0 b2 0 2*a3*b2",
    "0 0 0 0 0 0 0 0 0 a1 0 0 0 0 0 b1 0",
    "0 0 0 0 0 0 0 a3 0 0 0 0 0 b3 0 0 0",
    "0 0 0 0 0 0 0 0 a3 0 0 0 0 0 b3 b2 0",
    "0 0 0 0 0 0 0 0 0 a3 0 0 0 0 0 b3 0",
]


def R(text, params=PARAMS):
    return RatFunc(parse_mpoly(text, params))


def worked_polys():
    f1 = LaurentPolynomial(2, {(1, 0): R("a1"), (0, 1): R("a2"), (2, 2): R("a3")})
    f2 = LaurentPolynomial(2, {(1, 0): R("b1"), (1, 2): R("b2"), (2, 2): R("b3")})
    return f1, f2


@pytest.fixture(scope="session")
def worked_system():
    return SparseSystem(list(worked_polys()))


@pytest.fixture(scope="session")
def worked_residue():
    return RatFunc(parse_mpoly("a1^2*b2", PARAMS), parse_mpoly("a3*(a1*b3-a3*b1)^2", PARAMS))


@pytest.fixture(scope="session")
def fixture_path():
    return os.path.abspath(os.path.join(DATA, "example_paper.json"))


def random_system(rng: random.Random, n: int = 2, max_terms: int = 4, box: int = 2, complex_roots=False):
    """Random numeric n x n system with full-dimensional Newton polytopes."""
    while True:
        polys = []
        for _ in range(n):
            k = rng.randint(n + 1, max_terms)
            pts = {tuple(rng.randint(0, box) for _ in range(n)) for _ in range(k)}
            terms = {p: Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5)) for p in pts}
            polys.append(LaurentPolynomial(n, terms))
        try:
            return SparseSystem(polys)
        except Exception:
            continue


# acceptance lines, printed once at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
