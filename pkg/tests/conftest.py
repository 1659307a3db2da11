from fractions import Fraction

import pytest

from coxdom.datum import make_datum


@pytest.fixture(scope="session")
def tilde_a1():
    return make_datum(["a", "b"], [("a", "b", "inf")])


@pytest.fixture(scope="session")
def a2():
    return make_datum(["a", "b"], [("a", "b", 3)])


@pytest.fixture(scope="session")
def a3():
    return make_datum(["a", "b", "c"], [("a", "b", 3), ("b", "c", 3)])


@pytest.fixture(scope="session")
def tilde_a2():
    return make_datum(
        ["a", "b", "c"], [("a", "b", 3), ("b", "c", 3), ("a", "c", 3)]
    )


@pytest.fixture(scope="session")
def universal3():
    return make_datum(
        ["a", "b", "c"],
        [("a", "b", "inf"), ("b", "c", "inf"), ("a", "c", "inf")],
    )


@pytest.fixture(scope="session")
def hyperbolic():
    """Rank 2 with a single weighted infinite bond, (a, b) = -3/2."""
    return make_datum(["a", "b"], [("a", "b", "inf", Fraction(-3, 2))])


@pytest.fixture(scope="session")
def b3():
    """Order-4 bond forces the approximate (float) backend."""
    return make_datum(["a", "b", "c"], [("a", "b", 4), ("b", "c", 3)])
