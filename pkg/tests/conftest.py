"""Shared fixtures for the tailsum test suite.

The ``oracles`` module next to this file provides slow, independently
derived reference computations (quadrature, series, exact bivariate
integration).  Unit tests compare the fast library routines against those
references or against constants frozen from oracle runs.
"""

import pytest
from hypothesis import settings

from tailsum import (
    ParetoMarginal,
    comonotone_pickands,
    gumbel_pickands,
    independence_pickands,
    make_survival_copula,
)

settings.register_profile("suite", deadline=None, max_examples=100)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def m08():
    return ParetoMarginal(0.8, 1.0)


@pytest.fixture(scope="session")
def m2():
    return ParetoMarginal(2.0, 1.0)


@pytest.fixture(scope="session")
def p1():
    return gumbel_pickands(1.0)


@pytest.fixture(scope="session")
def p2():
    return gumbel_pickands(2.0)


@pytest.fixture(scope="session")
def p10():
    return gumbel_pickands(10.0)


@pytest.fixture(scope="session")
def p_ind():
    return independence_pickands()


@pytest.fixture(scope="session")
def p_co():
    return comonotone_pickands()


@pytest.fixture(scope="session")
def sc_ind():
    return make_survival_copula("independence")


@pytest.fixture(scope="session")
def sc_g10():
    return make_survival_copula("gumbel", phi=10.0)


@pytest.fixture(scope="session")
def sc_co():
    return make_survival_copula("comonotone")


@pytest.fixture(scope="session")
def sc_log():
    return make_survival_copula("log-interaction", sigma=0.5)
