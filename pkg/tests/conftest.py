import numpy as np
import pytest

from hypint.curves import Marking
from hypint.presets import fig5_graph, fig5_prime_graph, genus2_graph


@pytest.fixture(scope="session")
def g2_graph():
    return genus2_graph()


@pytest.fixture(scope="session")
def g2_marking(g2_graph):
    return Marking(g2_graph)


@pytest.fixture(scope="session")
def fig5():
    return fig5_graph()


@pytest.fixture(scope="session")
def fig5_marking(fig5):
    return Marking(fig5)


@pytest.fixture(scope="session")
def fig5p():
    return fig5_prime_graph()


@pytest.fixture(scope="session")
def fig5p_marking(fig5p):
    return Marking(fig5p)
