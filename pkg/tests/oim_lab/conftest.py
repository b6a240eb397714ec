from typing import Tuple

import pytest

from oim_lab.datamodel.globals import reset_global_validation_context
from oim_lab.graph import Graph, WeightVector, build_graph


@pytest.fixture(autouse=True)
def _validation_context():
    yield
    reset_global_validation_context()


@pytest.fixture
def single_edge() -> Tuple[Graph, WeightVector]:
    return build_graph([(0, 1, 0.2)])


@pytest.fixture
def chain3() -> Tuple[Graph, WeightVector]:
    return build_graph([(0, 1, 0.5), (1, 2, 0.4)])


@pytest.fixture
def two_parents() -> Tuple[Graph, WeightVector]:
    # 0 -> 2 <- 1
    return build_graph([(0, 2, 0.3), (1, 2, 0.5)])
