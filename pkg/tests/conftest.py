import pytest

from models.config import AnalysisConfig

from tests.builders import (
    balanced_ontology,
    chain_2008_actual,
    chain_2008_ideal,
    resonance_1997_actual,
    resonance_1997_ideal,
)


def pytest_collection_modifyitems(config, items):
    for item in items:
        if "tests/integration" in str(item.fspath):
            item.add_marker(pytest.mark.integration)
        elif "tests/unit" in str(item.fspath):
            item.add_marker(pytest.mark.unit)


@pytest.fixture
def default_config():
    return AnalysisConfig()


@pytest.fixture
def chain_ideal():
    return chain_2008_ideal()


@pytest.fixture
def chain_actual():
    return chain_2008_actual()


@pytest.fixture
def peg_ideal():
    return resonance_1997_ideal()


@pytest.fixture
def peg_actual():
    return resonance_1997_actual()


@pytest.fixture
def balanced():
    return balanced_ontology()
