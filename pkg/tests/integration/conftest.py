import json
import os

import pytest

from app import dispatch
from framework.serialization import dump_json

from tests.builders import (
    CHAIN_1997,
    balanced_ontology,
    chain_2008_actual,
    chain_2008_ideal,
    resonance_1997_actual,
    resonance_1997_ideal,
)


class CliResult:
    def __init__(self, code, out, err):
        self.code = code
        self.out = out
        self.err = err

    def json(self):
        return json.loads(self.out)


@pytest.fixture
def cli(capsys):
    """Run the blindspot command line in-process and capture its streams."""
    def run(*argv):
        code = dispatch([str(arg) for arg in argv])
        captured = capsys.readouterr()
        return CliResult(code, captured.out, captured.err)
    return run


@pytest.fixture
def write_json(tmp_path):
    def write(name, value):
        path = tmp_path / name
        path.write_text(value if isinstance(value, str) else dump_json(value), encoding="utf-8")
        return str(path)
    return write


@pytest.fixture
def chain_files(write_json):
    return write_json("chain_ideal.json", chain_2008_ideal()), write_json("chain_actual.json", chain_2008_actual())


@pytest.fixture
def peg_files(write_json):
    return write_json("peg_ideal.json", resonance_1997_ideal()), write_json("peg_actual.json", resonance_1997_actual())


@pytest.fixture
def peg_shock_file(write_json):
    return write_json("shock.json", {"magnitude": 2.0, "domain_nodes": [["prof", n] for n in CHAIN_1997]})


@pytest.fixture
def balanced_file(write_json):
    return write_json("balanced.json", balanced_ontology())


@pytest.fixture
def case_file(write_json):
    steps = lambda *walk: [
        {"dimension": "prof", "source": s, "target": t} for s, t in zip(walk, walk[1:])
    ]
    return write_json("cases.json", {"cases": [
        {"id": "c1", "background": {"age": 25.0}, "stage_label": "early-career",
         "trajectory": steps("a", "b", "c"), "outcome_severity": 0.9, "pattern_label": "ChainBreak"},
        {"id": "c2", "background": {"age": 27.0}, "stage_label": "early-career",
         "trajectory": steps("a", "b"), "outcome_severity": 0.4},
        {"id": "c3", "background": {"age": 55.0}, "stage_label": "late-career",
         "trajectory": steps("x", "a"), "outcome_severity": 0.7, "pattern_label": "LockIn"},
    ]})


@pytest.fixture
def postgres_url():
    """Case store URL for the docker-compose test database, when configured."""
    keys = ("POSTGRES_USER", "POSTGRES_PASSWORD", "POSTGRES_HOST", "POSTGRES_PORT", "POSTGRES_DB")
    if not all(os.getenv(key) for key in keys):
        pytest.skip("PostgreSQL test database not configured")
    return (
        f"postgresql+psycopg2://{os.getenv('POSTGRES_USER')}:{os.getenv('POSTGRES_PASSWORD')}"
        f"@{os.getenv('POSTGRES_HOST')}:{os.getenv('POSTGRES_PORT')}/{os.getenv('POSTGRES_DB')}"
    )
