import json

import pytest

from analysis.pipeline import assess
from models.config import AnalysisConfig
from models.report import CombinedReport

from tests.builders import CHAIN_2008, chain_2008_actual, chain_2008_ideal, node, ontology


def test_version(cli):
    result = cli("--version")

    assert result.code == 0
    assert result.json() == {"engine": "1.0.0", "schema": "1"}


@pytest.mark.parametrize(
    "argv",
    [[], ["nonsense"], ["diff", "--ideal", "only.json"], ["report", "--eps-dom", "high"]],
)
def test_usage_errors_exit_two(cli, argv):
    result = cli(*argv)

    assert result.code == 2
    assert "usage" in result.err
    assert result.out == ""


def test_usage_error_names_the_missing_flag(cli):
    result = cli("diff", "--ideal", "only.json")

    assert result.err.startswith("usage: blindspot diff")
    assert "error: blindspot diff: the following arguments are required: --actual" in result.err


def test_validate_valid_file(cli, chain_files):
    ideal, _ = chain_files

    result = cli("validate", "--ontology", ideal, "--role", "ideal")

    assert result.code == 0
    assert result.json() == {"violations": []}


def test_validate_invalid_file(cli, write_json):
    path = write_json("bad.json", {
        "individual": "i-1", "stage": 0, "stage_label": "adult",
        "dimensions": {"prof": {"nodes": [{"id": "a", "weight": 0.5}, {"id": "b", "weight": 0.6}]}},
    })

    result = cli("validate", "--ontology", path)

    assert result.code == 1
    assert [v["kind"] for v in result.json()["violations"]] == ["normalization"]


def test_normalize(cli, write_json):
    path = write_json("raw.json", {
        "individual": "i-1", "stage": 0, "stage_label": "adult",
        "dimensions": {"prof": {"nodes": [{"id": "a", "weight": 3.0}, {"id": "b", "weight": 1.0}]}},
    })

    result = cli("normalize", "--ontology", path)

    assert result.code == 0
    assert [n["weight"] for n in result.json()["dimensions"]["prof"]["nodes"]] == [0.75, 0.25]


def test_identity_diff(cli, chain_files):
    ideal, _ = chain_files

    result = cli("diff", "--ideal", ideal, "--actual", ideal)

    assert result.code == 0
    assert result.json() == {"delta_w": {}, "missing_edges": [], "missing_nodes": []}


def test_diff_rejects_invalid_actual(cli, chain_files, write_json):
    ideal, _ = chain_files
    bad = write_json("bad.json", {
        "individual": "i-1", "stage": 2, "stage_label": "mid-career",
        "dimensions": {"prof": {"nodes": [{"id": "a", "weight": 0.5}], "edges": [{"source": "a", "target": "z"}]}},
    })

    result = cli("diff", "--ideal", ideal, "--actual", bad)

    assert result.code == 1
    assert result.err.startswith("error:")
    assert result.out == ""


def test_missing_file_is_a_data_error(cli, tmp_path):
    result = cli("severity", "--ideal", tmp_path / "none.json", "--actual", tmp_path / "none.json")

    assert result.code == 1
    assert "file not found" in result.err


def test_severity(cli, chain_files):
    result = cli("severity", "--ideal", chain_files[0], "--actual", chain_files[1])

    assert result.code == 0
    report = result.json()
    assert report["causal_absence_term"] == pytest.approx(0.9)
    assert report["sigma_max"] == pytest.approx(1.9)


def test_classify(cli, chain_files):
    result = cli("classify", "--ideal", chain_files[0], "--actual", chain_files[1])

    assert result.code == 0
    assert len(result.json()["type2_edges"]) == 3
    assert result.json()["type1_dimensions"] == []


def test_patterns_with_shock(cli, peg_files, peg_shock_file):
    result = cli("patterns", "--ideal", peg_files[0], "--actual", peg_files[1], "--shock", peg_shock_file)

    assert result.code == 0
    findings = {f["pattern"]: f for f in result.json()}
    assert list(findings) == ["Mono", "WindowClosure", "ChainBreak", "Resonance", "LockIn"]
    assert findings["Resonance"]["fired"]
    assert findings["Resonance"]["evidence"]["overlap_fraction"] == 1.0


def test_resilience_of_balanced_ontology(cli, balanced_file):
    result = cli("resilience", "--ideal", balanced_file, "--actual", balanced_file)

    assert result.code == 0
    assert result.json()["res"] == 1.0


def test_resilience_counts_dimensions_of_the_ideal(cli, balanced_file, write_json):
    mono = write_json("mono.json", ontology({"prof": ([node("prof-0", 1.0)], [])}))

    result = cli("resilience", "--ideal", balanced_file, "--actual", mono)

    assert result.code == 0
    report = result.json()
    assert report["inputs"]["n_dimensions"] == 4
    assert report["balance"] == pytest.approx(1e-3 / (0.75 + 1e-3))


def test_resilience_with_investments(cli, chain_files, write_json):
    invest = write_json("invest.json", {"entries": [
        {"stage": 0, "dimension": "prof", "amount": 10.0},
        {"stage": 1, "dimension": "prof", "amount": 10.0},
        {"stage": 2, "dimension": "prof", "amount": 10.0},
    ]})

    result = cli("resilience", "--ideal", chain_files[0], "--actual", chain_files[1], "--invest", invest, "--beta", "0")

    assert result.code == 0
    assert result.json()["inputs"]["switch_cost"] == pytest.approx(27.1)
    assert result.json()["mobility"] == pytest.approx(1 / 3.71)


def test_report_on_chain_break_fixture(cli, chain_files):
    result = cli("report", "--ideal", chain_files[0], "--actual", chain_files[1])

    assert result.code == 0
    report = result.json()
    chain_break = next(f for f in report["findings"] if f["pattern"] == "ChainBreak")
    assert chain_break["fired"] is True
    full = [p for p in chain_break["evidence"]["broken_paths"] if p["nodes"] == list(CHAIN_2008)]
    assert full[0]["criticality"] == pytest.approx(0.729, abs=1e-12)
    assert report["config"] == AnalysisConfig().model_dump(mode="json")


def test_report_round_trips_through_its_schema(cli, chain_files):
    result = cli("report", "--ideal", chain_files[0], "--actual", chain_files[1])

    parsed = CombinedReport.model_validate(result.json())

    assert parsed == assess(chain_2008_ideal(), chain_2008_actual(), AnalysisConfig())


def test_flags_and_config_file_reach_the_report(cli, chain_files, write_json):
    config = write_json("config.json", {"eps_chain": 0.6, "omega_budget": 4.0})

    result = cli("report", "--ideal", chain_files[0], "--actual", chain_files[1],
                 "--config", config, "--eps-chain", "0.95")

    assert result.code == 0
    report = result.json()
    assert report["config"]["eps_chain"] == 0.95
    assert report["config"]["omega_budget"] == 4.0
    assert not next(f for f in report["findings"] if f["pattern"] == "ChainBreak")["fired"]


def test_invalid_config_is_a_data_error(cli, chain_files, write_json):
    config = write_json("config.json", {"eps_dom": 3.0})

    result = cli("report", "--ideal", chain_files[0], "--actual", chain_files[1], "--config", config)

    assert result.code == 1
    assert "eps_dom" in result.err


def test_report_is_byte_identical(cli, chain_files, tmp_path):
    first, second = tmp_path / "first.json", tmp_path / "second.json"

    cli("report", "--ideal", chain_files[0], "--actual", chain_files[1], "--output", first)
    cli("report", "--ideal", chain_files[0], "--actual", chain_files[1], "--output", second)

    assert first.read_bytes() == second.read_bytes()
    assert cli("report", "--ideal", chain_files[0], "--actual", chain_files[1]).out == first.read_text()


def test_trajectory(cli, write_json):
    ideal = chain_2008_ideal()
    actual = chain_2008_actual()
    shrunk = ontology(
        {"prof": ([node(n, 0.5) for n in CHAIN_2008[:2]], [])},
        stage=3,
        stage_label="mid-career",
        individual="bank-treasurer",
    )
    stages = write_json("stages.json", json.dumps({"stages": [
        {"ideal": ideal.model_copy(update={"stage": 3}).model_dump(mode="json"), "actual": shrunk.model_dump(mode="json")},
        {"ideal": ideal.model_dump(mode="json"), "actual": actual.model_dump(mode="json")},
    ]}))

    result = cli("trajectory", "--stages", stages)

    assert result.code == 0
    report = result.json()
    assert [s["stage"] for s in report["stages"]] == [2, 3]
    assert report["declining_stages"] == [3]
    assert report["stages"][1]["sigma"] == pytest.approx(1.4)
