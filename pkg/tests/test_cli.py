"""Command line behaviour: subcommands, formats, exit codes."""

import csv
import io
import json

import pytest

from pqeap.cli import main

TOML = """
seed = 11
repetitions = 5

[[scenario]]
signatures = ["RSA-2048", "Falcon-512"]
"""


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / "scenarios.toml"
    path.write_text(TOML, encoding="utf-8")
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_simulate_with_flags(capsys):
    code, out, _ = run_cli(capsys, "simulate", "--signature", "ML-DSA-44",
                           "--reps", "5", "--seed", "3")
    assert code == 0
    assert "eap messages:    32" in out
    assert "seed:            3" in out


def test_simulate_from_file_by_index(capsys, scenario_file):
    code, out, _ = run_cli(capsys, "simulate", scenario_file, "--index", "1")
    assert code == 0
    assert "falcon-512" in out
    assert "seed:            11" in out


def test_simulate_index_out_of_range(capsys, scenario_file):
    code, _, err = run_cli(capsys, "simulate", scenario_file, "--index", "9")
    assert code == 2
    assert "--index" in err


def test_simulate_needs_a_source(capsys):
    code, _, err = run_cli(capsys, "simulate")
    assert code == 2
    assert "signature" in err


def test_simulate_rejects_file_plus_flags(capsys, scenario_file):
    code, _, err = run_cli(capsys, "simulate", scenario_file,
                           "--signature", "RSA-2048")
    assert code == 2
    assert "not both" in err


def test_simulate_json_format(capsys):
    code, out, _ = run_cli(capsys, "simulate", "--signature", "RSA-2048",
                           "--reps", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["rows"][0]["algorithm"] == "RSA-2048"


def test_unknown_algorithm_exits_2(capsys):
    code, _, err = run_cli(capsys, "simulate", "--signature", "ML-DSA-99",
                           "--reps", "1")
    assert code == 2
    assert "ML-DSA-99" in err


def test_compare_runs_a_file(capsys, scenario_file):
    code, out, _ = run_cli(capsys, "compare", scenario_file)
    assert code == 0
    assert out.startswith("# seed=11\n")
    rows = list(csv.reader(io.StringIO(out.split("\n", 1)[1])))
    assert len(rows) == 1 + 2


def test_compare_default_is_the_full_grid(capsys):
    code, out, _ = run_cli(capsys, "compare", "--reps", "2", "--seed", "1")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.split("\n", 1)[1])))
    assert len(rows) == 1 + 72
    assert out.startswith("# seed=1\n")


def test_compare_output_is_reproducible(capsys, scenario_file):
    code_a, out_a, _ = run_cli(capsys, "compare", scenario_file)
    code_b, out_b, _ = run_cli(capsys, "compare", scenario_file)
    assert code_a == code_b == 0
    assert out_a == out_b


def test_compare_seed_override_changes_results(capsys, scenario_file):
    _, out_a, _ = run_cli(capsys, "compare", scenario_file, "--seed", "500")
    _, out_b, _ = run_cli(capsys, "compare", scenario_file)
    assert out_a != out_b
    assert out_a.startswith("# seed=500\n")


def test_parse_error_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("[[scenario]]\nsignature = \"RSA-2048\"\nbnd = \"5GHz\"\n",
                   encoding="utf-8")
    code, _, err = run_cli(capsys, "compare", str(bad))
    assert code == 2
    assert "bnd" in err


def test_all_aborting_simulation_exits_3(capsys, tmp_path):
    doomed = tmp_path / "doomed.toml"
    doomed.write_text("""
repetitions = 2

[situations.excellent]
frame_loss_probability = 0.999

[[scenario]]
signature = "RSA-2048"
attempt_cap = 2
""", encoding="utf-8")
    code, out, _ = run_cli(capsys, "compare", str(doomed))
    assert code == 3


def test_out_writes_a_file(capsys, tmp_path, scenario_file):
    target = tmp_path / "report.csv"
    code, out, _ = run_cli(capsys, "compare", scenario_file, "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text(encoding="utf-8").startswith("# seed=11\n")


def test_resumption_storage_table(capsys):
    code, out, _ = run_cli(capsys, "resumption", "--storage")
    assert code == 0
    assert "cache_entry_bytes" in out
    assert "SLH-DSA-SHA2-256f" in out


def test_resumption_forces_resumption_mode(capsys, scenario_file):
    code, out, _ = run_cli(capsys, "resumption", scenario_file)
    assert code == 0
    for line in out.strip().split("\n")[2:]:
        assert "/resume" in line.split(",")[0]


def test_resumption_default_covers_the_core_table(capsys):
    code, out, _ = run_cli(capsys, "resumption", "--reps", "2")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.split("\n", 1)[1])))
    assert len(rows) == 1 + 12


def test_annoyance_table_and_json(capsys):
    code, out, _ = run_cli(capsys, "annoyance", "--client-sig", "RSA-2048",
                           "--server-sig", "RSA-2048", "--kem", "X25519")
    assert code == 0
    assert "EXPOSED" in out

    code, out, _ = run_cli(capsys, "annoyance", "--client-sig", "ML-DSA-44",
                           "--server-sig", "ML-DSA-44", "--kem", "ML-KEM-512",
                           "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert all(row["status"] == "PROTECTED" for row in doc)


def test_annoyance_unknown_scheme_exits_2(capsys):
    code, _, err = run_cli(capsys, "annoyance", "--client-sig", "nope",
                           "--server-sig", "RSA-2048", "--kem", "X25519")
    assert code == 2
    assert "nope" in err


def test_recommend_single_and_table(capsys):
    code, out, _ = run_cli(capsys, "recommend", "--signature", "Falcon-512",
                           "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[1][0] == "Falcon-512"
    assert rows[1][5] == "yes"

    code, out, _ = run_cli(capsys, "recommend")
    assert code == 0
    assert len(out.strip().split("\n")) == 1 + 12


def test_registry_export_matches_module_output(capsys):
    from pqeap.registry import DEFAULT_REGISTRY
    code, out, _ = run_cli(capsys, "registry", "export", "--kind", "signatures")
    assert code == 0
    assert out == DEFAULT_REGISTRY.signature_table_csv()
    code, out, _ = run_cli(capsys, "registry", "export", "--kind", "kems")
    assert code == 0
    assert out == DEFAULT_REGISTRY.kem_table_csv()


def test_defaults_prints_the_reference(capsys):
    code, out, _ = run_cli(capsys, "defaults")
    assert code == 0
    assert "scenario file reference" in out
    assert "fragment_size" in out
