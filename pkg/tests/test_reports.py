"""Report rendering: formats, determinism, seed provenance."""

import csv
import io
import json

import pytest

from pqeap.engine import MatrixRow, Scenario, compare_matrix, run_batch
from pqeap.errors import EmptyResults
from pqeap.recommend import classify_recommended
from pqeap.registry import DEFAULT_REGISTRY as REG
from pqeap.reports import (
    MATRIX_COLUMNS,
    render_matrix,
    render_matrix_csv,
    render_matrix_json,
    render_matrix_table,
    render_recommendations,
    render_single_report,
    render_storage_table,
)


def _rows(reps=5):
    return compare_matrix([
        Scenario(signature="RSA-2048", repetitions=reps),
        Scenario(signature="Falcon-512", repetitions=reps),
    ])


def test_csv_has_seed_comment_header_and_columns():
    text = render_matrix_csv(_rows(), seed=99)
    lines = text.split("\n")
    assert lines[0] == "# seed=99"
    parsed = list(csv.reader(io.StringIO("\n".join(lines[1:]))))
    assert tuple(parsed[0]) == MATRIX_COLUMNS
    assert len(parsed) == 3  # header + 2 data rows


def test_rendering_is_byte_deterministic():
    a = render_matrix_csv(_rows(), seed=1)
    b = render_matrix_csv(_rows(), seed=1)
    assert a == b
    assert render_matrix_json(_rows(), 1) == render_matrix_json(_rows(), 1)


def test_times_use_three_decimal_milliseconds():
    text = render_matrix_csv(_rows(), seed=1)
    median_cell = text.strip().split("\n")[2].split(",")[4]
    whole, frac = median_cell.split(".")
    assert len(frac) == 3


def test_json_document_shape():
    doc = json.loads(render_matrix_json(_rows(), seed=7))
    assert doc["seed"] == 7
    assert len(doc["rows"]) == 2
    row = doc["rows"][0]
    assert row["algorithm"] == "RSA-2048"
    assert isinstance(row["median_ms"], float)
    assert isinstance(row["eap_messages"], int)
    assert "error" not in row


def test_failed_rows_keep_their_place():
    rows = compare_matrix([
        Scenario(signature="RSA-2048", repetitions=3),
        Scenario(signature="missing-dsa"),
    ])
    doc = json.loads(render_matrix_json(rows, seed=0))
    assert "error" in doc["rows"][1]
    assert "UnknownAlgorithm" in doc["rows"][1]["error"]

    text = render_matrix_csv(rows, seed=0)
    last = text.strip().split("\n")[-1]
    assert last.endswith("," * (len(MATRIX_COLUMNS) - 4))

    table = render_matrix_table(rows, seed=0)
    assert "failed:" in table


def test_table_starts_with_seed_line():
    assert render_matrix_table(_rows(), seed=5).startswith("seed: 5\n")


def test_render_matrix_dispatch():
    rows = _rows()
    assert render_matrix(rows, "csv", 1) == render_matrix_csv(rows, 1)
    assert render_matrix(rows, "json", 1) == render_matrix_json(rows, 1)
    assert render_matrix(rows, "table", 1) == render_matrix_table(rows, 1)


def test_empty_results_are_refused():
    with pytest.raises(EmptyResults):
        render_matrix_csv([], seed=0)
    with pytest.raises(EmptyResults):
        render_recommendations([], "csv")


def test_single_report_mentions_the_essentials():
    sc = Scenario(signature="ML-DSA-44", repetitions=5)
    stats = run_batch(sc)
    text = render_single_report(MatrixRow(sc, stats), stats, seed=sc.seed)
    for needle in ("scenario:", f"seed:            {sc.seed}", "median:",
                   "eap messages:    32", "abort rate:"):
        assert needle in text


def test_recommendations_render_in_all_formats():
    verdicts = [classify_recommended(s.name) for s in REG.signature_table]
    table = render_recommendations(verdicts, "table")
    assert "SLH-DSA-SHA2-256f" in table

    text = render_recommendations(verdicts, "csv")
    parsed = list(csv.reader(io.StringIO(text)))
    assert len(parsed) == 1 + 12
    yes = [row for row in parsed[1:] if row[5] == "yes"]
    assert len(yes) == 6

    doc = json.loads(render_recommendations(verdicts, "json"))
    assert {v["algorithm"] for v in doc if v["recommended"]} == {
        "RSA-2048", "Falcon-512", "Falcon-1024",
        "ML-DSA-44", "ML-DSA-65", "ML-DSA-87"}


def test_storage_table_lists_cache_entries():
    text = render_storage_table(REG, "csv")
    parsed = list(csv.reader(io.StringIO(text)))
    assert parsed[0] == ["algorithm", "public_key_bytes", "signature_bytes",
                         "cache_entry_bytes"]
    by_name = {row[0]: int(row[3]) for row in parsed[1:]}
    assert by_name["SLH-DSA-SHA2-128s"] == 654 + 32 + 7856
    assert by_name["ML-DSA-44"] == 654 + 1312 + 2420
    doc = json.loads(render_storage_table(REG, "json"))
    assert len(doc) == 12
