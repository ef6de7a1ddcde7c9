"""Report rendering: one set of results, byte-identical every time.

Times are reported in milliseconds at three decimals. Rows keep the
order they were produced in, every document carries the seed it was
produced from, and rendering the same results twice yields the same
bytes, so reports can be diffed.
"""

from __future__ import annotations

import csv
import io
import json

from .engine import BatchStats, MatrixRow
from .errors import EmptyResults
from .handshake import session_cache_entry_bytes
from .recommend import RecommendationVerdict
from .registry import Registry

MATRIX_COLUMNS = (
    "scenario_id", "algorithm", "band", "situation",
    "median_ms", "p95_ms", "client_ms", "ap_ms", "server_ms",
    "eap_messages", "frames", "abort_rate",
)


def _ms(us: float) -> str:
    return f"{us / 1000:.3f}"


def _matrix_cells(row: MatrixRow) -> list[str]:
    scenario, stats = row.scenario, row.stats
    head = [scenario.scenario_id, scenario.signature,
            scenario.band.band.value, scenario.situation.situation.value]
    if stats is None:
        return head + [""] * (len(MATRIX_COLUMNS) - len(head))
    return head + [
        _ms(stats.median_us), _ms(stats.p95_us), _ms(stats.client_median_us),
        _ms(stats.ap_median_us), _ms(stats.server_median_us),
        str(stats.logical_eap_messages), str(stats.median_frames),
        f"{stats.abort_rate:.3f}",
    ]


def _require(rows) -> list:
    rows = list(rows)
    if not rows:
        raise EmptyResults("no rows to report")
    return rows


def render_matrix_csv(rows, seed: int) -> str:
    rows = _require(rows)
    buf = io.StringIO()
    buf.write(f"# seed={seed}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(MATRIX_COLUMNS)
    for row in rows:
        writer.writerow(_matrix_cells(row))
    return buf.getvalue()


def render_matrix_json(rows, seed: int) -> str:
    rows = _require(rows)
    doc = {"seed": seed, "rows": []}
    for row in rows:
        cells = dict(zip(MATRIX_COLUMNS, _matrix_cells(row)))
        entry: dict = {k: cells[k] for k in MATRIX_COLUMNS[:4]}
        if row.stats is None:
            entry["error"] = row.error
        else:
            for key in MATRIX_COLUMNS[4:]:
                entry[key] = (int(cells[key]) if key in ("eap_messages", "frames")
                              else float(cells[key]))
        doc["rows"].append(entry)
    return json.dumps(doc, indent=2) + "\n"


def render_matrix_table(rows, seed: int) -> str:
    rows = _require(rows)
    widths = [len(c) for c in MATRIX_COLUMNS]
    rendered = []
    for row in rows:
        cells = _matrix_cells(row)
        widths = [max(w, len(c)) for w, c in zip(widths, cells)]
        rendered.append(cells)
    def line(cells):
        return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [f"seed: {seed}", line(MATRIX_COLUMNS)]
    out += [line(cells) for cells in rendered]
    errors = [(row.scenario.scenario_id, row.error) for row in rows if row.error]
    if errors:
        out.append("")
        out += [f"failed: {sid}: {err}" for sid, err in errors]
    return "\n".join(out) + "\n"


def render_matrix(rows, fmt: str, seed: int) -> str:
    renderers = {"csv": render_matrix_csv, "json": render_matrix_json,
                 "table": render_matrix_table}
    return renderers[fmt](rows, seed)


def render_single_report(row: MatrixRow, stats: BatchStats, seed: int) -> str:
    """Human-readable summary of one batched scenario."""
    scenario = row.scenario
    lines = [
        f"scenario:        {scenario.scenario_id}",
        f"seed:            {seed}",
        f"signature:       {scenario.signature}",
        f"kem:             {scenario.kem}",
        f"band:            {scenario.band.band.value}",
        f"situation:       {scenario.situation.situation.value}",
        f"repetitions:     {stats.repetitions} ({stats.completed} completed)",
        f"median:          {_ms(stats.median_us)} ms",
        f"p95:             {_ms(stats.p95_us)} ms",
        f"client median:   {_ms(stats.client_median_us)} ms",
        f"ap median:       {_ms(stats.ap_median_us)} ms",
        f"server median:   {_ms(stats.server_median_us)} ms",
        f"eap messages:    {stats.logical_eap_messages}",
        f"frames (median): {stats.median_frames}",
        f"abort rate:      {stats.abort_rate:.3f}",
    ]
    return "\n".join(lines) + "\n"


RECOMMEND_COLUMNS = ("algorithm", "kem", "eap_messages", "handshake_cycles",
                     "baseline_cycles", "recommended", "reasons")


def render_recommendations(verdicts, fmt: str) -> str:
    verdicts = _require(verdicts)
    if fmt == "json":
        doc = [
            {
                "algorithm": v.algorithm, "kem": v.kem,
                "eap_messages": v.eap_messages,
                "handshake_cycles": v.total_handshake_cycles,
                "baseline_cycles": v.baseline_cycles,
                "recommended": v.recommended,
                "reasons": list(v.reasons),
            }
            for v in verdicts
        ]
        return json.dumps(doc, indent=2) + "\n"
    cells_of = lambda v: [
        v.algorithm, v.kem, str(v.eap_messages), str(v.total_handshake_cycles),
        str(v.baseline_cycles), "yes" if v.recommended else "no",
        "; ".join(v.reasons)]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(RECOMMEND_COLUMNS)
        for v in verdicts:
            writer.writerow(cells_of(v))
        return buf.getvalue()
    widths = [len(c) for c in RECOMMEND_COLUMNS]
    rendered = [cells_of(v) for v in verdicts]
    for cells in rendered:
        widths = [max(w, len(c)) for w, c in zip(widths, cells)]
    def line(cells):
        return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    return "\n".join([line(RECOMMEND_COLUMNS)] + [line(c) for c in rendered]) + "\n"


STORAGE_COLUMNS = ("algorithm", "public_key_bytes", "signature_bytes",
                   "cache_entry_bytes")


def render_storage_table(registry: Registry, fmt: str) -> str:
    """Server cache cost of one resumable session per signature scheme."""
    rows = [(s.name, s.public_key_bytes, s.signature_bytes,
             session_cache_entry_bytes(s)) for s in registry.signature_table]
    if fmt == "json":
        doc = [dict(zip(STORAGE_COLUMNS, row)) for row in rows]
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(STORAGE_COLUMNS)
        for row in rows:
            writer.writerow(row)
        return buf.getvalue()
    widths = [len(c) for c in STORAGE_COLUMNS]
    rendered = [[str(c) for c in row] for row in rows]
    for cells in rendered:
        widths = [max(w, len(c)) for w, c in zip(widths, cells)]
    def line(cells):
        return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    return "\n".join([line(STORAGE_COLUMNS)] + [line(c) for c in rendered]) + "\n"
