import csv
import io
import json
from typing import Any, Dict, List, Sequence

from zkbundles.errors import UsageError
from zkbundles.moduli.balance import AdmissibleSequence
from zkbundles.moduli.bounds import Bounds, charge_gap_ranges
from zkbundles.moduli.invariants import InvariantReport
from zkbundles.moduli.scan import StratumTable

FORMATS = ("text", "json", "csv")

CSV_COLUMNS = ["k", "j", "p", "height", "width", "chi", "instanton", "in_bounds"]
_BOUNDS_COLUMNS = ["k", "j", "height_lo", "height_hi", "width_lo", "width_hi", "chi_lo", "chi_hi"]


def _check_format(fmt: str):
    if fmt not in FORMATS:
        raise UsageError(f"Unknown format {fmt!r}, expected one of {', '.join(FORMATS)}")


def _csv(columns: Sequence[str], rows: List[Dict[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: row[c] for c in columns})
    return buffer.getvalue()


def render_report(report: InvariantReport, fmt: str = "text") -> str:
    _check_format(fmt)
    if fmt == "json":
        return report.to_json(indent=2)
    if fmt == "csv":
        row = report.to_dict()
        row["in_bounds"] = report.in_bounds
        return _csv(CSV_COLUMNS, [row])
    b = report.bounds
    lines = [
        f"k={report.k} j={report.j} p={report.p}",
        f"h={report.height} w={report.width} chi={report.chi}",
        f"bounds: h in [{b.height_lo}, {b.height_hi}], w in [{b.width_lo}, {b.width_hi}], "
        f"chi in [{b.chi_lo}, {b.chi_hi}]",
        f"in_bounds={report.in_bounds} instanton={report.instanton} "
        f"moduli_coordinates={report.moduli_coordinates} "
        f"first_neighbourhood_split={report.first_neighbourhood_split} "
        f"nongeneric_candidate={report.nongeneric_candidate}",
    ]
    if report.instanton_warning:
        lines.append(f"warning: {report.instanton_warning}")
    return "\n".join(lines) + "\n"


def render_table(table: StratumTable, fmt: str = "text") -> str:
    _check_format(fmt)
    if fmt == "json":
        data = table.to_dict()
        data["strata"] = [record.to_dict() for record in table.stratum_records()]
        return json.dumps(data, indent=2)
    if fmt == "csv":
        return _csv(CSV_COLUMNS, [row.to_dict() for row in table.rows])
    lines = [f"scan k={table.k} j={table.j} {table.grid}"]
    for record in table.stratum_records():
        lines.append(
            f"(h, w) = ({record.height}, {record.width}) chi={record.chi} "
            f"count={record.count} representative p={record.representative}"
        )
    if table.generic_height is not None:
        lines.append(
            f"generic: (h, w) = ({table.generic_height}, {table.generic_width}) [{table.caveat}]"
        )
    for failure in table.failures:
        lines.append(f"FAILED p={failure.p}: {failure.error_type}: {failure.error}")
    return "\n".join(lines) + "\n"


def render_sequence(seq: AdmissibleSequence, fmt: str = "text") -> str:
    _check_format(fmt)
    if fmt == "json":
        data = seq.to_dict()
        data["t"] = seq.t
        return json.dumps(data, indent=2)
    columns = ["i"] + [f"j{l}" for l in range(1, seq.r + 1)] + ["splits_formally"]
    rows = [
        {"i": i, **{f"j{l}": v for l, v in enumerate(row, start=1)}, "splits_formally": splits}
        for i, (row, splits) in enumerate(zip(seq.rows, seq.splits_formally), start=1)
    ]
    if fmt == "csv":
        return _csv(columns, rows)
    lines = [f"k={seq.k} t={seq.t}"]
    for i, row in enumerate(seq.rows, start=1):
        lines.append(f"{i}: " + " ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def render_bounds(k: int, j: int, bounds: Bounds, fmt: str = "text") -> str:
    _check_format(fmt)
    low_gap, high_gap = charge_gap_ranges(k)
    row = {"k": k, "j": j, **bounds.to_dict()}
    if fmt == "json":
        row["charge_gaps"] = [list(low_gap), list(high_gap)]
        return json.dumps(row, indent=2)
    if fmt == "csv":
        return _csv(_BOUNDS_COLUMNS, [row])
    gaps = sorted(set(low_gap) | set(high_gap))
    return (
        f"k={k} j={j}\n"
        f"height in [{bounds.height_lo}, {bounds.height_hi}]\n"
        f"width in [{bounds.width_lo}, {bounds.width_hi}]\n"
        f"chi in [{bounds.chi_lo}, {bounds.chi_hi}]\n"
        f"charge gaps: {gaps if gaps else 'none'}\n"
    )
