from pathlib import Path
from typing import List, Literal, Union

from loguru import logger

from src.tools.storage import ReportStorage
from src.types.bulk import BULK_NAMES
from src.types.ledger import HAMILTONIAN_NAME, IRROTATIONAL_NAMES, VORTICITY_NAMES
from src.types.scenario import RunReport

ReportFormat = Literal["csv", "json"]
RESIDUAL_COLUMNS = ["t", "identity", "degree", "residual", "scale"]


def density_columns(report: RunReport) -> List[str]:
    columns = ["t", *IRROTATIONAL_NAMES, HAMILTONIAN_NAME]
    if report.include_vorticity:
        columns.extend(VORTICITY_NAMES)
    return columns


def bulk_columns() -> List[str]:
    return ["t", *BULK_NAMES]


def residual_rows(report: RunReport) -> List[dict]:
    return [residual.model_dump(include=set(RESIDUAL_COLUMNS)) for residual in report.residuals]


def emit_report(report: RunReport, format: ReportFormat, out_dir: Union[str, Path]) -> List[Path]:
    """Write the enabled artifacts of a report.

    csv: densities/residuals/bulk tables as CSV; json: the same tables as JSON records.
    summary_json is always JSON: check id → {metric, tolerance, pass}.
    """
    if format not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got '{format}'")
    storage = ReportStorage(out_dir)
    name = report.scenario
    tables = {
        "densities_csv": ("densities", report.densities, density_columns(report)),
        "residuals_csv": ("residuals", residual_rows(report), RESIDUAL_COLUMNS),
        "bulk_csv": ("bulk", report.bulk, bulk_columns()),
    }

    written = []
    for kind, (index, rows, columns) in tables.items():
        if kind not in report.outputs:
            continue
        if format == "csv":
            written.append(storage.write_csv(index, rows, columns, name))
        else:
            records = [{column: row.get(column) for column in columns} for row in rows]
            written.append(storage.write_json(index, records, name))
    if "summary_json" in report.outputs:
        written.append(storage.write_json("summary", report.summary(), name))

    logger.success(f"[Report] {name}: {len(written)} artifacts written to {storage.base_dir}")
    return written
