import json

import pandas as pd
import pytest

from src.tools.storage import ReportStorage, sanitize_filename
from src.types.ledger import IdentityResidual
from src.types.params import PhysicalParams
from src.types.scenario import CheckResult, RunReport
from src.workflows.report import density_columns, emit_report


def make_report(include_vorticity=False, rows=2, **kwargs):
    densities = []
    for i in range(rows):
        row = {"t": 0.1 * i, **{f"T{j}": float(j) + i for j in range(1, 9)}, "H": 1.5}
        if include_vorticity:
            row.update({f"vT{j}": float(j) for j in (1, 2, 3, 4, 5, 6, 8)})
        densities.append(row)
    residuals = [
        IdentityResidual(identity="idA", degree=2, residual=1e-12, scale=0.5, t=0.1 * i) for i in range(rows)
    ]
    checks = [
        CheckResult(id="drift:T1", metric=1e-9, tolerance=1e-6, passed=True),
        CheckResult(id="T7_conserved", metric=float("nan"), tolerance=1e-8, passed=False, expect="fail"),
    ]
    defaults = dict(
        scenario="demo-omega=0.5",
        params=PhysicalParams(),
        include_vorticity=include_vorticity,
        densities=densities,
        residuals=residuals,
        bulk=[{"t": 0.1 * i, **{f"I{j}*": float(j) for j in range(1, 9)}} for i in range(rows)],
        checks=checks,
        wall_clock=12.5,
    )
    defaults.update(kwargs)
    return RunReport(**defaults)


def test_density_columns_follow_vorticity_flag():
    assert density_columns(make_report()) == ["t", "T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "H"]
    columns = density_columns(make_report(include_vorticity=True))
    assert columns[-7:] == ["vT1", "vT2", "vT3", "vT4", "vT5", "vT6", "vT8"]


def test_csv_artifacts(tmp_path):
    written = emit_report(make_report(include_vorticity=True), "csv", tmp_path)
    names = sorted(path.name for path in written)
    assert names == [
        "demo-omega0.5_bulk.csv",
        "demo-omega0.5_densities.csv",
        "demo-omega0.5_residuals.csv",
        "demo-omega0.5_summary.json",
    ]
    densities = pd.read_csv(tmp_path / "demo-omega0.5_densities.csv")
    assert list(densities.columns) == density_columns(make_report(include_vorticity=True))
    assert len(densities) == 2
    residuals = pd.read_csv(tmp_path / "demo-omega0.5_residuals.csv")
    assert list(residuals.columns) == ["t", "identity", "degree", "residual", "scale"]


def test_empty_run_writes_header_only_csv(tmp_path):
    emit_report(make_report(rows=0), "csv", tmp_path)
    text = (tmp_path / "demo-omega0.5_densities.csv").read_text(encoding="utf-8")
    assert text == "t,T1,T2,T3,T4,T5,T6,T7,T8,H\n"


def test_summary_round_trip(tmp_path):
    report = make_report()
    emit_report(report, "json", tmp_path)
    summary = json.loads((tmp_path / "demo-omega0.5_summary.json").read_text(encoding="utf-8"))
    assert summary == report.summary()
    assert summary["T7_conserved"] == {"metric": None, "tolerance": 1e-8, "pass": False}
    records = ReportStorage(tmp_path).load_json("densities", "demo-omega0.5")
    assert records == [{c: row[c] for c in density_columns(report)} for row in report.densities]


def test_outputs_are_byte_deterministic(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    emit_report(make_report(wall_clock=1.0), "csv", first)
    emit_report(make_report(wall_clock=99.0), "csv", second)
    for path in first.iterdir():
        assert path.read_bytes() == (second / path.name).read_bytes()


def test_only_enabled_outputs_are_written(tmp_path):
    written = emit_report(make_report(outputs=["summary_json"]), "csv", tmp_path)
    assert [path.name for path in written] == ["demo-omega0.5_summary.json"]


def test_unknown_format_is_rejected(tmp_path):
    with pytest.raises(ValueError):
        emit_report(make_report(), "xlsx", tmp_path)


def test_exit_codes():
    assert make_report().exit_code == 1
    assert make_report(checks=[]).exit_code == 0
    assert make_report(failure="NaN").exit_code == 3


@pytest.mark.parametrize("index,name,expected", [
    ("summary", "demo run", "demo_run_summary"),
    ("bulk", None, "bulk"),
    ("bulk", "a/b=c", "abc_bulk"),
])
def test_sanitize_filename(index, name, expected):
    assert sanitize_filename(index, name) == expected
