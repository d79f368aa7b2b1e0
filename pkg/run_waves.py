import os
import sys
from datetime import datetime
from typing import List

import click
from loguru import logger

from src.config.parser import load_scenario
from src.tools.errors import ConfigurationError
from src.types.scenario import RunReport
from src.workflows.acceptance import acceptance_scenarios, run_acceptance
from src.workflows.report import emit_report
from src.workflows.runner import run_scenario
from src.workflows.sweep import sweep as run_sweep


def add_run_log(name: str, log_root: str) -> str:
    # 自动生成日志目录 logs/{场景名}_{时间戳}
    log_dir = os.path.join(log_root, f"{name}_{datetime.now().strftime('%Y%m%d_%H%M%S')}")
    os.makedirs(log_dir, exist_ok=True)
    logger.add(os.path.join(log_dir, "run.log"), encoding="utf-8", enqueue=True, backtrace=True, diagnose=True)
    return log_dir


def combined_exit_code(reports: List[RunReport]) -> int:
    return max((report.exit_code for report in reports), default=0)


def print_summary(report: RunReport) -> None:
    status = "PASS" if report.passed else ("FAILED" if report.failure else "FAIL")
    click.echo(f"{report.scenario}: {status}")
    if report.failure:
        click.echo(f"  failure at t = {report.failure_time}: {report.failure}")
    for check in report.checks:
        mark = "ok " if check.passed else "!! "
        metric = "n/a" if check.metric is None else f"{check.metric:.3e}"
        expect = "" if check.expect == "pass" else f" (expect {check.expect})"
        click.echo(f"  {mark}{check.id:<32} {metric:>10} <= {check.tolerance:.1e}{expect}")


def load_or_exit(path: str):
    try:
        return load_scenario(path)
    except ConfigurationError as e:
        logger.error(f"[Config] {e}")
        click.echo(str(e), err=True)
        sys.exit(2)


@click.group()
def cli():
    """Free-surface water-wave simulator and conservation-law audit."""


@cli.command()
@click.option("--scenario", "scenario_path", type=click.Path(dir_okay=False), help="Scenario YAML file.")
@click.option("--acceptance", is_flag=True, help="Run the baked-in irrotational reference scenario.")
@click.option("--out", "out_dir", default="out", show_default=True, type=click.Path(file_okay=False))
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--log-dir", default="logs", show_default=True, type=click.Path(file_okay=False))
def run(scenario_path, acceptance, out_dir, fmt, log_dir):
    """Run one scenario and write its report."""
    if bool(scenario_path) == acceptance:
        raise click.UsageError("give exactly one of --scenario or --acceptance")
    scenario = acceptance_scenarios()[0] if acceptance else load_or_exit(scenario_path)
    add_run_log(scenario.name, log_dir)

    report = run_scenario(scenario)
    emit_report(report, fmt, out_dir)
    print_summary(report)
    sys.exit(report.exit_code)


@cli.command()
@click.option("--scenario", "scenario_path", required=True, type=click.Path(dir_okay=False))
@click.option("--axis", type=click.Choice(["omega", "sigma"]), required=True)
@click.option("--values", required=True, help="Comma-separated list, e.g. 0,0.25,0.5")
@click.option("--workers", default=1, show_default=True, type=click.IntRange(min=1))
@click.option("--out", "out_dir", default="out", show_default=True, type=click.Path(file_okay=False))
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--log-dir", default="logs", show_default=True, type=click.Path(file_okay=False))
def sweep(scenario_path, axis, values, workers, out_dir, fmt, log_dir):
    """Independent runs over omega or sigma."""
    try:
        parsed = [float(v) for v in values.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"not a comma-separated list of numbers: '{values}'", param_hint="--values")
    base = load_or_exit(scenario_path)
    add_run_log(f"{base.name}-sweep-{axis}", log_dir)

    try:
        reports = run_sweep(base, axis, parsed, workers=workers)
    except (ConfigurationError, ValueError) as e:
        logger.error(f"[Sweep] {e}")
        click.echo(str(e), err=True)
        sys.exit(2)
    for report in reports:
        emit_report(report, fmt, out_dir)
        print_summary(report)
    sys.exit(combined_exit_code(reports))


@cli.command()
@click.option("--out", "out_dir", default="out/acceptance", show_default=True, type=click.Path(file_okay=False))
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--log-dir", default="logs", show_default=True, type=click.Path(file_okay=False))
def check(out_dir, fmt, log_dir):
    """Run the baked-in acceptance suite."""
    add_run_log("acceptance", log_dir)
    reports = run_acceptance()
    for report in reports:
        emit_report(report, fmt, out_dir)
        print_summary(report)
    sys.exit(combined_exit_code(reports))


if __name__ == "__main__":
    cli()
