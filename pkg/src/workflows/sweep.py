import multiprocessing
from typing import List, Literal, Sequence

from loguru import logger

from src.config.parser import scenario_overrides
from src.tools.errors import ErrorMessages
from src.types.scenario import CheckSpec, RunReport, Scenario
from src.workflows.runner import run_scenario

SweepAxis = Literal["omega", "sigma"]
OMEGA_REDUCTION_TOLERANCE = 1e-12


def member_scenarios(base: Scenario, axis: str, values: Sequence[float]) -> List[Scenario]:
    """One validated scenario per value; the omega = 0 member also audits the vorticity table."""
    if axis not in ("omega", "sigma"):
        raise ValueError(ErrorMessages.SWEEP_AXIS_INVALID.format(axis=axis))
    if not values:
        raise ValueError(ErrorMessages.SWEEP_VALUES_EMPTY.format())

    members = []
    for value in values:
        updates = {f"params.{axis}": float(value), "name": f"{base.name}-{axis}={value:g}"}
        if axis == "omega" and value == 0:
            updates["audit.force_vorticity"] = True
        member = scenario_overrides(base, updates)
        if axis == "omega" and value == 0 and not any(c.id == "omega_reduction" for c in member.checks):
            member = member.model_copy(update={
                "checks": member.checks + [CheckSpec(id="omega_reduction", tolerance=OMEGA_REDUCTION_TOLERANCE)]
            })
        members.append(member)
    return members


def _run_member(scenario: Scenario) -> RunReport:
    try:
        return run_scenario(scenario)
    except Exception as e:  # 单个成员失败不影响整个扫描
        logger.warning(f"[Sweep] 成员 '{scenario.name}' 失败: {e}")
        return RunReport(
            scenario=scenario.name,
            params=scenario.params,
            include_vorticity=scenario.include_vorticity,
            failure=str(e),
            outputs=scenario.outputs,
        )


def sweep(base: Scenario, axis: SweepAxis, values: Sequence[float], workers: int = 1) -> List[RunReport]:
    """Independent runs over omega or sigma; reports come back in input order."""
    members = member_scenarios(base, axis, values)
    logger.info(f"[Sweep] {base.name}: {axis} ∈ {list(values)} ({len(members)} runs, workers = {workers})")
    if workers > 1 and len(members) > 1:
        with multiprocessing.Pool(processes=min(workers, len(members))) as pool:
            reports = pool.map(_run_member, members)
    else:
        reports = [_run_member(member) for member in members]

    passed = sum(1 for report in reports if report.passed)
    logger.success(f"[Sweep] 完成: {passed}/{len(reports)} 个成员通过")
    return reports
