from .runner import run_scenario
from .sweep import sweep
from .report import emit_report
