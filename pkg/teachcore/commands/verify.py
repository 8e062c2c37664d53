from logging import getLogger

from teachcore.model import load_instance
from teachcore.verifier import SuiteSettings, run_verification
from .request import RunRequest, CommandResult, ExitCode, OutputFormat, search_budget
from .table import render_table, render_machine

__all__ = ["cmd_verify"]
log = getLogger(__name__)


def cmd_verify(req: RunRequest, config=None) -> CommandResult:
    instances = [load_instance(path) for path in req.instances]
    if config is not None:
        settings = SuiteSettings.from_config(config.verify, config.generator, trials=req.trials)
    else:
        settings = SuiteSettings() if req.trials is None else SuiteSettings(trials=req.trials)
    budget = search_budget(req, config)

    report = run_verification(req.properties, req.seed, settings, budget=budget, instances=instances)
    failed = [r.property for r in report.reports if r.violations]
    partial = [r.property for r in report.reports if not r.complete]

    if failed:
        log.error("Property check failed: %s", ", ".join(failed))
        code = ExitCode.PROPERTY_FAILED
    elif partial:
        log.warning("Search budget exhausted on some instances: %s", ", ".join(partial))
        code = ExitCode.BUDGET_EXHAUSTED
    else:
        code = ExitCode.OK

    if req.format is OutputFormat.MACHINE:
        return CommandResult(code, render_machine(report.model_dump(mode="json")))

    rows = [[r.property, r.status, r.instances, r.checks, r.skipped, len(r.violations), "yes" if r.complete else "no"]
            for r in report.reports]
    lines = [render_table(["property", "status", "instances", "checks", "skipped", "violations", "complete"], rows,
                          title=f"Verification (seed {report.seed})")]
    for r in report.reports:
        for violation in r.violations[:3]:
            lines.append(f" {r.property}: {violation.detail}")
        for note in r.notes:
            lines.append(f" {r.property}: {note}")
    return CommandResult(code, "\n".join(lines))
