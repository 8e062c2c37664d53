from logging import getLogger

from teachcore.model import load_instance, format_feature_set
from teachcore.protocol import (
    Outcome, ScriptTeacher, load_script, run_protocol, optimal_teaching_plan, DEFAULT_MAX_STEPS,
)
from .request import RunRequest, CommandResult, ExitCode, OutputFormat, search_budget, selected_feature_sets
from .table import render_table, render_machine

__all__ = ["cmd_simulate"]
log = getLogger(__name__)


def _replay(req: RunRequest, inst, config) -> CommandResult:
    learner, protocol = req.learners[0], req.protocols[0]
    actions = load_script(req.script)
    max_steps = config.search.max_protocol_steps if config is not None else DEFAULT_MAX_STEPS
    log.info("Replaying %s actions (%s, %s)", len(actions), protocol.label, learner.label)

    transcript = run_protocol(inst, learner, protocol, ScriptTeacher(actions), max_steps=max_steps)
    code = ExitCode.OK if transcript.terminated else ExitCode.ILLEGAL_SCRIPT
    if transcript.outcome is Outcome.STUCK:
        log.error("Protocol is stuck: training error remains and no feature can be added")
    elif transcript.outcome is Outcome.INCOMPLETE:
        log.error("Script ended before the protocol terminated")

    if req.format is OutputFormat.MACHINE:
        document = dict(protocol=protocol.value, learner=learner.value, transcript=transcript.to_document())
        return CommandResult(code, render_machine(document))

    rows = [[index, step.action, step.digest] for index, step in enumerate(transcript.steps)]
    lines = [
        render_table(["#", "action", "state"], rows, title=f"{protocol.label} / {learner.label} transcript"),
        "",
        f"outcome: {transcript.outcome.value}",
        f"final F: {format_feature_set(transcript.final.feature_set)}",
        f"teaching cost (features, labels): {transcript.cost()}",
    ]
    return CommandResult(code, "\n".join(lines))


def _optimal(req: RunRequest, inst, config) -> CommandResult:
    budget = search_budget(req, config)
    feature_sets = selected_feature_sets(inst, req)
    columns = [(protocol, learner) for protocol in req.protocols for learner in req.learners]
    log.info("Searching optimal teaching costs for %s feature sets", len(feature_sets))

    plans = {(fs, protocol, learner): optimal_teaching_plan(inst, learner, protocol, fs, budget)
             for fs in feature_sets for protocol, learner in columns}

    if req.format is OutputFormat.MACHINE:
        rows = []
        for fs in feature_sets:
            for protocol, learner in columns:
                plan = plans[fs, protocol, learner]
                rows.append(dict(
                    feature_set=sorted(fs), protocol=protocol.value, learner=learner.value,
                    **plan.cost.to_document(),
                    plan=None if plan.actions is None else [a.to_document() for a in plan.actions],
                ))
        return CommandResult(ExitCode.OK, render_machine(dict(instance=str(req.instances[0]), rows=rows)))

    headers = ["F", *(f"{protocol.label} {learner.label}" for protocol, learner in columns)]
    rows = [[format_feature_set(fs), *(plans[fs, p, l].cost for p, l in columns)] for fs in feature_sets]
    lines = [render_table(headers, rows, title="Optimal teaching costs (features,labels)")]

    if len(columns) == 1:
        # 一通りだけなら行動列も出す
        lines.append("")
        for fs in feature_sets:
            plan = plans[(fs, *columns[0])]
            text = "unreachable" if plan.actions is None else ", ".join(map(str, plan.actions)) or "(none)"
            lines.append(f" {format_feature_set(fs)}: {text}")
    return CommandResult(ExitCode.OK, "\n".join(lines))


def cmd_simulate(req: RunRequest, config=None) -> CommandResult:
    inst = load_instance(req.instances[0])
    if req.optimal:
        return _optimal(req, inst, config)
    return _replay(req, inst, config)
