from logging import getLogger

from teachcore.costs import fs_cost
from teachcore.model import load_instance, format_feature_set
from .request import RunRequest, CommandResult, ExitCode, OutputFormat, search_budget, selected_feature_sets
from .table import render_table, render_machine

__all__ = ["cmd_analyze"]
log = getLogger(__name__)


def cmd_analyze(req: RunRequest, config=None) -> CommandResult:
    """
    選んだ特徴量集合と学習器ごとに (|F|, 概念指定コスト, 無効化コスト) を求める
    """
    path = req.instances[0]
    inst = load_instance(path)
    budget = search_budget(req, config)
    feature_sets = selected_feature_sets(inst, req)
    log.info("Analyzing %s (%s feature sets, learners: %s)",
             path, len(feature_sets), ", ".join(l.value for l in req.learners))

    costs = {(fs, learner): fs_cost(inst, fs, learner, budget)
             for fs in feature_sets for learner in req.learners}

    if req.format is OutputFormat.MACHINE:
        rows = [dict(feature_set=sorted(fs), learner=learner.value, **costs[fs, learner].to_document())
                for fs in feature_sets for learner in req.learners]
        return CommandResult(ExitCode.OK, render_machine(dict(instance=str(path), rows=rows)))

    headers = ["F", *(learner.label for learner in req.learners)]
    rows = [[format_feature_set(fs), *(costs[fs, learner] for learner in req.learners)] for fs in feature_sets]
    return CommandResult(ExitCode.OK, render_table(headers, rows, title="Feature set costs (r,c,i)"))
