import random
from itertools import combinations
from logging import getLogger
from typing import Callable, Iterable, NamedTuple

from teachcore.costs import (
    INFINITE, SearchBudget, is_sufficient, min_concept_teaching_set, min_invalidation_set, find_teaching_set,
    find_invalidation_set, minimal_sufficient_sets, path_invalidation_bound, set_size,
)
from teachcore.errors import BudgetExceeded, ConstructionFailed
from teachcore.learners import Learner, LinearClassifier, fit, teaches_target, has_training_error, pool_predictions, support_indices
from teachcore.model import Instance, FeatureSet, featurize_pool, format_feature_set
from teachcore.protocol import Protocol, ScriptTeacher, optimal_teaching_plan, run_protocol
from .generators import certify_1nn_explosion, certify_concept_tightness, certify_invalidation_tightness
from .report import PropertyId, PropertyReport, Violation

__all__ = ["DEFAULT_DEFINITIONAL_POOL_LIMIT", "check_property"]
log = getLogger(__name__)
DEFAULT_DEFINITIONAL_POOL_LIMIT = 8
DOWNWARD_SAMPLES = 16


class _Options(NamedTuple):
    budget: SearchBudget | None
    definitional_pool_limit: int


def _ids(training_set) -> list[str]:
    return sorted(training_set.ids)


def _violate(report: PropertyReport, inst: Instance, detail: str, **kwargs):
    log.warning("%s violated: %s", report.property, detail)
    report.violations.append(Violation.of(inst, detail, **kwargs))


# P1: 有限の無効化集合があるなら不十分。十分なら全対象で c* を教えられる

def _check_duality(inst: Instance, report: PropertyReport, options: _Options):
    for feature_set in inst.lattice:
        for learner in Learner:
            report.checks += 1
            sufficient = is_sufficient(inst, feature_set, learner)
            invalidation = min_invalidation_set(inst, feature_set, learner, options.budget)
            concept = min_concept_teaching_set(inst, feature_set, learner, options.budget)
            where = dict(feature_set=feature_set, learner=learner)

            if invalidation is not INFINITE:
                if sufficient:
                    _violate(report, inst, "finite invalidation set for a sufficient feature set", **where,
                             witness=dict(training_set=_ids(invalidation)))
                if not has_training_error(inst, feature_set, invalidation,
                                          fit(inst, feature_set, invalidation.ids, learner)):
                    _violate(report, inst, "invalidation set has no training error", **where,
                             witness=dict(training_set=_ids(invalidation)))
            elif not sufficient:
                _violate(report, inst, "insufficient feature set without an invalidation set", **where)

            if sufficient:
                if not teaches_target(inst, feature_set, fit(inst, feature_set, frozenset(inst.objects), learner)):
                    _violate(report, inst, "training on the whole pool does not teach the target", **where)
                if concept is INFINITE:
                    _violate(report, inst, "sufficient feature set without a concept teaching set", **where)
            elif concept is not INFINITE:
                _violate(report, inst, "concept teaching set for an insufficient feature set", **where,
                         witness=dict(training_set=_ids(concept)))

            if len(inst.objects) <= options.definitional_pool_limit:
                exact_concept = set_size(find_teaching_set(inst, feature_set, learner, options.budget))
                exact_invalidation = set_size(find_invalidation_set(inst, feature_set, learner, options.budget))
                if (exact_concept, exact_invalidation) != (set_size(concept), set_size(invalidation)):
                    _violate(report, inst, "sufficiency shortcut disagrees with the definitional search", **where,
                             witness=dict(fast=[str(set_size(concept)), str(set_size(invalidation))],
                                          definitional=[str(exact_concept), str(exact_invalidation)]))


# P2

def _check_monotone(inst: Instance, report: PropertyReport, options: _Options):
    for feature_set in inst.lattice:
        for superset in inst.lattice.supersets_of(feature_set):
            for learner in Learner:
                report.checks += 1
                if is_sufficient(inst, feature_set, learner) and not is_sufficient(inst, superset, learner):
                    _violate(report, inst, "sufficiency lost on a superset", feature_set=feature_set,
                             learner=learner, witness=dict(superset=sorted(superset)))


# P3

def _invalidating_sets(inst: Instance, feature_set: FeatureSet, minimal, options: _Options) -> list[frozenset[str]]:
    """
    小さな問題では F を無効化する正直な訓練集合を全部、それ以外は極小集合とその上位集合の標本
    """
    learner = Learner.LINEAR

    def invalidates(ids: frozenset[str]):
        return has_training_error(inst, feature_set, ids, fit(inst, feature_set, ids, learner))

    objects = inst.sorted_objects
    if len(objects) <= options.definitional_pool_limit:
        # 片方のラベルだけなら定数分類器で誤りは出ない
        return [frozenset(ids) for size in range(2, len(objects) + 1) for ids in combinations(objects, size)
                if len({inst.target[x] for x in ids}) == 2 and invalidates(frozenset(ids))]

    found = [minimal.ids]
    rest = [x for x in objects if x not in minimal.ids]
    rng = random.Random(f"{','.join(objects)}:{format_feature_set(feature_set)}")
    for _ in range(DOWNWARD_SAMPLES):
        ids = minimal.ids | frozenset(rng.sample(rest, rng.randint(1, len(rest)))) if rest else minimal.ids
        if ids not in found and invalidates(ids):
            found.append(ids)
    return found


def _check_downward_invalidation(inst: Instance, report: PropertyReport, options: _Options):
    learner = Learner.LINEAR
    for feature_set in inst.lattice:
        minimal = min_invalidation_set(inst, feature_set, learner, options.budget)
        if minimal is INFINITE:
            continue
        for ids in _invalidating_sets(inst, feature_set, minimal, options):
            for subset in inst.lattice.subsets_of(feature_set):
                report.checks += 1
                if not has_training_error(inst, subset, ids, fit(inst, subset, ids, learner)):
                    _violate(report, inst, "invalidation set does not invalidate a lattice subset",
                             feature_set=feature_set, learner=learner,
                             witness=dict(subset=sorted(subset), training_set=sorted(ids)))


def _replay_plan(inst: Instance, report: PropertyReport, protocol: Protocol, feature_set: FeatureSet, plan):
    transcript = run_protocol(inst, Learner.LINEAR, protocol, ScriptTeacher(plan.actions))
    if not transcript.terminated or transcript.final.feature_set != feature_set \
            or transcript.label_count != plan.cost.labels:
        _violate(report, inst, f"optimal {protocol.value} plan does not replay", feature_set=feature_set,
                 learner=Learner.LINEAR, witness=dict(actions=[a.to_document() for a in plan.actions],
                                                      outcome=transcript.outcome.value))


# P4

def _check_open_cost(inst: Instance, report: PropertyReport, options: _Options):
    learner = Learner.LINEAR
    for feature_set in inst.lattice:
        if not is_sufficient(inst, feature_set, learner):
            continue
        if feature_set and inst.is_constant_zero_target():
            report.skipped += 1  # 開始時点で終了するので空でない F には到達できない
            continue
        report.checks += 1
        plan = optimal_teaching_plan(inst, learner, Protocol.OPEN, feature_set, options.budget)
        labels = plan.cost.labels
        concept = set_size(min_concept_teaching_set(inst, feature_set, learner, options.budget))
        where = dict(feature_set=feature_set, learner=learner)
        if labels is INFINITE:
            _violate(report, inst, "sufficient feature set unreachable under Open", **where)
            continue
        if labels > len(feature_set) + 1:
            _violate(report, inst, f"Open label cost {labels} exceeds |F|+1", **where)
        if labels != concept:
            _violate(report, inst, f"Open label cost {labels} differs from concept specification cost {concept}",
                     **where)
        _replay_plan(inst, report, Protocol.OPEN, feature_set, plan)


# P5

def _check_edf_cost(inst: Instance, report: PropertyReport, options: _Options):
    learner = Learner.LINEAR
    for feature_set in minimal_sufficient_sets(inst, learner):
        if feature_set and inst.is_constant_zero_target():
            report.skipped += 1
            continue
        report.checks += 1
        plan = optimal_teaching_plan(inst, learner, Protocol.EDF, feature_set, options.budget)
        labels = plan.cost.labels
        where = dict(feature_set=feature_set, learner=learner)
        if labels is INFINITE:
            _violate(report, inst, "minimal sufficient feature set unreachable under EDF", **where)
            continue
        if labels > 2 * (len(feature_set) + 1):
            _violate(report, inst, f"EDF label cost {labels} exceeds 2(|F|+1)", **where)
        bound = path_invalidation_bound(inst, feature_set, learner, options.budget)
        if bound is not INFINITE and labels > bound + len(feature_set) + 1:
            _violate(report, inst, f"EDF label cost {labels} exceeds the chain invalidation bound {bound} + |F|+1",
                     **where)
        _replay_plan(inst, report, Protocol.EDF, feature_set, plan)


# P6

def _check_explosion(inst: Instance, report: PropertyReport, options: _Options):
    report.checks += 1
    if len(inst.feature_ids) < 2 or len(inst.objects) % 2:
        _violate(report, inst, "not an explosion-family instance")
        return
    try:
        certify_1nn_explosion(inst)
    except ConstructionFailed as e:
        _violate(report, inst, str(e), learner=Learner.ONE_NN)


# P7

def _check_concept_bound(inst: Instance, report: PropertyReport, options: _Options):
    learner = Learner.LINEAR
    for feature_set in inst.lattice:
        if not is_sufficient(inst, feature_set, learner):
            continue
        report.checks += 1
        concept = min_concept_teaching_set(inst, feature_set, learner, options.budget)
        if len(concept) > len(feature_set) + 1:
            _violate(report, inst, f"concept specification cost {len(concept)} exceeds |F|+1",
                     feature_set=feature_set, learner=learner, witness=dict(training_set=_ids(concept)))


# P8

def _check_1nn_invalidation(inst: Instance, report: PropertyReport, options: _Options):
    learner = Learner.ONE_NN
    for feature_set in inst.lattice:
        if is_sufficient(inst, feature_set, learner):
            continue
        report.checks += 1
        invalidation = min_invalidation_set(inst, feature_set, learner, options.budget)
        if set_size(invalidation) != 2:
            _violate(report, inst, f"1NN invalidation cost is {set_size(invalidation)}, expected 2",
                     feature_set=feature_set, learner=learner)


# P9

def _check_invalidation_bound(inst: Instance, report: PropertyReport, options: _Options):
    learner = Learner.LINEAR
    for feature_set in inst.lattice:
        if is_sufficient(inst, feature_set, learner):
            continue
        report.checks += 1
        invalidation = min_invalidation_set(inst, feature_set, learner, options.budget)
        if set_size(invalidation) is INFINITE or len(invalidation) > len(feature_set) + 2:
            _violate(report, inst, f"invalidation cost {set_size(invalidation)} exceeds |F|+2",
                     feature_set=feature_set, learner=learner)


# L1

def _check_support(inst: Instance, report: PropertyReport, options: _Options):
    learner = Learner.LINEAR
    if not inst.has_both_labels():
        return
    for feature_set in inst.lattice:
        if not feature_set or not is_sufficient(inst, feature_set, learner):
            continue
        report.checks += 1
        points = featurize_pool(inst, feature_set)
        positives = [x for x in inst.objects if inst.target[x] == 1]
        negatives = [x for x in inst.objects if inst.target[x] == 0]
        pos_index, neg_index = support_indices(
            [points[x] for x in positives], [points[x] for x in negatives], len(feature_set))
        support = [positives[i] for i in pos_index] + [negatives[j] for j in neg_index]
        where = dict(feature_set=feature_set, learner=learner, witness=dict(support=sorted(support)))

        if len(support) > len(feature_set) + 1:
            _violate(report, inst, f"support set of size {len(support)} exceeds |F|+1", **where)
        reduced = fit(inst, feature_set, frozenset(support), learner)
        full = fit(inst, feature_set, frozenset(inst.objects), learner)
        if pool_predictions(inst, feature_set, reduced) != pool_predictions(inst, feature_set, full):
            _violate(report, inst, "support set retrains to different pool predictions", **where)
        elif isinstance(full, LinearClassifier) and not full.same_hyperplane(reduced):
            _violate(report, inst, "support set retrains to a different hyperplane", **where)


_CHECKERS = {
    PropertyId.P1: _check_duality,
    PropertyId.P2: _check_monotone,
    PropertyId.P3: _check_downward_invalidation,
    PropertyId.P4: _check_open_cost,
    PropertyId.P5: _check_edf_cost,
    PropertyId.P6: _check_explosion,
    PropertyId.P7: _check_concept_bound,
    PropertyId.P8: _check_1nn_invalidation,
    PropertyId.P9: _check_invalidation_bound,
    PropertyId.L1: _check_support,
}  # type: dict[PropertyId, Callable[[Instance, PropertyReport, _Options], None]]

_TIGHTNESS = {
    PropertyId.P7: certify_concept_tightness,
    PropertyId.P9: certify_invalidation_tightness,
}


def check_property(prop: PropertyId, instances: Iterable[Instance], budget: SearchBudget = None, *,
                   tight: Iterable[Instance] = (),
                   definitional_pool_limit: int = DEFAULT_DEFINITIONAL_POOL_LIMIT) -> PropertyReport:
    """
    各問題の全ての該当する特徴量集合について性質を調べる。
    tight には上界を等号で達成するはずの構成 (P7, P9) を渡す。
    予算切れの問題は飛ばして complete = False にする。
    """
    prop = PropertyId(prop)
    options = _Options(budget, definitional_pool_limit)
    report = PropertyReport(property=prop.value)
    checker = _CHECKERS[prop]

    def _run(index: int, inst: Instance, func: Callable[[], None]):
        try:
            func()
        except BudgetExceeded as e:
            log.warning("%s: instance %s skipped (%s)", prop.value, index, e)
            report.complete = False
            report.notes.append(f"instance {index}: {e}")

    for index, inst in enumerate(instances):
        report.instances += 1
        _run(index, inst, lambda: checker(inst, report, options))

    certifier = _TIGHTNESS.get(prop)
    for inst in (tight if certifier else ()):
        report.instances += 1
        report.checks += 1

        def _tightness():
            try:
                certifier(inst)
            except ConstructionFailed as e:
                _violate(report, inst, f"bound not attained: {e}", feature_set=inst.feature_ids,
                         learner=Learner.LINEAR)

        _run(report.instances - 1, inst, _tightness)

    log.info("%s: %s (%s instances, %s checks, %s violations)",
             prop.value, report.status, report.instances, report.checks, len(report.violations))
    return report
